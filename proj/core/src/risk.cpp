#include "rbinom/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "rbinom/error.hpp"
#include "rbinom/parallel.hpp"
#include "rbinom/summation.hpp"

namespace rbinom {
namespace {

void check_open_unit(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
}

int trial_count(std::span<const double> estimates) {
    if (estimates.size() < 2) throw DomainError("need estimates for x = 0..n with n >= 1");
    return static_cast<int>(estimates.size()) - 1;
}

std::vector<std::size_t> ascending_order(const std::vector<double>& weights) {
    std::vector<std::size_t> order(weights.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return weights[i] < weights[j]; });
    return order;
}

}  // namespace

double point_risk(std::span<const double> estimates, double p) {
    check_open_unit(p);
    const int n = trial_count(estimates);
    const auto pmf = binom_pmf_vector(n, p);
    KahanSum sum;
    for (const std::size_t x : ascending_order(pmf)) {
        if (pmf[x] == 0.0) continue;
        sum += pmf[x] * entropy_loss(estimates[x], p);
    }
    return sum.value();
}

double point_risk(const EstimateTable& table, double p) { return point_risk(table.view(), p); }

double risk_difference(std::span<const double> first, std::span<const double> second, double p) {
    check_open_unit(p);
    const int n = trial_count(first);
    if (second.size() != first.size()) throw DomainError("estimate tables differ in n");
    const auto pmf = binom_pmf_vector(n, p);
    const double q = 1.0 - p;
    KahanSum sum;
    for (const std::size_t x : ascending_order(pmf)) {
        if (pmf[x] == 0.0) continue;
        const double d1 = first[x];
        const double d2 = second[x];
        if (!(d1 > 0.0 && d1 < 1.0 && d2 > 0.0 && d2 < 1.0)) {
            throw DomainError("estimates must lie in (0, 1)");
        }
        // L(d1, p) - L(d2, p) = p log(d2/d1) + (1-p) log((1-d2)/(1-d1)).
        const double diff = p * (std::log(d2) - std::log(d1)) + q * (std::log1p(-d2) - std::log1p(-d1));
        sum += pmf[x] * diff;
    }
    return sum.value();
}

double predictive_kl_risk(std::span<const PredictiveTable> tables, double p, const BinomialSetup& setup) {
    check_open_unit(p);
    setup.validate();
    if (tables.size() != static_cast<std::size_t>(setup.n) + 1) {
        throw DomainError("need one predictive table per x in {0, ..., n}");
    }
    const LogChooseTable choose_l(setup.l);
    const auto pmf_x = binom_pmf_vector(setup.n, p);
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    std::vector<double> log_truth(static_cast<std::size_t>(setup.l) + 1);
    std::vector<double> truth(log_truth.size());
    for (int y = 0; y <= setup.l; ++y) {
        log_truth[static_cast<std::size_t>(y)] = choose_l[y] + y * lp + (setup.l - y) * lq;
        truth[static_cast<std::size_t>(y)] = std::exp(log_truth[static_cast<std::size_t>(y)]);
    }
    KahanSum sum;
    for (const std::size_t x : ascending_order(pmf_x)) {
        const auto& t = tables[x];
        if (t.log_density.size() != log_truth.size()) throw DomainError("predictive table has wrong support");
        KahanSum inner;
        for (std::size_t y = 0; y < log_truth.size(); ++y) {
            const double lf = t.log_density[y];
            if (!std::isfinite(lf)) throw DomainError("predictive density vanishes on the support");
            inner += truth[y] * (log_truth[y] - lf);
        }
        sum += pmf_x[x] * inner.value();
    }
    return sum.value();
}

double connection_sum(double p, int n, int l, const PriorSpec& prior) {
    if (n < 1 || l < 1) throw DomainError("n and l must be at least 1");
    KahanSum sum;
    for (int i = 0; i < l; ++i) {
        sum += point_risk(make_estimate_table(n + i, prior), p);
    }
    return sum.value();
}

McRiskResult mc_risk(std::span<const double> estimates, double p, std::int64_t sample_count, std::uint64_t seed) {
    check_open_unit(p);
    const int n = trial_count(estimates);
    if (sample_count < 1) throw DomainError("sample_count must be positive");
    const auto pmf = binom_pmf_vector(n, p);
    std::vector<double> cdf(pmf.size());
    std::partial_sum(pmf.begin(), pmf.end(), cdf.begin());
    std::vector<double> loss(pmf.size());
    for (std::size_t x = 0; x < pmf.size(); ++x) loss[x] = entropy_loss(estimates[x], p);

    std::mt19937_64 gen(seed);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::int64_t k = 0; k < sample_count; ++k) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        const double v = loss[static_cast<std::size_t>(it - cdf.begin())];
        const double delta = v - mean;
        mean += delta / static_cast<double>(k + 1);
        m2 += delta * (v - mean);
    }
    if (sample_count == 1) return {mean, std::numeric_limits<double>::infinity()};
    const double var = m2 / static_cast<double>(sample_count - 1);
    return {mean, std::sqrt(var / static_cast<double>(sample_count))};
}

IdentityCheck verify_second_derivative_identity(std::span<const double> phi, int n, double p, double step) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (phi.size() != static_cast<std::size_t>(n) + 1) throw DomainError("phi must hold phi(0..n)");
    if (!(step > 0.0)) throw DomainError("step must be positive");
    if (!(p - 2.0 * step > 0.0 && p + 2.0 * step < 1.0)) {
        throw DomainError("finite-difference stencil leaves (0, 1)");
    }
    const LogChooseTable choose(n);
    auto scaled_mean = [&](double q) {
        const auto pmf = binom_pmf_vector(choose, q);
        KahanSum s;
        for (int x = 0; x <= n; ++x) s += pmf[static_cast<std::size_t>(x)] * phi[static_cast<std::size_t>(x)];
        return q * s.value();
    };
    const double lhs =
        (scaled_mean(p + step) - 2.0 * scaled_mean(p) + scaled_mean(p - step)) / (step * step);

    auto phi_at = [&](int x) { return x < 0 ? 0.0 : phi[static_cast<std::size_t>(x)]; };
    const auto pmf = binom_pmf_vector(choose, p);
    KahanSum s;
    for (int x = 1; x <= n; ++x) {
        const double inner = (x + 1.0) * phi_at(x) - 2.0 * x * phi_at(x - 1) + (x - 1.0) * phi_at(x - 2);
        s += pmf[static_cast<std::size_t>(x)] * x * inner;
    }
    return {lhs, s.value() / p};
}

IdentityCheck verify_log_jensen_bound(std::span<const double> support, std::span<const double> weights) {
    if (support.empty() || support.size() != weights.size()) {
        throw DomainError("support and weights must be nonempty and of equal length");
    }
    KahanSum total;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (!(support[i] > 0.0 && support[i] < 1.0)) throw DomainError("support must lie in (0, 1)");
        if (!(weights[i] >= 0.0)) throw DomainError("weights must be nonnegative");
        total += weights[i];
    }
    const double w_sum = total.value();
    if (!(w_sum > 0.0)) throw DomainError("weights must not all vanish");
    KahanSum mean_acc;
    KahanSum log_acc;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const double w = weights[i] / w_sum;
        mean_acc += w * support[i];
        log_acc += w * std::log1p(-support[i]);
    }
    const double mu = mean_acc.value();
    KahanSum var_acc;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const double d = support[i] - mu;
        var_acc += weights[i] / w_sum * d * d;
    }
    const double var = var_acc.value();
    if (!(var > 0.0)) throw DomainError("distribution must have positive variance");
    return {log_acc.value(), std::log1p(-mu) - 0.5 * var};
}

std::vector<double> restriction_grid(const Restriction& restriction, int grid_size) {
    if (grid_size < 2) throw DomainError("grid_size must be at least 2");
    std::vector<double> grid(static_cast<std::size_t>(grid_size));
    const double g = grid_size;
    for (int i = 0; i < grid_size; ++i) {
        double p = 0.0;
        switch (restriction.kind()) {
            case RestrictionKind::none: p = (i + 1.0) / (g + 1.0); break;
            case RestrictionKind::upper: p = restriction.upper() * (i + 1.0) / g; break;
            case RestrictionKind::interval:
                p = restriction.lower() + (restriction.upper() - restriction.lower()) * i / (g - 1.0);
                break;
        }
        grid[static_cast<std::size_t>(i)] = p;
    }
    if (restriction.kind() != RestrictionKind::none) grid.back() = restriction.upper();
    return grid;
}

RiskCurve make_risk_curve(int n, std::span<const PriorSpec> priors, std::span<const std::string> labels,
                          std::vector<double> p_grid) {
    if (priors.size() != labels.size()) throw DomainError("one label per prior");
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        check_open_unit(p_grid[i]);
        if (i > 0 && !(p_grid[i] > p_grid[i - 1])) throw DomainError("p grid must be strictly increasing");
    }
    std::vector<EstimateTable> tables;
    tables.reserve(priors.size());
    for (const auto& prior : priors) tables.push_back(make_estimate_table(n, prior));

    RiskCurve curve{n, std::move(p_grid), {labels.begin(), labels.end()}, {}};
    curve.values.assign(tables.size(), std::vector<double>(curve.p_grid.size()));
    detail::parallel_for(curve.p_grid.size(), [&](std::size_t i) {
        for (std::size_t k = 0; k < tables.size(); ++k) {
            curve.values[k][i] = point_risk(tables[k], curve.p_grid[i]);
        }
    });
    return curve;
}

}  // namespace rbinom
