#include "rbinom/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbinom/error.hpp"
#include "rbinom/estimators.hpp"
#include "rbinom/incbeta.hpp"
#include "rbinom/parallel.hpp"
#include "rbinom/risk.hpp"
#include "rbinom/summation.hpp"

namespace rbinom {
namespace {

void check_config(int n, double a, double b, double p_bar) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("prior exponents must be positive");
    if (!(p_bar > 0.0 && p_bar < 1.0)) throw DomainError("p_bar must lie in (0, 1)");
}

void check_symmetric_upper(double a, double p_bar) {
    if (!(a > 0.0)) throw DomainError("a must be positive");
    if (!(p_bar > 0.5 && p_bar < 1.0)) throw DomainError("p_bar must lie in (1/2, 1)");
}

// [g(u)] evaluated from lo to hi.
template <class F>
double bracket(F&& g, double lo, double hi) {
    return g(hi) - g(lo);
}

}  // namespace

std::optional<double> risk_difference_bound(double p, int n, double a, double b, double p_bar) {
    check_config(n, a, b, p_bar);
    if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
    const double s = n + a + b;
    const double J = eval_J(p, n, a, b, p_bar);
    const double arg = 1.0 - 1.0 / ((1.0 - p_bar) * s * J);
    if (!(arg > 0.0)) return std::nullopt;
    return (1.0 - p) * std::log(arg) + p * std::log1p((1.0 + 1.0 / J) / (p_bar * s));
}

double inverse_I_expectation(double p, int n, double a, double b, double p_bar) {
    check_config(n, a, b, p_bar);
    const auto pmf = binom_pmf_vector(n, p);
    const double gamma = n + a + b + 1.0;
    KahanSum sum;
    for (int x = 0; x <= n; ++x) {
        sum += pmf[static_cast<std::size_t>(x)] * std::exp(-log_eval_I(x + a, gamma, p_bar));
    }
    return sum.value();
}

double exact_risk_difference(double p, int n, double a, double b, const Restriction& restriction) {
    const PriorSpec restricted{a, b, restriction};
    const auto t = make_estimate_table(n, restricted);
    const auto u = make_estimate_table(n, restricted.untruncated());
    return risk_difference(t.view(), u.view(), p);
}

double standardized_risk_difference(double p, int n, double a, double b, double p_bar) {
    check_config(n, a, b, p_bar);
    const double delta = exact_risk_difference(p, n, a, b, Restriction::upper(p_bar));
    const double denom = eval_J(p, n, a, b, p_bar) * inverse_I_expectation(p, n, a, b, p_bar);
    if (!(denom > 0.0)) throw NumericalError("standardizing factor is not positive");
    return delta / denom;
}

double J_at_upper_bound(double a, double b, double p_bar) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("prior exponents must be positive");
    if (b == 1.0) {
        const double q = 1.0 - p_bar;
        return (1.0 + q * a) / (q * q * a * (a + 1.0));
    }
    if (a == 0.5 && b == 0.5) return I_half_two_closed_form(p_bar);
    return eval_I(a, a + b + 1.0, p_bar);
}

SmallUpperBoundConditions small_upper_bound_conditions(int n, double a, double b, double p_bar) {
    check_config(n, a, b, p_bar);
    const double s = n + a + b;
    const double q = 1.0 - p_bar;
    const double J0 = eval_I(a, s + 1.0, p_bar);
    const double Jbar = J_at_upper_bound(a, b, p_bar);
    const double tail = std::log1p((1.0 + 1.0 / Jbar) / (p_bar * s));

    SmallUpperBoundConditions out{false, false};
    const double arg = 1.0 - 1.0 / (q * s * J0);
    if (arg > 0.0) out.general = std::log(arg) + p_bar / q * tail < 0.0;
    if (p_bar <= 1.0 / n) out.inverse_n = -1.0 / (q * s) + p_bar / q * Jbar * tail < 0.0;
    return out;
}

bool upper_restriction_necessary(int n, double a, double b, double p_bar) {
    check_config(n, a, b, p_bar);
    return p_bar < (n + a) / (n + a + b);
}

bool upper_restriction_necessary_b1(int n, double a, double p_bar) {
    check_config(n, a, 1.0, p_bar);
    const double q = 1.0 - p_bar;
    const double lhs = p_bar * std::log1p(q * (a + 1.0) / (p_bar * (n + a + 1.0)));
    // (1 - p_bar^{n+1}) / (1 - p_bar) without cancellation.
    const double geometric = -std::expm1((n + 1.0) * std::log(p_bar)) / q;
    const double rhs = q * std::log((n + a + 1.0) * geometric / (n + 1.0));
    return lhs < rhs;
}

IntervalConditions interval_sufficient_conditions(int n, double a, double b, double p_lo, double p_bar) {
    check_config(n, a, b, p_bar);
    if (!(p_lo > 0.0 && p_lo < p_bar)) throw DomainError("restriction requires 0 < p_lo < p_bar < 1");
    const double s = n + a + b;
    const double q = 1.0 - p_bar;
    const bool cap = p_bar <= (a + 1.0) / (s + 1.0);
    const double lhs = p_bar / q * std::log((p_lo * n + a + 1.0) / (p_bar * s)) +
                       std::log(((1.0 - p_lo) * n + b) / (q * s));
    return {cap, lhs <= 0.0};
}

bool scaled_interval_condition(double a, double c_lo, double c_bar) {
    if (!(a > 0.0)) throw DomainError("a must be positive");
    if (!(c_lo > 0.0 && c_lo < c_bar)) throw DomainError("requires 0 < c_lo < c_bar");
    return c_bar < a + 1.0 && c_bar * std::log((c_lo + a + 1.0) / c_bar) + c_bar - c_lo < a;
}

double max_risk_diff_symmetric_n1(double a, double p_bar) {
    check_symmetric_upper(a, p_bar);
    const double p_lo = 1.0 - p_bar;
    auto log_int = [&](double alpha, double beta) { return log_inc_beta_interval(alpha, beta, p_lo, p_bar); };
    const double at_one = std::log((1.0 + a) / (1.0 + 2.0 * a)) + log_int(a + 1.0, a) - log_int(a + 2.0, a);
    const double at_zero = std::log(a / (1.0 + 2.0 * a)) + log_int(a, a + 1.0) - log_int(a + 1.0, a + 1.0);
    return (p_lo * p_lo + p_bar * p_bar) * at_one + 2.0 * p_lo * p_bar * at_zero;
}

double max_risk_diff_symmetric_n1_closed_form(double a, double p_bar) {
    check_symmetric_upper(a, p_bar);
    const double p_lo = 1.0 - p_bar;
    const double outer = p_lo * p_lo + p_bar * p_bar;
    const double cross = 2.0 * p_lo * p_bar;
    if (a == 1.0) {
        const double ratio = (p_bar * p_bar * p_bar - p_lo * p_lo * p_lo) / (p_bar * p_bar - p_lo * p_lo);
        return -outer * std::log(ratio) - cross * std::log(3.0 - 2.0 * ratio);
    }
    if (a == 0.5) {
        const double r_lo = p_lo / (1.0 - p_lo);
        const double r_bar = p_bar / (1.0 - p_bar);
        const double num = bracket([](double u) { return u * std::sqrt(u) / ((1.0 + u) * (1.0 + u)); }, r_lo, r_bar);
        const double den = bracket([](double u) { return std::atan(u); }, std::sqrt(r_lo), std::sqrt(r_bar)) -
                           bracket([](double u) { return std::sqrt(u) / (1.0 + u); }, r_lo, r_bar);
        const double ratio = num / den;
        return -outer * std::log1p(-2.0 / 3.0 * ratio) - cross * std::log1p(2.0 * ratio);
    }
    throw DomainError("closed form available only for a = 1 and a = 1/2");
}

double dominance_threshold_n1(double a) {
    if (!(a > 0.0)) throw DomainError("a must be positive");
    auto f = [a](double p_bar) { return max_risk_diff_symmetric_n1(a, p_bar); };
    double lo = 0.5 + 1e-4;
    double hi = 1.0 - 1e-4;
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (!(f_lo < 0.0 && f_hi > 0.0)) {
        lo = 0.5 + 1e-6;
        hi = 1.0 - 1e-6;
        f_lo = f(lo);
        f_hi = f(hi);
    }
    if (!(f_lo < 0.0 && f_hi > 0.0)) {
        throw NumericalError("no sign change of the maximum risk difference on (1/2, 1)");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (f_mid < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::dominates: return "dominates";
        case Verdict::dominated_somewhere: return "dominated_somewhere";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

DominanceReport exhaustive_dominance_check(int n, double a, double b, const Restriction& restriction,
                                           int grid_size) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("prior exponents must be positive");

    DominanceReport report;
    report.n = n;
    report.a = a;
    report.b = b;
    report.restriction = restriction;
    report.p_grid = restriction_grid(restriction, grid_size);

    const PriorSpec restricted{a, b, restriction};
    const auto t = make_estimate_table(n, restricted);
    const auto u = make_estimate_table(n, restricted.untruncated());
    const bool upper = restriction.kind() == RestrictionKind::upper;

    const std::size_t m = report.p_grid.size();
    report.risk_unrestricted.resize(m);
    report.risk_restricted.resize(m);
    report.risk_difference.resize(m);
    if (upper) {
        report.bound_curve.resize(m);
        report.standardized_curve.resize(m);
    }
    detail::parallel_for(m, [&](std::size_t i) {
        const double p = report.p_grid[i];
        report.risk_unrestricted[i] = point_risk(u, p);
        report.risk_restricted[i] = point_risk(t, p);
        const double delta = risk_difference(t.view(), u.view(), p);
        report.risk_difference[i] = delta;
        if (upper) {
            const double p_bar = restriction.upper();
            report.bound_curve[i] = risk_difference_bound(p, n, a, b, p_bar);
            report.standardized_curve[i] =
                delta / (eval_J(p, n, a, b, p_bar) * inverse_I_expectation(p, n, a, b, p_bar));
        }
    });

    const auto max_it = std::max_element(report.risk_difference.begin(), report.risk_difference.end());
    report.max_difference = *max_it;
    report.worst_p = report.p_grid[static_cast<std::size_t>(max_it - report.risk_difference.begin())];
    report.min_difference = *std::min_element(report.risk_difference.begin(), report.risk_difference.end());
    if (report.max_difference > kDominanceSlack) {
        report.verdict = Verdict::dominated_somewhere;
    } else if (report.min_difference < -kDominanceSlack) {
        report.verdict = Verdict::dominates;
    } else {
        report.verdict = Verdict::inconclusive;
    }

    auto& flags = report.flags;
    if (upper) {
        const double p_bar = restriction.upper();
        flags.upper_necessary = upper_restriction_necessary(n, a, b, p_bar);
        if (b == 1.0) flags.upper_necessary_b1 = upper_restriction_necessary_b1(n, a, p_bar);
        const auto small = small_upper_bound_conditions(n, a, b, p_bar);
        flags.small_upper_general = small.general;
        flags.small_upper_inverse_n = small.inverse_n;
    } else if (restriction.kind() == RestrictionKind::interval) {
        const auto c = interval_sufficient_conditions(n, a, b, restriction.lower(), restriction.upper());
        flags.interval_upper_cap = c.upper_cap;
        flags.interval_log_balance = c.log_balance;
    }
    return report;
}

MonotonicityCheck check_odds_weighted_J_monotone(int n, double a, double b, double p_bar, int grid_size) {
    check_config(n, a, b, p_bar);
    const auto grid = restriction_grid(Restriction::upper(p_bar), grid_size);
    std::vector<double> values(grid.size());
    detail::parallel_for(grid.size(), [&](std::size_t i) {
        const double p = grid[i];
        values[i] = p / (1.0 - p) * eval_J(p, n, a, b, p_bar);
    });
    double min_diff = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < values.size(); ++i) min_diff = std::min(min_diff, values[i] - values[i - 1]);
    return {min_diff >= 0.0, min_diff};
}

}  // namespace rbinom
