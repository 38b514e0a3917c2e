#include "rbinom/predictive.hpp"

#include <cmath>

#include "rbinom/error.hpp"

namespace rbinom {

double log_bayes_predictive(int y, int x, const BinomialSetup& setup, const PriorSpec& prior) {
    setup.validate();
    prior.validate();
    if (x < 0 || x > setup.n) throw DomainError("x must lie in {0, ..., n}");
    if (y < 0 || y > setup.l) throw DomainError("y must lie in {0, ..., l}");
    const int n = setup.n;
    const int l = setup.l;
    const auto& r = prior.restriction;
    const double num = log_restricted_beta(y + x + prior.a, l - y + n - x + prior.b, r);
    const double den = log_restricted_beta(x + prior.a, n - x + prior.b, r);
    return log_binom_coef(l, y) + num - den;
}

double bayes_predictive(int y, int x, const BinomialSetup& setup, const PriorSpec& prior) {
    return std::exp(log_bayes_predictive(y, x, setup, prior));
}

double plug_in_density(int y, int l, double d) {
    if (!(d > 0.0 && d < 1.0)) throw DomainError("plug-in estimate must lie in (0, 1)");
    return binom_pmf(y, l, d);
}

PredictiveTable make_predictive_table(int x, const BinomialSetup& setup, const PriorSpec& prior) {
    PredictiveTable t{setup, prior, x, {}, {}};
    t.density.reserve(static_cast<std::size_t>(setup.l) + 1);
    t.log_density.reserve(static_cast<std::size_t>(setup.l) + 1);
    for (int y = 0; y <= setup.l; ++y) {
        const double lf = log_bayes_predictive(y, x, setup, prior);
        t.log_density.push_back(lf);
        t.density.push_back(std::exp(lf));
    }
    return t;
}

std::vector<PredictiveTable> make_predictive_tables(const BinomialSetup& setup, const PriorSpec& prior) {
    setup.validate();
    std::vector<PredictiveTable> out;
    out.reserve(static_cast<std::size_t>(setup.n) + 1);
    for (int x = 0; x <= setup.n; ++x) out.push_back(make_predictive_table(x, setup, prior));
    return out;
}

std::vector<PredictiveTable> make_plug_in_tables(const BinomialSetup& setup, std::span<const double> estimates) {
    setup.validate();
    if (estimates.size() != static_cast<std::size_t>(setup.n) + 1) {
        throw DomainError("need one estimate per x in {0, ..., n}");
    }
    const LogChooseTable choose(setup.l);
    std::vector<PredictiveTable> out;
    out.reserve(estimates.size());
    for (int x = 0; x <= setup.n; ++x) {
        const double d = estimates[static_cast<std::size_t>(x)];
        if (!(d > 0.0 && d < 1.0)) throw DomainError("plug-in estimate must lie in (0, 1)");
        PredictiveTable t{setup, std::nullopt, x, {}, {}};
        const double ld = std::log(d);
        const double lq = std::log1p(-d);
        for (int y = 0; y <= setup.l; ++y) {
            const double lf = choose[y] + y * ld + (setup.l - y) * lq;
            t.log_density.push_back(lf);
            t.density.push_back(std::exp(lf));
        }
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace rbinom
