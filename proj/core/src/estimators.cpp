#include "rbinom/estimators.hpp"

#include <cmath>

#include "rbinom/error.hpp"
#include "rbinom/incbeta.hpp"

namespace rbinom {
namespace {

void check_counts(int x, int n) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (x < 0 || x > n) throw DomainError("x must lie in {0, ..., n}");
}

void check_exponents(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("prior exponents must be positive");
}

}  // namespace

double posterior_mean_unrestricted(int x, int n, double a, double b) {
    check_counts(x, n);
    check_exponents(a, b);
    return (x + a) / (n + a + b);
}

double posterior_mean_upper_truncated(int x, int n, double a, double b, double p_bar) {
    check_counts(x, n);
    check_exponents(a, b);
    if (!(p_bar > 0.0 && p_bar < 1.0)) throw DomainError("p_bar must lie in (0, 1)");
    const double alpha = x + a;
    const double gamma = n + a + b;
    return p_bar * std::exp(log_eval_I(alpha + 1.0, gamma + 1.0, p_bar) - log_eval_I(alpha, gamma, p_bar));
}

double boundary_correction(int x, int n, double a, double b, double p_lo, double p_bar) {
    check_counts(x, n);
    check_exponents(a, b);
    const double alpha = x + a;
    const double gamma = n + a + b;
    const double bracket = bracket_term(alpha, gamma, p_lo, p_bar);
    if (bracket == 0.0) return 0.0;
    return bracket / eval_I_two_sided(alpha, gamma, p_lo, p_bar);
}

double posterior_mean_two_sided(int x, int n, double a, double b, double p_lo, double p_bar) {
    check_counts(x, n);
    check_exponents(a, b);
    const double alpha = x + a;
    const double gamma = n + a + b;
    return p_bar * std::exp(log_eval_I_two_sided(alpha + 1.0, gamma + 1.0, p_lo, p_bar) -
                            log_eval_I_two_sided(alpha, gamma, p_lo, p_bar));
}

double posterior_mean(int x, int n, const PriorSpec& prior) {
    const auto& r = prior.restriction;
    switch (r.kind()) {
        case RestrictionKind::none:
            return posterior_mean_unrestricted(x, n, prior.a, prior.b);
        case RestrictionKind::upper:
            return posterior_mean_upper_truncated(x, n, prior.a, prior.b, r.upper());
        case RestrictionKind::interval:
            return posterior_mean_two_sided(x, n, prior.a, prior.b, r.lower(), r.upper());
    }
    throw DomainError("unknown restriction");
}

EstimateTable make_estimate_table(int n, const PriorSpec& prior) {
    prior.validate();
    if (n < 1) throw DomainError("n must be at least 1");
    EstimateTable table{n, prior, std::vector<double>(static_cast<std::size_t>(n) + 1)};
    for (int x = 0; x <= n; ++x) {
        table.values[static_cast<std::size_t>(x)] = posterior_mean(x, n, prior);
    }
    return table;
}

}  // namespace rbinom
