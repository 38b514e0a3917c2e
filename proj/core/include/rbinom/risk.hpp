#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rbinom/binom_core.hpp"
#include "rbinom/estimators.hpp"
#include "rbinom/predictive.hpp"

namespace rbinom {

/// Exact entropy-loss risk sum_x f(x|n,p) L(estimates[x], p), n = estimates.size() - 1.
///
/// Terms are accumulated in ascending pmf order with compensated summation.
[[nodiscard]] double point_risk(std::span<const double> estimates, double p);
[[nodiscard]] double point_risk(const EstimateTable& table, double p);

/// R(p, first) - R(p, second), accumulated per x as a loss difference so the
/// two risks never cancel against each other.
[[nodiscard]] double risk_difference(std::span<const double> first, std::span<const double> second, double p);

/// Exact KL risk sum_x sum_y f(x|n,p) f(y|l,p) log{f(y|l,p) / fhat(y; x)}.
[[nodiscard]] double predictive_kl_risk(std::span<const PredictiveTable> tables, double p, const BinomialSetup& setup);

/// sum_{i=0}^{l-1} R_{n+i}(p, Bayes estimator of `prior` at sample size n+i).
[[nodiscard]] double connection_sum(double p, int n, int l, const PriorSpec& prior);

struct McRiskResult {
    double estimate;
    double std_error;  // +inf for a single draw
};

/// Monte Carlo risk estimate; deterministic given the seed (mt19937_64 + inversion).
[[nodiscard]] McRiskResult mc_risk(std::span<const double> estimates, double p, std::int64_t sample_count,
                                   std::uint64_t seed);

struct IdentityCheck {
    double lhs;
    double rhs;
};

/// Second-derivative identity for p E_p[phi(X)], X ~ Bin(n, p).
///
/// lhs is the central second difference of p E_p[phi(X)] with the given step,
/// rhs = (1/p) E_p[X {(X+1)phi(X) - 2X phi(X-1) + (X-1) phi(X-2)}].
/// `phi` holds phi(0..n).
[[nodiscard]] IdentityCheck verify_second_derivative_identity(std::span<const double> phi, int n, double p,
                                                              double step = 1e-4);

/// lhs = E[log(1 - T)], rhs = log(1 - mu) - sigma^2 / 2 for a discrete T on (0, 1).
[[nodiscard]] IdentityCheck verify_log_jensen_bound(std::span<const double> support, std::span<const double> weights);

/// Evaluation grid inside a restriction: (0, p_bar] includes p_bar,
/// [p_lo, p_bar] includes both ends, none is the open unit interval.
[[nodiscard]] std::vector<double> restriction_grid(const Restriction& restriction, int grid_size);

struct RiskCurve {
    int n = 0;
    std::vector<double> p_grid;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> values;  // values[k][i] = risk of estimator k at p_grid[i]
};

/// Exact risk curves of the Bayes estimators of each prior, evaluated in parallel over p.
[[nodiscard]] RiskCurve make_risk_curve(int n, std::span<const PriorSpec> priors, std::span<const std::string> labels,
                                        std::vector<double> p_grid);

}  // namespace rbinom
