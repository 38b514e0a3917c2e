#pragma once

#include <span>
#include <vector>

#include "rbinom/binom_core.hpp"

namespace rbinom {

// Posterior-mean (Bayes under entropy loss) estimators of p for X ~ Bin(n, p)
// under beta priors, optionally truncated to (0, p_bar] or [p_lo, p_bar].

/// (x + a) / (n + a + b).
[[nodiscard]] double posterior_mean_unrestricted(int x, int n, double a, double b);

/// Posterior mean under the prior truncated to (0, p_bar].
///
/// Evaluated as p_bar I(x+a+1, n+a+b+1) / I(x+a, n+a+b), which by the
/// integration-by-parts recurrence equals
///     (x+a)/(n+a+b) - 1 / {(n+a+b) I(x+a, n+a+b, p_bar)}
/// but never subtracts, so it stays inside (0, p_bar) for tiny p_bar.
[[nodiscard]] double posterior_mean_upper_truncated(int x, int n, double a, double b, double p_bar);

/// Boundary correction A(x) = [p^{x+a}(1-p)^{n-x+b}]_{p_lo}^{p_bar} / \int_{p_lo}^{p_bar} p^{x+a-1}(1-p)^{n-x+b-1} dp.
///
/// May be negative. With a = b and p_lo + p_bar = 1 it is exactly zero at x = n/2.
[[nodiscard]] double boundary_correction(int x, int n, double a, double b, double p_lo, double p_bar);

/// Posterior mean under the prior truncated to [p_lo, p_bar].
[[nodiscard]] double posterior_mean_two_sided(int x, int n, double a, double b, double p_lo, double p_bar);

/// Dispatches on the prior's restriction.
[[nodiscard]] double posterior_mean(int x, int n, const PriorSpec& prior);

/// Estimates for every x in {0, ..., n}.
struct EstimateTable {
    int n = 0;
    PriorSpec prior;
    std::vector<double> values;

    [[nodiscard]] double operator[](int x) const { return values[static_cast<std::size_t>(x)]; }
    [[nodiscard]] std::span<const double> view() const noexcept { return values; }
};

[[nodiscard]] EstimateTable make_estimate_table(int n, const PriorSpec& prior);

}  // namespace rbinom
