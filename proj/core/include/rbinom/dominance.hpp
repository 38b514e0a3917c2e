#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "rbinom/binom_core.hpp"

namespace rbinom {

// Dominance of the truncated-prior Bayes estimator over the untruncated one.
// Risk differences are always R(p, truncated) - R(p, untruncated), so a
// nonpositive difference everywhere on the restriction means domination.

/// Upper bound on the standardized risk difference for the (0, p_bar] restriction:
///
///     (1-p) log{1 - 1/((1-p_bar)(n+a+b) J(p))} + p log[1 + {1 + 1/J(p)} / (p_bar (n+a+b))].
///
/// Empty when the first log argument is nonpositive (bound undefined at p).
[[nodiscard]] std::optional<double> risk_difference_bound(double p, int n, double a, double b, double p_bar);

/// E_p[1 / I(X+a, n+a+b+1, p_bar)], the second standardizing factor.
[[nodiscard]] double inverse_I_expectation(double p, int n, double a, double b, double p_bar);

/// Exact risk difference divided by J(p) E_p[1 / I(X+a, n+a+b+1, p_bar)].
[[nodiscard]] double standardized_risk_difference(double p, int n, double a, double b, double p_bar);

/// Exact R(p, truncated) - R(p, untruncated) for any restriction.
[[nodiscard]] double exact_risk_difference(double p, int n, double a, double b, const Restriction& restriction);

/// J(p_bar) = I(a, a+b+1, p_bar), closed form for b = 1 and a = b = 1/2.
[[nodiscard]] double J_at_upper_bound(double a, double b, double p_bar);

struct SmallUpperBoundConditions {
    bool general;      // holds for any p_bar
    bool inverse_n;    // the sharper variant; false unless p_bar <= 1/n
};

/// Sufficient conditions for domination under (0, p_bar] that hold once p_bar is small.
[[nodiscard]] SmallUpperBoundConditions small_upper_bound_conditions(int n, double a, double b, double p_bar);

/// Necessary for domination under (0, p_bar]: p_bar < (n+a)/(n+a+b).
[[nodiscard]] bool upper_restriction_necessary(int n, double a, double b, double p_bar);

/// Necessary for domination under (0, p_bar] when b = 1:
///     p_bar log{1 + (1-p_bar)(a+1)/(p_bar(n+a+1))} < (1-p_bar) log{(n+a+1)(1-p_bar^{n+1})/((n+1)(1-p_bar))}.
[[nodiscard]] bool upper_restriction_necessary_b1(int n, double a, double p_bar);

struct IntervalConditions {
    bool upper_cap;    // p_bar <= (a+1)/(n+a+b+1)
    bool log_balance;  // the logarithmic inequality
    [[nodiscard]] bool both() const noexcept { return upper_cap && log_balance; }
};

/// Sufficient conditions for domination under [p_lo, p_bar].
[[nodiscard]] IntervalConditions interval_sufficient_conditions(int n, double a, double b, double p_lo, double p_bar);

/// Large-n domination regime for p_lo = c_lo/n, p_bar = c_bar/n:
/// c_bar < a + 1 and c_bar log{(c_lo+a+1)/c_bar} + c_bar - c_lo < a.
[[nodiscard]] bool scaled_interval_condition(double a, double c_lo, double c_bar);

/// Maximum over [1-p_bar, p_bar] of the risk difference for n = 1, a = b,
/// computed from restricted beta integrals.
[[nodiscard]] double max_risk_diff_symmetric_n1(double a, double p_bar);

/// Elementary closed form of the same maximum; available for a = 1 and a = 1/2.
[[nodiscard]] double max_risk_diff_symmetric_n1_closed_form(double a, double p_bar);

/// Root in (1/2, 1) of max_risk_diff_symmetric_n1(a, .), found by bisection.
[[nodiscard]] double dominance_threshold_n1(double a);

enum class Verdict { dominates, dominated_somewhere, inconclusive };

[[nodiscard]] std::string_view to_string(Verdict v) noexcept;

/// Named condition flags; empty where a condition does not apply to the restriction.
struct ConditionFlags {
    std::optional<bool> upper_necessary;
    std::optional<bool> upper_necessary_b1;
    std::optional<bool> interval_upper_cap;
    std::optional<bool> interval_log_balance;
    std::optional<bool> small_upper_general;
    std::optional<bool> small_upper_inverse_n;
};

struct DominanceReport {
    int n = 0;
    double a = 0.0;
    double b = 0.0;
    Restriction restriction;

    std::vector<double> p_grid;
    std::vector<double> risk_unrestricted;
    std::vector<double> risk_restricted;
    std::vector<double> risk_difference;
    // (0, p_bar] only; empty otherwise.
    std::vector<std::optional<double>> bound_curve;
    std::vector<double> standardized_curve;

    ConditionFlags flags;
    Verdict verdict = Verdict::inconclusive;
    double max_difference = 0.0;
    double min_difference = 0.0;
    double worst_p = 0.0;
};

/// Slack under which a risk difference counts as nonpositive.
inline constexpr double kDominanceSlack = 1e-12;

/// Exact risk differences on a uniform grid over the restriction (endpoints
/// included). Verdict: dominated_somewhere if the maximum exceeds the slack;
/// dominates if not and some difference is below -slack; otherwise inconclusive.
/// This certifies domination at grid resolution only.
[[nodiscard]] DominanceReport exhaustive_dominance_check(int n, double a, double b, const Restriction& restriction,
                                                         int grid_size = 512);

struct MonotonicityCheck {
    bool nondecreasing;
    double min_first_difference;
};

/// First differences of {p/(1-p)} J(p) on a uniform grid over (0, p_bar].
[[nodiscard]] MonotonicityCheck check_odds_weighted_J_monotone(int n, double a, double b, double p_bar,
                                                               int grid_size = 1000);

}  // namespace rbinom
