#pragma once

#include <optional>

namespace rbinom {

// Special-function kernel. Every routine here is pure and thread-safe.
//
// Throughout, I(alpha, gamma, p_bar) denotes
//
//     I = \int_0^1 t^{alpha-1} / {1 - p_bar (1 - t)}^gamma dt,   gamma > alpha > 0,
//
// and the two-sided variant integrates over (rho, 1) with rho = r_lo / r_bar,
// r = p / (1 - p). Both are evaluated through the unregularized incomplete
// beta function, never by quadrature:
//
//     B_{p_bar}(alpha, gamma - alpha) = p_bar^alpha (1 - p_bar)^{gamma - alpha} I.

/// Upper restrictions this close to one make I diverge; reported as OverflowError.
inline constexpr double kUpperBoundarySlack = 1e-12;

/// Parameters of I; `p_lo` selects the two-sided integral.
struct IntegralParams {
    double alpha;
    double gamma;
    double p_bar;
    std::optional<double> p_lo;

    void validate() const;
};

/// Odds of the restriction endpoints.
struct OddsTriple {
    double r_lo;
    double r_bar;
    double rho;

    static OddsTriple from_bounds(double p_lo, double p_bar);
};

/// log B(a, b) via lgamma.
[[nodiscard]] double log_beta(double a, double b);

/// log \int_0^x t^{alpha-1} (1-t)^{beta-1} dt. Returns -inf at x = 0.
[[nodiscard]] double log_inc_beta_lower(double alpha, double beta, double x);

/// \int_0^x t^{alpha-1} (1-t)^{beta-1} dt, relative accuracy ~1e-14.
[[nodiscard]] double inc_beta_lower(double alpha, double beta, double x);

/// log \int_lo^hi t^{alpha-1} (1-t)^{beta-1} dt for 0 <= lo < hi <= 1.
///
/// Both endpoints are evaluated on the same tail of the continued fraction
/// whenever possible, so the difference is taken between like quantities.
[[nodiscard]] double log_inc_beta_interval(double alpha, double beta, double lo, double hi);

[[nodiscard]] double log_eval_I(double alpha, double gamma, double p_bar);
[[nodiscard]] double eval_I(double alpha, double gamma, double p_bar);
[[nodiscard]] double eval_I(const IntegralParams& params);

[[nodiscard]] double log_eval_I_two_sided(double alpha, double gamma, double p_lo, double p_bar);
[[nodiscard]] double eval_I_two_sided(double alpha, double gamma, double p_lo, double p_bar);

/// J(p) = \int_0^1 t^{a-1} {1 - p(1-t)}^n / {1 - p_bar(1-t)}^{n+a+b+1} dt.
///
/// Evaluated as the binomial mixture sum_x f(x|n,p) I(x+a, n+a+b+1, p_bar),
/// which is exact because E_p[t^X] = {1 - p(1-t)}^n.
[[nodiscard]] double eval_J(double p, int n, double a, double b, double p_bar);

/// [t^alpha / {1 - p_bar(1-t)}^gamma] evaluated from rho to 1.
///
/// Returns exactly 0 when the two endpoint values agree to 1e-14 relative,
/// which is what makes the symmetric-interval correction vanish at x = n/2.
[[nodiscard]] double bracket_term(double alpha, double gamma, double p_lo, double p_bar);

/// I(alpha, alpha + 1, p_bar) = 1 / {(1 - p_bar) alpha}.
[[nodiscard]] double I_unit_gap_closed_form(double alpha, double p_bar);

/// I(1/2, 2, p_bar) via the arctangent closed form.
[[nodiscard]] double I_half_two_closed_form(double p_bar);

}  // namespace rbinom
