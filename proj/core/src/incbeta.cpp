#include "rbinom/incbeta.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rbinom/error.hpp"
#include "rbinom/summation.hpp"

namespace rbinom {
namespace {

constexpr double kCfTolerance = 1e-14;
constexpr int kCfMaxIterations = 500;
constexpr double kTiny = 1e-300;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be positive and finite");
    }
}

void require_upper_bound(double p_bar) {
    if (!(p_bar >= 0.0 && p_bar < 1.0)) {
        throw DomainError("p_bar must lie in (0, 1)");
    }
    if (1.0 - p_bar < kUpperBoundarySlack) {
        throw OverflowError("p_bar within 1e-12 of 1: integral diverges");
    }
}

void require_gap(double alpha, double gamma) {
    require_positive(alpha, "alpha");
    require_positive(gamma, "gamma");
    if (!(gamma > alpha)) {
        throw DomainError("gamma must exceed alpha");
    }
}

void require_interval(double p_lo, double p_bar) {
    require_upper_bound(p_bar);
    if (!(p_lo > 0.0 && p_lo < p_bar)) {
        throw DomainError("restriction requires 0 < p_lo < p_bar < 1");
    }
}

// Continued fraction for B_x(a, b) * a / {x^a (1-x)^b}; modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kCfMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kCfTolerance) return h;
    }
    throw NumericalError("incomplete beta continued fraction did not converge");
}

// The continued fraction is evaluated directly below the mean and through the
// reflected tail above it.
bool use_direct_tail(double alpha, double beta, double x) {
    return x <= alpha / (alpha + beta);
}

// log B_x(a, b) on the direct tail only.
double log_direct(double a, double b, double x) {
    return a * std::log(x) + b * std::log1p(-x) - std::log(a) +
           std::log(beta_continued_fraction(a, b, x));
}

// log(e^hi - e^lo) for hi >= lo.
double log_diff_exp(double hi, double lo) {
    if (lo == kNegInf) return hi;
    const double d = lo - hi;
    if (d >= 0.0) return kNegInf;
    return hi + std::log(-std::expm1(d));
}

double log_odds(double p) { return std::log(p) - std::log1p(-p); }

}  // namespace

void IntegralParams::validate() const {
    require_gap(alpha, gamma);
    if (p_lo) {
        require_interval(*p_lo, p_bar);
    } else {
        require_upper_bound(p_bar);
    }
}

OddsTriple OddsTriple::from_bounds(double p_lo, double p_bar) {
    require_interval(p_lo, p_bar);
    const double r_lo = p_lo / (1.0 - p_lo);
    const double r_bar = p_bar / (1.0 - p_bar);
    return {r_lo, r_bar, std::exp(log_odds(p_lo) - log_odds(p_bar))};
}

double log_beta(double a, double b) {
    require_positive(a, "a");
    require_positive(b, "b");
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double log_inc_beta_lower(double alpha, double beta, double x) {
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("x must lie in [0, 1]");
    }
    if (x == 0.0) return kNegInf;
    if (x == 1.0) return log_beta(alpha, beta);
    if (use_direct_tail(alpha, beta, x)) return log_direct(alpha, beta, x);
    const double full = log_beta(alpha, beta);
    return log_diff_exp(full, log_direct(beta, alpha, 1.0 - x));
}

double inc_beta_lower(double alpha, double beta, double x) {
    return std::exp(log_inc_beta_lower(alpha, beta, x));
}

double log_inc_beta_interval(double alpha, double beta, double lo, double hi) {
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
        throw DomainError("interval requires 0 <= lo < hi <= 1");
    }
    if (lo == 0.0) return log_inc_beta_lower(alpha, beta, hi);
    const bool lo_direct = use_direct_tail(alpha, beta, lo);
    const bool hi_direct = hi < 1.0 && use_direct_tail(alpha, beta, hi);
    if (lo_direct && hi_direct) {
        return log_diff_exp(log_direct(alpha, beta, hi), log_direct(alpha, beta, lo));
    }
    if (!lo_direct) {
        // Both on the reflected tail: difference of upper tails.
        const double upper_lo = log_direct(beta, alpha, 1.0 - lo);
        const double upper_hi = hi == 1.0 ? kNegInf : log_direct(beta, alpha, 1.0 - hi);
        return log_diff_exp(upper_lo, upper_hi);
    }
    return log_diff_exp(log_inc_beta_lower(alpha, beta, hi), log_direct(alpha, beta, lo));
}

double log_eval_I(double alpha, double gamma, double p_bar) {
    require_gap(alpha, gamma);
    require_upper_bound(p_bar);
    const double beta = gamma - alpha;
    if (p_bar == 0.0) return -std::log(alpha);
    if (use_direct_tail(alpha, beta, p_bar)) {
        // Prefactor p_bar^alpha (1-p_bar)^beta cancels exactly.
        return std::log(beta_continued_fraction(alpha, beta, p_bar)) - std::log(alpha);
    }
    return log_inc_beta_lower(alpha, beta, p_bar) - alpha * std::log(p_bar) -
           beta * std::log1p(-p_bar);
}

double eval_I(double alpha, double gamma, double p_bar) {
    return std::exp(log_eval_I(alpha, gamma, p_bar));
}

double eval_I(const IntegralParams& params) {
    params.validate();
    if (params.p_lo) {
        return eval_I_two_sided(params.alpha, params.gamma, *params.p_lo, params.p_bar);
    }
    return eval_I(params.alpha, params.gamma, params.p_bar);
}

double log_eval_I_two_sided(double alpha, double gamma, double p_lo, double p_bar) {
    require_gap(alpha, gamma);
    require_interval(p_lo, p_bar);
    const double beta = gamma - alpha;
    return log_inc_beta_interval(alpha, beta, p_lo, p_bar) - alpha * std::log(p_bar) -
           beta * std::log1p(-p_bar);
}

double eval_I_two_sided(double alpha, double gamma, double p_lo, double p_bar) {
    return std::exp(log_eval_I_two_sided(alpha, gamma, p_lo, p_bar));
}

double eval_J(double p, int n, double a, double b, double p_bar) {
    require_positive(a, "a");
    require_positive(b, "b");
    if (n < 1) throw DomainError("n must be at least 1");
    if (!(p >= 0.0 && p < 1.0)) throw DomainError("p must lie in [0, 1)");
    require_upper_bound(p_bar);
    const double gamma = n + a + b + 1.0;
    if (p == 0.0) return eval_I(a, gamma, p_bar);
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    KahanSum sum;
    for (int x = 0; x <= n; ++x) {
        const double log_w = std::lgamma(n + 1.0) - std::lgamma(x + 1.0) -
                             std::lgamma(n - x + 1.0) + x * log_p + (n - x) * log_q;
        sum += std::exp(log_w + log_eval_I(x + a, gamma, p_bar));
    }
    return sum.value();
}

double bracket_term(double alpha, double gamma, double p_lo, double p_bar) {
    require_positive(alpha, "alpha");
    require_positive(gamma, "gamma");
    require_interval(p_lo, p_bar);
    // 1 - p_bar(1 - rho) = (1 - p_bar) / (1 - p_lo), so the lower endpoint is
    // rho^alpha {(1 - p_lo)/(1 - p_bar)}^gamma.
    const double log_lower = alpha * (log_odds(p_lo) - log_odds(p_bar)) +
                             gamma * (std::log1p(-p_lo) - std::log1p(-p_bar));
    const double diff = -std::expm1(log_lower);
    if (std::fabs(diff) < 1e-14) return 0.0;
    return diff;
}

double I_unit_gap_closed_form(double alpha, double p_bar) {
    require_positive(alpha, "alpha");
    require_upper_bound(p_bar);
    return 1.0 / ((1.0 - p_bar) * alpha);
}

double I_half_two_closed_form(double p_bar) {
    require_upper_bound(p_bar);
    if (p_bar == 0.0) return 2.0;
    const double q = 1.0 - p_bar;
    return (1.0 + std::atan(std::sqrt(p_bar / q)) / std::sqrt(p_bar * q)) / q;
}

}  // namespace rbinom
