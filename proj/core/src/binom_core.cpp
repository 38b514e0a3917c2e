#include "rbinom/binom_core.hpp"

#include <cmath>
#include <limits>

#include <boost/math/special_functions/beta.hpp>

#include "rbinom/error.hpp"
#include "rbinom/incbeta.hpp"

namespace rbinom {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// x log(x / y) with 0 log 0 = 0.
// f(x | n, p) = d/dp I_p(x+1, n-x+1) / (n+1); keeps full relative precision
// for large n, where exp of a lgamma difference loses ~log10(n) digits.
double pmf_direct(int x, int n, double p) {
    return boost::math::ibeta_derivative(x + 1.0, n - x + 1.0, p) / (n + 1.0);
}

double xlogx_over(double x, double log_y) {
    if (x == 0.0) return 0.0;
    return x * (std::log(x) - log_y);
}

}  // namespace

void BinomialSetup::validate() const {
    if (n < 1) throw DomainError("n must be at least 1");
    if (l < 1) throw DomainError("l must be at least 1");
}

Restriction Restriction::upper(double p_bar) {
    if (!(p_bar > 0.0 && p_bar < 1.0)) {
        throw DomainError("upper restriction requires 0 < p_bar < 1");
    }
    Restriction r;
    r.kind_ = RestrictionKind::upper;
    r.p_bar_ = p_bar;
    return r;
}

Restriction Restriction::interval(double p_lo, double p_bar) {
    if (!(p_lo > 0.0 && p_lo < p_bar && p_bar < 1.0)) {
        throw DomainError("interval restriction requires 0 < p_lo < p_bar < 1");
    }
    Restriction r;
    r.kind_ = RestrictionKind::interval;
    r.p_lo_ = p_lo;
    r.p_bar_ = p_bar;
    return r;
}

bool Restriction::contains(double p) const noexcept {
    switch (kind_) {
        case RestrictionKind::none: return p > 0.0 && p < 1.0;
        case RestrictionKind::upper: return p > 0.0 && p <= p_bar_;
        case RestrictionKind::interval: return p >= p_lo_ && p <= p_bar_;
    }
    return false;
}

void PriorSpec::validate() const {
    if (!(a > 0.0 && std::isfinite(a))) throw DomainError("prior exponent a must be positive");
    if (!(b > 0.0 && std::isfinite(b))) throw DomainError("prior exponent b must be positive");
}

LogChooseTable::LogChooseTable(int n) {
    if (n < 0) throw DomainError("trial count must be nonnegative");
    values_.resize(static_cast<std::size_t>(n) + 1);
    const double lg_n = std::lgamma(n + 1.0);
    for (int x = 0; x <= n; ++x) {
        values_[static_cast<std::size_t>(x)] = lg_n - std::lgamma(x + 1.0) - std::lgamma(n - x + 1.0);
    }
}

double log_binom_coef(int n, int x) {
    if (n < 0 || x < 0 || x > n) throw DomainError("binomial coefficient needs 0 <= x <= n");
    return std::lgamma(n + 1.0) - std::lgamma(x + 1.0) - std::lgamma(n - x + 1.0);
}

double log_binom_pmf(int x, int n, double p) {
    if (n < 0 || x < 0 || x > n) throw DomainError("binom_pmf needs 0 <= x <= n");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
    if (p == 0.0) return x == 0 ? 0.0 : kNegInf;
    if (p == 1.0) return x == n ? 0.0 : kNegInf;
    const double f = pmf_direct(x, n, p);
    if (f > std::numeric_limits<double>::min()) return std::log(f);
    return log_binom_coef(n, x) + x * std::log(p) + (n - x) * std::log1p(-p);
}

double binom_pmf(int x, int n, double p) {
    if (n < 0 || x < 0 || x > n) throw DomainError("binom_pmf needs 0 <= x <= n");
    if (!(p > 0.0 && p < 1.0)) return std::exp(log_binom_pmf(x, n, p));
    return pmf_direct(x, n, p);
}

std::vector<double> binom_pmf_vector(int n, double p) {
    if (n < 0) throw DomainError("trial count must be nonnegative");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    if (p == 0.0) {
        out.front() = 1.0;
        return out;
    }
    if (p == 1.0) {
        out.back() = 1.0;
        return out;
    }
    for (int x = 0; x <= n; ++x) out[static_cast<std::size_t>(x)] = pmf_direct(x, n, p);
    return out;
}

std::vector<double> binom_pmf_vector(const LogChooseTable& choose, double p) { return binom_pmf_vector(choose.n(), p); }

double entropy_loss(double d, double p) {
    if (!(d > 0.0 && d < 1.0)) throw DomainError("estimate d must lie in (0, 1)");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
    double loss = 0.0;
    if (p > 0.0 && p < 1.0) {
        // log1p forms stay accurate when d is close to p.
        loss = -p * std::log1p((d - p) / p) - (1.0 - p) * std::log1p((p - d) / (1.0 - p));
    } else {
        loss = xlogx_over(p, std::log(d)) + xlogx_over(1.0 - p, std::log1p(-d));
    }
    return loss > 0.0 ? loss : 0.0;
}

double kl_binomial(int l, double p, double q) {
    if (l < 1) throw DomainError("l must be at least 1");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
    return l * entropy_loss(q, p);
}

double log_restricted_beta(double alpha, double beta, const Restriction& restriction) {
    switch (restriction.kind()) {
        case RestrictionKind::none:
            return log_beta(alpha, beta);
        case RestrictionKind::upper: {
            const double p_bar = restriction.upper();
            return alpha * std::log(p_bar) + beta * std::log1p(-p_bar) +
                   log_eval_I(alpha, alpha + beta, p_bar);
        }
        case RestrictionKind::interval:
            return log_inc_beta_interval(alpha, beta, restriction.lower(), restriction.upper());
    }
    throw DomainError("unknown restriction");
}

}  // namespace rbinom
