#pragma once

#include <vector>

namespace rbinom {

/// Current (n) and future (l) trial counts.
struct BinomialSetup {
    int n = 1;
    int l = 1;

    void validate() const;
};

enum class RestrictionKind { none, upper, interval };

/// Parameter restriction: none, (0, p_bar], or [p_lo, p_bar].
class Restriction {
public:
    static Restriction unrestricted() { return {}; }
    static Restriction upper(double p_bar);
    static Restriction interval(double p_lo, double p_bar);

    [[nodiscard]] RestrictionKind kind() const noexcept { return kind_; }
    [[nodiscard]] double lower() const noexcept { return p_lo_; }
    [[nodiscard]] double upper() const noexcept { return p_bar_; }
    [[nodiscard]] bool contains(double p) const noexcept;

private:
    RestrictionKind kind_ = RestrictionKind::none;
    double p_lo_ = 0.0;
    double p_bar_ = 1.0;
};

/// Beta prior p^{a-1}(1-p)^{b-1}, optionally truncated to a restriction.
struct PriorSpec {
    double a = 1.0;
    double b = 1.0;
    Restriction restriction;

    void validate() const;
    [[nodiscard]] PriorSpec untruncated() const { return {a, b, Restriction::unrestricted()}; }
};

/// log C(n, x) for every x in {0, ..., n}.
class LogChooseTable {
public:
    explicit LogChooseTable(int n);

    [[nodiscard]] int n() const noexcept { return static_cast<int>(values_.size()) - 1; }
    [[nodiscard]] double operator[](int x) const { return values_[static_cast<std::size_t>(x)]; }

private:
    std::vector<double> values_;
};

[[nodiscard]] double log_binom_coef(int n, int x);

/// log f(x | n, p); -inf where the pmf is zero (p in {0, 1}).
[[nodiscard]] double log_binom_pmf(int x, int n, double p);
[[nodiscard]] double binom_pmf(int x, int n, double p);

/// f(x | n, p) for x = 0..n.
[[nodiscard]] std::vector<double> binom_pmf_vector(int n, double p);
[[nodiscard]] std::vector<double> binom_pmf_vector(const LogChooseTable& choose, double p);

/// Entropy loss L(d, p) = p log(p/d) + (1-p) log((1-p)/(1-d)), in nats.
[[nodiscard]] double entropy_loss(double d, double p);

/// KL divergence from Bin(l, p) to Bin(l, q); equals l * L(q, p).
[[nodiscard]] double kl_binomial(int l, double p, double q);

/// log of \int p^{alpha-1} (1-p)^{beta-1} dp over the restriction's support.
[[nodiscard]] double log_restricted_beta(double alpha, double beta, const Restriction& restriction);

}  // namespace rbinom
