#include "rbinom/poisson_limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "rbinom/error.hpp"
#include "rbinom/estimators.hpp"
#include "rbinom/parallel.hpp"
#include "rbinom/predictive.hpp"
#include "rbinom/risk.hpp"
#include "rbinom/summation.hpp"

namespace rbinom {
namespace {

constexpr double kTailMass = 1e-15;

// log P(shape, z), the regularized lower incomplete gamma function.
double log_gamma_p(double shape, double z) {
    const double v = boost::math::gamma_p(shape, z);
    return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
}

void check_count(int c, const char* name) {
    if (c < 0) throw DomainError(std::string(name) + " must be nonnegative");
}

double poisson_loss(double estimate, double lambda) {
    if (!(estimate > 0.0)) throw DomainError("estimate must be positive");
    const double t = estimate / lambda;
    // lambda (t - 1 - log t) >= 0.
    return std::max(0.0, lambda * ((t - 1.0) - std::log(t)));
}

}  // namespace

void PoissonConfig::validate() const {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be positive");
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("s must be positive");
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("a must be positive");
    if (lambda_bar && !(*lambda_bar > 0.0)) throw DomainError("lambda_bar must be positive");
}

double poisson_posterior_mean(int x_tilde, const PoissonConfig& config) {
    config.validate();
    check_count(x_tilde, "x_tilde");
    const double shape = x_tilde + config.a;
    if (!config.lambda_bar || std::isinf(*config.lambda_bar)) return shape / config.r;
    const double z = config.r * *config.lambda_bar;
    // Gamma(shape + 1) P(shape + 1, z) / {Gamma(shape) P(shape, z)} / r.
    const double log_ratio = log_gamma_p(shape + 1.0, z) - log_gamma_p(shape, z);
    return shape / config.r * std::exp(log_ratio);
}

double log_poisson_predictive(int y_tilde, int x_tilde, const PoissonConfig& config) {
    config.validate();
    check_count(x_tilde, "x_tilde");
    check_count(y_tilde, "y_tilde");
    const double shape = x_tilde + config.a;
    const double total = config.r + config.s;
    double v = std::lgamma(y_tilde + shape) - std::lgamma(y_tilde + 1.0) - std::lgamma(shape) +
               y_tilde * std::log(config.s / total) + shape * std::log(config.r / total);
    if (config.lambda_bar && !std::isinf(*config.lambda_bar)) {
        const double lb = *config.lambda_bar;
        v += log_gamma_p(y_tilde + shape, total * lb) - log_gamma_p(shape, config.r * lb);
    }
    return v;
}

double poisson_predictive(int y_tilde, int x_tilde, const PoissonConfig& config) {
    return std::exp(log_poisson_predictive(y_tilde, x_tilde, config));
}

double poisson_entropy_risk(const std::function<double(int)>& estimator, double r, double lambda) {
    if (!(r > 0.0)) throw DomainError("r must be positive");
    if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
    const double mu = r * lambda;
    const double log_mu = std::log(mu);
    KahanSum sum;
    for (int x = 0;; ++x) {
        const double pmf = std::exp(x * log_mu - mu - std::lgamma(x + 1.0));
        if (pmf > 0.0) sum += pmf * poisson_loss(estimator(x), lambda);
        // P(X > x) = P(x + 1, mu).
        if (x >= mu && boost::math::gamma_p(x + 1.0, mu) < kTailMass) break;
    }
    return sum.value();
}

double poisson_entropy_risk(const PoissonConfig& config, double lambda) {
    config.validate();
    if (config.lambda_bar && !(lambda <= *config.lambda_bar)) {
        throw DomainError("lambda must not exceed lambda_bar");
    }
    return poisson_entropy_risk([&](int x) { return poisson_posterior_mean(x, config); }, config.r, lambda);
}

BinomialImage binomial_image(const PoissonConfig& config, double K) {
    config.validate();
    if (!(K > 0.0) || !std::isfinite(K)) throw DomainError("K must be positive");
    const double n = std::round(config.r * K);
    const double l = std::round(config.s * K);
    if (n < 1.0 || l < 1.0) throw DomainError("scale too small: n or l rounds to zero");
    if (n > 1e8 || l > 1e8) throw DomainError("scale too large");
    BinomialImage img;
    img.setup = {static_cast<int>(n), static_cast<int>(l)};
    img.prior.a = config.a;
    img.prior.b = 1.0;
    if (config.lambda_bar) {
        const double p_bar = *config.lambda_bar / K;
        if (!(p_bar < 1.0)) throw DomainError("induced p_bar = lambda_bar / K must be below 1");
        img.prior.restriction = Restriction::upper(p_bar);
    }
    return img;
}

bool PoissonLimitReport::monotone() const {
    auto decreasing = [](const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (!(v[i] < v[i - 1])) return false;
        }
        return true;
    };
    return decreasing(estimator_errors) && decreasing(predictive_errors) && decreasing(risk_errors);
}

PoissonLimitReport limit_convergence_report(std::vector<double> K_grid, double lambda, const PoissonConfig& config,
                                            int x_tilde) {
    config.validate();
    check_count(x_tilde, "x_tilde");
    if (K_grid.empty()) throw DomainError("K grid must be nonempty");
    for (std::size_t i = 1; i < K_grid.size(); ++i) {
        if (!(K_grid[i] > K_grid[i - 1])) throw DomainError("K grid must be increasing");
    }
    if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
    if (config.lambda_bar && lambda > *config.lambda_bar) throw DomainError("lambda must not exceed lambda_bar");

    std::vector<BinomialImage> images;
    images.reserve(K_grid.size());
    for (const double K : K_grid) {
        images.push_back(binomial_image(config, K));
        if (x_tilde > images.back().setup.n) throw DomainError("x_tilde exceeds the induced n");
        if (!(lambda / K < 1.0)) throw DomainError("induced p = lambda / K must be below 1");
    }

    const double lambda_hat = poisson_posterior_mean(x_tilde, config);
    const double poisson_risk = poisson_entropy_risk(config, lambda);

    PoissonLimitReport report;
    report.K_grid = std::move(K_grid);
    const std::size_t m = report.K_grid.size();
    report.estimator_errors.resize(m);
    report.predictive_errors.resize(m);
    report.risk_errors.resize(m);

    detail::parallel_for(m, [&](std::size_t i) {
        const double K = report.K_grid[i];
        const auto& img = images[i];
        const int n = img.setup.n;
        const int l = img.setup.l;
        const double scale = n / config.r;

        const auto table = make_estimate_table(n, img.prior);
        report.estimator_errors[i] = std::fabs(scale * table[x_tilde] - lambda_hat);

        double sup = 0.0;
        for (int y = 0; y <= l; ++y) {
            const double diff = bayes_predictive(y, x_tilde, img.setup, img.prior) - poisson_predictive(y, x_tilde, config);
            sup = std::max(sup, std::fabs(diff));
        }
        // Beyond l the binomial density is zero.
        for (int y = l + 1;; ++y) {
            const double g = poisson_predictive(y, x_tilde, config);
            sup = std::max(sup, g);
            if (g < kTailMass * 1e-3) break;
        }
        report.predictive_errors[i] = sup;

        report.risk_errors[i] = std::fabs(scale * point_risk(table, lambda / K) - poisson_risk);
    });
    return report;
}

}  // namespace rbinom
