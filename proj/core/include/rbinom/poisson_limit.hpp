#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rbinom/binom_core.hpp"

namespace rbinom {

/// X ~ Po(r lambda) now, Y ~ Po(s lambda) later, prior lambda^{a-1} on
/// (0, infinity) or truncated to (0, lambda_bar].
struct PoissonConfig {
    double r = 1.0;
    double s = 1.0;
    double a = 1.0;
    std::optional<double> lambda_bar;
    void validate() const;
};

/// Posterior mean of lambda given X = x_tilde.
[[nodiscard]] double poisson_posterior_mean(int x_tilde, const PoissonConfig& config);

/// Bayesian predictive probability of Y = y_tilde given X = x_tilde.
[[nodiscard]] double poisson_predictive(int y_tilde, int x_tilde, const PoissonConfig& config);
[[nodiscard]] double log_poisson_predictive(int y_tilde, int x_tilde, const PoissonConfig& config);

/// E[lambda_hat - lambda - lambda log(lambda_hat / lambda)] for the posterior mean.
[[nodiscard]] double poisson_entropy_risk(const PoissonConfig& config, double lambda);
/// Same loss for an arbitrary estimator x -> lambda_hat(x).
[[nodiscard]] double poisson_entropy_risk(const std::function<double(int)>& estimator, double r, double lambda);

/// Binomial model matched to the Poisson one at scale K: n = round(rK),
/// l = round(sK), p_bar = lambda_bar / K, beta prior (a, 1).
struct BinomialImage {
    BinomialSetup setup;
    PriorSpec prior;
};
[[nodiscard]] BinomialImage binomial_image(const PoissonConfig& config, double K);

struct PoissonLimitReport {
    std::vector<double> K_grid;
    std::vector<double> estimator_errors;
    std::vector<double> predictive_errors;
    std::vector<double> risk_errors;
    /// True when every error family is strictly decreasing in K.
    [[nodiscard]] bool monotone() const;
};

[[nodiscard]] PoissonLimitReport limit_convergence_report(std::vector<double> K_grid, double lambda,
                                                          const PoissonConfig& config, int x_tilde);

}  // namespace rbinom
