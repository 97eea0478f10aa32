#include "kc/scaling.hpp"

#include <cmath>

namespace kc {

std::vector<std::string> ScalingConfig::validate() const {
    std::vector<std::string> bad;
    if (d != 2 && d != 3) bad.push_back("dimension must be 2 or 3");
    if (!(beta > 0.0)) bad.push_back("beta must be positive");
    if (!(epsilon > 0.0) || epsilon >= 0.25)
        bad.push_back("epsilon must lie in (0, 1/4)");
    if (d == 2 || d == 3) {
        double c = mu * std::pow(epsilon, d - 1);
        if (std::abs(c - 1.0) > 1e-9)
            bad.push_back("mixed scaling violated: mu*eps^(d-1) = " + std::to_string(c) +
                          ", expected 1 within 1e-9");
    }
    if (!(lambda >= 1.0)) bad.push_back("lambda must be >= 1");
    if (!(lambda < mu)) bad.push_back("lambda must be < mu");
    return bad;
}

ScalingConfig ScalingConfig::from_mu(int d, double mu, double lambda, double beta) {
    ScalingConfig c;
    c.d = d;
    c.mu = mu;
    c.lambda = lambda;
    c.beta = beta;
    c.epsilon = std::pow(mu, -1.0 / (d - 1));
    return c;
}

}  // namespace kc
