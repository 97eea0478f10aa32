#pragma once

#include <string>
#include <vector>

namespace kc {

/// Mixed-scaling parameters of the grand-canonical mixture:
/// mu * eps^{d-1} = 1 keeps the mean free path order one, lambda is the
/// tagged chemical potential with 1 <= lambda < mu.
struct ScalingConfig {
    int d = 3;
    double epsilon = 0.1;   // sphere diameter in torus units
    double mu = 100.0;      // background chemical potential
    double lambda = 10.0;   // tagged chemical potential
    double beta = 1.0;      // inverse temperature

    /// Returns human-readable violations; empty means valid.
    std::vector<std::string> validate() const;
    bool valid() const { return validate().empty(); }

    double p_mu() const { return lambda / mu; }

    /// Convenience: epsilon from mu via the mixed-scaling constraint.
    static ScalingConfig from_mu(int d, double mu, double lambda, double beta);
};

}  // namespace kc
