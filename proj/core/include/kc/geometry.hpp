#pragma once

#include <optional>
#include <stdexcept>

#include "kc/rng.hpp"
#include "kc/vec.hpp"

namespace kc {

/// Position on the unit torus: every component in [0,1).
using Position = Vec;
using Velocity = Vec;

/// Line-of-centers / post-collisional-direction pair for one hard-sphere encounter.
/// sigma is the direction of the scattered relative velocity; omega the contact normal.
struct DeviationAngle {
    Vec omega;
    Vec sigma;
};

/// Wrap a point back into [0,1)^d.
Position wrap_position(Position x);

/// Representative of b - a with all components in [-1/2, 1/2); ties at +-1/2
/// resolve to +1/2 so replay is deterministic.
Vec min_image_displacement(const Position& a, const Position& b);

double torus_distance(const Position& a, const Position& b);

/// Hard-sphere exchange of normal momentum along the unit contact normal omega.
/// Grazing encounters (zero normal relative velocity) return the inputs.
std::pair<Velocity, Velocity> scatter(const Velocity& v, const Velocity& w, const Vec& omega);

/// Surface measure of S^{d-1}.
double sphere_area(int d);

/// kappa_d = |S^{d-2}|/(d-1), the constant in  int_{S^{d-1}} <omega,u>_+ domega = kappa_d |u|.
double flux_angle_norm(int d);

/// Draw omega on the half-sphere {<omega,u> > 0} with density proportional to
/// <omega,u>_+, by drawing sigma uniformly on the sphere and mapping through the
/// deflection geometry; the paired sigma is the scattered direction of u.
DeviationAngle sample_flux_angle(const Vec& u, Rng& rng);

struct degenerate_input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct contract_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace kc
