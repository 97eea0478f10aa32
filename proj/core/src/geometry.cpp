#include "kc/geometry.hpp"

#include <cmath>

namespace kc {

Position wrap_position(Position x) {
    for (int i = 0; i < x.dim(); ++i) {
        x[i] -= std::floor(x[i]);
        if (x[i] >= 1.0) x[i] = 0.0;  // guard against floor(1.0 - eps) edge
    }
    return x;
}

Vec min_image_displacement(const Position& a, const Position& b) {
    Vec d = Vec::zero(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        double t = b[i] - a[i];
        t -= std::round(t);
        // round() sends +-0.5 away from zero; force representative into [-1/2, 1/2)
        if (t < -0.5) t += 1.0;
        if (t >= 0.5) t -= 1.0;
        // tie at the half-torus boundary resolves to +1/2
        if (t == -0.5) t = 0.5;
        d[i] = t;
    }
    return d;
}

double torus_distance(const Position& a, const Position& b) {
    return norm(min_image_displacement(a, b));
}

std::pair<Velocity, Velocity> scatter(const Velocity& v, const Velocity& w, const Vec& omega) {
    double n2 = norm2(omega);
    if (std::abs(n2 - 1.0) > 1e-10)
        throw contract_error("scatter: omega is not a unit vector");
    double p = dot(v - w, omega);
    return {v - p * omega, w + p * omega};
}

double sphere_area(int d) {
    // |S^{d-1}|: 2 for d=1, 2*pi for d=2, 4*pi for d=3
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * M_PI;
        case 3: return 4.0 * M_PI;
        default: {
            double g = std::tgamma(d / 2.0);
            return 2.0 * std::pow(M_PI, d / 2.0) / g;
        }
    }
}

double flux_angle_norm(int d) { return sphere_area(d - 1) / (d - 1); }

DeviationAngle sample_flux_angle(const Vec& u, Rng& rng) {
    double nu = norm(u);
    if (nu <= 0.0)
        throw degenerate_input_error("sample_flux_angle: zero relative velocity");
    Vec uhat = (1.0 / nu) * u;
    // sigma uniform on the sphere; omega = (uhat - sigma)/|uhat - sigma| carries the
    // flux density <omega,u>_+ (the change-of-angle Jacobian |u|/4 in d=3).
    for (;;) {
        Vec sigma = rng.unit_vector(u.dim());
        Vec w = uhat - sigma;
        double nw = norm(w);
        if (nw < 1e-12) continue;  // sigma == uhat: measure-zero degenerate draw
        return DeviationAngle{(1.0 / nw) * w, sigma};
    }
}

}  // namespace kc
