#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace kc {

/// Fixed-capacity d-vector (d = 2 or 3). Components beyond dim() are kept at zero
/// so that dot products and norms are dimension-agnostic.
struct Vec {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    int d = 3;

    Vec() = default;
    Vec(double x, double y, double z) : c{x, y, z}, d(3) {}
    Vec(double x, double y) : c{x, y, 0.0}, d(2) {}
    static Vec zero(int dim) { Vec v; v.d = dim; return v; }

    int dim() const { return d; }
    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }

    Vec& operator+=(const Vec& o) { for (int i = 0; i < d; ++i) c[i] += o.c[i]; return *this; }
    Vec& operator-=(const Vec& o) { for (int i = 0; i < d; ++i) c[i] -= o.c[i]; return *this; }
    Vec& operator*=(double s) { for (int i = 0; i < d; ++i) c[i] *= s; return *this; }

    friend Vec operator+(Vec a, const Vec& b) { a += b; return a; }
    friend Vec operator-(Vec a, const Vec& b) { a -= b; return a; }
    friend Vec operator*(double s, Vec a) { a *= s; return a; }
    friend Vec operator*(Vec a, double s) { a *= s; return a; }
    friend Vec operator-(Vec a) { a *= -1.0; return a; }
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int i = 0; i < a.d; ++i) s += a.c[i] * b.c[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

}  // namespace kc
