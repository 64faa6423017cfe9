#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace maxface {

using Complex = std::complex<double>;

// Point in L^3 = (x^0, x^1, x^2), x^0 time-like.
using Vec3 = std::array<double, 3>;

inline double lorentz_inner(const Vec3& u, const Vec3& v) {
    return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

inline double euclidean_inner(const Vec3& u, const Vec3& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

inline double euclidean_norm(const Vec3& u) {
    return std::sqrt(euclidean_inner(u, u));
}

inline Vec3 operator-(const Vec3& u, const Vec3& v) {
    return {u[0] - v[0], u[1] - v[1], u[2] - v[2]};
}

inline Vec3 operator+(const Vec3& u, const Vec3& v) {
    return {u[0] + v[0], u[1] + v[1], u[2] + v[2]};
}

// Point on the Riemann sphere: a finite complex number or infinity.
// Used for punctures, Gauss-map values and valuation points.
struct SpherePoint {
    Complex value{0.0, 0.0};
    bool infinite = false;

    SpherePoint() = default;
    SpherePoint(Complex v) : value(v) {}  // NOLINT: implicit by design
    static SpherePoint infinity() { return SpherePoint{Complex{}, true}; }

    bool is_infinite() const { return infinite; }
    // Modulus, +inf for the point at infinity.
    double modulus() const {
        return infinite ? std::numeric_limits<double>::infinity() : std::abs(value);
    }
    bool operator==(const SpherePoint& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }

  private:
    SpherePoint(Complex v, bool inf) : value(v), infinite(inf) {}
};

// Result of evaluating a rational map: a sphere point (poles evaluate to infinity).
using EvalResult = SpherePoint;

// Central tolerance record.  One consistent notion of "numerically zero" for
// classification decisions; quadrature and tracing targets alongside.
struct Tolerances {
    double eval = 1e-12;           // residue-vs-quadrature agreement, eval checks
    double zero_rel = 1e-9;        // relative zero-classification tolerance
    double quad_target = 1e-10;    // quadrature convergence target (absolute)
    double classify_band = 1e-7;   // relative band for singular classification (tau)
    double trace = 1e-10;          // level-set residual bound while tracing
    double period = 1e-10;         // |Re P| bound for the period condition
};

inline std::string format_complex(Complex z) {
    std::string s = std::to_string(z.real());
    if (z.imag() >= 0) s += "+";
    s += std::to_string(z.imag()) + "i";
    return s;
}

inline std::string format_point(const SpherePoint& p) {
    return p.is_infinite() ? std::string("inf") : format_complex(p.value);
}

}  // namespace maxface
