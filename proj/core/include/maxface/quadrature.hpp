#pragma once

#include <array>
#include <functional>
#include <vector>

#include "maxface/types.hpp"

namespace maxface {

// Integration contour: either a polyline through waypoints or a full circle.
struct PathSpec {
    enum class Kind { Polyline, Circle };

    Kind kind = Kind::Polyline;
    std::vector<Complex> waypoints;  // polyline
    Complex center{};                // circle
    double radius = 0.0;
    bool counterclockwise = true;

    static PathSpec polyline(std::vector<Complex> pts);
    static PathSpec circle(Complex center, double radius, bool ccw = true);
};

using ComplexFn = std::function<Complex(Complex)>;
using ComplexFn3 = std::function<std::array<Complex, 3>(Complex)>;

// Closed-circle integral by the equally spaced trapezoid rule (spectrally
// accurate for analytic integrands); node count doubles until successive
// estimates agree.  Throws QuadratureFailure on non-convergence.
Complex contour_integral(const ComplexFn& f, const PathSpec& circle, const Tolerances& tol = {});

// Line integral along a polyline by adaptive Gauss-Legendre with segment
// halving.  `poles` are guarded: a pole within guard_radius of the path
// raises PathThroughSingularity naming the offending pole.
Complex path_integral(const ComplexFn& f, const PathSpec& path,
                      const std::vector<Complex>& poles = {}, double guard_radius = 0.0,
                      const Tolerances& tol = {});

// Vector variant sharing the subdivision across three components.
std::array<Complex, 3> path_integral3(const ComplexFn3& f, const PathSpec& path,
                                      const std::vector<Complex>& poles = {},
                                      double guard_radius = 0.0, const Tolerances& tol = {});

// Guard radius = 1e-3 x local obstacle spacing (1 when fewer than two
// obstacles are present).
double default_guard_radius(const std::vector<Complex>& obstacles);

// Deterministic route from `from` to `to`: the straight segment, deflected
// around each obstacle closer than guard_radius by a circular-arc detour on
// the side that adds the least length.
std::vector<Complex> route_avoiding(Complex from, Complex to, const std::vector<Complex>& obstacles,
                                    double guard_radius);

// Distance from point p to segment [a, b].
double segment_distance(Complex p, Complex a, Complex b);

}  // namespace maxface
