#include "maxface/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "maxface/errors.hpp"

namespace maxface {

PathSpec PathSpec::polyline(std::vector<Complex> pts) {
    if (pts.size() < 2) throw ValidationError("PathSpec: polyline needs at least two waypoints");
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i] == pts[i - 1])
            throw ValidationError("PathSpec: consecutive waypoints must be distinct");
    PathSpec p;
    p.kind = Kind::Polyline;
    p.waypoints = std::move(pts);
    return p;
}

PathSpec PathSpec::circle(Complex center, double radius, bool ccw) {
    if (!(radius > 0.0)) throw ValidationError("PathSpec: circle radius must be positive");
    PathSpec p;
    p.kind = Kind::Circle;
    p.center = center;
    p.radius = radius;
    p.counterclockwise = ccw;
    return p;
}

Complex contour_integral(const ComplexFn& f, const PathSpec& circle, const Tolerances& tol) {
    if (circle.kind != PathSpec::Kind::Circle)
        throw ValidationError("contour_integral: PathSpec must be a circle");
    const double r = circle.radius;
    const Complex c = circle.center;

    auto estimate = [&](int n, double& mass) {
        Complex sum{};
        mass = 0.0;
        for (int k = 0; k < n; ++k) {
            const double th = 2.0 * M_PI * k / n;
            const Complex e{std::cos(th), std::sin(th)};
            const Complex v = f(c + r * e) * e;
            sum += v;
            mass += std::abs(v);
        }
        const Complex scale = Complex{0.0, 2.0 * M_PI * r / n};
        mass *= 2.0 * M_PI * r / n;
        return scale * sum;
    };

    double mass = 0.0;
    Complex prev = estimate(32, mass);
    for (int n = 64; n <= (1 << 20); n *= 2) {
        const Complex cur = estimate(n, mass);
        const double gap = std::abs(cur - prev);
        if (gap <= std::max(tol.quad_target, 1e-14 * mass))
            return circle.counterclockwise ? cur : -cur;
        prev = cur;
    }
    throw QuadratureFailure("contour_integral: no convergence; last estimates " +
                            format_complex(prev));
}

namespace {

// 12-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
constexpr int kGLHalf = 6;
constexpr double kGLNode[kGLHalf] = {
    0.1252334085114689154724414, 0.3678314989981801937526915, 0.5873179542866174472967024,
    0.7699026741943046870368938, 0.9041172563704748566784659, 0.9815606342467192506905491,
};
constexpr double kGLWeight[kGLHalf] = {
    0.2491470458134027850005624, 0.2334925365383548087608499, 0.2031674267230659217490645,
    0.1600783285433462263346525, 0.1069393259953184309602547, 0.0471753363865118271946160,
};

using Complex3 = std::array<Complex, 3>;

inline Complex vzero(Complex) { return {}; }
inline Complex3 vzero(const Complex3&) { return {Complex{}, Complex{}, Complex{}}; }
inline Complex vadd(Complex a, Complex b) { return a + b; }
inline Complex3 vadd(const Complex3& a, const Complex3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Complex vscale(Complex a, Complex s) { return a * s; }
inline Complex3 vscale(const Complex3& a, Complex s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline Complex vsub(Complex a, Complex b) { return a - b; }
inline Complex3 vsub(const Complex3& a, const Complex3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline double vmax_abs(Complex a) { return std::abs(a); }
inline double vmax_abs(const Complex3& a) {
    return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

template <typename Value>
struct PanelResult {
    Value integral;
    double mass = 0.0;  // sum |f| |dz|, roundoff floor reference
};

template <typename Value, typename Eval>
PanelResult<Value> gauss_panel(const Eval& f, Complex a, Complex b) {
    const Complex mid = 0.5 * (a + b);
    const Complex half = 0.5 * (b - a);
    PanelResult<Value> out{vzero(Value{}), 0.0};
    for (int i = 0; i < kGLHalf; ++i) {
        const Complex zp = mid + kGLNode[i] * half;
        const Complex zm = mid - kGLNode[i] * half;
        const Value fv = vadd(f(zp, out.mass), f(zm, out.mass));
        out.integral = vadd(out.integral, vscale(fv, Complex{kGLWeight[i], 0.0}));
    }
    out.integral = vscale(out.integral, half);
    out.mass *= std::abs(half);
    return out;
}

template <typename Value, typename Eval>
Value adaptive_segment(const Eval& f, Complex a, Complex b, double tol_abs, int depth) {
    const auto whole = gauss_panel<Value>(f, a, b);
    const Complex mid = 0.5 * (a + b);
    const auto left = gauss_panel<Value>(f, a, mid);
    const auto right = gauss_panel<Value>(f, mid, b);
    const Value refined = vadd(left.integral, right.integral);
    const double mass = left.mass + right.mass;
    const double err = vmax_abs(vsub(refined, whole.integral));
    if (err <= std::max(tol_abs, 5e-14 * mass)) return refined;
    if (depth >= 30)
        throw QuadratureFailure("path_integral: segment subdivision limit reached near " +
                                format_complex(mid));
    return vadd(adaptive_segment<Value>(f, a, mid, 0.5 * tol_abs, depth + 1),
                adaptive_segment<Value>(f, mid, b, 0.5 * tol_abs, depth + 1));
}

void check_poles(const PathSpec& path, const std::vector<Complex>& poles, double guard) {
    if (poles.empty() || guard <= 0.0) return;
    for (size_t i = 1; i < path.waypoints.size(); ++i)
        for (const Complex& p : poles)
            if (segment_distance(p, path.waypoints[i - 1], path.waypoints[i]) < guard)
                throw PathThroughSingularity("path passes within guard radius of pole " +
                                             format_complex(p));
}

}  // namespace

double segment_distance(Complex p, Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a).real() * d.real() + (p - a).imag() * d.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

Complex path_integral(const ComplexFn& f, const PathSpec& path, const std::vector<Complex>& poles,
                      double guard_radius, const Tolerances& tol) {
    if (path.kind != PathSpec::Kind::Polyline)
        throw ValidationError("path_integral: PathSpec must be a polyline");
    check_poles(path, poles, guard_radius);
    Complex total{};
    for (size_t i = 1; i < path.waypoints.size(); ++i) {
        auto eval = [&](Complex z, double& mass) {
            const Complex v = f(z);
            mass += std::abs(v);
            return v;
        };
        total += adaptive_segment<Complex>(eval, path.waypoints[i - 1], path.waypoints[i],
                                           tol.quad_target, 0);
    }
    return total;
}

std::array<Complex, 3> path_integral3(const ComplexFn3& f, const PathSpec& path,
                                      const std::vector<Complex>& poles, double guard_radius,
                                      const Tolerances& tol) {
    if (path.kind != PathSpec::Kind::Polyline)
        throw ValidationError("path_integral3: PathSpec must be a polyline");
    check_poles(path, poles, guard_radius);
    std::array<Complex, 3> total{Complex{}, Complex{}, Complex{}};
    for (size_t i = 1; i < path.waypoints.size(); ++i) {
        auto eval = [&](Complex z, double& mass) {
            const auto v = f(z);
            mass += std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]);
            return v;
        };
        const auto seg = adaptive_segment<std::array<Complex, 3>>(
            eval, path.waypoints[i - 1], path.waypoints[i], tol.quad_target, 0);
        for (int k = 0; k < 3; ++k) total[k] += seg[k];
    }
    return total;
}

double default_guard_radius(const std::vector<Complex>& obstacles) {
    double spacing = 1.0;
    for (size_t i = 0; i < obstacles.size(); ++i)
        for (size_t j = i + 1; j < obstacles.size(); ++j)
            spacing = std::min(spacing, std::abs(obstacles[i] - obstacles[j]));
    return 1e-3 * spacing;
}

std::vector<Complex> route_avoiding(Complex from, Complex to, const std::vector<Complex>& obstacles,
                                    double guard_radius) {
    std::vector<Complex> route{from};
    if (from == to) throw ValidationError("route_avoiding: endpoints coincide");
    const Complex d = (to - from) / std::abs(to - from);
    const double R = guard_radius;

    struct Detour {
        double t;  // projection parameter of the obstacle
        Complex center;
    };
    std::vector<Detour> detours;
    for (const Complex& c : obstacles) {
        if (segment_distance(c, from, to) >= R) continue;
        if (std::abs(c - from) <= R || std::abs(c - to) <= R)
            throw PathThroughSingularity("route endpoint within guard radius of " +
                                         format_complex(c));
        const double t = ((c - from).real() * d.real() + (c - from).imag() * d.imag());
        detours.push_back({t, c});
    }
    std::sort(detours.begin(), detours.end(), [](const Detour& a, const Detour& b) {
        return a.t < b.t;
    });

    for (const Detour& det : detours) {
        const Complex foot = from + det.t * d;
        const double h = std::abs(det.center - foot);
        const double t_half = std::sqrt(std::max(R * R - h * h, 0.0));
        const Complex entry = foot - t_half * d;
        const Complex exit = foot + t_half * d;
        double phi_in = std::arg(entry - det.center);
        double phi_out = std::arg(exit - det.center);
        // Pick the shorter way around; when the obstacle sits exactly on the
        // segment both arcs tie and we pass on the left.
        double delta = phi_out - phi_in;
        while (delta > M_PI) delta -= 2.0 * M_PI;
        while (delta < -M_PI) delta += 2.0 * M_PI;
        if (std::abs(std::abs(delta) - M_PI) < 1e-12) {
            // Obstacle on the line: both arcs tie.  Bulge away from the
            // obstacle's side; exactly on the line, pass on the left.
            const double side = (std::conj(d) * (det.center - from)).imag();
            delta = (side > 0.0) ? M_PI : -M_PI;
        }
        const int steps = std::max(2, static_cast<int>(std::ceil(std::abs(delta) / (M_PI / 16))));
        if (std::abs(entry - route.back()) > 1e-15) route.push_back(entry);
        for (int s = 1; s < steps; ++s) {
            const double phi = phi_in + delta * s / steps;
            route.push_back(det.center + R * Complex{std::cos(phi), std::sin(phi)});
        }
        route.push_back(exit);
    }
    if (std::abs(to - route.back()) > 1e-15) route.push_back(to);
    return route;
}

}  // namespace maxface
