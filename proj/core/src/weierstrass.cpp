#include "maxface/weierstrass.hpp"

#include <algorithm>
#include <cmath>

#include "maxface/errors.hpp"

namespace maxface {

namespace {

bool is_puncture(const std::vector<SpherePoint>& punctures, const SpherePoint& p,
                 const Tolerances& tol) {
    // Roots found numerically carry the sqrt(eps) conditioning of multiple
    // roots, so the match band sits well above zero_rel.
    const double band = std::max(1e-6, tol.zero_rel);
    for (const auto& q : punctures) {
        if (p.is_infinite() || q.is_infinite()) {
            if (p.is_infinite() && q.is_infinite()) return true;
            continue;
        }
        if (std::abs(p.value - q.value) <= band * (1.0 + std::abs(q.value))) return true;
    }
    return false;
}

void validate(const WeierstrassData& d, const Tolerances& tol) {
    if (d.omega_hat.is_zero())
        throw ValidationError(d.label + ": omega_hat is identically zero");

    for (size_t i = 0; i < d.punctures.size(); ++i)
        for (size_t j = i + 1; j < d.punctures.size(); ++j) {
            const auto &a = d.punctures[i], &b = d.punctures[j];
            if (a.is_infinite() != b.is_infinite()) continue;
            if (a.is_infinite() ||
                std::abs(a.value - b.value) <= tol.zero_rel * (1.0 + std::abs(a.value)))
                throw ValidationError(d.label + ": punctures must be distinct (" +
                                      format_point(a) + ", " + format_point(b) + ")");
        }

    // g must not be a constant of modulus one: (1-|g|^2)^2 would vanish
    // identically.
    if (d.g.is_constant()) {
        const double m = d.g.eval(Complex{}).modulus();
        if (std::abs(m - 1.0) <= tol.zero_rel)
            throw ValidationError(d.label + ": g is a constant of modulus one");
    }

    // Metric condition off the punctures: zeros of omega_hat pair with poles
    // of g (order exactly doubled), poles of omega_hat only at punctures.
    auto mult_in = [&](const Polynomial& p, Complex q) {
        return p.is_zero() ? 0 : root_multiplicity(p, q, tol);
    };
    if (d.omega_hat.num().degree() >= 1) {
        for (const auto& zero : poly_roots(d.omega_hat.num(), tol)) {
            if (is_puncture(d.punctures, SpherePoint{zero.root}, tol)) continue;
            const int k = mult_in(d.g.den(), zero.root);
            if (zero.multiplicity != 2 * k || k == 0 ||
                mult_in(d.g.num(), zero.root) > 0)
                throw ValidationError(
                    d.label + ": metric condition fails at " + format_complex(zero.root) +
                    " (omega_hat zero of order " + std::to_string(zero.multiplicity) +
                    " needs a g pole of order " + std::to_string(zero.multiplicity) + "/2)");
        }
    }
    if (d.omega_hat.den().degree() >= 1) {
        for (const auto& pole : poly_roots(d.omega_hat.den(), tol))
            if (!is_puncture(d.punctures, SpherePoint{pole.root}, tol))
                throw ValidationError(d.label + ": omega_hat has a pole off the punctures at " +
                                      format_complex(pole.root));
    }
    if (d.g.den().degree() >= 1) {
        for (const auto& pole : poly_roots(d.g.den(), tol)) {
            if (is_puncture(d.punctures, SpherePoint{pole.root}, tol)) continue;
            const int zero_order = mult_in(d.omega_hat.num(), pole.root);
            const int pole_order = mult_in(d.omega_hat.den(), pole.root);
            if (pole_order > 0 || zero_order != 2 * pole.multiplicity)
                throw ValidationError(d.label + ": metric condition fails at g pole " +
                                      format_complex(pole.root) + " (needs omega_hat zero of order " +
                                      std::to_string(2 * pole.multiplicity) + ")");
        }
    }
    if (!is_puncture(d.punctures, SpherePoint::infinity(), tol)) {
        const int g_pole_at_inf = std::max(0, d.g.num().degree() - d.g.den().degree());
        const RationalMap form_inf = form_in_inverted_chart(d.omega_hat, tol);
        const int s = order_at(form_inf, SpherePoint{Complex{}}, tol);
        if (s != 2 * g_pole_at_inf)
            throw ValidationError(d.label +
                                  ": metric condition fails at infinity (form order " +
                                  std::to_string(s) + ", g pole order " +
                                  std::to_string(g_pole_at_inf) + ")");
    }

    if (is_puncture(d.punctures, SpherePoint{d.base_point}, tol))
        throw ValidationError(d.label + ": base point coincides with a puncture");
    for (const auto& phi : phi_forms(d))
        if (!phi.is_zero() && order_at(phi, SpherePoint{d.base_point}, tol) < 0)
            throw ValidationError(d.label + ": base point sits on a pole of the forms");
}

}  // namespace

WeierstrassData make_weierstrass_data(RationalMap g, RationalMap omega_hat,
                                      std::vector<SpherePoint> punctures, Complex base_point,
                                      std::string label, SurfaceConvention convention,
                                      const Tolerances& tol) {
    WeierstrassData d{std::move(g),       std::move(omega_hat), std::move(punctures),
                      base_point,         std::move(label),     convention};
    validate(d, tol);
    return d;
}

std::array<RationalMap, 3> phi_forms(const WeierstrassData& data) {
    const RationalMap& g = data.g;
    const RationalMap& w = data.omega_hat;
    const RationalMap one = RationalMap::constant(1.0);
    const RationalMap g2 = g * g;
    const Complex i{0.0, 1.0};
    if (data.convention == SurfaceConvention::Maxface) {
        return {(g * w) * Complex{-2.0, 0.0}, (one + g2) * w, ((one - g2) * w) * i};
    }
    // Euclidean-minimal, stored (x^0, x^1, x^2) = (f0^3, f0^1, f0^2).
    return {(g * w) * Complex{2.0, 0.0}, (one - g2) * w, ((one + g2) * w) * i};
}

Polynomial nullity_defect(const WeierstrassData& data) {
    // Factored numerators over the common denominator d_g^2 d_w keep the
    // cancellation exact for exactly-representable data.
    const Polynomial& ng = data.g.num();
    const Polynomial& dg = data.g.den();
    const Polynomial& nw = data.omega_hat.num();
    const Polynomial P = dg * dg;
    const Polynomial Q = ng * ng;
    const Complex i{0.0, 1.0};
    if (data.convention == SurfaceConvention::Maxface) {
        const Polynomial N0 = (ng * dg * nw) * Complex{-2.0, 0.0};
        const Polynomial N1 = (P + Q) * nw;
        const Polynomial N2 = ((P - Q) * nw) * i;
        return -(N0 * N0) + N1 * N1 + N2 * N2;
    }
    const Polynomial N0 = (ng * dg * nw) * Complex{2.0, 0.0};
    const Polynomial N1 = (P - Q) * nw;
    const Polynomial N2 = ((P + Q) * nw) * i;
    return N0 * N0 + N1 * N1 + N2 * N2;
}

std::vector<Complex> finite_obstacles(const WeierstrassData& data) {
    std::vector<Complex> out;
    // Dedup band sits above the sqrt(eps) conditioning of multiple roots, so
    // numerically-found form poles merge with the exact punctures.
    auto push_unique = [&](Complex c) {
        for (const Complex& o : out)
            if (std::abs(o - c) <= 1e-6 * (1.0 + std::abs(c))) return;
        out.push_back(c);
    };
    for (const auto& p : data.punctures)
        if (!p.is_infinite()) push_unique(p.value);
    for (const auto& phi : phi_forms(data))
        for (const auto& pole : phi.poles()) push_unique(pole.root);
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

double guard_radius(const WeierstrassData& data) {
    return default_guard_radius(finite_obstacles(data));
}

PathSpec default_route(const WeierstrassData& data, Complex z) {
    const auto obstacles = finite_obstacles(data);
    return PathSpec::polyline(
        route_avoiding(data.base_point, z, obstacles, default_guard_radius(obstacles)));
}

std::array<Complex, 3> evaluate_lift(const WeierstrassData& data, Complex z,
                                     const std::optional<PathSpec>& path, const Tolerances& tol) {
    if (!path && std::abs(z - data.base_point) == 0.0)
        return {Complex{}, Complex{}, Complex{}};
    const auto phi = phi_forms(data);
    const PathSpec route = path ? *path : default_route(data, z);
    auto integrand = [&](Complex w) -> std::array<Complex, 3> {
        return {phi[0].eval(w).value, phi[1].eval(w).value, phi[2].eval(w).value};
    };
    return path_integral3(integrand, route, {}, 0.0, tol);
}

Vec3 evaluate_immersion(const WeierstrassData& data, Complex z,
                        const std::optional<PathSpec>& path, const Tolerances& tol) {
    const auto F = evaluate_lift(data, z, path, tol);
    return {F[0].real(), F[1].real(), F[2].real()};
}

NormalPair normals(const WeierstrassData& data, Complex z, const Tolerances& tol) {
    const EvalResult gv = data.g.eval(z);
    NormalPair out;
    if (gv.is_infinite()) {
        // Algebraic limits as |g| -> infinity.
        out.nu = Vec3{1.0, 0.0, 0.0};
        out.n_euc = Vec3{1.0, 0.0, 0.0};
        return out;
    }
    const double m2 = std::norm(gv.value);
    const double denom_euc = std::sqrt((1.0 + m2) * (1.0 + m2) + 4.0 * m2);
    out.n_euc = Vec3{(1.0 + m2) / denom_euc, 2.0 * gv.value.real() / denom_euc,
                     2.0 * gv.value.imag() / denom_euc};
    if (std::abs(std::sqrt(m2) - 1.0) >= tol.zero_rel) {
        const double denom = 1.0 - m2;
        out.nu = Vec3{-(1.0 + m2) / denom, 2.0 * gv.value.real() / denom,
                      2.0 * gv.value.imag() / denom};
    }
    return out;
}

MetricCurvature metric_and_curvature(const WeierstrassData& data, Complex z,
                                     const Tolerances& tol) {
    const auto phi = phi_forms(data);
    const double a0 = phi[0].eval(z).modulus();
    const double a1 = phi[1].eval(z).modulus();
    const double a2 = phi[2].eval(z).modulus();

    MetricCurvature out;
    if (data.convention == SurfaceConvention::Maxface) {
        out.ds2_factor = std::max(0.0, 0.5 * (-a0 * a0 + a1 * a1 + a2 * a2));
        out.dsigma2_factor = 0.5 * (a0 * a0 + a1 * a1 + a2 * a2);
    } else {
        // Induced metric of the minimal immersion equals the maxface
        // lift-metric; keep both slots aligned with that single factor.
        out.ds2_factor = 0.5 * (a0 * a0 + a1 * a1 + a2 * a2);
        out.dsigma2_factor = out.ds2_factor;
    }

    // Pull-back curvature densities, evaluated through 1/g beyond the unit
    // circle so poles of g stay regular.
    const EvalResult gv = data.g.eval(z);
    double density_hyp;   // 4|g'|^2/(1-|g|^2)^2
    double density_fs;    // 4|g'|^2/(1+|g|^2)^2
    if (gv.is_infinite() || std::abs(gv.value) > 1.0) {
        const RationalMap h = data.g.reciprocal();
        const Complex hp = rational_derivative(h).eval(z).value;
        const double hm2 = std::norm(h.eval(z).value);
        density_hyp = 4.0 * std::norm(hp) / ((hm2 - 1.0) * (hm2 - 1.0));
        density_fs = 4.0 * std::norm(hp) / ((1.0 + hm2) * (1.0 + hm2));
    } else {
        const Complex gp = rational_derivative(data.g).eval(z).value;
        const double m2 = std::norm(gv.value);
        density_hyp = 4.0 * std::norm(gp) / ((1.0 - m2) * (1.0 - m2));
        density_fs = 4.0 * std::norm(gp) / ((1.0 + m2) * (1.0 + m2));
    }

    const double sing_scale = tol.zero_rel * std::max(1.0, out.dsigma2_factor);
    if (out.ds2_factor <= sing_scale) {
        out.K_induced_finite = false;
        out.K_induced = std::numeric_limits<double>::infinity();
    } else {
        out.K_induced = density_hyp / out.ds2_factor;
    }
    out.K_lift = -density_fs / out.dsigma2_factor;
    return out;
}

double lambda_indicator(const WeierstrassData& data, Complex z) {
    const EvalResult gv = data.g.eval(z);
    if (gv.is_infinite()) return std::numeric_limits<double>::infinity();
    const EvalResult wv = data.omega_hat.eval(z);
    if (wv.is_infinite()) return -std::numeric_limits<double>::infinity();
    const double m2 = std::norm(gv.value);
    return (m2 - 1.0) * std::norm(wv.value) * std::sqrt((1.0 + m2) * (1.0 + m2) + 4.0 * m2);
}

WeierstrassData companion(const WeierstrassData& data) {
    WeierstrassData out = data;
    if (data.convention == SurfaceConvention::Maxface) {
        out.g = data.g * Complex{0.0, -1.0};
        out.convention = SurfaceConvention::EuclideanMinimal;
        out.label = data.label.empty() ? "companion" : data.label + " companion";
    } else {
        out.g = data.g * Complex{0.0, 1.0};
        out.convention = SurfaceConvention::Maxface;
        out.label = data.label.empty() ? "maxface" : data.label + " maxface";
    }
    return out;
}

WeierstrassData lopez_ros(const WeierstrassData& data, double lambda, const Tolerances& tol) {
    if (lambda == 0.0) throw InvalidDeformation("lopez_ros: lambda must be nonzero");
    WeierstrassData out = data;
    out.g = data.g * Complex{lambda, 0.0};
    out.omega_hat = data.omega_hat * Complex{1.0 / lambda, 0.0};
    out.label = data.label + " lopez-ros(" + std::to_string(lambda) + ")";
    validate(out, tol);
    return out;
}

SurfaceSample sample_surface(const WeierstrassData& data, Complex z,
                             const std::optional<PathSpec>& path, const Tolerances& tol) {
    SurfaceSample s;
    s.z = z;
    s.f = evaluate_immersion(data, z, path, tol);
    const auto np = normals(data, z, tol);
    s.nu = np.nu;
    s.n_euc = np.n_euc;
    const auto mc = metric_and_curvature(data, z, tol);
    s.ds2_factor = mc.ds2_factor;
    s.dsigma2_factor = mc.dsigma2_factor;
    s.K_induced = mc.K_induced;
    s.K_induced_finite = mc.K_induced_finite;
    s.lambda = lambda_indicator(data, z);
    const double gm = data.g.eval(z).modulus();
    s.singular = std::isfinite(gm) && std::abs(gm - 1.0) < tol.zero_rel;
    return s;
}

}  // namespace maxface
