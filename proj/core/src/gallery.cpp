#include "maxface/gallery.hpp"

#include <algorithm>
#include <cmath>

#include "maxface/errors.hpp"

namespace maxface {

namespace {

WeierstrassData make_catenoid(double a, const Tolerances& tol) {
    if (a == 0.0) throw UsageError("catenoid: parameter a must be nonzero");
    // g = z, omega_hat = a/z^2, ends at 0 and infinity.
    return make_weierstrass_data(
        RationalMap::identity(),
        RationalMap{Polynomial::constant(a), Polynomial::monomial(1.0, 2), tol},
        {SpherePoint{Complex{}}, SpherePoint::infinity()}, Complex{1.0, 0.0}, "catenoid",
        SurfaceConvention::Maxface, tol);
}

WeierstrassData make_enneper(const Tolerances& tol) {
    return make_weierstrass_data(RationalMap::identity(), RationalMap::constant(1.0),
                                 {SpherePoint::infinity()}, Complex{}, "enneper",
                                 SurfaceConvention::Maxface, tol);
}

WeierstrassData make_plane(const Tolerances& tol) {
    return make_weierstrass_data(RationalMap{}, RationalMap::constant(1.0),
                                 {SpherePoint::infinity()}, Complex{}, "plane",
                                 SurfaceConvention::Maxface, tol);
}

WeierstrassData make_jorge_meeks_companion(int n, const Tolerances& tol) {
    if (n < 2) throw UsageError("jorge-meeks-companion: parameter n must be >= 2");
    // g = i z^{n-1}, omega_hat = 1/(z^n - 1)^2, punctured at the n-th roots
    // of unity.
    Polynomial zn_minus_1;
    {
        std::vector<Complex> cs(static_cast<size_t>(n) + 1, Complex{});
        cs[0] = Complex{-1.0, 0.0};
        cs[n] = Complex{1.0, 0.0};
        zn_minus_1 = Polynomial{std::move(cs)};
    }
    std::vector<SpherePoint> punctures;
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * M_PI * k / n;
        punctures.push_back(SpherePoint{Complex{std::cos(th), std::sin(th)}});
    }
    return make_weierstrass_data(
        RationalMap{Polynomial::monomial(Complex{0.0, 1.0}, n - 1), Polynomial::constant(1.0),
                    tol},
        RationalMap{Polynomial::constant(1.0), zn_minus_1 * zn_minus_1, tol}, punctures, Complex{},
        "jorge-meeks-companion(" + std::to_string(n) + ")", SurfaceConvention::Maxface, tol);
}

}  // namespace

WeierstrassData gallery(const std::string& name, const GalleryParams& params,
                        const Tolerances& tol) {
    if (name == "plane") return make_plane(tol);
    if (name == "catenoid") return make_catenoid(params.a, tol);
    if (name == "enneper") return make_enneper(tol);
    if (name == "lopez-ros-catenoid") {
        if (params.lambda == 0.0) throw UsageError("lopez-ros-catenoid: lambda must be nonzero");
        return lopez_ros(make_catenoid(params.a, tol), params.lambda, tol);
    }
    if (name == "lopez-ros-enneper") {
        if (params.lambda == 0.0) throw UsageError("lopez-ros-enneper: lambda must be nonzero");
        return lopez_ros(make_enneper(tol), params.lambda, tol);
    }
    if (name == "jorge-meeks-companion") return make_jorge_meeks_companion(params.n, tol);
    throw UsageError("unknown gallery surface '" + name + "'");
}

std::vector<std::string> gallery_names() {
    return {"plane",           "catenoid",          "enneper",
            "lopez-ros-catenoid", "lopez-ros-enneper", "jorge-meeks-companion"};
}

std::vector<double> excluded_lopez_ros_lambdas(const WeierstrassData& base,
                                               const Tolerances& tol) {
    std::vector<double> out;
    for (const auto& p : base.punctures) {
        const double m = base.g.eval(p).modulus();
        if (std::isfinite(m) && m > tol.zero_rel) out.push_back(1.0 / m);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-12; }),
              out.end());
    return out;
}

}  // namespace maxface
