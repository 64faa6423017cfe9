#include <doctest.h>

#include <cmath>

#include "maxface/errors.hpp"
#include "maxface/gallery.hpp"
#include "maxface/weierstrass.hpp"
#include "test_support.hpp"

using namespace maxface;
using maxface::testing::random_complex;

namespace {

const Complex kI{0.0, 1.0};

Vec3 catenoid_closed_form(double a, Complex z) {
    const double r = std::abs(z), th = std::arg(z);
    return {-2.0 * a * std::log(r), a * (r - 1.0 / r) * std::cos(th),
            a * (r - 1.0 / r) * std::sin(th)};
}

Vec3 enneper_closed_form(Complex z) {
    const Complex z3 = z * z * z;
    return {(-z * z).real(), (z + z3 / 3.0).real(), (kI * (z - z3 / 3.0)).real()};
}

// Partial derivative of the immersion along direction u by a single short
// segment integral: (f(z+hu) - f(z-hu)) / 2h without base-point error.
Vec3 immersion_derivative(const WeierstrassData& data, Complex z, Complex u, double h) {
    const auto phi = phi_forms(data);
    auto integrand = [&](Complex w) -> std::array<Complex, 3> {
        return {phi[0].eval(w).value, phi[1].eval(w).value, phi[2].eval(w).value};
    };
    const auto F = path_integral3(integrand, PathSpec::polyline({z - h * u, z + h * u}));
    return {F[0].real() / (2.0 * h), F[1].real() / (2.0 * h), F[2].real() / (2.0 * h)};
}

bool rational_equals(const RationalMap& f, const RationalMap& g, std::mt19937& rng) {
    for (int k = 0; k < 12; ++k) {
        const Complex z = random_complex(rng, 1.7);
        const EvalResult a = f.eval(z), b = g.eval(z);
        if (a.is_infinite() != b.is_infinite()) return false;
        if (!a.is_infinite() && std::abs(a.value - b.value) > 1e-10 * (1.0 + std::abs(b.value)))
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("phi_forms: catenoid, enneper, plane") {
    std::mt19937 rng(11);
    const double a = 1.4;
    const auto cat = gallery("catenoid", {a, 2.0, 3});
    const auto phi = phi_forms(cat);
    // (-2a/z, a(1+z^2)/z^2, i a(1-z^2)/z^2)
    CHECK(rational_equals(phi[0],
                          RationalMap{Polynomial::constant(-2.0 * a), Polynomial::monomial(1, 1)},
                          rng));
    CHECK(rational_equals(phi[1], RationalMap{Polynomial{{a, 0.0, a}}, Polynomial::monomial(1, 2)},
                          rng));
    CHECK(rational_equals(
        phi[2], RationalMap{Polynomial{{kI * a, 0.0, -kI * a}}, Polynomial::monomial(1, 2)}, rng));

    const auto enn = phi_forms(gallery("enneper"));
    CHECK(rational_equals(enn[0], RationalMap{Polynomial{{0.0, -2.0}}, Polynomial::constant(1)},
                          rng));
    CHECK(rational_equals(enn[1], RationalMap{Polynomial{{1.0, 0.0, 1.0}}, Polynomial::constant(1)},
                          rng));
    CHECK(rational_equals(enn[2], RationalMap{Polynomial{{kI, 0.0, -kI}}, Polynomial::constant(1)},
                          rng));

    const auto plane = phi_forms(gallery("plane"));
    CHECK(plane[0].is_zero());
    CHECK(rational_equals(plane[1], RationalMap::constant(1.0), rng));
    CHECK(rational_equals(plane[2], RationalMap::constant(kI), rng));
}

TEST_CASE("nullity defect is the exact zero polynomial for gallery data") {
    for (const auto& name : gallery_names()) {
        for (int n : {2, 3, 4}) {
            const auto data = gallery(name, {1.0, 3.0, n});
            const Polynomial defect = nullity_defect(data);
            INFO(name << " n=" << n);
            CHECK(defect.is_zero());
            if (name != std::string("jorge-meeks-companion")) break;
        }
    }
}

TEST_CASE("nullity residuals vanish at sampled points for the reduced forms") {
    std::mt19937 rng(2024);
    for (const auto* name : {"catenoid", "enneper", "jorge-meeks-companion"}) {
        const auto data = gallery(name);
        const auto phi = phi_forms(data);
        for (int k = 0; k < 100; ++k) {
            const Complex z =
                testing::random_point_avoiding(rng, finite_obstacles(data), 0.2, 2.0);
            const Complex p0 = phi[0].eval(z).value;
            const Complex p1 = phi[1].eval(z).value;
            const Complex p2 = phi[2].eval(z).value;
            const Complex n = -p0 * p0 + p1 * p1 + p2 * p2;
            CHECK(std::abs(n) < 1e-12 * (1.0 + std::norm(p1)));
        }
    }
}

TEST_CASE("evaluate_immersion: catenoid closed form") {
    const double a = 1.0;
    const auto cat = gallery("catenoid");
    for (const Complex z : {std::polar(1.5, 0.8), Complex{0.4, 0.3}, Complex{-2.0, 0.6},
                            Complex{0.0, -1.2}}) {
        const Vec3 f = evaluate_immersion(cat, z);
        const Vec3 expect = catenoid_closed_form(a, z);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(f[k] - expect[k]) < 1e-8);
    }
}

TEST_CASE("evaluate_immersion: enneper polynomial antiderivative") {
    const auto enn = gallery("enneper");
    std::mt19937 rng(5);
    for (int k = 0; k < 10; ++k) {
        const Complex z = random_complex(rng, 1.8);
        if (std::abs(z) < 1e-3) continue;
        const Vec3 f = evaluate_immersion(enn, z);
        const Vec3 expect = enneper_closed_form(z);
        for (int c = 0; c < 3; ++c) CHECK(std::abs(f[c] - expect[c]) < 1e-10);
    }
}

TEST_CASE("evaluate_immersion at the base point is the origin") {
    for (const auto& name : gallery_names()) {
        const auto data = gallery(name);
        const Vec3 f = evaluate_immersion(data, data.base_point);
        CHECK(euclidean_norm(f) == 0.0);
    }
}

TEST_CASE("normals: formulas, limits, undefined band") {
    const auto plane = gallery("plane");
    const auto np = normals(plane, Complex{0.3, 0.3});
    REQUIRE(np.nu.has_value());
    CHECK(std::abs((*np.nu)[0] + 1.0) < 1e-14);
    CHECK(std::abs(np.n_euc[0] - 1.0) < 1e-14);

    const auto cat = gallery("catenoid");
    const auto nc = normals(cat, Complex{2.0, 0.0});
    REQUIRE(nc.nu.has_value());
    CHECK(std::abs((*nc.nu)[0] - 5.0 / 3.0) < 1e-12);
    CHECK(std::abs((*nc.nu)[1] + 4.0 / 3.0) < 1e-12);
    CHECK(std::abs((*nc.nu)[2]) < 1e-12);
    CHECK(std::abs(lorentz_inner(*nc.nu, *nc.nu) + 1.0) < 1e-12);

    // On the singular circle nu is undefined but the Euclidean normal stays.
    const auto ns = normals(cat, Complex{1.0, 0.0});
    CHECK(!ns.nu.has_value());
    CHECK(std::abs(euclidean_norm(ns.n_euc) - 1.0) < 1e-12);

    // Pole of g: algebraic limits (reflected catenoid, g = 1/z).
    const auto refl = make_weierstrass_data(
        RationalMap{Polynomial::constant(1.0), Polynomial::monomial(1.0, 1)},
        RationalMap{Polynomial::monomial(1.0, 2), Polynomial::constant(1.0)},
        {SpherePoint{Complex{}}, SpherePoint::infinity()}, Complex{1.0, 0.0}, "reflected");
    const auto ninf = normals(refl, Complex{});  // g(0) = infinity
    REQUIRE(ninf.nu.has_value());
    CHECK(std::abs((*ninf.nu)[0] - 1.0) < 1e-14);
    CHECK(std::abs(ninf.n_euc[0] - 1.0) < 1e-14);
}

TEST_CASE("metric factors and curvature closed forms") {
    const auto cat = gallery("catenoid");
    const double t = 0.7;
    const Complex z = std::exp(Complex{t, 0.0});
    const auto mc = metric_and_curvature(cat, z);
    const double sinh_t = std::sinh(t);
    // ds^2 in the (t, theta) chart: factor * e^{2t} = 4 sinh^2 t.
    CHECK(std::abs(mc.ds2_factor * std::exp(2.0 * t) - 4.0 * sinh_t * sinh_t) < 1e-10);

    const auto plane = gallery("plane");
    const auto mp = metric_and_curvature(plane, Complex{0.2, -0.4});
    CHECK(mp.K_induced_finite);
    CHECK(mp.K_induced == 0.0);

    const auto enn = gallery("enneper");
    const auto me = metric_and_curvature(enn, Complex{});
    CHECK(std::abs(me.ds2_factor - 1.0) < 1e-14);
    CHECK(std::abs(me.dsigma2_factor - 1.0) < 1e-14);
    CHECK(std::abs(me.K_induced - 4.0) < 1e-12);
    CHECK(std::abs(me.K_lift + 4.0) < 1e-12);
}

TEST_CASE("curvature matches -(laplacian log c)/c^2 by finite differences") {
    const auto cat = gallery("catenoid");
    const auto enn = gallery("enneper");
    int checked = 0;
    for (const auto* data : {&cat, &enn}) {
        for (int k = 0; k < 25; ++k) {
            const double r = 1.35 + 0.05 * k;
            const Complex z = std::polar(r, 0.37 * k);
            const double gm = data->g.eval(z).modulus();
            if (std::abs(gm - 1.0) <= 0.1) continue;
            auto logc = [&](Complex w) {
                return 0.5 * std::log(metric_and_curvature(*data, w).ds2_factor);
            };
            const double h = 1e-3;
            const double lap = (logc(z + Complex{h, 0}) + logc(z - Complex{h, 0}) +
                                logc(z + Complex{0, h}) + logc(z - Complex{0, h}) -
                                4.0 * logc(z)) /
                               (h * h);
            const auto mc = metric_and_curvature(*data, z);
            const double k_fd = -lap / mc.ds2_factor;
            CHECK(std::abs(k_fd - mc.K_induced) < 1e-4 * std::max(1.0, std::abs(mc.K_induced)));
            CHECK(mc.K_induced >= 0.0);
            CHECK(mc.K_lift <= 0.0);
            ++checked;
        }
    }
    CHECK(checked >= 40);
}

TEST_CASE("conformality and orthogonality at random regular points") {
    std::mt19937 rng(31415);
    for (const auto* name : {"catenoid", "enneper"}) {
        const auto data = gallery(name);
        int checked = 0;
        while (checked < 25) {
            const Complex z = testing::random_point_avoiding(rng, finite_obstacles(data), 0.3, 2.0);
            const double gm = data.g.eval(z).modulus();
            if (std::abs(gm - 1.0) < 0.15) continue;
            const double h = 1e-5 * (1.0 + std::abs(z));
            const Vec3 fu = immersion_derivative(data, z, Complex{1.0, 0.0}, h);
            const Vec3 fv = immersion_derivative(data, z, Complex{0.0, 1.0}, h);
            const auto np = normals(data, z);
            REQUIRE(np.nu.has_value());
            const auto mc = metric_and_curvature(data, z);
            const double scale = std::max(1.0, mc.ds2_factor);
            CHECK(std::abs(lorentz_inner(fu, *np.nu)) < 1e-6 * scale);
            CHECK(std::abs(lorentz_inner(fv, *np.nu)) < 1e-6 * scale);
            CHECK(std::abs(lorentz_inner(fu, fu) - mc.ds2_factor) < 1e-6 * scale);
            CHECK(std::abs(lorentz_inner(fv, fv) - mc.ds2_factor) < 1e-6 * scale);
            CHECK(std::abs(lorentz_inner(fu, fv)) < 1e-6 * scale);
            ++checked;
        }
    }
}

TEST_CASE("lambda indicator: values and sign structure") {
    const auto cat = gallery("catenoid");
    CHECK(std::abs(lambda_indicator(cat, Complex{1.0, 0.0})) < 1e-12);

    const auto plane = gallery("plane");
    CHECK(std::abs(lambda_indicator(plane, Complex{0.7, 0.1}) + 1.0) < 1e-14);

    const auto enn = gallery("enneper");
    CHECK(std::abs(lambda_indicator(enn, Complex{2.0, 0.0}) - 3.0 * std::sqrt(41.0)) < 1e-12);

    // sign(lambda) = sign(|g|^2 - 1); lambda = 0 exactly where ds2 degenerates.
    std::mt19937 rng(999);
    for (int k = 0; k < 40; ++k) {
        const Complex z = random_complex(rng, 1.8);
        if (std::abs(z) < 0.05) continue;
        const double lam = lambda_indicator(enn, z);
        const double m2 = std::norm(enn.g.eval(z).value);
        if (std::abs(m2 - 1.0) > 1e-9) CHECK((lam > 0) == (m2 > 1.0));
        const auto mc = metric_and_curvature(enn, z);
        if (mc.ds2_factor < 1e-12) CHECK(std::abs(lam) < 1e-8);
    }
}

TEST_CASE("companion: gauss map correspondence and exact round trip") {
    const auto cat = gallery("catenoid");
    const auto comp = companion(cat);
    CHECK(comp.convention == SurfaceConvention::EuclideanMinimal);
    // g0 = -i z
    CHECK(comp.g.num().coeffs() == std::vector<Complex>{Complex{}, Complex{0.0, -1.0}});

    const auto back = companion(comp);
    CHECK(back.convention == SurfaceConvention::Maxface);
    CHECK(back.g.num().coeffs() == cat.g.num().coeffs());
    CHECK(back.g.den().coeffs() == cat.g.den().coeffs());
    CHECK(back.omega_hat.num().coeffs() == cat.omega_hat.num().coeffs());

    const auto enn = gallery("enneper");
    CHECK(companion(enn).g.num().coeffs() ==
          std::vector<Complex>{Complex{}, Complex{0.0, -1.0}});
}

TEST_CASE("companion lift metric equals the minimal induced metric exactly") {
    std::mt19937 rng(321);
    for (const auto* name : {"catenoid", "enneper"}) {
        const auto data = gallery(name);
        const auto comp = companion(data);
        for (int k = 0; k < 30; ++k) {
            const Complex z = testing::random_point_avoiding(rng, finite_obstacles(data), 0.2);
            const auto max_mc = metric_and_curvature(data, z);
            const auto min_mc = metric_and_curvature(comp, z);
            CHECK(max_mc.dsigma2_factor == min_mc.ds2_factor);
        }
    }
}

TEST_CASE("lopez_ros deformation") {
    const auto cat = gallery("catenoid");
    const auto lr2 = lopez_ros(cat, 2.0);
    CHECK(lr2.g.eval(Complex{0.5, 0.0}).value == Complex{1.0, 0.0});  // g = 2z
    CHECK(std::abs(lr2.omega_hat.eval(Complex{1.0, 0.0}).value - Complex{0.5, 0.0}) < 1e-15);

    const auto lr1 = lopez_ros(cat, 1.0);
    CHECK(lr1.g.num().coeffs() == cat.g.num().coeffs());
    CHECK(lr1.omega_hat.num().coeffs() == cat.omega_hat.num().coeffs());

    CHECK_THROWS_AS(lopez_ros(cat, 0.0), InvalidDeformation);
}

TEST_CASE("constant Gauss map: the image is a plane") {
    const auto data = make_weierstrass_data(
        RationalMap::constant(Complex{0.3, 0.4}), RationalMap::constant(1.0),
        {SpherePoint::infinity()}, Complex{}, "tilted plane");
    const auto np = normals(data, Complex{});
    REQUIRE(np.nu.has_value());
    std::mt19937 rng(8);
    for (int k = 0; k < 200; ++k) {
        const Vec3 f = evaluate_immersion(data, random_complex(rng, 2.0));
        CHECK(std::abs(lorentz_inner(f, *np.nu)) < 1e-9);
    }
}

TEST_CASE("validation rejects broken data") {
    // omega_hat pole off the punctures (catenoid without the 0 puncture).
    CHECK_THROWS_AS(
        make_weierstrass_data(RationalMap::identity(),
                              RationalMap{Polynomial::constant(1.0), Polynomial::monomial(1, 2)},
                              {SpherePoint::infinity()}, Complex{1.0, 0.0}, "broken"),
        ValidationError);

    // g pole without the matching omega_hat zero.
    CHECK_THROWS_AS(
        make_weierstrass_data(
            RationalMap{Polynomial::constant(1.0), Polynomial::monomial(1, 1)},
            RationalMap::constant(1.0), {SpherePoint::infinity()}, Complex{1.0, 0.0}, "broken"),
        ValidationError);

    // Branch point: omega_hat zero with no g pole.
    CHECK_THROWS_AS(
        make_weierstrass_data(RationalMap::identity(),
                              RationalMap{Polynomial::monomial(1.0, 2), Polynomial::constant(1.0)},
                              {SpherePoint::infinity()}, Complex{1.0, 0.0}, "branch point"),
        ValidationError);

    // Constant |g| = 1.
    CHECK_THROWS_AS(make_weierstrass_data(RationalMap::constant(Complex{0.6, 0.8}),
                                          RationalMap::constant(1.0), {SpherePoint::infinity()},
                                          Complex{}, "lightlike"),
                    ValidationError);

    // Duplicate punctures.
    CHECK_THROWS_AS(
        make_weierstrass_data(RationalMap::identity(),
                              RationalMap{Polynomial::constant(1.0), Polynomial::monomial(1, 2)},
                              {SpherePoint{Complex{}}, SpherePoint{Complex{}},
                               SpherePoint::infinity()},
                              Complex{1.0, 0.0}, "dup"),
        ValidationError);

    // Base point on a puncture.
    CHECK_THROWS_AS(
        make_weierstrass_data(RationalMap::identity(),
                              RationalMap{Polynomial::constant(1.0), Polynomial::monomial(1, 2)},
                              {SpherePoint{Complex{}}, SpherePoint::infinity()}, Complex{},
                              "base-on-end"),
        ValidationError);

    // Valid reflected data: g = 1/z with omega_hat = z^2 passes.
    CHECK_NOTHROW(make_weierstrass_data(
        RationalMap{Polynomial::constant(1.0), Polynomial::monomial(1.0, 1)},
        RationalMap{Polynomial::monomial(1.0, 2), Polynomial::constant(1.0)},
        {SpherePoint{Complex{}}, SpherePoint::infinity()}, Complex{1.0, 0.0}, "reflected"));
}
