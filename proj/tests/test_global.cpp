#include <doctest.h>

#include <cmath>

#include "maxface/errors.hpp"
#include "maxface/gallery.hpp"
#include "maxface/global.hpp"

using namespace maxface;

namespace {

const Complex kI{0.0, 1.0};

// Catenoid with omega_hat = i a / z^2: breaks the period condition with
// violation 4 pi a.
WeierstrassData modified_catenoid(double a) {
    return make_weierstrass_data(
        RationalMap::identity(),
        RationalMap{Polynomial::constant(kI * a), Polynomial::monomial(1.0, 2)},
        {SpherePoint{Complex{}}, SpherePoint::infinity()}, Complex{1.0, 0.0},
        "modified catenoid");
}

// Order-1 end data: g = z, omega_hat = 1/z.  By the residue argument such an
// end can only be well-defined if |g| = 1 there, so the period condition must
// fail.
WeierstrassData order_one_end_data() {
    return make_weierstrass_data(
        RationalMap::identity(),
        RationalMap{Polynomial::constant(1.0), Polynomial::monomial(1.0, 1)},
        {SpherePoint{Complex{}}, SpherePoint::infinity()}, Complex{1.0, 0.0}, "order-1 end");
}

}  // namespace

TEST_CASE("compute_periods: catenoid passes with the expected loop values") {
    const double a = 1.0;
    const auto cat = gallery("catenoid");
    const auto report = compute_periods(cat);
    CHECK(report.passes);
    CHECK(report.max_re_violation < 1e-10);
    CHECK(report.max_residue_quadrature_gap < 1e-9);

    REQUIRE(report.entries.size() == 2);
    const auto& loop0 = report.entries.front();
    CHECK(!loop0.puncture.is_infinite());
    // P(0) = 2 pi i (-2a, 0, 0)
    CHECK(std::abs(loop0.period[0] - 2.0 * M_PI * kI * (-2.0 * a)) < 1e-10);
    CHECK(std::abs(loop0.period[1]) < 1e-10);
    CHECK(std::abs(loop0.period[2]) < 1e-10);

    // Derived entry at infinity balances the finite loop.
    const auto& loop_inf = report.entries.back();
    CHECK(loop_inf.puncture.is_infinite());
    CHECK(std::abs(loop_inf.period[0] + loop0.period[0]) < 1e-10);
}

TEST_CASE("compute_periods: the rotated form fails by 4 pi a") {
    const double a = 1.25;
    const auto bad = modified_catenoid(a);
    const auto report = compute_periods(bad);
    CHECK(!report.passes);
    CHECK(std::abs(report.max_re_violation - 4.0 * M_PI * a) < 1e-8);
    CHECK(report.max_residue_quadrature_gap < 1e-9);
}

TEST_CASE("compute_periods: enneper has entire forms and passes trivially") {
    const auto report = compute_periods(gallery("enneper"));
    CHECK(report.passes);
    CHECK(report.max_re_violation < 1e-12);
}

TEST_CASE("gauss_degree: identity, jorge-meeks, quotient with preimage oracle") {
    CHECK(gauss_degree(gallery("catenoid")) == 1);
    CHECK(gauss_degree(gallery("jorge-meeks-companion", {1.0, 2.0, 4})) == 3);
    CHECK(gauss_degree(gallery("plane")) == 0);

    // g = (z^2+1)/(z^2-1): count preimages of a generic value.
    const RationalMap g{Polynomial{{1.0, 0.0, 1.0}}, Polynomial{{-1.0, 0.0, 1.0}}};
    const Complex v{0.37, 0.21};
    // (z^2+1) - v (z^2-1) = 0
    const Polynomial pre = g.num() - g.den() * v;
    CHECK(poly_roots(pre).size() == 2);
    const auto data = make_weierstrass_data(
        g,
        RationalMap{Polynomial{{1.0, 0.0, -2.0, 0.0, 1.0}},  // (z^2-1)^2 pairs the g poles
                    Polynomial::constant(1.0)},
        {SpherePoint::infinity()}, Complex{}, "deg2");
    CHECK(gauss_degree(data) == 2);
}

TEST_CASE("analyze_end: catenoid ends are embedded catenoidal ends") {
    const auto cat = gallery("catenoid");

    const auto end0 = analyze_end(cat, SpherePoint{Complex{}});
    CHECK(end0.g_modulus == 0.0);
    CHECK(end0.end_complete);
    CHECK(end0.phi_pole_order == 2);
    CHECK(end0.df_order_ok);
    CHECK(end0.embedded);
    CHECK(end0.end_type == EndType::Catenoidal);
    REQUIRE(end0.has_coefficients);
    CHECK(std::abs(end0.coeff_a - 1.0) < 1e-9);
    CHECK(std::abs(end0.coeff_c + 2.0) < 1e-9);
    CHECK(!end0.normalized_by_transform);

    const auto end_inf = analyze_end(cat, SpherePoint::infinity());
    CHECK(end_inf.end_complete);
    CHECK(end_inf.phi_pole_order == 2);
    CHECK(end_inf.embedded);
    CHECK(end_inf.end_type == EndType::Catenoidal);
    CHECK(end_inf.normalized_by_transform);  // g(inf) = inf, reflected first
    CHECK(std::abs(std::abs(end_inf.coeff_c) - 2.0) < 1e-9);
}

TEST_CASE("analyze_end: enneper end has a pole of order 4") {
    const auto end = analyze_end(gallery("enneper"), SpherePoint::infinity());
    CHECK(end.phi_pole_order == 4);
    CHECK(end.df_order_ok);
    CHECK(!end.embedded);
    CHECK(end.end_type == EndType::HigherOrder);
}

TEST_CASE("analyze_end: jorge-meeks ends are simple candidates") {
    const auto jm = gallery("jorge-meeks-companion", {1.0, 2.0, 3});
    for (const auto& p : jm.punctures) {
        const auto end = analyze_end(jm, p);
        CHECK(std::abs(end.g_modulus - 1.0) < 1e-10);
        CHECK(!end.end_complete);
        CHECK(end.end_type == EndType::SimpleCandidate);
        CHECK(end.phi_pole_order == 2);
    }
}

TEST_CASE("analyze_end rejects a point that is not a puncture") {
    CHECK_THROWS_AS(analyze_end(gallery("catenoid"), SpherePoint{Complex{0.5, 0.5}}),
                    ValidationError);
}

TEST_CASE("analyze_end: boosted catenoid ends keep order and coefficients") {
    // Apply the target motion g -> (pg+q)/(qg+p), omega -> (qg+p)^2 omega
    // with p = cosh s, q = sinh s: an isometry moving g(0) to tanh s.
    const double s = 0.6;
    const double p = std::cosh(s), q = std::sinh(s);
    const auto cat = gallery("catenoid");
    const RationalMap numer = cat.g * Complex{p, 0.0} + RationalMap::constant(Complex{q, 0.0});
    const RationalMap denom = cat.g * Complex{q, 0.0} + RationalMap::constant(Complex{p, 0.0});
    const RationalMap g_boost = numer / denom;
    const RationalMap w_boost = denom * denom * cat.omega_hat;
    const auto boosted =
        make_weierstrass_data(g_boost, w_boost, cat.punctures, cat.base_point, "boosted catenoid");

    const auto periods = compute_periods(boosted);
    CHECK(periods.passes);

    const auto end0 = analyze_end(boosted, SpherePoint{Complex{}});
    CHECK(std::abs(end0.g_modulus - std::tanh(s)) < 1e-12);
    CHECK(end0.end_complete);
    CHECK(end0.phi_pole_order == 2);
    CHECK(end0.embedded);
    CHECK(end0.end_type == EndType::Catenoidal);
    CHECK(end0.normalized_by_transform);
    CHECK(std::abs(std::abs(end0.coeff_c) - 2.0) < 1e-6);
}

TEST_CASE("classify_completeness across the gallery") {
    const auto complete = classify_completeness(gallery("catenoid"));
    CHECK(complete.cls == CompletenessClass::Complete);

    const auto jm = classify_completeness(gallery("jorge-meeks-companion", {1.0, 2.0, 3}));
    CHECK(jm.cls == CompletenessClass::WeaklyCompleteOnly);
    CHECK(jm.violating_ends.size() == 3);

    const auto lr = classify_completeness(gallery("lopez-ros-catenoid", {1.0, 3.0, 3}));
    CHECK(lr.cls == CompletenessClass::Complete);

    CHECK_THROWS_AS(classify_completeness(modified_catenoid(1.0)), PeriodConditionFailed);
}

TEST_CASE("osserman_report: equality cases and the strict case") {
    const auto cat = osserman_report(gallery("catenoid"));
    CHECK(cat.osserman_lhs == 2);
    CHECK(cat.osserman_rhs == 2);
    CHECK(cat.equality);
    for (const auto& e : cat.ends) {
        CHECK(e.embedded);
        CHECK(e.phi_pole_order == 2);
    }

    const auto enn = osserman_report(gallery("enneper"));
    CHECK(enn.osserman_lhs == 2);
    CHECK(enn.osserman_rhs == 0);
    CHECK(enn.euler_punctured == 1);
    CHECK(!enn.equality);
    CHECK(enn.ends.front().phi_pole_order == 4);
    CHECK(!enn.ends.front().embedded);

    const auto lr = osserman_report(gallery("lopez-ros-catenoid", {1.0, 2.0, 3}));
    CHECK(lr.osserman_lhs == 2);
    CHECK(lr.osserman_rhs == 2);
    CHECK(lr.equality);

    CHECK_THROWS_AS(osserman_report(gallery("jorge-meeks-companion", {1.0, 2.0, 3})),
                    ValidationError);
}

TEST_CASE("osserman inequality holds on every complete gallery surface") {
    for (const auto& name : gallery_names()) {
        const auto data = gallery(name);
        const auto report = build_global_report(data, false);
        if (!report.completeness ||
            report.completeness->cls != CompletenessClass::Complete)
            continue;
        CHECK(report.osserman_lhs >= report.osserman_rhs);
        bool all_embedded = true;
        for (const auto& e : report.ends) {
            all_embedded &= e.embedded;
            CHECK(e.phi_pole_order >= 2);  // complete ends have order >= 2
        }
        CHECK(report.equality == all_embedded);
    }
}

TEST_CASE("total curvature integrates to 4 pi deg g") {
    const double tc_cat = total_curvature_numeric(gallery("catenoid"));
    CHECK(std::abs(tc_cat / (4.0 * M_PI) - 1.0) < 0.01);

    const double tc_enn = total_curvature_numeric(gallery("enneper"));
    CHECK(std::abs(tc_enn / (4.0 * M_PI) - 1.0) < 0.01);

    const double tc_jm = total_curvature_numeric(gallery("jorge-meeks-companion", {1.0, 2.0, 3}));
    CHECK(std::abs(tc_jm / (4.0 * M_PI) - 2.0) < 0.02);

    CHECK(total_curvature_numeric(gallery("plane")) == 0.0);
}

TEST_CASE("total curvature rounds to the gauss degree across the gallery") {
    for (const auto& name : gallery_names()) {
        const auto data = gallery(name);
        const double tc = total_curvature_numeric(data);
        CHECK(std::lround(tc / (4.0 * M_PI)) == gauss_degree(data));
    }
}

TEST_CASE("order-1 end data trips the period condition, never a silent pass") {
    const auto data = order_one_end_data();
    const auto periods = compute_periods(data);
    CHECK(!periods.passes);
    CHECK(periods.max_re_violation > 1.0);

    const auto end0 = analyze_end(data, SpherePoint{Complex{}});
    CHECK(end0.phi_pole_order == 1);
    CHECK(!end0.df_order_ok);

    CHECK_THROWS_AS(classify_completeness(data), PeriodConditionFailed);

    const auto report = build_global_report(data, false);
    CHECK(!report.completeness.has_value());
}

TEST_CASE("path independence across the puncture when periods vanish") {
    const auto cat = gallery("catenoid");
    const Complex target{2.0, 0.0};
    const auto above = evaluate_immersion(
        cat, target, PathSpec::polyline({Complex{1, 0}, Complex{0, 1}, Complex{2, 0}}));
    const auto below = evaluate_immersion(
        cat, target, PathSpec::polyline({Complex{1, 0}, Complex{0, -1}, Complex{2, 0}}));
    CHECK(euclidean_norm(above - below) < 1e-8);
}

TEST_CASE("residue/quadrature agreement across the whole gallery") {
    for (const auto& name : gallery_names()) {
        for (int n : {2, 3, 4}) {
            const auto report = compute_periods(gallery(name, {1.0, 2.0, n}));
            INFO(name << " n=" << n);
            CHECK(report.max_residue_quadrature_gap < 1e-9);
            CHECK(report.passes);
            if (name != std::string("jorge-meeks-companion")) break;
        }
    }
}
