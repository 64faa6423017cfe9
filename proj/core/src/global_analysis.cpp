#include "maxface/global.hpp"

#include <algorithm>
#include <cmath>

#include "maxface/errors.hpp"

namespace maxface {

namespace {

constexpr Complex kI{0.0, 1.0};

double min_distance_to_others(const WeierstrassData& data, Complex p) {
    double d = std::numeric_limits<double>::infinity();
    for (const Complex& o : finite_obstacles(data)) {
        const double sep = std::abs(o - p);
        if (sep > 1e-12 * (1.0 + std::abs(p))) d = std::min(d, sep);
    }
    return std::isfinite(d) ? d : 1.0;
}

// SU(1,1)-type target motion g -> (p g + q)/(conj(q) g + conj(p)) with the
// matching form multiplier; an isometry of L^3 acting on the data.
WeierstrassData boost_target(const WeierstrassData& data, Complex pc, Complex qc,
                             const Tolerances& tol) {
    const RationalMap numer = data.g * pc + RationalMap::constant(qc);
    const RationalMap denom = data.g * std::conj(qc) + RationalMap::constant(std::conj(pc));
    WeierstrassData out = data;
    out.g = numer / denom;
    out.omega_hat = make_reduced(denom.num() * denom.num() * data.omega_hat.num(),
                                 denom.den() * denom.den() * data.omega_hat.den(), tol);
    return out;
}

// Reflection (g, omega) -> (1/g, g^2 omega): same surface with one spatial
// axis flipped; swaps the inside and outside of the unit circle.
WeierstrassData invert_gauss_map(const WeierstrassData& data, const Tolerances& tol) {
    WeierstrassData out = data;
    out.g = data.g.reciprocal();
    out.omega_hat = make_reduced(data.g.num() * data.g.num() * data.omega_hat.num(),
                                 data.g.den() * data.g.den() * data.omega_hat.den(), tol);
    return out;
}

// Forms in the chart local to the puncture: identity for finite p, w = 1/z
// at infinity.
std::array<RationalMap, 3> local_forms(const WeierstrassData& data, const SpherePoint& p,
                                       const Tolerances& tol) {
    auto phi = phi_forms(data);
    if (!p.is_infinite()) return phi;
    return {form_in_inverted_chart(phi[0], tol), form_in_inverted_chart(phi[1], tol),
            form_in_inverted_chart(phi[2], tol)};
}

Complex local_point(const SpherePoint& p) { return p.is_infinite() ? Complex{} : p.value; }

}  // namespace

PeriodReport compute_periods(const WeierstrassData& data, const Tolerances& tol) {
    const auto phi = phi_forms(data);
    PeriodReport report;
    std::array<Complex, 3> finite_sum{};
    bool has_infinite_puncture = false;

    for (const auto& p : data.punctures) {
        if (p.is_infinite()) {
            has_infinite_puncture = true;
            continue;
        }
        PeriodReport::Entry entry;
        entry.puncture = p;
        entry.loop_radius = 0.5 * min_distance_to_others(data, p.value);
        const PathSpec loop = PathSpec::circle(p.value, entry.loop_radius);
        for (int k = 0; k < 3; ++k) {
            const Complex res = residue_at(phi[k], p.value, tol).value;
            const Complex period = 2.0 * M_PI * kI * res;
            const Complex quad = contour_integral(
                [&](Complex z) { return phi[k].eval(z).value; }, loop, tol);
            entry.period[k] = period;
            entry.residue_quadrature_gap =
                std::max(entry.residue_quadrature_gap, std::abs(period - quad));
            finite_sum[k] += period;
        }
        if (entry.residue_quadrature_gap > 1e-6)
            throw InternalInconsistency("compute_periods: residue and quadrature disagree by " +
                                        std::to_string(entry.residue_quadrature_gap) + " at " +
                                        format_point(p));
        report.entries.push_back(entry);
    }

    if (has_infinite_puncture) {
        PeriodReport::Entry entry;
        entry.puncture = SpherePoint::infinity();
        for (int k = 0; k < 3; ++k) {
            const Complex res_inf = residue_at_infinity(phi[k], tol);
            entry.period[k] = 2.0 * M_PI * kI * res_inf;
            // Residue theorem: the loop around infinity is minus the sum of
            // the finite loops.
            entry.residue_quadrature_gap =
                std::max(entry.residue_quadrature_gap, std::abs(entry.period[k] + finite_sum[k]));
        }
        if (entry.residue_quadrature_gap > 1e-6)
            throw InternalInconsistency(
                "compute_periods: residue sum around infinity is inconsistent");
        report.entries.push_back(entry);
    }

    for (const auto& e : report.entries) {
        for (int k = 0; k < 3; ++k)
            report.max_re_violation = std::max(report.max_re_violation, std::abs(e.period[k].real()));
        report.max_residue_quadrature_gap =
            std::max(report.max_residue_quadrature_gap, e.residue_quadrature_gap);
    }
    report.passes = report.max_re_violation < tol.period;
    return report;
}

int gauss_degree(const WeierstrassData& data) {
    if (data.g.is_constant()) return 0;
    return data.g.sphere_degree();
}

const char* to_string(EndType t) {
    switch (t) {
        case EndType::Catenoidal: return "Catenoidal";
        case EndType::Planar: return "Planar";
        case EndType::HigherOrder: return "HigherOrder";
        case EndType::SimpleCandidate: return "Simple-candidate";
    }
    return "?";
}

EndReport analyze_end(const WeierstrassData& data, const SpherePoint& puncture,
                      const Tolerances& tol) {
    bool listed = false;
    for (const auto& p : data.punctures)
        if (p.is_infinite() == puncture.is_infinite() &&
            (p.is_infinite() || std::abs(p.value - puncture.value) <=
                                    tol.zero_rel * (1.0 + std::abs(p.value))))
            listed = true;
    if (!listed)
        throw ValidationError("analyze_end: " + format_point(puncture) + " is not a puncture");
    if (!puncture.is_infinite()) {
        const double sep = min_distance_to_others(data, puncture.value);
        if (sep < guard_radius(data))
            throw BadPunctureGeometry("analyze_end: puncture " + format_point(puncture) +
                                      " is not isolated from the forms' poles");
    }

    EndReport report;
    report.puncture = puncture;

    const EvalResult gv = data.g.eval(puncture);
    report.g_modulus = gv.modulus();
    const bool on_unit_circle =
        std::isfinite(report.g_modulus) && std::abs(report.g_modulus - 1.0) < tol.classify_band;
    report.end_complete = !on_unit_circle;

    const auto forms = local_forms(data, puncture, tol);
    const Complex p_local = local_point(puncture);
    int max_order = 0;
    for (const auto& f : forms) {
        if (f.is_zero()) continue;
        max_order = std::max(max_order, -order_at(f, SpherePoint{p_local}, tol));
    }
    report.phi_pole_order = max_order;
    report.df_order_ok = max_order >= 2;
    report.embedded = max_order == 2;

    if (on_unit_circle) {
        report.end_type = EndType::SimpleCandidate;
        return report;
    }
    if (max_order != 2) {
        report.end_type = EndType::HigherOrder;
        return report;
    }

    // Order-2 end: extract the expansion coefficients in the frame where
    // g(p) = 0 (reflect across the unit circle first when |g(p)| > 1, then
    // boost).  The horizontal 1/r coefficient comes from the double-pole
    // Laurent coefficient, the vertical log coefficient from the residue of
    // the time form.
    WeierstrassData frame = data;
    EvalResult g_end = gv;
    if (g_end.is_infinite() || std::abs(g_end.value) > 1.0) {
        frame = invert_gauss_map(frame, tol);
        g_end = frame.g.eval(puncture);
        report.normalized_by_transform = true;
    }
    if (std::abs(g_end.value) > tol.zero_rel) {
        const Complex w0 = g_end.value;
        const double s = std::sqrt(1.0 - std::norm(w0));
        frame = boost_target(frame, Complex{1.0 / s, 0.0}, -w0 / s, tol);
        report.normalized_by_transform = true;
    }

    const auto nf = local_forms(frame, puncture, tol);
    const Complex a2 = laurent_coefficients(nf[1], p_local, -2, 1, tol)[0];
    const Complex rho = residue_at(nf[0], p_local, tol).value;
    report.has_coefficients = true;
    report.coeff_a = std::abs(a2);
    report.coeff_c = rho.real();
    report.end_type = (std::abs(report.coeff_c) > tol.zero_rel * std::max(1.0, report.coeff_a))
                          ? EndType::Catenoidal
                          : EndType::Planar;
    return report;
}

Completeness classify_completeness(const WeierstrassData& data, const Tolerances& tol) {
    const PeriodReport periods = compute_periods(data, tol);
    if (!periods.passes)
        throw PeriodConditionFailed(
            "classify_completeness: period condition fails (max |Re P| = " +
            std::to_string(periods.max_re_violation) + "); the immersion is not well-defined");
    Completeness out;
    for (const auto& p : data.punctures) {
        const EndReport end = analyze_end(data, p, tol);
        if (!end.end_complete) out.violating_ends.push_back(p);
    }
    out.cls = out.violating_ends.empty() ? CompletenessClass::Complete
                                         : CompletenessClass::WeaklyCompleteOnly;
    return out;
}

double total_curvature_numeric(const WeierstrassData& data, const Tolerances& tol) {
    if (data.g.is_constant()) return 0.0;

    // Fubini-Study pull-back density 4|g'|^2/(1+|g|^2)^2, evaluated through
    // 1/g outside the unit circle so poles of g stay smooth.
    struct ChartDensity {
        RationalMap g, gp, h, hp;
        double operator()(Complex z) const {
            const EvalResult gv = g.eval(z);
            if (gv.is_infinite() || std::abs(gv.value) > 1.0) {
                const Complex hv = h.eval(z).value;
                const Complex hpv = hp.eval(z).value;
                const double m2 = std::norm(hv);
                return 4.0 * std::norm(hpv) / ((1.0 + m2) * (1.0 + m2));
            }
            const Complex gpv = gp.eval(z).value;
            const double m2 = std::norm(gv.value);
            return 4.0 * std::norm(gpv) / ((1.0 + m2) * (1.0 + m2));
        }
    };
    auto make_density = [&](const RationalMap& g) {
        return ChartDensity{g, rational_derivative(g), g.reciprocal(),
                            rational_derivative(g.reciprocal())};
    };
    const ChartDensity d_main = make_density(data.g);
    const ChartDensity d_inv = make_density(function_in_inverted_chart(data.g, tol));

    // Unit-disk integral in polar form: Gauss-Legendre in r, trapezoid in
    // theta, refined by doubling.
    auto disk_integral = [&](const ChartDensity& density, int n_r, int n_th) {
        // Gauss-Legendre nodes on [0,1] built from the 12-point rule tiled
        // over subintervals.
        static const double gx[6] = {0.1252334085114689154724414, 0.3678314989981801937526915,
                                     0.5873179542866174472967024, 0.7699026741943046870368938,
                                     0.9041172563704748566784659, 0.9815606342467192506905491};
        static const double gw[6] = {0.2491470458134027850005624, 0.2334925365383548087608499,
                                     0.2031674267230659217490645, 0.1600783285433462263346525,
                                     0.1069393259953184309602547, 0.0471753363865118271946160};
        const int panels = std::max(1, n_r / 12);
        double total = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double a = static_cast<double>(p) / panels;
            const double b = static_cast<double>(p + 1) / panels;
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (int i = 0; i < 6; ++i) {
                for (double sgn : {-1.0, 1.0}) {
                    const double r = mid + sgn * gx[i] * half;
                    double ring = 0.0;
                    for (int k = 0; k < n_th; ++k) {
                        const double th = 2.0 * M_PI * k / n_th;
                        ring += density(r * Complex{std::cos(th), std::sin(th)});
                    }
                    total += gw[i] * half * r * ring * (2.0 * M_PI / n_th);
                }
            }
        }
        return total;
    };

    double prev = disk_integral(d_main, 24, 48) + disk_integral(d_inv, 24, 48);
    for (int level = 1; level <= 6; ++level) {
        const int n_r = 24 << level;
        const int n_th = 48 << level;
        const double cur = disk_integral(d_main, n_r, n_th) + disk_integral(d_inv, n_r, n_th);
        if (std::abs(cur - prev) <= 2e-3 * std::max(std::abs(cur), 1.0)) return cur;
        prev = cur;
    }
    throw QuadratureFailure("total_curvature_numeric: no convergence at maximal resolution");
}

GlobalReport build_global_report(const WeierstrassData& data, bool with_total_curvature,
                                 const Tolerances& tol) {
    GlobalReport report;
    report.period = compute_periods(data, tol);
    for (const auto& p : data.punctures) report.ends.push_back(analyze_end(data, p, tol));

    report.deg_g = gauss_degree(data);
    if (data.g.is_constant()) report.note = "constant Gauss map: the image is a plane";
    const int n = static_cast<int>(data.punctures.size());
    report.euler_punctured = 2 - n;
    report.osserman_lhs = 2 * report.deg_g;
    report.osserman_rhs = -report.euler_punctured + n;
    report.equality = report.osserman_lhs == report.osserman_rhs;

    if (report.period.passes) {
        Completeness c;
        for (const auto& e : report.ends)
            if (!e.end_complete) c.violating_ends.push_back(e.puncture);
        c.cls = c.violating_ends.empty() ? CompletenessClass::Complete
                                         : CompletenessClass::WeaklyCompleteOnly;
        report.completeness = c;
    }
    if (with_total_curvature) report.total_curvature_numeric = total_curvature_numeric(data, tol);
    return report;
}

GlobalReport osserman_report(const WeierstrassData& data, const Tolerances& tol) {
    GlobalReport report = build_global_report(data, true, tol);
    if (!report.completeness || report.completeness->cls != CompletenessClass::Complete)
        throw ValidationError("osserman_report: surface is not complete");
    if (report.osserman_lhs < report.osserman_rhs)
        throw InternalInconsistency("osserman_report: inequality violated (" +
                                    std::to_string(report.osserman_lhs) + " < " +
                                    std::to_string(report.osserman_rhs) + ")");
    bool all_embedded = true;
    for (const auto& e : report.ends) all_embedded &= e.embedded;
    if (report.equality != all_embedded)
        throw InternalInconsistency(
            "osserman_report: equality flag disagrees with the pole-order test");
    return report;
}

}  // namespace maxface
