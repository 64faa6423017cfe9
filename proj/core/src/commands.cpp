#include "maxface/commands.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "maxface/description_io.hpp"
#include "maxface/errors.hpp"

namespace maxface {

namespace {

using Json = nlohmann::ordered_json;

Json point_json(const SpherePoint& p) {
    if (p.is_infinite()) return "inf";
    return Json::array({p.value.real(), p.value.imag()});
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json period_json(const PeriodReport& report) {
    Json loops = Json::array();
    for (const auto& e : report.entries) {
        Json entry;
        entry["puncture"] = point_json(e.puncture);
        entry["period"] =
            Json::array({complex_json(e.period[0]), complex_json(e.period[1]),
                         complex_json(e.period[2])});
        entry["loop_radius"] = e.loop_radius;
        entry["residue_quadrature_gap"] = e.residue_quadrature_gap;
        loops.push_back(entry);
    }
    Json j;
    j["passes"] = report.passes;
    j["max_re_violation"] = report.max_re_violation;
    j["max_residue_quadrature_gap"] = report.max_residue_quadrature_gap;
    j["loops"] = loops;
    return j;
}

Json end_json(const EndReport& e) {
    Json j;
    j["puncture"] = point_json(e.puncture);
    if (std::isfinite(e.g_modulus))
        j["g_modulus"] = e.g_modulus;
    else
        j["g_modulus"] = "inf";
    j["end_complete"] = e.end_complete;
    j["phi_pole_order"] = e.phi_pole_order;
    j["df_order_ok"] = e.df_order_ok;
    j["embedded"] = e.embedded;
    j["end_type"] = to_string(e.end_type);
    if (e.has_coefficients)
        j["coefficients"] = Json{{"a", e.coeff_a}, {"c", e.coeff_c}};
    else
        j["coefficients"] = nullptr;
    j["normalized_by_transform"] = e.normalized_by_transform;
    return j;
}

Json global_report_json(const std::string& label, const GlobalReport& report,
                        bool with_total_curvature) {
    Json j;
    j["label"] = label;
    j["period"] = period_json(report.period);
    Json ends = Json::array();
    for (const auto& e : report.ends) ends.push_back(end_json(e));
    j["ends"] = ends;
    j["deg_g"] = report.deg_g;
    j["euler_punctured"] = report.euler_punctured;
    j["osserman"] = Json{{"lhs", report.osserman_lhs},
                         {"rhs", report.osserman_rhs},
                         {"equality", report.equality}};
    if (report.completeness) {
        if (report.completeness->cls == CompletenessClass::Complete) {
            j["completeness"] = "Complete";
        } else {
            Json violating = Json::array();
            for (const auto& p : report.completeness->violating_ends)
                violating.push_back(point_json(p));
            j["completeness"] = Json{{"WeaklyCompleteOnly", violating}};
        }
    } else {
        j["completeness"] = nullptr;
    }
    if (with_total_curvature) j["total_curvature"] = report.total_curvature_numeric;
    if (!report.note.empty()) j["note"] = report.note;
    return j;
}

Json witness_json(const SingularClass& c) {
    Json j;
    j["class"] = to_string(c.tag);
    j["alpha"] = complex_json(c.witness.alpha);
    j["re_alpha"] = c.witness.re_alpha;
    j["im_alpha"] = c.witness.im_alpha;
    j["swallowtail_second"] = c.witness.swallowtail_second;
    j["dg_abs"] = c.witness.dg_abs;
    j["band"] = c.band;
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IOFailure("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IOFailure("write failed for '" + path + "'");
}

}  // namespace

WeierstrassData load_input(const InputSelection& input, const Tolerances& tol) {
    const bool has_gallery = !input.gallery_name.empty();
    const bool has_file = !input.input_path.empty();
    if (has_gallery == has_file)
        throw UsageError("select exactly one input: --gallery NAME or --input FILE");
    if (has_gallery) return gallery(input.gallery_name, input.params, tol);
    std::ifstream in(input.input_path, std::ios::binary);
    if (!in) throw UsageError("cannot read surface description '" + input.input_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_surface_description(text.str(), tol);
}

CommandResult run_verify(const VerifyOptions& opts) {
    CommandResult result;
    WeierstrassData data;
    try {
        data = load_input(opts.input, opts.tol);
    } catch (const Error& e) {
        return {2, "", e.what()};
    }

    GlobalReport report;
    try {
        report = build_global_report(data, !opts.skip_total_curvature, opts.tol);
    } catch (const Error& e) {
        return {1, "", e.what()};
    }

    result.report_json =
        global_report_json(data.label, report, !opts.skip_total_curvature).dump(2) + "\n";
    if (!opts.out_path.empty()) {
        try {
            write_text_file(opts.out_path, result.report_json);
        } catch (const IOFailure& e) {
            return {2, result.report_json, e.what()};
        }
    }

    if (!report.period.passes) {
        result.exit_code = 1;
        result.message = "period condition fails: max |Re P| = " +
                         std::to_string(report.period.max_re_violation);
        return result;
    }
    const bool complete = report.completeness &&
                          report.completeness->cls == CompletenessClass::Complete;
    if (opts.require_complete && !complete) {
        result.exit_code = 1;
        result.message = "surface is weakly complete only";
        return result;
    }
    if (opts.require_osserman_equality && !(complete && report.equality)) {
        result.exit_code = 1;
        result.message = "Osserman equality does not hold";
        return result;
    }
    result.message = "ok";
    return result;
}

CommandResult run_singular(const SingularOptions& opts) {
    CommandResult result;
    WeierstrassData data;
    try {
        data = load_input(opts.input, opts.tol);
    } catch (const Error& e) {
        return {2, "", e.what()};
    }
    const Region region =
        opts.region ? *opts.region : Region::box(Complex{-3.0, -3.0}, Complex{3.0, 3.0});

    std::vector<SingularCurve> curves;
    try {
        curves = find_singular_curves(data, region, opts.scan, TraceOptions{}, opts.tol);
    } catch (const Error& e) {
        return {1, "", e.what()};
    }

    Json j;
    j["label"] = data.label;
    if (region.kind == Region::Kind::Annulus)
        j["region"] = Json{{"annulus", Json{{"center", complex_json(region.center)},
                                            {"r_min", region.r_min},
                                            {"r_max", region.r_max}}}};
    else
        j["region"] =
            Json{{"box", Json{{"lo", complex_json(region.lo)}, {"hi", complex_json(region.hi)}}}};
    Json jcurves = Json::array();
    size_t n_swallowtails = 0;
    for (const auto& curve : curves) {
        Json jc;
        jc["closed"] = curve.closed;
        jc["ends_degenerate"] = curve.ends_degenerate;
        jc["sample_count"] = curve.samples.size();
        Json samples = Json::array();
        for (const auto& s : curve.samples) {
            Json js = witness_json(s.classification);
            js["z"] = complex_json(s.z);
            js["tangent"] = complex_json(s.tangent);
            js["null_dir"] = complex_json(s.null_dir);
            samples.push_back(js);
        }
        jc["samples"] = samples;
        Json st = Json::array(), nf = Json::array(), bl = Json::array();
        for (const Complex& p : curve.swallowtail_points) st.push_back(complex_json(p));
        for (const Complex& p : curve.not_front_points) nf.push_back(complex_json(p));
        for (const Complex& p : curve.borderline_points) bl.push_back(complex_json(p));
        jc["swallowtails"] = st;
        jc["not_a_front"] = nf;
        jc["borderline"] = bl;
        jcurves.push_back(jc);
        n_swallowtails += curve.swallowtail_points.size();
    }
    j["curves"] = jcurves;
    j["curve_count"] = curves.size();
    j["swallowtail_count"] = n_swallowtails;

    result.report_json = j.dump(2) + "\n";
    if (!opts.out_path.empty()) {
        try {
            write_text_file(opts.out_path, result.report_json);
        } catch (const IOFailure& e) {
            return {2, result.report_json, e.what()};
        }
    }
    result.message = "ok";
    return result;
}

CommandResult run_mesh(const MeshOptions& opts) {
    CommandResult result;
    WeierstrassData data;
    try {
        data = load_input(opts.input, opts.tol);
        if (!opts.grid) throw UsageError("mesh: a --polar or --rect grid is required");
        if (opts.out_obj.empty()) throw UsageError("mesh: --out FILE.obj is required");
    } catch (const Error& e) {
        return {2, "", e.what()};
    }

    if (opts.companion) data = companion(data);

    // Multi-chart regions (a puncture inside the sampled area) require the
    // period condition for the maxface; the companion is exported on the
    // universal cover, one branch per grid.
    if (!opts.companion) {
        bool enclosed = false;
        for (const auto& p : data.punctures) {
            if (p.is_infinite()) continue;
            if (opts.grid->kind == GridSpec::Kind::Polar)
                enclosed |= std::abs(p.value - opts.grid->center) <= opts.grid->r_max;
            else
                enclosed |= opts.grid->lo.real() <= p.value.real() &&
                            p.value.real() <= opts.grid->hi.real() &&
                            opts.grid->lo.imag() <= p.value.imag() &&
                            p.value.imag() <= opts.grid->hi.imag();
        }
        if (enclosed) {
            PeriodReport periods;
            try {
                periods = compute_periods(data, opts.tol);
            } catch (const Error& e) {
                return {1, "", e.what()};
            }
            if (!periods.passes)
                return {1, "",
                        "period condition fails (max |Re P| = " +
                            std::to_string(periods.max_re_violation) +
                            "); the immersion is not single-valued on this region"};
        }
    }

    try {
        const ChartGrid grid = build_chart_grid(data, *opts.grid, opts.tol);
        const SurfaceMesh mesh = generate_mesh(data, grid, opts.tol);
        std::ostringstream obj;
        write_obj(mesh, obj);
        write_text_file(opts.out_obj, obj.str());
        if (!opts.out_csv.empty()) {
            std::ostringstream csv;
            write_csv(mesh, csv);
            write_text_file(opts.out_csv, csv.str());
        }
        result.message = "wrote " + opts.out_obj + " (" + std::to_string(mesh.vertices.size()) +
                         " vertices, " + std::to_string(mesh.faces.size()) + " faces)";
    } catch (const IOFailure& e) {
        return {2, "", e.what()};
    } catch (const Error& e) {
        return {1, "", e.what()};
    }
    return result;
}

CommandResult run_gallery_list(const Tolerances& tol) {
    std::ostringstream out;
    out << "plane                     (no parameters)\n"
        << "catenoid                  --a A        (A != 0, default 1)\n"
        << "enneper                   (no parameters)\n"
        << "lopez-ros-catenoid        --a A --lambda L  (L != 0, default 2)\n"
        << "lopez-ros-enneper         --lambda L   (L != 0, default 2)\n"
        << "jorge-meeks-companion     --n N        (N >= 2, default 3)\n";
    for (const char* base : {"catenoid", "enneper"}) {
        const auto data = gallery(base, GalleryParams{}, tol);
        const auto excluded = excluded_lopez_ros_lambdas(data, tol);
        out << "lopez-ros-" << base << ": completeness-excluded lambda set = {";
        for (size_t i = 0; i < excluded.size(); ++i) out << (i ? ", " : "") << excluded[i];
        out << "}\n";
    }
    CommandResult result;
    result.message = out.str();
    return result;
}

}  // namespace maxface
