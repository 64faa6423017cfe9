// maxface: construct, analyze and verify maximal surfaces with singularities
// in Minkowski 3-space from rational Weierstrass data.
//
//   maxface verify   --gallery catenoid
//   maxface singular --gallery enneper --box -1.5 -1.5 1.5 1.5
//   maxface mesh     --gallery catenoid --polar 0 0.3 3 40 120 --out cat.obj
//   maxface gallery  list

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "maxface/commands.hpp"
#include "maxface/errors.hpp"

namespace {

using namespace maxface;

Complex parse_complex(const std::string& text) {
    // Accepts "1.5", "2i", "1+2i", "-0.5-i", "i".
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw UsageError("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I') {
        size_t used = 0;
        const double re = std::stod(s, &used);
        if (used != s.size()) throw UsageError("bad complex literal '" + text + "'");
        return {re, 0.0};
    }
    s.pop_back();  // trailing i
    if (s.empty()) return {0.0, 1.0};
    // Split at the last +/- that is not an exponent sign and not leading.
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    try {
        if (split == std::string::npos) {
            if (s == "+") return {0.0, 1.0};
            if (s == "-") return {0.0, -1.0};
            return {0.0, std::stod(s)};
        }
        const double re = std::stod(s.substr(0, split));
        std::string im_part = s.substr(split);
        if (im_part == "+") im_part = "1";
        if (im_part == "-") im_part = "-1";
        return {re, std::stod(im_part)};
    } catch (const std::exception&) {
        throw UsageError("bad complex literal '" + text + "'");
    }
}

Tolerances tolerances_from_env() {
    Tolerances tol;
    if (const char* env = std::getenv("MAXFACE_TOL")) {
        try {
            const double v = std::stod(env);
            if (v > 0.0) tol.zero_rel = v;
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring malformed MAXFACE_TOL='" << env << "'\n";
        }
    }
    return tol;
}

void add_input_flags(CLI::App* cmd, InputSelection& input) {
    cmd->add_option("--gallery", input.gallery_name, "built-in surface name");
    cmd->add_option("--input", input.input_path, "surface description JSON file");
    cmd->add_option("--a", input.params.a, "catenoid scale parameter");
    cmd->add_option("--lambda", input.params.lambda, "Lopez-Ros deformation factor");
    cmd->add_option("--n", input.params.n, "Jorge-Meeks end count");
}

int finish(const CommandResult& result, bool print_report) {
    if (print_report && !result.report_json.empty()) std::cout << result.report_json;
    if (!result.message.empty() && result.message != "ok") {
        (result.exit_code == 0 ? std::cout : std::cerr) << result.message << "\n";
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximal surfaces with singularities from rational Weierstrass data"};
    app.require_subcommand(1);
    const Tolerances tol = tolerances_from_env();

    // verify
    VerifyOptions verify_opts;
    verify_opts.tol = tol;
    auto* verify = app.add_subcommand("verify", "period, completeness and Osserman checks");
    add_input_flags(verify, verify_opts.input);
    verify->add_flag("--require-complete", verify_opts.require_complete,
                     "fail unless the surface is complete");
    verify->add_flag("--require-osserman-equality", verify_opts.require_osserman_equality,
                     "fail unless the Osserman bound is attained");
    verify->add_flag("--skip-total-curvature", verify_opts.skip_total_curvature,
                     "skip the numerical total-curvature integral");
    verify->add_option("--out", verify_opts.out_path, "write the report JSON here");

    // singular
    SingularOptions singular_opts;
    singular_opts.tol = tol;
    std::vector<double> box_vals, annulus_vals;
    std::string annulus_center;
    auto* singular = app.add_subcommand("singular", "trace and classify the singular set");
    add_input_flags(singular, singular_opts.input);
    singular->add_option("--box", box_vals, "region corners: re0 im0 re1 im1")->expected(4);
    singular->add_option("--annulus", annulus_vals, "region: center_re center_im r_min r_max")
        ->expected(4);
    singular->add_option("--scan", singular_opts.scan, "scan grid resolution");
    singular->add_option("--out", singular_opts.out_path, "write the report JSON here");

    // mesh
    MeshOptions mesh_opts;
    mesh_opts.tol = tol;
    std::vector<std::string> polar_vals;
    std::vector<double> rect_vals;
    auto* mesh = app.add_subcommand("mesh", "integrate the immersion and export OBJ");
    add_input_flags(mesh, mesh_opts.input);
    mesh->add_option("--polar", polar_vals, "center r_min r_max n_r n_theta")->expected(5);
    mesh->add_option("--rect", rect_vals, "re0 im0 re1 im1 n_u n_v")->expected(6);
    mesh->add_flag("--companion", mesh_opts.companion,
                   "export the companion minimal surface instead");
    mesh->add_option("--out", mesh_opts.out_obj, "OBJ destination")->required();
    mesh->add_option("--csv", mesh_opts.out_csv, "also write a per-vertex CSV table");

    // gallery
    auto* gallery_cmd = app.add_subcommand("gallery", "built-in surface catalogue");
    auto* gallery_list = gallery_cmd->add_subcommand("list", "list entries and parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return finish(run_verify(verify_opts), verify_opts.out_path.empty());
        if (singular->parsed()) {
            if (!box_vals.empty())
                singular_opts.region = Region::box({box_vals[0], box_vals[1]},
                                                   {box_vals[2], box_vals[3]});
            else if (!annulus_vals.empty())
                singular_opts.region = Region::annulus({annulus_vals[0], annulus_vals[1]},
                                                       annulus_vals[2], annulus_vals[3]);
            return finish(run_singular(singular_opts), singular_opts.out_path.empty());
        }
        if (mesh->parsed()) {
            if (!polar_vals.empty())
                mesh_opts.grid = GridSpec::polar(parse_complex(polar_vals[0]),
                                                 std::stod(polar_vals[1]), std::stod(polar_vals[2]),
                                                 std::stoi(polar_vals[3]),
                                                 std::stoi(polar_vals[4]));
            else if (!rect_vals.empty())
                mesh_opts.grid =
                    GridSpec::rect({rect_vals[0], rect_vals[1]}, {rect_vals[2], rect_vals[3]},
                                   static_cast<int>(rect_vals[4]), static_cast<int>(rect_vals[5]));
            return finish(run_mesh(mesh_opts), false);
        }
        if (gallery_cmd->parsed()) {
            if (gallery_list->parsed()) {
                std::cout << run_gallery_list(tol).message;
                return 0;
            }
            std::cerr << "usage: maxface gallery list\n";
            return 2;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
