#pragma once

#include <optional>
#include <string>

#include "maxface/gallery.hpp"
#include "maxface/global.hpp"
#include "maxface/meshio.hpp"
#include "maxface/singular.hpp"

namespace maxface {

// Exit-code contract shared by every subcommand:
//   0  checks passed
//   1  a verified property failed (periods, completeness, equality, ...)
//   2  invalid input (bad file, unknown gallery entry, bad flags)

struct InputSelection {
    std::string gallery_name;  // one of the two must be set
    std::string input_path;
    GalleryParams params;
};

struct CommandResult {
    int exit_code = 0;
    std::string report_json;  // empty for commands without a JSON report
    std::string message;      // human-readable status / error text
};

struct VerifyOptions {
    InputSelection input;
    bool require_complete = false;
    bool require_osserman_equality = false;
    bool skip_total_curvature = false;
    std::string out_path;  // report JSON destination; empty = in-memory only
    Tolerances tol;
};
CommandResult run_verify(const VerifyOptions& opts);

struct SingularOptions {
    InputSelection input;
    std::optional<Region> region;  // default: box [-3-3i, 3+3i]
    int scan = 96;
    std::string out_path;
    Tolerances tol;
};
CommandResult run_singular(const SingularOptions& opts);

struct MeshOptions {
    InputSelection input;
    std::optional<GridSpec> grid;
    bool companion = false;
    std::string out_obj;
    std::string out_csv;  // optional
    Tolerances tol;
};
CommandResult run_mesh(const MeshOptions& opts);

CommandResult run_gallery_list(const Tolerances& tol = {});

// Shared loader: gallery entry or description file.
WeierstrassData load_input(const InputSelection& input, const Tolerances& tol);

}  // namespace maxface
