#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "maxface/singular.hpp"
#include "maxface/weierstrass.hpp"

namespace maxface {

struct GridSpec {
    enum class Kind { Polar, Rect };
    enum class Chart { Identity, Inversion };

    Kind kind = Kind::Rect;
    Chart chart = Chart::Identity;
    // polar
    Complex center{};
    double r_min = 0.0, r_max = 0.0;
    int n_r = 0, n_theta = 0;
    // rect
    Complex lo{}, hi{};
    int n_u = 0, n_v = 0;

    static GridSpec polar(Complex center, double r_min, double r_max, int n_r, int n_theta);
    static GridSpec rect(Complex lo, Complex hi, int n_u, int n_v);
};

// Structured sample grid with validity mask; polar grids get a ring snapped
// onto each centered-circle singular radius.
struct ChartGrid {
    GridSpec spec;
    int rows = 0, cols = 0;
    bool wraps_theta = false;
    std::vector<Complex> nodes;  // row-major, in the surface coordinate z
    std::vector<bool> mask;      // true = usable
    std::vector<double> snapped_radii;

    int index(int i, int j) const { return i * cols + j; }
    Complex node(int i, int j) const { return nodes[index(i, j)]; }
    bool valid(int i, int j) const { return mask[index(i, j)]; }
};

ChartGrid build_chart_grid(const WeierstrassData& data, const GridSpec& spec,
                           const Tolerances& tol = {});

struct MeshVertex {
    Vec3 position{};  // (x^0, x^1, x^2), time-like first
    double ds2_factor = 0.0;
    double abs_g = 0.0;
    bool singular = false;
    Complex z{};
};

struct SurfaceMesh {
    struct Polyline {
        std::string label;
        std::vector<int> indices;
    };
    std::vector<MeshVertex> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<Polyline> polylines;
    SurfaceConvention convention = SurfaceConvention::Maxface;
};

// Integrates the immersion cumulatively along grid edges (one anchor node is
// evaluated from the base point, neighbours by single edge integrals),
// triangulates unmasked cells, and overlays traced singular curves.  The
// theta-wrap faces of a polar grid are emitted only when the loop periods of
// the active convention vanish; otherwise the mesh stays a single branch.
SurfaceMesh generate_mesh(const WeierstrassData& data, const ChartGrid& grid,
                          const Tolerances& tol = {});

// ASCII OBJ: `v x y z` with the time axis written last (x = x^1, y = x^2,
// z = x^0), `f` faces, `l` polylines, `p` point markers.
void write_obj(const SurfaceMesh& mesh, std::ostream& out);

// Per-vertex scalar table: z_re, z_im, x0, x1, x2, ds2_factor, abs_g, singular.
void write_csv(const SurfaceMesh& mesh, std::ostream& out);

// Parses the subset of OBJ emitted by write_obj (round-trip checks).
SurfaceMesh read_obj(std::istream& in);

}  // namespace maxface
