#include "maxface/meshio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include "maxface/errors.hpp"
#include "maxface/global.hpp"

namespace maxface {

GridSpec GridSpec::polar(Complex center, double r_min, double r_max, int n_r, int n_theta) {
    if (!(0.0 < r_min && r_min < r_max) || n_r < 2 || n_theta < 3)
        throw ValidationError("GridSpec: polar needs 0 < r_min < r_max, n_r >= 2, n_theta >= 3");
    GridSpec s;
    s.kind = Kind::Polar;
    s.center = center;
    s.r_min = r_min;
    s.r_max = r_max;
    s.n_r = n_r;
    s.n_theta = n_theta;
    return s;
}

GridSpec GridSpec::rect(Complex lo, Complex hi, int n_u, int n_v) {
    if (!(lo.real() < hi.real() && lo.imag() < hi.imag()) || n_u < 2 || n_v < 2)
        throw ValidationError("GridSpec: rect needs ordered corners and n_u, n_v >= 2");
    GridSpec s;
    s.kind = Kind::Rect;
    s.lo = lo;
    s.hi = hi;
    s.n_u = n_u;
    s.n_v = n_v;
    return s;
}

ChartGrid build_chart_grid(const WeierstrassData& data, const GridSpec& spec,
                           const Tolerances& tol) {
    ChartGrid grid;
    grid.spec = spec;

    std::vector<double> radii;
    if (spec.kind == GridSpec::Kind::Polar) {
        grid.rows = spec.n_r;
        grid.cols = spec.n_theta;
        grid.wraps_theta = true;
        radii.resize(spec.n_r);
        for (int i = 0; i < spec.n_r; ++i)
            radii[i] = spec.r_min + (spec.r_max - spec.r_min) * i / (spec.n_r - 1);

        // Snap a ring onto each centered-circle singular radius.
        const Region annulus = Region::annulus(spec.center, spec.r_min, spec.r_max);
        for (const auto& curve : find_singular_curves(data, annulus, 96, TraceOptions{}, tol)) {
            if (!curve.closed || curve.samples.empty()) continue;
            double mean = 0.0, dev = 0.0;
            for (const auto& s : curve.samples) mean += std::abs(s.z - spec.center);
            mean /= static_cast<double>(curve.samples.size());
            for (const auto& s : curve.samples)
                dev = std::max(dev, std::abs(std::abs(s.z - spec.center) - mean));
            if (dev > 1e-9) continue;  // general curve, rendered as a polyline only
            // Refine the radius along the first sample's ray by a secant
            // solve on |g|^2 - 1.
            const Complex u = (curve.samples.front().z - spec.center) /
                              std::abs(curve.samples.front().z - spec.center);
            auto level = [&](double r) {
                const EvalResult gv = data.g.eval(spec.center + r * u);
                return gv.is_infinite() ? 1e9 : std::norm(gv.value) - 1.0;
            };
            double r0 = mean * (1.0 - 1e-6), r1 = mean * (1.0 + 1e-6);
            double f0 = level(r0), f1 = level(r1);
            for (int it = 0; it < 60 && f1 != f0; ++it) {
                const double r2 = r1 - f1 * (r1 - r0) / (f1 - f0);
                r0 = r1;
                f0 = f1;
                r1 = r2;
                f1 = level(r1);
                if (std::abs(f1) < 1e-15) break;
            }
            const double snapped = r1;
            int nearest = 0;
            for (int i = 1; i < spec.n_r; ++i)
                if (std::abs(radii[i] - snapped) < std::abs(radii[nearest] - snapped)) nearest = i;
            radii[nearest] = snapped;
            grid.snapped_radii.push_back(snapped);
        }

        grid.nodes.resize(static_cast<size_t>(grid.rows) * grid.cols);
        for (int i = 0; i < grid.rows; ++i)
            for (int j = 0; j < grid.cols; ++j) {
                const double th = 2.0 * M_PI * j / spec.n_theta;
                grid.nodes[grid.index(i, j)] =
                    spec.center + radii[i] * Complex{std::cos(th), std::sin(th)};
            }
    } else {
        grid.rows = spec.n_v;
        grid.cols = spec.n_u;
        grid.nodes.resize(static_cast<size_t>(grid.rows) * grid.cols);
        for (int i = 0; i < grid.rows; ++i)
            for (int j = 0; j < grid.cols; ++j) {
                const double x = spec.lo.real() + (spec.hi.real() - spec.lo.real()) * j /
                                                      (spec.n_u - 1);
                const double y = spec.lo.imag() + (spec.hi.imag() - spec.lo.imag()) * i /
                                                      (spec.n_v - 1);
                grid.nodes[grid.index(i, j)] = Complex{x, y};
            }
    }

    if (spec.chart == GridSpec::Chart::Inversion)
        for (auto& z : grid.nodes) z = (z == Complex{}) ? Complex{} : 1.0 / z;

    const auto obstacles = finite_obstacles(data);
    const double guard = default_guard_radius(obstacles);
    grid.mask.assign(grid.nodes.size(), true);
    for (size_t k = 0; k < grid.nodes.size(); ++k) {
        if (spec.chart == GridSpec::Chart::Inversion && grid.nodes[k] == Complex{}) {
            grid.mask[k] = false;  // w = 0 maps to infinity
            continue;
        }
        for (const Complex& o : obstacles)
            if (std::abs(grid.nodes[k] - o) < guard) {
                grid.mask[k] = false;
                break;
            }
    }
    if (std::none_of(grid.mask.begin(), grid.mask.end(), [](bool b) { return b; }))
        throw EmptyGrid("build_chart_grid: every node is masked");
    return grid;
}

namespace {

bool wrap_faces_consistent(const WeierstrassData& data, const ChartGrid& grid,
                           const Tolerances& tol) {
    if (!grid.wraps_theta) return false;
    const PeriodReport periods = compute_periods(data, tol);
    for (const auto& e : periods.entries) {
        if (e.puncture.is_infinite()) continue;
        if (std::abs(e.puncture.value - grid.spec.center) > grid.spec.r_max) continue;
        for (const Complex& p : e.period)
            if (std::abs(p.real()) > 1e-8) return false;
    }
    return true;
}

}  // namespace

SurfaceMesh generate_mesh(const WeierstrassData& data, const ChartGrid& grid,
                          const Tolerances& tol) {
    SurfaceMesh mesh;
    mesh.convention = data.convention;

    const auto phi = phi_forms(data);
    const auto obstacles = finite_obstacles(data);
    const double guard = default_guard_radius(obstacles);
    auto integrand = [&](Complex w) -> std::array<Complex, 3> {
        return {phi[0].eval(w).value, phi[1].eval(w).value, phi[2].eval(w).value};
    };
    auto edge_integral = [&](Complex a, Complex b) -> Vec3 {
        const PathSpec route = PathSpec::polyline(route_avoiding(a, b, obstacles, guard));
        const auto F = path_integral3(integrand, route, {}, 0.0, tol);
        return {F[0].real(), F[1].real(), F[2].real()};
    };

    const size_t n_nodes = grid.nodes.size();
    std::vector<Vec3> values(n_nodes);
    std::vector<char> have(n_nodes, 0);

    // Cumulative integration: anchor each connected component once, then
    // propagate along grid edges (no theta wrap, so values stay on a single
    // branch).
    auto neighbors = [&](int idx, std::array<int, 4>& out) {
        const int i = idx / grid.cols, j = idx % grid.cols;
        int n = 0;
        if (i > 0) out[n++] = grid.index(i - 1, j);
        if (i + 1 < grid.rows) out[n++] = grid.index(i + 1, j);
        if (j > 0) out[n++] = grid.index(i, j - 1);
        if (j + 1 < grid.cols) out[n++] = grid.index(i, j + 1);
        return n;
    };
    for (size_t start = 0; start < n_nodes; ++start) {
        if (!grid.mask[start] || have[start]) continue;
        values[start] = evaluate_immersion(data, grid.nodes[start], std::nullopt, tol);
        have[start] = 1;
        std::queue<int> frontier;
        frontier.push(static_cast<int>(start));
        while (!frontier.empty()) {
            const int cur = frontier.front();
            frontier.pop();
            std::array<int, 4> nb{};
            const int n = neighbors(cur, nb);
            for (int k = 0; k < n; ++k) {
                const int nxt = nb[k];
                if (!grid.mask[nxt] || have[nxt]) continue;
                const Vec3 edge = edge_integral(grid.nodes[cur], grid.nodes[nxt]);
                values[nxt] = values[cur] + edge;
                have[nxt] = 1;
                frontier.push(nxt);
            }
        }
    }

    // Vertices (masked nodes get no vertex; faces index the compacted list).
    std::vector<int> vertex_of(n_nodes, -1);
    for (size_t k = 0; k < n_nodes; ++k) {
        if (!grid.mask[k]) continue;
        const Complex z = grid.nodes[k];
        MeshVertex v;
        v.position = values[k];
        v.z = z;
        const auto mc = metric_and_curvature(data, z, tol);
        v.ds2_factor = mc.ds2_factor;
        const double gm = data.g.eval(z).modulus();
        v.abs_g = gm;
        v.singular = std::isfinite(gm) && std::abs(gm - 1.0) < tol.zero_rel;
        vertex_of[k] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(v);
    }

    const bool wrap_ok = grid.wraps_theta && wrap_faces_consistent(data, grid, tol);
    const int j_cells = grid.wraps_theta ? grid.cols : grid.cols - 1;
    for (int i = 0; i + 1 < grid.rows; ++i)
        for (int j = 0; j < j_cells; ++j) {
            const int jn = (j + 1) % grid.cols;
            if (jn == 0 && !wrap_ok) continue;
            const int a = vertex_of[grid.index(i, j)];
            const int b = vertex_of[grid.index(i + 1, j)];
            const int c = vertex_of[grid.index(i + 1, jn)];
            const int d = vertex_of[grid.index(i, jn)];
            if (a < 0 || b < 0 || c < 0 || d < 0) continue;
            mesh.faces.push_back({a, b, c});
            mesh.faces.push_back({a, c, d});
        }

    // Singular-curve overlay (identity chart only; the inversion chart is a
    // programmatic surface and carries no overlay).
    if (grid.spec.chart == GridSpec::Chart::Identity) {
        const Region region =
            grid.spec.kind == GridSpec::Kind::Polar
                ? Region::annulus(grid.spec.center, grid.spec.r_min, grid.spec.r_max)
                : Region::box(grid.spec.lo, grid.spec.hi);
        std::vector<Complex> swallowtails;
        int curve_id = 0;
        for (const auto& curve : find_singular_curves(data, region, 96, TraceOptions{}, tol)) {
            SurfaceMesh::Polyline line;
            line.label = "singular-curve-" + std::to_string(curve_id++);
            for (const auto& s : curve.samples) {
                MeshVertex v;
                v.position = evaluate_immersion(data, s.z, std::nullopt, tol);
                v.z = s.z;
                const auto mc = metric_and_curvature(data, s.z, tol);
                v.ds2_factor = mc.ds2_factor;
                v.abs_g = data.g.eval(s.z).modulus();
                v.singular = true;
                line.indices.push_back(static_cast<int>(mesh.vertices.size()));
                mesh.vertices.push_back(v);
            }
            if (curve.closed && !line.indices.empty()) line.indices.push_back(line.indices.front());
            if (line.indices.size() >= 2) mesh.polylines.push_back(std::move(line));
            for (const Complex& st : curve.swallowtail_points) swallowtails.push_back(st);
        }
        if (!swallowtails.empty()) {
            SurfaceMesh::Polyline markers;
            markers.label = "swallowtails";
            for (const Complex& st : swallowtails) {
                MeshVertex v;
                v.position = evaluate_immersion(data, st, std::nullopt, tol);
                v.z = st;
                v.abs_g = data.g.eval(st).modulus();
                v.singular = true;
                markers.indices.push_back(static_cast<int>(mesh.vertices.size()));
                mesh.vertices.push_back(v);
            }
            mesh.polylines.push_back(std::move(markers));
        }
    }
    return mesh;
}

namespace {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void write_obj(const SurfaceMesh& mesh, std::ostream& out) {
    for (const auto& v : mesh.vertices)
        out << "v " << fmt_double(v.position[1]) << ' ' << fmt_double(v.position[2]) << ' '
            << fmt_double(v.position[0]) << '\n';
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    for (const auto& line : mesh.polylines) {
        if (line.indices.empty()) continue;
        out << (line.label == "swallowtails" ? 'p' : 'l');
        for (int idx : line.indices) out << ' ' << idx + 1;
        out << '\n';
    }
}

void write_csv(const SurfaceMesh& mesh, std::ostream& out) {
    out << "z_re,z_im,x0,x1,x2,ds2_factor,abs_g,singular\n";
    for (const auto& v : mesh.vertices) {
        out << fmt_double(v.z.real()) << ',' << fmt_double(v.z.imag()) << ','
            << fmt_double(v.position[0]) << ',' << fmt_double(v.position[1]) << ','
            << fmt_double(v.position[2]) << ',' << fmt_double(v.ds2_factor) << ','
            << fmt_double(v.abs_g) << ',' << (v.singular ? 1 : 0) << '\n';
    }
}

SurfaceMesh read_obj(std::istream& in) {
    SurfaceMesh mesh;
    std::string line;
    int poly_id = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            double x = 0, y = 0, z = 0;
            ls >> x >> y >> z;
            MeshVertex v;
            v.position = {z, x, y};  // time axis was written last
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::array<int, 3> f{};
            ls >> f[0] >> f[1] >> f[2];
            mesh.faces.push_back({f[0] - 1, f[1] - 1, f[2] - 1});
        } else if (tag == "l" || tag == "p") {
            SurfaceMesh::Polyline pl;
            pl.label = (tag == "p") ? "swallowtails" : "polyline-" + std::to_string(poly_id++);
            int idx = 0;
            while (ls >> idx) pl.indices.push_back(idx - 1);
            mesh.polylines.push_back(std::move(pl));
        }
    }
    return mesh;
}

}  // namespace maxface
