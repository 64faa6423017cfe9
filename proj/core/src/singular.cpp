#include "maxface/singular.hpp"

#include <algorithm>
#include <cmath>

#include "maxface/errors.hpp"

namespace maxface {

Region Region::annulus(Complex center, double r_min, double r_max) {
    if (!(0.0 <= r_min && r_min < r_max))
        throw ValidationError("Region: need 0 <= r_min < r_max");
    Region r;
    r.kind = Kind::Annulus;
    r.center = center;
    r.r_min = r_min;
    r.r_max = r_max;
    return r;
}

Region Region::box(Complex lo, Complex hi) {
    if (!(lo.real() < hi.real() && lo.imag() < hi.imag()))
        throw ValidationError("Region: box corners must be ordered");
    Region r;
    r.kind = Kind::Box;
    r.lo = lo;
    r.hi = hi;
    return r;
}

bool Region::contains(Complex z) const {
    if (kind == Kind::Annulus) {
        const double d = std::abs(z - center);
        return r_min <= d && d <= r_max;
    }
    return lo.real() <= z.real() && z.real() <= hi.real() && lo.imag() <= z.imag() &&
           z.imag() <= hi.imag();
}

Complex Region::bound_lo() const {
    return kind == Kind::Annulus ? center - Complex{r_max, r_max} : lo;
}

Complex Region::bound_hi() const {
    return kind == Kind::Annulus ? center + Complex{r_max, r_max} : hi;
}

const char* to_string(SingularTag tag) {
    switch (tag) {
        case SingularTag::CuspidalEdge: return "CuspidalEdge";
        case SingularTag::Swallowtail: return "Swallowtail";
        case SingularTag::NotAFront: return "NotAFront";
        case SingularTag::DegenerateGaussMap: return "DegenerateGaussMap";
        case SingularTag::Borderline: return "Borderline";
    }
    return "?";
}

namespace {

// Derived rational maps shared by classification and tracing.
struct SingularForms {
    RationalMap g;
    RationalMap gp;         // g'
    RationalMap alpha;      // g'/(g^2 omega_hat)
    RationalMap alpha_p;    // alpha'
    RationalMap g_over_gp;  // g/g'
    RationalMap omega_hat;
    std::vector<Complex> obstacles;
    double guard = 0.0;
};

SingularForms make_forms(const WeierstrassData& data) {
    SingularForms f;
    f.g = data.g;
    f.gp = rational_derivative(data.g);
    f.omega_hat = data.omega_hat;
    if (f.gp.is_zero()) {
        f.alpha = RationalMap{};  // constant g: no singular theory to run
    } else {
        f.alpha = f.gp / (data.g * data.g * data.omega_hat);
        f.alpha_p = rational_derivative(f.alpha);
        f.g_over_gp = data.g / f.gp;
    }
    f.obstacles = finite_obstacles(data);
    f.guard = default_guard_radius(f.obstacles);
    return f;
}

double level_value(const SingularForms& f, Complex z) {
    const EvalResult gv = f.g.eval(z);
    if (gv.is_infinite()) return std::numeric_limits<double>::infinity();
    return std::norm(gv.value) - 1.0;
}

// Newton correction onto {|g|^2 = 1} along the gradient.
bool correct_onto_level_set(const SingularForms& f, Complex& z, int max_steps, double target) {
    for (int it = 0; it < max_steps; ++it) {
        const double phi = level_value(f, z);
        if (!std::isfinite(phi)) return false;
        if (std::abs(phi) <= target) return true;
        const EvalResult gv = f.g.eval(z);
        const EvalResult gpv = f.gp.eval(z);
        if (gv.is_infinite() || gpv.is_infinite()) return false;
        const Complex grad = 2.0 * std::conj(gpv.value) * gv.value;
        const double n2 = std::norm(grad);
        if (n2 == 0.0) return false;
        z -= phi * grad / n2;
    }
    return std::abs(level_value(f, z)) <= target;
}

Complex tangent_at(const SingularForms& f, Complex z) {
    const Complex gv = f.g.eval(z).value;
    const Complex gpv = f.gp.eval(z).value;
    const Complex t = Complex{0.0, 1.0} * std::conj(gpv / gv);
    const double n = std::abs(t);
    return n == 0.0 ? t : t / n;
}

SingularClass classify_with(const SingularForms& f, Complex z, const Tolerances& tol) {
    const double tau = tol.classify_band;
    SingularClass out;
    out.band = tau;

    const EvalResult gpv = f.gp.eval(z);
    out.witness.dg_abs = gpv.modulus();
    if (f.alpha.is_zero() || out.witness.dg_abs < tau) {
        out.tag = SingularTag::DegenerateGaussMap;
        return out;
    }

    const Complex alpha = f.alpha.eval(z).value;
    out.witness.alpha = alpha;
    out.witness.re_alpha = alpha.real();
    out.witness.im_alpha = alpha.imag();
    const Complex ap = f.alpha_p.eval(z).value;
    const Complex gg = f.g_over_gp.eval(z).value;
    out.witness.swallowtail_second = (gg * ap).real();

    const double a = std::abs(alpha);
    if (std::abs(alpha.real()) < tau * a) {
        out.tag = SingularTag::NotAFront;
    } else if (std::abs(alpha.imag()) >= tau * a) {
        out.tag = SingularTag::CuspidalEdge;
    } else {
        const double scale = std::max(1.0, std::abs(ap) * std::abs(gg));
        out.tag = (std::abs(out.witness.swallowtail_second) >= tau * scale)
                      ? SingularTag::Swallowtail
                      : SingularTag::Borderline;
    }
    return out;
}

SingularSamplePoint make_sample(const SingularForms& f, Complex z, const Tolerances& tol) {
    SingularSamplePoint s;
    s.z = z;
    s.classification = classify_with(f, z, tol);
    s.tangent = tangent_at(f, z);
    const Complex gv = f.g.eval(z).value;
    const Complex wv = f.omega_hat.eval(z).value;
    s.null_dir = Complex{0.0, 1.0} / (gv * wv);
    return s;
}

bool near_obstacle(const SingularForms& f, Complex z) {
    for (const Complex& o : f.obstacles)
        if (std::abs(z - o) < f.guard) return true;
    return false;
}

// Bisection along the level set for a sign change of `value` between two
// curve samples; returns the refined point.
Complex refine_crossing(const SingularForms& f, Complex a, Complex b,
                        const std::function<double(Complex)>& value, const Tolerances& tol) {
    double va = value(a);
    for (int it = 0; it < 80; ++it) {
        Complex mid = 0.5 * (a + b);
        if (!correct_onto_level_set(f, mid, 8, tol.trace)) break;
        const double vm = value(mid);
        if (std::abs(b - a) < 1e-13 * (1.0 + std::abs(a))) break;
        if ((va < 0.0) == (vm < 0.0)) {
            a = mid;
            va = vm;
        } else {
            b = mid;
        }
    }
    Complex mid = 0.5 * (a + b);
    correct_onto_level_set(f, mid, 8, tol.trace);
    return mid;
}

struct CrossingScan {
    std::vector<Complex> confirmed;
    std::vector<Complex> borderline;
};

CrossingScan scan_crossings(const SingularForms& f, const SingularCurve& curve,
                            const std::function<double(Complex)>& value, SingularTag confirm_tag,
                            const Tolerances& tol) {
    CrossingScan out;
    const size_t n = curve.samples.size();
    if (n < 2) return out;
    auto noise_floor = [&](Complex z) {
        return 1e-12 * (1.0 + std::abs(f.alpha.eval(z).value));
    };

    // A sample can land exactly on a zero of the witness (seeds often do).
    // Record it when the zero is isolated, i.e. both neighbours are clearly
    // off zero; identically-vanishing witnesses stay silent.
    for (size_t k = 0; k < n; ++k) {
        if (!curve.closed && (k == 0 || k + 1 == n)) continue;
        const Complex z = curve.samples[k].z;
        if (std::abs(value(z)) > noise_floor(z)) continue;
        const Complex prev = curve.samples[(k + n - 1) % n].z;
        const Complex next = curve.samples[(k + 1) % n].z;
        if (std::abs(value(prev)) <= noise_floor(prev) ||
            std::abs(value(next)) <= noise_floor(next))
            continue;
        const SingularClass cls = classify_with(f, z, tol);
        if (cls.tag == confirm_tag)
            out.confirmed.push_back(z);
        else if (cls.tag == SingularTag::Borderline)
            out.borderline.push_back(z);
    }

    const size_t edges = curve.closed ? n : n - 1;
    for (size_t e = 0; e < edges; ++e) {
        const Complex a = curve.samples[e].z;
        const Complex b = curve.samples[(e + 1) % n].z;
        const double va = value(a);
        const double vb = value(b);
        // Relative noise floor keeps an identically-zero witness from
        // producing spurious crossings.
        if (std::abs(va) <= noise_floor(a) || std::abs(vb) <= noise_floor(b)) continue;
        if ((va < 0.0) == (vb < 0.0)) continue;
        const Complex zc = refine_crossing(f, a, b, value, tol);
        const SingularClass cls = classify_with(f, zc, tol);
        if (cls.tag == confirm_tag)
            out.confirmed.push_back(zc);
        else if (cls.tag == SingularTag::Borderline)
            out.borderline.push_back(zc);
    }
    return out;
}

}  // namespace

std::vector<Complex> singular_seeds(const WeierstrassData& data, const Region& region, int scan_n,
                                    const Tolerances& tol) {
    std::vector<Complex> seeds;
    for (const auto& curve : find_singular_curves(data, region, scan_n, TraceOptions{}, tol))
        if (!curve.samples.empty()) seeds.push_back(curve.samples.front().z);
    return seeds;
}

namespace {

struct DirectionalTrace {
    std::vector<SingularSamplePoint> samples;  // excludes the seed sample
    bool closed = false;
    bool ends_degenerate = false;
};

DirectionalTrace trace_direction(const SingularForms& forms, Complex z0, double direction,
                                 const Region& region, const TraceOptions& opts,
                                 const Tolerances& tol) {
    DirectionalTrace out;
    const double tau = tol.classify_band;
    double h = std::min(0.02, opts.h_max);
    double arc = 0.0;
    Complex z = z0;
    Complex tan_prev = direction * tangent_at(forms, z0);

    while (static_cast<int>(out.samples.size()) < opts.max_samples) {
        // Shrink the step near punctures/poles so the trace cannot jump over
        // the guard disk in one stride.
        double d_near = std::numeric_limits<double>::infinity();
        for (const Complex& o : forms.obstacles) d_near = std::min(d_near, std::abs(z - o));
        const double h_cap = std::isfinite(d_near)
                                 ? std::max(opts.h_min, 0.4 * d_near)
                                 : opts.h_max;

        bool stepped = false;
        Complex z_next{};
        Complex tan_next{};
        double h_eff = std::min(h, h_cap);
        while (h_eff >= opts.h_min * 0.999) {
            z_next = z + h_eff * tan_prev;
            if (!correct_onto_level_set(forms, z_next, 5, tol.trace)) {
                h_eff *= 0.5;
                h *= 0.5;
                continue;
            }
            tan_next = direction * tangent_at(forms, z_next);
            const double cosang =
                std::clamp(tan_prev.real() * tan_next.real() + tan_prev.imag() * tan_next.imag(),
                           -1.0, 1.0);
            const double angle = std::acos(cosang);
            if (angle > opts.angle_max) {
                h_eff *= 0.5;
                h *= 0.5;
                continue;
            }
            stepped = true;
            if (angle < opts.angle_max / 3.0) h = std::min(h * 1.4, opts.h_max);
            break;
        }
        if (!stepped)
            throw TracingStalled("trace_singular_curve: step collapse at " + format_complex(z));

        if (!region.contains(z_next)) break;
        bool hit_guard = false;
        for (const Complex& o : forms.obstacles)
            if (segment_distance(o, z, z_next) < forms.guard || std::abs(z_next - o) < forms.guard)
                hit_guard = true;
        if (hit_guard) break;

        if (forms.gp.eval(z_next).modulus() < tau) {
            out.samples.push_back(make_sample(forms, z_next, tol));
            out.ends_degenerate = true;
            break;
        }

        const double step_len = std::abs(z_next - z);
        arc += step_len;
        if (out.samples.size() >= 4 && arc > 4.0 * h &&
            segment_distance(z0, z, z_next) < 0.75 * step_len) {
            out.closed = true;
            break;
        }
        out.samples.push_back(make_sample(forms, z_next, tol));
        tan_prev = tan_next;
        z = z_next;
    }
    return out;
}

}  // namespace

SingularCurve trace_singular_curve(const WeierstrassData& data, Complex seed, const Region& region,
                                   const TraceOptions& opts, const Tolerances& tol) {
    const SingularForms forms = make_forms(data);
    const double tau = tol.classify_band;

    Complex z0 = seed;
    if (forms.gp.is_zero() || !correct_onto_level_set(forms, z0, 10, tol.trace) ||
        std::abs(z0 - seed) > 0.05 * (1.0 + std::abs(seed)))
        throw BadSeed("trace_singular_curve: seed " + format_complex(seed) +
                      " is not on the singular set");
    if (forms.gp.eval(z0).modulus() < tau)
        throw BadSeed("trace_singular_curve: degenerate Gauss map at seed " + format_complex(z0));
    if (!region.contains(z0) || near_obstacle(forms, z0))
        throw BadSeed("trace_singular_curve: seed outside the admissible region");

    const SingularSamplePoint seed_sample = make_sample(forms, z0, tol);
    const DirectionalTrace fwd = trace_direction(forms, z0, +1.0, region, opts, tol);

    SingularCurve curve;
    if (fwd.closed) {
        curve.samples.push_back(seed_sample);
        curve.samples.insert(curve.samples.end(), fwd.samples.begin(), fwd.samples.end());
        curve.closed = true;
        curve.ends_degenerate = fwd.ends_degenerate;
        return curve;
    }
    // Open arc: continue backwards from the seed as well.
    const DirectionalTrace bwd = trace_direction(forms, z0, -1.0, region, opts, tol);
    curve.samples.assign(bwd.samples.rbegin(), bwd.samples.rend());
    curve.samples.push_back(seed_sample);
    curve.samples.insert(curve.samples.end(), fwd.samples.begin(), fwd.samples.end());
    curve.closed = false;
    curve.ends_degenerate = fwd.ends_degenerate || bwd.ends_degenerate;
    return curve;
}

SingularClass classify_singular_point(const WeierstrassData& data, Complex z,
                                      const Tolerances& tol) {
    const SingularForms forms = make_forms(data);
    const double level = std::abs(level_value(forms, z));
    if (!(level < 1e-6))
        throw NotSingular("classify_singular_point: " + format_complex(z) +
                          " is not on the singular set (| |g|^2-1 | = " + std::to_string(level) +
                          ")");
    return classify_with(forms, z, tol);
}

std::vector<Complex> locate_swallowtails(const WeierstrassData& data, SingularCurve& curve,
                                         const Tolerances& tol) {
    const SingularForms forms = make_forms(data);
    if (forms.alpha.is_zero()) return {};
    auto value = [&](Complex z) { return forms.alpha.eval(z).value.imag(); };
    auto scan = scan_crossings(forms, curve, value, SingularTag::Swallowtail, tol);
    curve.swallowtail_points = scan.confirmed;
    for (const Complex& b : scan.borderline) curve.borderline_points.push_back(b);
    return scan.confirmed;
}

std::vector<Complex> locate_front_failures(const WeierstrassData& data, SingularCurve& curve,
                                           const Tolerances& tol) {
    const SingularForms forms = make_forms(data);
    if (forms.alpha.is_zero()) return {};
    auto value = [&](Complex z) { return forms.alpha.eval(z).value.real(); };
    auto scan = scan_crossings(forms, curve, value, SingularTag::NotAFront, tol);
    curve.not_front_points = scan.confirmed;
    for (const Complex& b : scan.borderline) curve.borderline_points.push_back(b);
    return scan.confirmed;
}

Complex null_direction(const WeierstrassData& data, Complex z, const Tolerances& tol) {
    const EvalResult gv = data.g.eval(z);
    const EvalResult wv = data.omega_hat.eval(z);
    if (wv.is_infinite() || gv.is_infinite())
        throw InternalInconsistency("null_direction: forms blow up at " + format_complex(z));
    if (std::abs(wv.value) <= tol.zero_rel)
        throw InternalInconsistency("null_direction: omega_hat vanishes at " + format_complex(z) +
                                    " (metric condition violated on the singular set)");
    return Complex{0.0, 1.0} / (gv.value * wv.value);
}

std::vector<SingularCurve> find_singular_curves(const WeierstrassData& data, const Region& region,
                                                int scan_n, const TraceOptions& opts,
                                                const Tolerances& tol) {
    const SingularForms forms = make_forms(data);
    std::vector<SingularCurve> curves;
    if (forms.gp.is_zero()) return curves;  // constant Gauss map: no singular set or a plane

    // Scan grid sign changes of |g|^2 - 1 along grid edges.
    const Complex lo = region.bound_lo();
    const Complex hi = region.bound_hi();
    const int n = std::max(8, scan_n);
    std::vector<double> vals(static_cast<size_t>(n + 1) * (n + 1));
    auto node = [&](int i, int j) {
        return Complex{lo.real() + (hi.real() - lo.real()) * j / n,
                       lo.imag() + (hi.imag() - lo.imag()) * i / n};
    };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) vals[i * (n + 1) + j] = level_value(forms, node(i, j));

    std::vector<Complex> candidates;
    auto consider_edge = [&](Complex a, Complex b, double va, double vb) {
        if (!std::isfinite(va) || !std::isfinite(vb)) return;
        if ((va < 0.0) == (vb < 0.0)) return;
        if (!region.contains(a) && !region.contains(b)) return;
        // Bisection along the edge, then Newton onto the set.
        for (int it = 0; it < 40; ++it) {
            const Complex m = 0.5 * (a + b);
            const double vm = level_value(forms, m);
            if ((va < 0.0) == (vm < 0.0)) {
                a = m;
                va = vm;
            } else {
                b = m;
            }
        }
        Complex z = 0.5 * (a + b);
        if (!correct_onto_level_set(forms, z, 10, tol.trace)) return;
        if (!region.contains(z) || near_obstacle(forms, z)) return;
        candidates.push_back(z);
    };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < n; ++j)
            consider_edge(node(i, j), node(i, j + 1), vals[i * (n + 1) + j],
                          vals[i * (n + 1) + j + 1]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= n; ++j)
            consider_edge(node(i, j), node(i + 1, j), vals[i * (n + 1) + j],
                          vals[(i + 1) * (n + 1) + j]);

    std::sort(candidates.begin(), candidates.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    std::vector<bool> claimed(candidates.size(), false);
    for (size_t c = 0; c < candidates.size(); ++c) {
        if (claimed[c]) continue;
        claimed[c] = true;
        if (forms.gp.eval(candidates[c]).modulus() < tol.classify_band) continue;
        SingularCurve curve;
        try {
            curve = trace_singular_curve(data, candidates[c], region, opts, tol);
        } catch (const Error&) {
            continue;
        }
        if (curve.samples.size() < 2) continue;
        // Claim candidates lying on this component: within a thin tube around
        // the polyline (chord sagitta is bounded by the angle control).
        for (size_t d = c + 1; d < candidates.size(); ++d) {
            if (claimed[d]) continue;
            const size_t ns = curve.samples.size();
            const size_t edges = curve.closed ? ns : ns - 1;
            for (size_t e = 0; e < edges && !claimed[d]; ++e) {
                const Complex a = curve.samples[e].z;
                const Complex b = curve.samples[(e + 1) % ns].z;
                const double tube =
                    std::max(2.5e-4 * (1.0 + std::abs(a)), 0.02 * std::abs(b - a));
                if (segment_distance(candidates[d], a, b) < tube) claimed[d] = true;
            }
        }
        locate_swallowtails(data, curve, tol);
        locate_front_failures(data, curve, tol);
        curves.push_back(std::move(curve));
    }
    return curves;
}

}  // namespace maxface
