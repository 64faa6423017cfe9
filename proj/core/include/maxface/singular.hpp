#pragma once

#include <vector>

#include "maxface/weierstrass.hpp"

namespace maxface {

// Scan region for singular-set work; always excludes puncture guard disks.
struct Region {
    enum class Kind { Annulus, Box };
    Kind kind = Kind::Box;
    Complex center{};
    double r_min = 0.0, r_max = 0.0;  // annulus
    Complex lo{}, hi{};               // box corners

    static Region annulus(Complex center, double r_min, double r_max);
    static Region box(Complex lo, Complex hi);
    bool contains(Complex z) const;
    Complex bound_lo() const;
    Complex bound_hi() const;
};

enum class SingularTag { CuspidalEdge, Swallowtail, NotAFront, DegenerateGaussMap, Borderline };

const char* to_string(SingularTag tag);

struct SingularWitness {
    Complex alpha{};                 // g'/(g^2 omega_hat)
    double re_alpha = 0.0;
    double im_alpha = 0.0;
    double swallowtail_second = 0.0; // Re[(g/g') alpha']
    double dg_abs = 0.0;             // |g'|
};

struct SingularClass {
    SingularTag tag = SingularTag::Borderline;
    SingularWitness witness;
    double band = 0.0;  // relative tolerance band used for the zero tests
};

struct SingularSamplePoint {
    Complex z{};
    SingularClass classification;
    Complex tangent{};   // proportional to i conj(g'/g)
    Complex null_dir{};  // i/(g omega_hat)
};

struct SingularCurve {
    std::vector<SingularSamplePoint> samples;
    bool closed = false;
    bool ends_degenerate = false;  // hit |g'| < tau and stopped
    std::vector<Complex> swallowtail_points;
    std::vector<Complex> not_front_points;  // front condition Re(alpha) = 0
    std::vector<Complex> borderline_points;
};

struct TraceOptions {
    double h_min = 1e-4;
    double h_max = 1e-1;
    double angle_max = 0.05;  // tangent turn per step, radians
    int max_samples = 40000;
};

// One seed per connected component of {|g| = 1} meeting the region, found by
// sign scanning of |g|^2 - 1 and Newton refinement.
std::vector<Complex> singular_seeds(const WeierstrassData& data, const Region& region,
                                    int scan_n = 96, const Tolerances& tol = {});

// Predictor-corrector trace of the level set through the seed.
SingularCurve trace_singular_curve(const WeierstrassData& data, Complex seed, const Region& region,
                                   const TraceOptions& opts = {}, const Tolerances& tol = {});

// Theorem-style decision tree on alpha = g'/(g^2 omega_hat) with relative
// band tau; witness record always populated.  Throws NotSingular off the set.
SingularClass classify_singular_point(const WeierstrassData& data, Complex z,
                                      const Tolerances& tol = {});

// Zeros of Im(alpha) along the curve, refined by bisection along the level
// set and re-classified; only confirmed swallowtails are returned, borderline
// hits are reported on the curve record.
std::vector<Complex> locate_swallowtails(const WeierstrassData& data, SingularCurve& curve,
                                         const Tolerances& tol = {});

// Zeros of Re(alpha) along the curve: points where the front condition fails.
std::vector<Complex> locate_front_failures(const WeierstrassData& data, SingularCurve& curve,
                                           const Tolerances& tol = {});

// Null direction i/(g omega_hat) at a singular point.
Complex null_direction(const WeierstrassData& data, Complex z, const Tolerances& tol = {});

// Trace every component in the region and run both special-point scans.
std::vector<SingularCurve> find_singular_curves(const WeierstrassData& data, const Region& region,
                                                int scan_n = 96, const TraceOptions& opts = {},
                                                const Tolerances& tol = {});

}  // namespace maxface
