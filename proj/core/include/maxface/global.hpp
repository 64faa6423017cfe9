#pragma once

#include <optional>
#include <vector>

#include "maxface/weierstrass.hpp"

namespace maxface {

// Loop periods of the three forms around each puncture.
struct PeriodReport {
    struct Entry {
        SpherePoint puncture;
        std::array<Complex, 3> period{};  // 2 pi i * residues of the forms
        double loop_radius = 0.0;         // 0 for the derived entry at infinity
        double residue_quadrature_gap = 0.0;
    };
    std::vector<Entry> entries;
    double max_re_violation = 0.0;
    double max_residue_quadrature_gap = 0.0;
    bool passes = false;
};

PeriodReport compute_periods(const WeierstrassData& data, const Tolerances& tol = {});

// Degree of g as a map to the sphere; 0 for constant g (planar image).
int gauss_degree(const WeierstrassData& data);

enum class EndType { Catenoidal, Planar, HigherOrder, SimpleCandidate };
const char* to_string(EndType t);

struct EndReport {
    SpherePoint puncture;
    double g_modulus = 0.0;  // +inf when g has a pole at the end
    bool end_complete = false;
    int phi_pole_order = 0;  // max pole order of the forms in the local chart
    bool df_order_ok = false;
    bool embedded = false;
    EndType end_type = EndType::HigherOrder;
    bool has_coefficients = false;  // (a, c) from the order-2 expansion
    double coeff_a = 0.0;
    double coeff_c = 0.0;
    bool normalized_by_transform = false;  // g(p) moved to 0 before extraction
};

EndReport analyze_end(const WeierstrassData& data, const SpherePoint& puncture,
                      const Tolerances& tol = {});

enum class CompletenessClass { Complete, WeaklyCompleteOnly };

struct Completeness {
    CompletenessClass cls = CompletenessClass::Complete;
    std::vector<SpherePoint> violating_ends;  // ends with |g| = 1
};

// Requires the period condition; throws PeriodConditionFailed otherwise.
Completeness classify_completeness(const WeierstrassData& data, const Tolerances& tol = {});

struct GlobalReport {
    PeriodReport period;
    std::vector<EndReport> ends;
    int deg_g = 0;
    int euler_punctured = 0;  // chi(M^2) = 2 - n on the punctured sphere
    int osserman_lhs = 0;     // 2 deg g
    int osserman_rhs = 0;     // -chi + n = 2n - 2
    bool equality = false;
    std::optional<Completeness> completeness;  // absent when periods fail
    double total_curvature_numeric = 0.0;
    std::string note;
};

// Assembles every section without preconditions (periods gating only the
// completeness classification).
GlobalReport build_global_report(const WeierstrassData& data, bool with_total_curvature = true,
                                 const Tolerances& tol = {});

// The inequality report proper: requires Complete, asserts the equality flag
// matches all-ends-embedded.
GlobalReport osserman_report(const WeierstrassData& data, const Tolerances& tol = {});

// Numerical total curvature of the lift metric: integral of the Fubini-Study
// pull-back density over both chart disks; approximately 4 pi deg g.
double total_curvature_numeric(const WeierstrassData& data, const Tolerances& tol = {});

}  // namespace maxface
