#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxface/quadrature.hpp"
#include "maxface/rational.hpp"
#include "maxface/types.hpp"

namespace maxface {

// Which representation the data generates.  Maxface: space-like maximal
// surface in L^3, f = Re int (-2g, 1+g^2, i(1-g^2)) omega.  EuclideanMinimal:
// the companion convention, f0 = Re int (2g, 1-g^2, i(1+g^2)) omega stored as
// (x^0, x^1, x^2) with x^0 the image of the maxface time axis.
enum class SurfaceConvention { Maxface, EuclideanMinimal };

// Weierstrass data (g, omega = omega_hat dz) on the sphere punctured at the
// ends, with a base point for integration.
struct WeierstrassData {
    RationalMap g;
    RationalMap omega_hat;
    std::vector<SpherePoint> punctures;
    Complex base_point{};
    std::string label;
    SurfaceConvention convention = SurfaceConvention::Maxface;
};

// Validating constructor.  Enforces:
//  - punctures distinct, base point off the punctures and the forms' poles,
//  - g not a constant of modulus one,
//  - the metric condition: away from the punctures every pole of g of order k
//    is matched by a zero of omega_hat of order exactly 2k, and omega_hat has
//    no other zeros and no poles (branch points excluded).
WeierstrassData make_weierstrass_data(RationalMap g, RationalMap omega_hat,
                                      std::vector<SpherePoint> punctures, Complex base_point,
                                      std::string label = {},
                                      SurfaceConvention convention = SurfaceConvention::Maxface,
                                      const Tolerances& tol = {});

// The three holomorphic forms whose real integrals give the immersion,
// each reduced.
std::array<RationalMap, 3> phi_forms(const WeierstrassData& data);

// Numerator polynomial of the null quadric evaluated on the forms over the
// common denominator, computed in factored form.  Identically zero for valid
// data; exposed so tests can check the coefficients exactly.
Polynomial nullity_defect(const WeierstrassData& data);

// Finite punctures and poles of the forms: everything integration routes
// must avoid.
std::vector<Complex> finite_obstacles(const WeierstrassData& data);
double guard_radius(const WeierstrassData& data);

// Deterministic default integration route from the base point.
PathSpec default_route(const WeierstrassData& data, Complex z);

// f(z) = Re int_{z0}^{z} Phi along the path (default route if omitted).
Vec3 evaluate_immersion(const WeierstrassData& data, Complex z,
                        const std::optional<PathSpec>& path = std::nullopt,
                        const Tolerances& tol = {});

// Complex lift F(z) = int_{z0}^{z} Phi (branch fixed by the path).
std::array<Complex, 3> evaluate_lift(const WeierstrassData& data, Complex z,
                                     const std::optional<PathSpec>& path = std::nullopt,
                                     const Tolerances& tol = {});

// Lorentzian unit normal (undefined on the singular set) and the Euclidean
// unit normal; g = infinity is handled by the algebraic limits.
struct NormalPair {
    std::optional<Vec3> nu;
    Vec3 n_euc;
};
NormalPair normals(const WeierstrassData& data, Complex z, const Tolerances& tol = {});

struct MetricCurvature {
    double ds2_factor = 0.0;     // (1-|g|^2)^2 |omega_hat|^2
    double dsigma2_factor = 0.0; // (1+|g|^2)^2 |omega_hat|^2
    double K_induced = 0.0;      // >= 0, +infinity on the singular set
    bool K_induced_finite = true;
    double K_lift = 0.0;         // <= 0
};
MetricCurvature metric_and_curvature(const WeierstrassData& data, Complex z,
                                     const Tolerances& tol = {});

// lambda = (|g|^2-1)|omega_hat|^2 sqrt((1+|g|^2)^2+4|g|^2); vanishes exactly
// on the singular set, negative where |g| < 1.
double lambda_indicator(const WeierstrassData& data, Complex z);

// Companion correspondence: maxface data -> Euclidean-minimal data with
// g0 = -i g and the same form; minimal data maps back with g = i g0.
WeierstrassData companion(const WeierstrassData& data);

// Lopez-Ros deformation (lambda g, omega / lambda), lambda real nonzero.
WeierstrassData lopez_ros(const WeierstrassData& data, double lambda, const Tolerances& tol = {});

// Full per-point sample record.
struct SurfaceSample {
    Complex z;
    Vec3 f{};
    std::optional<Vec3> nu;
    Vec3 n_euc{};
    double ds2_factor = 0.0;
    double dsigma2_factor = 0.0;
    double K_induced = 0.0;
    bool K_induced_finite = true;
    double lambda = 0.0;
    bool singular = false;
};
SurfaceSample sample_surface(const WeierstrassData& data, Complex z,
                             const std::optional<PathSpec>& path = std::nullopt,
                             const Tolerances& tol = {});

}  // namespace maxface
