#pragma once

#include <vector>

#include "maxface/polynomial.hpp"
#include "maxface/types.hpp"

namespace maxface {

// Complex rational function num/den.  Invariants: den is not the zero
// polynomial; num and den are coprime.  User-supplied data is validated
// (construction rejects shared roots); results of arithmetic are reduced
// by cancelling matched root pairs.
class RationalMap {
  public:
    RationalMap() : num_{}, den_{Polynomial::constant(1.0)} {}
    // Validating constructor for user data.
    RationalMap(Polynomial num, Polynomial den, const Tolerances& tol = {});
    static RationalMap constant(Complex c);
    static RationalMap identity();  // z

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    // num(z)/den(z); a pole evaluates to the infinity tag.
    EvalResult eval(Complex z) const;
    // Limit value at z = infinity (ratio of leading coefficients by degree).
    EvalResult eval_at_infinity() const;
    EvalResult eval(const SpherePoint& p) const;

    RationalMap operator+(const RationalMap& o) const;
    RationalMap operator-(const RationalMap& o) const;
    RationalMap operator*(const RationalMap& o) const;
    RationalMap operator/(const RationalMap& o) const;
    RationalMap operator*(Complex c) const;
    RationalMap reciprocal() const;

    // max(deg num, deg den): the degree as a map to the sphere.
    int sphere_degree() const { return std::max(num_.degree(), den_.degree()); }

    // Finite poles (roots of den) with orders.
    std::vector<RootCluster> poles(const Tolerances& tol = {}) const;

  private:
    struct unchecked_t {};
    RationalMap(Polynomial num, Polynomial den, unchecked_t);
    void reduce(const Tolerances& tol);
    friend RationalMap make_reduced(Polynomial num, Polynomial den, const Tolerances& tol);

    Polynomial num_;
    Polynomial den_;
};

// Internal-arithmetic constructor: cancels matched near-common roots instead
// of rejecting them.
RationalMap make_reduced(Polynomial num, Polynomial den, const Tolerances& tol = {});

// Quotient-rule derivative, reduced.
RationalMap rational_derivative(const RationalMap& f);

// Valuation ord_p(f): negative at poles, positive at zeros, 0 when finite
// nonzero.  At infinity: deg den - deg num.  Throws UndefinedOrder for f == 0.
int order_at(const RationalMap& f, const SpherePoint& p, const Tolerances& tol = {});

struct ResidueResult {
    Complex value{};
    bool is_pole = false;  // false: residue 0 by convention, warning case
};

// Laurent coefficient of (z - p)^{-1}, from the local Laurent expansion.
ResidueResult residue_at(const RationalMap& f, Complex p, const Tolerances& tol = {});

// Residue of the 1-form f(z) dz at z = infinity (so that the sum of all
// residues including infinity vanishes).
Complex residue_at_infinity(const RationalMap& f, const Tolerances& tol = {});

// Laurent coefficients c_k of f around p for k = k_min, ..., k_min+count-1.
// k_min must be <= ord_p(f).
std::vector<Complex> laurent_coefficients(const RationalMap& f, Complex p, int k_min, int count,
                                          const Tolerances& tol = {});

// The 1-form eta(z) dz expressed in the chart w = 1/z:
// eta(z) dz  |->  -eta(1/w) w^{-2} dw.
RationalMap form_in_inverted_chart(const RationalMap& eta, const Tolerances& tol = {});

// The function f expressed in the chart w = 1/z: f(1/w).
RationalMap function_in_inverted_chart(const RationalMap& f, const Tolerances& tol = {});

}  // namespace maxface
