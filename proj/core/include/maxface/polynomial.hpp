#pragma once

#include <vector>

#include "maxface/types.hpp"

namespace maxface {

// Univariate polynomial with complex coefficients, lowest degree first.
// Normalized form has a nonzero leading coefficient; the zero polynomial
// is the empty coefficient list.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);
    static Polynomial constant(Complex c);
    // Monomial c * z^k.
    static Polynomial monomial(Complex c, int k);
    // Monic polynomial with the given roots.
    static Polynomial from_roots(const std::vector<Complex>& roots, Complex leading = 1.0);

    const std::vector<Complex>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    // Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
    Complex coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : Complex{};
    }

    Complex eval(Complex z) const;
    // Horner evaluation together with sum_k |c_k||z|^k, the natural scale for
    // deciding whether eval(z) is numerically zero.
    std::pair<Complex, double> eval_with_scale(Complex z) const;

    Polynomial derivative() const;
    // p(z + c) by repeated synthetic division (Taylor shift).
    Polynomial shifted(Complex c) const;
    // p(a z).
    Polynomial scaled_arg(Complex a) const;
    // Coefficient reversal: z^deg * p(1/z).  Trims if p(0) == 0.
    Polynomial reversed() const;
    // Quotient of division by (z - root); remainder discarded (deflation).
    Polynomial deflated(Complex root) const;
    // Drops leading coefficients below rel * max|coeff|: cancellation dust
    // from arithmetic, which would otherwise fake the degree.
    Polynomial trimmed_leading(double rel) const;
    // Number of leading (lowest-order) coefficients that are exactly zero,
    // i.e. the multiplicity of the exact root 0.
    int trailing_zero_order() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(Complex c) const;
    Polynomial operator-() const;
    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

    // Magnitude of the largest coefficient.
    double max_coeff_abs() const;

  private:
    void trim();
    std::vector<Complex> coeffs_;
};

inline Polynomial operator*(Complex c, const Polynomial& p) { return p * c; }

// Root with clustered multiplicity.
struct RootCluster {
    Complex root;
    int multiplicity = 1;
};

// All roots of p with multiplicities, via Aberth-Ehrlich simultaneous
// iteration plus multiplicity clustering.  Throws NoRoots for degree 0,
// ValidationError for the zero polynomial, RootFindingFailure on
// non-convergence (with residual diagnostics).
std::vector<RootCluster> poly_roots(const Polynomial& p, const Tolerances& tol = {});

// Multiplicity of z as a root of p (0 if p(z) is not numerically zero),
// decided by successive derivative magnitude tests.
int root_multiplicity(const Polynomial& p, Complex z, const Tolerances& tol = {});

}  // namespace maxface
