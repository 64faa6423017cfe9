#include "maxface/rational.hpp"

#include <algorithm>
#include <cmath>

#include "maxface/errors.hpp"

namespace maxface {

namespace {

// Multiplicity-aware common-root cancellation between num and den.
void cancel_common_roots(Polynomial& num, Polynomial& den, const Tolerances& tol) {
    if (num.is_zero() || den.degree() < 1 || num.degree() < 1) return;

    // Exact powers of z cancel exactly.
    const int zn = num.trailing_zero_order();
    const int zd = den.trailing_zero_order();
    if (zn > 0 && zd > 0) {
        const int k = std::min(zn, zd);
        std::vector<Complex> ncs(num.coeffs().begin() + k, num.coeffs().end());
        std::vector<Complex> dcs(den.coeffs().begin() + k, den.coeffs().end());
        num = Polynomial{std::move(ncs)};
        den = Polynomial{std::move(dcs)};
    }
    if (num.degree() < 1 || den.degree() < 1) return;

    for (const RootCluster& pole : poly_roots(den, tol)) {
        const int m_num = root_multiplicity(num, pole.root, tol);
        if (m_num == 0) continue;
        const int cancel = std::min(m_num, pole.multiplicity);
        for (int i = 0; i < cancel; ++i) {
            num = num.deflated(pole.root);
            den = den.deflated(pole.root);
        }
        if (num.degree() < 1 || den.degree() < 1) break;
    }
}

}  // namespace

RationalMap::RationalMap(Polynomial num, Polynomial den, const Tolerances& tol)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ValidationError("RationalMap: denominator is the zero polynomial");
    if (!num_.is_zero() && num_.degree() >= 1 && den_.degree() >= 1) {
        // User data must come reduced: reject shared roots within tolerance.
        auto nroots = poly_roots(num_, tol);
        auto droots = poly_roots(den_, tol);
        for (const auto& a : nroots)
            for (const auto& b : droots) {
                const double sep = std::abs(a.root - b.root);
                if (sep < tol.zero_rel * (1.0 + std::max(std::abs(a.root), std::abs(b.root))))
                    throw ValidationError("RationalMap: num and den share a root near " +
                                          format_complex(a.root) + " (supply reduced data)");
            }
    }
}

RationalMap::RationalMap(Polynomial num, Polynomial den, unchecked_t)
    : num_(std::move(num)), den_(std::move(den)) {}

RationalMap make_reduced(Polynomial num, Polynomial den, const Tolerances& tol) {
    if (den.is_zero()) throw ValidationError("RationalMap: denominator is the zero polynomial");
    num = num.trimmed_leading(1e-13);
    den = den.trimmed_leading(1e-13);
    cancel_common_roots(num, den, tol);
    return RationalMap{std::move(num), std::move(den), RationalMap::unchecked_t{}};
}

RationalMap RationalMap::constant(Complex c) {
    return RationalMap{Polynomial::constant(c), Polynomial::constant(1.0), unchecked_t{}};
}

RationalMap RationalMap::identity() {
    return RationalMap{Polynomial{{0.0, 1.0}}, Polynomial::constant(1.0), unchecked_t{}};
}

EvalResult RationalMap::eval(Complex z) const {
    auto [dv, dscale] = den_.eval_with_scale(z);
    auto [nv, nscale] = num_.eval_with_scale(z);
    const Tolerances tol{};
    const bool den_zero = std::abs(dv) <= tol.zero_rel * std::max(dscale, 1e-300);
    if (den_zero) {
        const bool num_zero = std::abs(nv) <= tol.zero_rel * std::max(nscale, 1e-300);
        if (!num_zero) return SpherePoint::infinity();
        // Coprimality makes a genuine common zero impossible; fall through to
        // the plain quotient of the validated form.
    }
    return SpherePoint{nv / dv};
}

EvalResult RationalMap::eval_at_infinity() const {
    if (num_.is_zero()) return SpherePoint{Complex{}};
    const int dn = num_.degree(), dd = den_.degree();
    if (dn > dd) return SpherePoint::infinity();
    if (dn < dd) return SpherePoint{Complex{}};
    return SpherePoint{num_.leading() / den_.leading()};
}

EvalResult RationalMap::eval(const SpherePoint& p) const {
    return p.is_infinite() ? eval_at_infinity() : eval(p.value);
}

RationalMap RationalMap::operator+(const RationalMap& o) const {
    return make_reduced(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalMap RationalMap::operator-(const RationalMap& o) const {
    return make_reduced(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalMap RationalMap::operator*(const RationalMap& o) const {
    return make_reduced(num_ * o.num_, den_ * o.den_);
}

RationalMap RationalMap::operator/(const RationalMap& o) const {
    if (o.num_.is_zero()) throw ValidationError("RationalMap: division by the zero map");
    return make_reduced(num_ * o.den_, den_ * o.num_);
}

RationalMap RationalMap::operator*(Complex c) const {
    return RationalMap{num_ * c, den_, unchecked_t{}};
}

RationalMap RationalMap::reciprocal() const {
    if (num_.is_zero()) throw ValidationError("RationalMap: reciprocal of the zero map");
    return RationalMap{den_, num_, unchecked_t{}};
}

std::vector<RootCluster> RationalMap::poles(const Tolerances& tol) const {
    if (den_.degree() < 1) return {};
    return poly_roots(den_, tol);
}

RationalMap rational_derivative(const RationalMap& f) {
    // (n/d)' = (n'd - nd')/d^2, reduced.
    return make_reduced(f.num().derivative() * f.den() - f.num() * f.den().derivative(),
                        f.den() * f.den());
}

int order_at(const RationalMap& f, const SpherePoint& p, const Tolerances& tol) {
    if (f.is_zero()) throw UndefinedOrder("order_at: the zero map has no valuation");
    if (p.is_infinite()) return f.den().degree() - f.num().degree();
    return root_multiplicity(f.num(), p.value, tol) - root_multiplicity(f.den(), p.value, tol);
}

std::vector<Complex> laurent_coefficients(const RationalMap& f, Complex p, int k_min, int count,
                                          const Tolerances& tol) {
    if (f.is_zero()) return std::vector<Complex>(count, Complex{});

    // Shift to u = z - p, peel off the denominator's root at u = 0, then
    // divide power series.  Coefficients below the valuation are zero.
    Polynomial nsh = f.num().shifted(p);
    Polynomial dsh = f.den().shifted(p);
    const int m = root_multiplicity(f.den(), p, tol);
    std::vector<Complex> dcs(dsh.coeffs().begin(), dsh.coeffs().end());
    // Drop the (numerically tiny) first m coefficients.
    std::vector<Complex> ecs(dcs.begin() + std::min<size_t>(m, dcs.size()), dcs.end());
    if (ecs.empty() || ecs[0] == Complex{})
        throw InternalInconsistency("laurent_coefficients: degenerate deflation at " +
                                    format_complex(p));

    // Series quotient q = nsh / ecs up to the needed length; c_k = q_{k+m}.
    const int need = k_min + m + count;  // q index range [0, need)
    std::vector<Complex> q(std::max(need, 0), Complex{});
    for (int k = 0; k < need; ++k) {
        Complex s = nsh.coeff(k);
        for (int j = 1; j <= k && j < static_cast<int>(ecs.size()); ++j) s -= ecs[j] * q[k - j];
        q[k] = s / ecs[0];
    }
    std::vector<Complex> out(count, Complex{});
    for (int i = 0; i < count; ++i) {
        const int qi = k_min + m + i;
        if (qi >= 0 && qi < static_cast<int>(q.size())) out[i] = q[qi];
    }
    return out;
}

ResidueResult residue_at(const RationalMap& f, Complex p, const Tolerances& tol) {
    if (f.is_zero()) return {Complex{}, false};
    const int ord = order_at(f, p, tol);
    if (ord >= 0) return {Complex{}, false};
    auto cs = laurent_coefficients(f, p, -1, 1, tol);
    return {cs[0], true};
}

RationalMap form_in_inverted_chart(const RationalMap& eta, const Tolerances& tol) {
    // eta(1/w) = rev(num)(w) / rev(den)(w) * w^{deg den - deg num};
    // the 1-form picks up the extra factor -w^{-2}.
    if (eta.is_zero()) return RationalMap{};
    Polynomial n = eta.num().reversed();
    Polynomial d = eta.den().reversed();
    const int shift = eta.den().degree() - eta.num().degree() - 2;
    if (shift >= 0)
        n = n * Polynomial::monomial(1.0, shift);
    else
        d = d * Polynomial::monomial(1.0, -shift);
    return make_reduced(-n, d, tol);
}

RationalMap function_in_inverted_chart(const RationalMap& f, const Tolerances& tol) {
    if (f.is_zero()) return RationalMap{};
    Polynomial n = f.num().reversed();
    Polynomial d = f.den().reversed();
    const int shift = f.den().degree() - f.num().degree();
    if (shift >= 0)
        n = n * Polynomial::monomial(1.0, shift);
    else
        d = d * Polynomial::monomial(1.0, -shift);
    return make_reduced(std::move(n), std::move(d), tol);
}

Complex residue_at_infinity(const RationalMap& f, const Tolerances& tol) {
    const RationalMap w_form = form_in_inverted_chart(f, tol);
    return residue_at(w_form, Complex{}, tol).value;
}

}  // namespace maxface
