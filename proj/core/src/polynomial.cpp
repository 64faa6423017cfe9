#include "maxface/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "maxface/errors.hpp"

namespace maxface {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(Complex c) {
    return c == Complex{} ? Polynomial{} : Polynomial{{c}};
}

Polynomial Polynomial::monomial(Complex c, int k) {
    if (c == Complex{}) return {};
    std::vector<Complex> cs(static_cast<size_t>(k) + 1, Complex{});
    cs.back() = c;
    return Polynomial{std::move(cs)};
}

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots, Complex leading) {
    Polynomial p = constant(leading);
    for (Complex r : roots) p = p * Polynomial{{-r, 1.0}};
    return p;
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex Polynomial::eval(Complex z) const {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::pair<Complex, double> Polynomial::eval_with_scale(Complex z) const {
    Complex acc{};
    double scale = 0.0;
    const double az = std::abs(z);
    double zp = 1.0;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        scale += std::abs(coeffs_[k]) * zp;
        zp *= az;
    }
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return {acc, scale};
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Complex> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return Polynomial{std::move(d)};
}

Polynomial Polynomial::shifted(Complex c) const {
    // Repeated synthetic division by (z - (-c)) accumulates p(z + c).
    std::vector<Complex> work = coeffs_;
    const int n = static_cast<int>(work.size());
    for (int i = 0; i < n; ++i) {
        for (int j = n - 2; j >= i; --j) work[j] += c * work[j + 1];
    }
    return Polynomial{std::move(work)};
}

Polynomial Polynomial::scaled_arg(Complex a) const {
    std::vector<Complex> cs = coeffs_;
    Complex ap = 1.0;
    for (auto& c : cs) {
        c *= ap;
        ap *= a;
    }
    return Polynomial{std::move(cs)};
}

Polynomial Polynomial::reversed() const {
    std::vector<Complex> cs(coeffs_.rbegin(), coeffs_.rend());
    return Polynomial{std::move(cs)};
}

Polynomial Polynomial::deflated(Complex root) const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Complex> q(coeffs_.size() - 1);
    Complex carry = coeffs_.back();
    for (int k = static_cast<int>(coeffs_.size()) - 2; k >= 0; --k) {
        q[k] = carry;
        carry = coeffs_[k] + carry * root;
    }
    return Polynomial{std::move(q)};
}

Polynomial Polynomial::trimmed_leading(double rel) const {
    const double cut = rel * max_coeff_abs();
    std::vector<Complex> cs = coeffs_;
    while (!cs.empty() && std::abs(cs.back()) <= cut) cs.pop_back();
    return Polynomial{std::move(cs)};
}

int Polynomial::trailing_zero_order() const {
    int k = 0;
    while (k < static_cast<int>(coeffs_.size()) && coeffs_[k] == Complex{}) ++k;
    return coeffs_.empty() ? 0 : k;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Complex> cs(std::max(coeffs_.size(), o.coeffs_.size()), Complex{});
    for (size_t k = 0; k < coeffs_.size(); ++k) cs[k] += coeffs_[k];
    for (size_t k = 0; k < o.coeffs_.size(); ++k) cs[k] += o.coeffs_[k];
    return Polynomial{std::move(cs)};
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
    std::vector<Complex> cs = coeffs_;
    for (auto& c : cs) c = -c;
    return Polynomial{std::move(cs)};
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Complex> cs(coeffs_.size() + o.coeffs_.size() - 1, Complex{});
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j) cs[i + j] += coeffs_[i] * o.coeffs_[j];
    return Polynomial{std::move(cs)};
}

Polynomial Polynomial::operator*(Complex c) const {
    if (c == Complex{}) return {};
    std::vector<Complex> cs = coeffs_;
    for (auto& x : cs) x *= c;
    return Polynomial{std::move(cs)};
}

double Polynomial::max_coeff_abs() const {
    double m = 0.0;
    for (auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

int root_multiplicity(const Polynomial& p, Complex z, const Tolerances& tol) {
    if (p.is_zero()) throw UndefinedOrder("root_multiplicity of the zero polynomial");
    Polynomial d = p;
    int mult = 0;
    while (!d.is_zero()) {
        // scale == 0 forces v == 0 exactly (every Horner term vanished).
        auto [v, scale] = d.eval_with_scale(z);
        if (std::abs(v) > tol.zero_rel * scale) break;
        ++mult;
        d = d.derivative();
    }
    return mult;
}

namespace {

// One Aberth-Ehrlich sweep; returns the largest relative displacement.
double aberth_sweep(const Polynomial& p, const Polynomial& dp, std::vector<Complex>& zs) {
    double worst = 0.0;
    const int n = static_cast<int>(zs.size());
    for (int i = 0; i < n; ++i) {
        const Complex pi = p.eval(zs[i]);
        Complex dpi = dp.eval(zs[i]);
        if (pi == Complex{}) continue;
        if (dpi == Complex{}) dpi = Complex{1e-30, 0};
        const Complex newton = pi / dpi;
        Complex repel{};
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            Complex diff = zs[i] - zs[j];
            if (diff == Complex{}) diff = Complex{1e-30, 0};
            repel += 1.0 / diff;
        }
        Complex denom = 1.0 - newton * repel;
        if (denom == Complex{}) denom = Complex{1e-30, 0};
        const Complex step = newton / denom;
        zs[i] -= step;
        worst = std::max(worst, std::abs(step) / (1.0 + std::abs(zs[i])));
    }
    return worst;
}

}  // namespace

std::vector<RootCluster> poly_roots(const Polynomial& p, const Tolerances& tol) {
    if (p.is_zero()) throw ValidationError("poly_roots: zero polynomial");
    if (p.degree() == 0) throw NoRoots("poly_roots: degree-0 polynomial has no roots");

    std::vector<RootCluster> clusters;

    // Exact roots at the origin come off first; this keeps integer data exact.
    Polynomial q = p;
    const int zero_order = q.trailing_zero_order();
    if (zero_order > 0) {
        std::vector<Complex> cs(q.coeffs().begin() + zero_order, q.coeffs().end());
        q = Polynomial{std::move(cs)};
        clusters.push_back({Complex{}, zero_order});
    }

    const int n = q.degree();
    if (n > 0) {
        const Polynomial dq = q.derivative();
        double r0 = 1.0;
        if (q.coeff(0) != Complex{})
            r0 = std::max(1e-3, std::pow(std::abs(q.coeff(0) / q.leading()), 1.0 / n));

        std::vector<Complex> zs(n);
        bool converged = false;
        double last_residual = 0.0;
        for (int attempt = 0; attempt < 4 && !converged; ++attempt) {
            const double phase = 0.41 + 0.763 * attempt;
            const double radius = r0 * (1.0 + 0.35 * attempt);
            for (int i = 0; i < n; ++i) {
                const double th = 2.0 * M_PI * i / n + phase;
                zs[i] = radius * Complex{std::cos(th), std::sin(th)};
            }
            double best = std::numeric_limits<double>::infinity();
            int stale = 0;
            for (int it = 0; it < 400; ++it) {
                const double moved = aberth_sweep(q, dq, zs);
                if (moved < 1e-14) break;
                if (moved < best * 0.75) {
                    best = moved;
                    stale = 0;
                } else if (++stale > 12) {
                    break;  // stalled at the attainable accuracy (multiple roots)
                }
            }
            converged = true;
            last_residual = 0.0;
            for (const Complex& z : zs) {
                auto [v, scale] = q.eval_with_scale(z);
                const double rel = std::abs(v) / std::max(scale, 1e-300);
                last_residual = std::max(last_residual, rel);
                if (rel > 1e-8) converged = false;
            }
        }
        if (!converged)
            throw RootFindingFailure("poly_roots: Aberth iteration did not converge, residual " +
                                     std::to_string(last_residual));

        // Deterministic order, then greedy clustering.  A double root of a
        // double-precision polynomial is only determined to ~sqrt(eps), so the
        // cluster radius must sit well above the coefficient tolerance.
        std::sort(zs.begin(), zs.end(), [](Complex a, Complex b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        std::vector<bool> used(zs.size(), false);
        for (size_t i = 0; i < zs.size(); ++i) {
            if (used[i]) continue;
            std::vector<Complex> members{zs[i]};
            used[i] = true;
            for (size_t j = i + 1; j < zs.size(); ++j) {
                if (used[j]) continue;
                const double cluster_radius = 2e-6 * (1.0 + std::abs(zs[i]));
                if (std::abs(zs[j] - zs[i]) < cluster_radius) {
                    members.push_back(zs[j]);
                    used[j] = true;
                }
            }
            Complex mean{};
            for (Complex m : members) mean += m;
            mean /= static_cast<double>(members.size());
            if (members.size() > 1) {
                // A multiplicity-m root is a simple root of the (m-1)-th
                // derivative; Newton there recovers full precision where the
                // cluster mean only reaches sqrt(eps).
                Polynomial dm = q;
                for (size_t j = 1; j < members.size(); ++j) dm = dm.derivative();
                const Polynomial dmp = dm.derivative();
                for (int it = 0; it < 8; ++it) {
                    const Complex v = dm.eval(mean);
                    const Complex dv = dmp.eval(mean);
                    if (dv == Complex{}) break;
                    const Complex step = v / dv;
                    mean -= step;
                    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(mean))) break;
                }
            }
            clusters.push_back({mean, static_cast<int>(members.size())});
        }

        // Final residual gate on the cluster centers.
        const double gate = std::max(1e-7, 100.0 * tol.zero_rel);
        for (const auto& c : clusters) {
            auto [v, scale] = p.eval_with_scale(c.root);
            if (std::abs(v) > gate * std::max(scale, 1e-300))
                throw RootFindingFailure("poly_roots: residual " + std::to_string(std::abs(v)) +
                                         " at root " + format_complex(c.root));
        }
    }

    std::sort(clusters.begin(), clusters.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.root.real() != b.root.real()) return a.root.real() < b.root.real();
        return a.root.imag() < b.root.imag();
    });
    return clusters;
}

}  // namespace maxface
