#include "fockcalc/poly.hpp"

#include <algorithm>
#include <ostream>

namespace fockcalc {

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::monomial(unsigned k, Scalar v) {
    if (v.is_zero()) return {};
    std::vector<Scalar> cs(k + 1, Scalar(0));
    cs[k] = std::move(v);
    return Poly(std::move(cs));
}

Poly Poly::affine_power(const Scalar& a, const Scalar& b, unsigned n) {
    Poly base({b, a});
    Poly out = Poly::constant(Scalar(1));
    for (unsigned k = 0; k < n; ++k) out = out * base;
    return out;
}

Scalar Poly::eval(const Scalar& z) const {
    Scalar acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Poly Poly::derivative(unsigned times) const {
    Poly out = *this;
    for (unsigned t = 0; t < times; ++t) {
        if (out.c_.size() <= 1) return {};
        std::vector<Scalar> d(out.c_.size() - 1);
        for (std::size_t k = 1; k < out.c_.size(); ++k)
            d[k - 1] = Scalar(static_cast<int>(k)) * out.c_[k];
        out = Poly(std::move(d));
    }
    return out;
}

Poly Poly::conj_coeffs() const {
    std::vector<Scalar> cs(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) cs[k] = c_[k].conj();
    return Poly(std::move(cs));
}

Poly Poly::operator-() const {
    std::vector<Scalar> cs(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) cs[k] = -c_[k];
    return Poly(std::move(cs));
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            out[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(out));
}

Poly operator*(const Scalar& s, const Poly& p) {
    if (s.is_zero()) return {};
    std::vector<Scalar> out(p.c_.size());
    for (std::size_t k = 0; k < p.c_.size(); ++k) out[k] = s * p.c_[k];
    return Poly(std::move(out));
}

double Poly::max_coeff_abs() const {
    double m = 0.0;
    for (const auto& c : c_) m = std::max(m, c.abs());
    return m;
}

bool Poly::all_exact() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& c) { return c.is_exact(); });
}

std::ostream& operator<<(std::ostream& os, const Poly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int k = 0; k <= p.degree(); ++k) {
        Scalar c = p.coeff(k);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << c << ")";
        if (k >= 1) os << "*z";
        if (k >= 2) os << "^" << k;
        first = false;
    }
    return os;
}

std::vector<Scalar> poly_rebase(const Poly& p, const Scalar& a, const Scalar& b) {
    if (a.is_zero()) throw invalid_basis_error("poly_rebase: basis parameter a must be nonzero");
    // p(z) = q(az+b) where q(w) = p((w-b)/a); Horner composition with the
    // inverse affine map.
    Poly inv({-(b / a), Scalar(1) / a});
    Poly acc;
    for (int k = p.degree(); k >= 0; --k) {
        acc = acc * inv;
        acc += Poly::constant(p.coeff(k));
    }
    std::vector<Scalar> out = acc.coeffs();
    if (out.empty()) out.push_back(Scalar(0));
    return out;
}

double poly_distance(const Poly& a, const Poly& b) {
    double m = 0.0;
    int deg = std::max(a.degree(), b.degree());
    for (int k = 0; k <= deg; ++k) m = std::max(m, abs_diff(a.coeff(k), b.coeff(k)));
    return m;
}

}  // namespace fockcalc
