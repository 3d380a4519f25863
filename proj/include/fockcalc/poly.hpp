#pragma once

#include <initializer_list>
#include <iosfwd>
#include <vector>

#include "fockcalc/scalar.hpp"

namespace fockcalc {

/// a = 0 passed where an invertible affine basis (az+b) is required.
class invalid_basis_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Polynomial in z with Scalar coefficients, coeffs[k] = coefficient of z^k.
/// Canonical form: trailing zeros trimmed; the zero polynomial has an empty
/// coefficient list and degree() == -1.
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<Scalar> cs) : c_(cs) { trim(); }
    explicit Poly(std::vector<Scalar> cs) : c_(std::move(cs)) { trim(); }
    static Poly constant(Scalar v) { return Poly({std::move(v)}); }
    static Poly monomial(unsigned k, Scalar v = Scalar(1));
    /// (a z + b)^n expanded.
    static Poly affine_power(const Scalar& a, const Scalar& b, unsigned n);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Scalar coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Scalar(0);
    }
    const std::vector<Scalar>& coeffs() const { return c_; }

    Scalar eval(const Scalar& z) const;
    Poly derivative(unsigned times = 1) const;
    Poly conj_coeffs() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Scalar& s, const Poly& p);

    /// Largest coefficient magnitude (0 for the zero polynomial).
    double max_coeff_abs() const;
    /// True when every coefficient is in exact mode.
    bool all_exact() const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p);

private:
    void trim();
    std::vector<Scalar> c_;
};

/// Coefficients of p in powers of (az+b): p(z) = sum_k out[k] (az+b)^k.
/// Exact when p, a, b are exact. Throws invalid_basis_error when a == 0.
std::vector<Scalar> poly_rebase(const Poly& p, const Scalar& a, const Scalar& b);

/// Largest distance between corresponding coefficients (padding with zero).
double poly_distance(const Poly& a, const Poly& b);

}  // namespace fockcalc
