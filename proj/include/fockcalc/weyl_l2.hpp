#pragma once

#include <vector>

#include "fockcalc/diffop.hpp"

namespace fockcalc {

/// Generator letters of the position/momentum pair on the real line:
/// X f = x f and P f = -i f'.
enum class WeylLetter { X, P };

struct WeylWord {
    Scalar coeff;
    std::vector<WeylLetter> letters;
};

using WeylExpr = std::vector<WeylWord>;

struct L2Term {
    int x_power = 0;
    int d_power = 0;
    Scalar coeff;
};

/// Normal-ordered differential expression sum c_{m,q} x^m D^q on the real
/// line, D = d/dx. Canonical form: terms sorted by (x_power, d_power), zero
/// coefficients dropped, each (m,q) appearing once.
class L2Op {
public:
    L2Op() = default;
    explicit L2Op(std::vector<L2Term> terms);

    const std::vector<L2Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Largest d_power (-1 when zero).
    int order() const;
    Scalar coeff(int x_power, int d_power) const;

    L2Op& operator+=(const L2Op& o);
    friend L2Op operator+(L2Op a, const L2Op& b) { return a += b; }
    friend bool operator==(const L2Op& a, const L2Op& b);
    friend bool operator!=(const L2Op& a, const L2Op& b) { return !(a == b); }
    friend std::ostream& operator<<(std::ostream& os, const L2Op& op);

private:
    void canonicalize();
    std::vector<L2Term> terms_;
};

/// Rewrite a word in X, P into the canonical form sum c_{m,q} X^m P^q using
/// P X = X P - i, then convert P^q -> (-i)^q D^q.
L2Op weyl_normal_order(const WeylExpr& expr);

/// Image of a Fock-side expression under the unitary dictionary:
/// z^j d^p/dz^p -> ((X - iP)/sqrt2)^j ((X + iP)/sqrt2)^p, normal-ordered.
L2Op fock_to_lebesgue(const DiffOp& op);

/// Inverse direction: x -> (Z + Dz)/sqrt2 and d/dx -> (Dz - Z)/sqrt2 in the
/// Fock generators Z (multiply by z) and Dz (d/dz), normal-ordered with
/// Dz Z = Z Dz + 1.
DiffOp lebesgue_to_fock(const L2Op& l2op);

}  // namespace fockcalc
