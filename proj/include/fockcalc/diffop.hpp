#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fockcalc/poly.hpp"

namespace fockcalc {

class invalid_conjugation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Some symbol degree exceeds the operator order, so the operator admits no
/// square symbol matrix in any affine basis.
class not_representable_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Differential expression D[psi] f = sum_{j=0..kappa} psi_j * f^(j) with
/// polynomial symbols. Canonical form trims trailing zero symbols, so
/// order() is the largest j with psi_j not identically zero; the zero
/// expression has an empty symbol list and order() == -1. Two expressions
/// are equal iff their symbol lists are equal.
class DiffOp {
public:
    DiffOp() = default;
    explicit DiffOp(std::vector<Poly> symbols) : sym_(std::move(symbols)) { trim(); }
    DiffOp(std::initializer_list<Poly> symbols) : sym_(symbols) { trim(); }

    int order() const { return static_cast<int>(sym_.size()) - 1; }
    bool is_zero() const { return sym_.empty(); }
    const Poly& symbol(int j) const;
    const std::vector<Poly>& symbols() const { return sym_; }
    /// max_j deg psi_j (-1 for the zero expression).
    int max_symbol_degree() const;
    bool all_exact() const;

    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.sym_ == b.sym_; }
    friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const DiffOp& op);

private:
    void trim();
    std::vector<Poly> sym_;
    static const Poly kZero;
};

/// Parameters (a,b,c) of the weighted composition conjugation
/// C f(z) = c e^{bz} conj(f(conj(az+b))), admissible when |a| = 1,
/// conj(a) b + conj(b) = 0 and |c|^2 e^{|b|^2} = 1 (within eps_val).
struct ConjugationParams {
    Scalar a{1};
    Scalar b{0};
    Scalar c{1};
    double eps_val = 1e-12;

    /// Largest violation among the three defining constraints.
    double validation_residual() const;
    bool is_valid() const { return validation_residual() <= eps_val; }
    void require_valid() const;

    static ConjugationParams pt() { return {Scalar(-1), Scalar(0), Scalar(1)}; }
    static ConjugationParams identity() { return {Scalar(1), Scalar(0), Scalar(1)}; }
    /// Admissible triple built from a = e^{i theta}, |b| = r (phase forced
    /// by the compatibility constraint), c-phase gamma.
    static ConjugationParams from_polar(double theta, double r, double gamma);
};

/// Coefficients of the symbols in the shifted basis: d[j][p] = coefficient
/// of (az+b)^j in psi_p. Square (kappa+1)^2 with zero padding; only
/// operators with every deg psi_p <= kappa are representable.
struct SymbolMatrix {
    std::vector<std::vector<Scalar>> d;
    Scalar a;
    Scalar b;

    int size() const { return static_cast<int>(d.size()); }
    const Scalar& at(int j, int p) const { return d[j][p]; }
};

/// Rows omega[l][j] of the derivative-coefficient recursion: row 0 is the
/// symbol list, row l has kappa+l+1 entries.
struct OmegaTable {
    std::vector<std::vector<Poly>> rows;

    const Poly& at(int j, int l) const { return rows[l][j]; }
};

struct CriterionViolation {
    int j;
    int p;
    double magnitude;
};

struct CriterionReport {
    bool pass = false;
    bool representable = true;
    std::string reason;
    double max_violation = 0.0;
    std::vector<CriterionViolation> violations;
};

/// Apply the expression to a polynomial: sum_j psi_j f^(j).
Poly diffop_apply(const DiffOp& op, const Poly& f);

OmegaTable omega_table(const DiffOp& op, int m);

/// Symbols of the maximal adjoint: T_max^* = S_max. Valid for any
/// polynomial symbols and any invertible basis (a,b); the result is
/// expressed in the plain z basis and does not depend on the basis chosen.
DiffOp adjoint_op(const DiffOp& op, const Scalar& a = Scalar(1), const Scalar& b = Scalar(0));

/// Differential expression of C_{a,b,c} D[psi] C_{a,b,c}. Total on all
/// operators (symbol symmetry is not assumed).
DiffOp conjugate_op(const DiffOp& op, const ConjugationParams& params);

SymbolMatrix symbol_matrix(const DiffOp& op, const Scalar& a, const Scalar& b);

/// d[j][p] == d[p][j] test in the (az+b) basis of params.
CriterionReport is_c_selfadjoint(const DiffOp& op, const ConjugationParams& params,
                                 double eps_sym = 1e-10);

/// d[j][p] == conj(d[p][j]) test in the plain z basis.
CriterionReport is_selfadjoint(const DiffOp& op, double eps_sym = 1e-10);

struct GammaPair {
    DiffOp gamma1;
    DiffOp gamma2;
};

/// The first-order C_{a,b,c}-selfadjoint pair
///   Gamma1 = (G + aKz) + K d/dz,
///   Gamma2 = (G - alpha(aK+b)z) + alpha(z-K) d/dz.
GammaPair gamma_examples(const Scalar& G, const Scalar& K, const Scalar& alpha,
                         const ConjugationParams& params);

}  // namespace fockcalc
