#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "fockcalc/diffop.hpp"

namespace fockcalc {

/// Truncated element of the space: coeffs[n] = Taylor coefficient of z^n,
/// truncation N = coeffs.size(). The squared norm sum |f_n|^2 n! is
/// accumulated through log-factorials so large truncations cannot
/// overflow intermediate terms.
struct FockSeries {
    std::vector<Complex> coeffs;

    int truncation() const { return static_cast<int>(coeffs.size()); }
    Complex coeff(int n) const {
        return (n >= 0 && n < truncation()) ? coeffs[n] : Complex(0.0);
    }
    double norm_squared() const;
    double norm() const;
    bool is_zero() const;

    /// Value of the k-th derivative at z.
    Complex derivative_at(int k, Complex z) const;

    static FockSeries from_poly(const Poly& p, int n_trunc);
    Poly to_poly() const;

    FockSeries& operator*=(Complex s);
    FockSeries& add_scaled(const FockSeries& other, Complex s);
    friend FockSeries operator-(const FockSeries& a, const FockSeries& b);
};

Complex inner_product(const FockSeries& f, const FockSeries& g);

/// Exact diagonal pairing sum_n f_n conj(g_n) n! for polynomial arguments.
Scalar inner_product_exact(const Poly& f, const Poly& g);

/// Kernel element K_z^[m](u) = u^m e^{u conj(z)} at truncation N.
struct KernelVector {
    Complex z;
    int m = 0;
    int n_trunc = 64;

    FockSeries realize() const;
};

/// N x N section M[row][col] = <T e_col, e_row> in the orthonormal basis
/// e_n = z^n / sqrt(n!). Banded: rows within [col - lower_bw, col + upper_bw].
struct FockMatrix {
    Eigen::MatrixXcd m;
    int lower_bw = 0;
    int upper_bw = 0;
    /// Columns 0..exact_columns-1 carry no truncation spill.
    int exact_columns = 0;
};

FockMatrix fock_matrix(const DiffOp& op, int n_trunc);

/// C f = c e^{bz} sum_k conj(f_k) (az+b)^k with the exponential factor
/// truncated at the series truncation. Anti-linear.
FockSeries conjugation_apply(const ConjugationParams& params, const FockSeries& f);

/// Tail bound |b|^N/N! e^{|b| R} of the truncated e^{bz} factor on |z| <= R.
double conjugation_tail_bound(const ConjugationParams& params, int n_trunc, double radius);

/// T^* K_z^[m] realized at truncation N via the omega recursion.
FockSeries adjoint_on_kernel(const DiffOp& op, Complex z, int m, int n_trunc);

struct AdjointIdentityReport {
    bool pass = false;
    bool exact_mode = false;
    int trials = 0;
    double max_residual = 0.0;
};

/// Checks <T f, g> == <f, S g> for random polynomial pairs, S the maximal
/// adjoint. Exact operators are tested in exact arithmetic (zero residual
/// demanded); approximate ones within 1e-9 (1 + |lhs|).
AdjointIdentityReport verify_adjoint_identity(const DiffOp& op, int n_trunc, int trials,
                                              std::uint64_t seed = 0);

/// |f^(k)(z)| <= e^{k(k+1)} (1+|z|)^k e^{|z|^2/2} ||f||.
bool derivative_bound_check(const FockSeries& f, int k, Complex z);

/// exp(-alpha z^2/2 - beta z) lies in the space iff |alpha| < 1.
bool gaussian_membership(Complex alpha, Complex beta);

/// ||op f - lambda f|| / ||f|| with exact polynomial application of op.
double eigencheck(const DiffOp& op, Complex lambda, const FockSeries& f);

}  // namespace fockcalc
