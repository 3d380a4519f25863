#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fockcalc/fock.hpp"

namespace fockcalc {

class unsupported_shape_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The operator has the supported shape, but the top symbol lacks a zero of
/// the required order.
class criterion_not_applicable_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RootCluster {
    Complex location;
    int multiplicity;
};

/// All roots with multiplicities. Exact factorization for degree <= 2;
/// companion-matrix eigenvalues with Newton polishing and multiplicity
/// clustering above that.
std::vector<RootCluster> poly_roots(const Poly& p, double tol = 1e-8);

enum class SpectrumKind { FiniteSet, Progression, AllOfC, Empty, SubsetBound };
enum class SpectrumMode { Formula, Oracle };

std::string to_string(SpectrumKind kind);

/// Arithmetic family lambda(k) = base + C(k, order) * increment, k >= order,
/// together with lambda = base for k < order.
struct ProgressionData {
    Complex base;
    Complex increment;
    Complex witness;
    int order = 1;
    std::vector<Complex> enumerated;
};

struct SpectrumOptions {
    int kmax = 64;
    bool c_selfadjoint_asserted = false;
    double root_tol = 1e-8;
};

struct SpectrumResult {
    SpectrumKind kind = SpectrumKind::Empty;
    SpectrumMode mode = SpectrumMode::Formula;
    std::vector<Complex> finite_values;
    std::optional<ProgressionData> progression;
    /// Same family with conjugated base/increment; emitted alongside the
    /// primary values, never merged with them.
    std::optional<ProgressionData> conjugate_variant;
    bool variants_differ = false;
    std::vector<double> residuals;
    std::vector<std::string> notes;
    int kmax = 64;
};

/// Point spectrum of a two-term operator psi_0 + psi_n d^n/dz^n (or any
/// first-order operator). Formula mode evaluates the closed forms; oracle
/// mode diagonalizes the action on shifted monomials (z - w)^k and verifies
/// every enumerated eigenpair with eigencheck.
SpectrumResult spectrum(const DiffOp& op, SpectrumMode mode, const SpectrumOptions& opts = {});

struct FirstOrderEigenfunction {
    Complex alpha;
    Complex beta;
    bool membership;
};

/// Solve psi_0 - lambda = (alpha z + beta) psi_1 for a constant nonzero
/// psi_1; the eigenfunction candidate is exp(-alpha z^2/2 - beta z).
/// Returns nullopt when the division fails (no eigenfunction); throws
/// std::invalid_argument when psi_1 is zero or nonconstant.
std::optional<FirstOrderEigenfunction> first_order_eigenfunction(const Poly& psi0,
                                                                 const Poly& psi1,
                                                                 Complex lambda);

struct KernelEigenPair {
    Complex lambda;
    /// kernel_coeffs[j] = coefficient of K_w^[j].
    std::vector<Complex> kernel_coeffs;
    Complex witness;
    bool degenerate = false;

    FockSeries realize(int n_trunc) const;
};

/// Explicit eigenpair of the adjoint on span{K_w, ..., K_w^[m]}, obtained
/// by back substitution on the triangular section. Degenerate diagonals
/// are reported, not resolved.
KernelEigenPair adjoint_eigen_on_kernels(const DiffOp& op, Complex w, int m,
                                         double tol = 1e-8);

}  // namespace fockcalc
