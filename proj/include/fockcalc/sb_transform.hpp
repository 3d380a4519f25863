#pragma once

#include <vector>

#include "fockcalc/diffop.hpp"

namespace fockcalc {

/// Gauss-Hermite rule for the weight e^{-x^2}: integral f = sum w_i f(x_i).
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;

    /// Cached by node count; tables are built once and shared read-only.
    static const GaussHermite& rule(int n);
};

/// Transform kernel A(z,x) = pi^{-1/4} e^{(-z^2 + 2 sqrt2 x z - x^2)/2}.
Complex sb_kernel(Complex z, double x);

/// Kernel value holder (z, x) -> A(z, x).
struct SBKernelPoint {
    Complex z;
    double x = 0.0;

    Complex value() const { return sb_kernel(z, x); }
};

/// Derivative of the kernel in its holomorphic slot,
/// h_{w,m}(x) = d^m/du^m A(u,x) at u = w; realized through the polynomial
/// recurrence for the Gaussian exponent, not numeric differencing.
struct HermiteVector {
    Complex w;
    int m = 0;

    Complex eval(double x) const;
};

/// Quadrature value of integral_R A(z,x) A(u,x) dx; the closed form is
/// e^{z u}. The shared Gaussian factor is folded into the weight
/// analytically, so the quadrature sees an entire integrand.
Complex sb_pair_integral(Complex z, Complex u, int nodes);

/// Same integral with the second kernel argument negated in x:
/// integral_R A(z,x) A(u, sign*x) dx.
Complex sb_pair_integral_signed(Complex z, Complex u, int sign, int nodes);

/// Quadrature realization of the transform applied to h_{w,m}, evaluated at
/// z; the closed form is z^m e^{z w}.
Complex sb_transform_hermite(Complex w, int m, Complex z, int nodes);

struct KernelChainSample {
    Complex w;
    Complex z;
    double deviation_t = 0.0;
    double deviation_pt = 0.0;
};

struct PtCorrespondenceReport {
    bool pass = false;
    double max_deviation = 0.0;
    std::vector<KernelChainSample> samples;
};

/// Kernel-level verification of the time-reversal and parity-time
/// correspondences: quadrature of the kernel chain against e^{+zw} (T
/// branch) and e^{-zw} (PT branch) over a grid of z for each sample w.
PtCorrespondenceReport pt_correspondence_check(int nodes, const std::vector<Complex>& samples,
                                               double tol = 1e-6);

struct HermitePullbackReport {
    bool pass = false;
    double max_deviation = 0.0;
    int m = 0;
};

/// Verifies that pulling the conjugation back through the transform sends
/// h_{0,m} to sum_k C(m,k) c a^k b^{m-k} h_{b,k}, comparing both sides
/// under the transform (by quadrature) at sample points.
HermitePullbackReport hermite_conjugation_pullback(const ConjugationParams& params, int m,
                                                   int nodes, double tol = 1e-6);

}  // namespace fockcalc
