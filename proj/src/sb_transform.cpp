#include "fockcalc/sb_transform.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace fockcalc {

namespace {

const double kPiQuarter = std::pow(M_PI, -0.25);
const double kSqrt2 = std::sqrt(2.0);

/// Coefficients of the pre-exponential polynomial P_m(u,x) in
/// d^m/du^m A(u,x) = P_m(u,x) A(u,x), from P_{m+1} = dP_m/du + (sqrt2 x - u) P_m.
/// c[i][j] = coefficient of u^i x^j.
std::vector<std::vector<Complex>> hermite_prefactor(int m) {
    std::vector<std::vector<Complex>> c{{Complex(1.0)}};
    for (int step = 0; step < m; ++step) {
        int du = static_cast<int>(c.size());
        int dx = static_cast<int>(c[0].size());
        std::vector<std::vector<Complex>> next(du + 1, std::vector<Complex>(dx + 1, Complex(0.0)));
        for (int i = 0; i < du; ++i) {
            for (int j = 0; j < dx; ++j) {
                if (c[i][j] == Complex(0.0)) continue;
                if (i >= 1) next[i - 1][j] += static_cast<double>(i) * c[i][j];
                next[i][j + 1] += kSqrt2 * c[i][j];
                next[i + 1][j] -= c[i][j];
            }
        }
        c = std::move(next);
    }
    return c;
}

Complex cpow_int(Complex base, int n) {
    Complex acc(1.0);
    for (int k = 0; k < n; ++k) acc *= base;
    return acc;
}

Complex eval_bivariate(const std::vector<std::vector<Complex>>& c, Complex u, double x) {
    Complex acc(0.0);
    Complex upow(1.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        Complex inner(0.0);
        double xpow = 1.0;
        for (std::size_t j = 0; j < c[i].size(); ++j) {
            inner += c[i][j] * xpow;
            xpow *= x;
        }
        acc += upow * inner;
        upow *= u;
    }
    return acc;
}

}  // namespace

const GaussHermite& GaussHermite::rule(int n) {
    if (n < 2) throw std::invalid_argument("GaussHermite: need at least 2 nodes");
    static std::mutex mu;
    static std::map<int, GaussHermite> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Golub-Welsch: symmetric tridiagonal Jacobi matrix with off-diagonals
    // sqrt(k/2); nodes are its eigenvalues, weights sqrt(pi) * v_0^2.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        double off = std::sqrt(k / 2.0);
        jac(k, k - 1) = off;
        jac(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jac);
    GaussHermite rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double sqrt_pi = std::sqrt(M_PI);
    for (int k = 0; k < n; ++k) {
        rule.nodes[k] = solver.eigenvalues()(k);
        double v0 = solver.eigenvectors()(0, k);
        rule.weights[k] = sqrt_pi * v0 * v0;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

Complex sb_kernel(Complex z, double x) {
    return kPiQuarter * std::exp((-z * z + 2.0 * kSqrt2 * x * z - x * x) / 2.0);
}

Complex HermiteVector::eval(double x) const {
    auto c = hermite_prefactor(m);
    return eval_bivariate(c, w, x) * sb_kernel(w, x);
}

Complex sb_pair_integral(Complex z, Complex u, int nodes) {
    return sb_pair_integral_signed(z, u, +1, nodes);
}

Complex sb_pair_integral_signed(Complex z, Complex u, int sign, int nodes) {
    if (nodes < 16) throw std::invalid_argument("sb_pair_integral: need at least 16 nodes");
    const auto& rule = GaussHermite::rule(nodes);
    // A(z,x) A(u,sx) = pi^{-1/2} e^{-(z^2+u^2)/2} e^{-x^2} e^{sqrt2 x (z + s u)}
    Complex s = z + static_cast<double>(sign) * u;
    Complex acc(0.0);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        acc += rule.weights[k] * std::exp(kSqrt2 * rule.nodes[k] * s);
    return acc * std::exp(-(z * z + u * u) / 2.0) / std::sqrt(M_PI);
}

Complex sb_transform_hermite(Complex w, int m, Complex z, int nodes) {
    if (nodes < 16) throw std::invalid_argument("sb_transform_hermite: need at least 16 nodes");
    const auto& rule = GaussHermite::rule(nodes);
    auto c = hermite_prefactor(m);
    // A(z,x) h_{w,m}(x) = pi^{-1/2} e^{-(z^2+w^2)/2} e^{-x^2} e^{sqrt2 x (z+w)} P_m(w,x)
    Complex s = z + w;
    Complex acc(0.0);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        double x = rule.nodes[k];
        acc += rule.weights[k] * std::exp(kSqrt2 * x * s) * eval_bivariate(c, w, x);
    }
    return acc * std::exp(-(z * z + w * w) / 2.0) / std::sqrt(M_PI);
}

PtCorrespondenceReport pt_correspondence_check(int nodes, const std::vector<Complex>& samples,
                                               double tol) {
    PtCorrespondenceReport report;
    const std::vector<Complex> z_grid = {
        {0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {-0.7, 0.4}, {0.5, -1.2}, {1.5, 1.0}};
    for (Complex w : samples) {
        for (Complex z : z_grid) {
            KernelChainSample s;
            s.w = w;
            s.z = z;
            s.deviation_t = std::abs(sb_pair_integral_signed(z, w, +1, nodes) - std::exp(z * w));
            s.deviation_pt = std::abs(sb_pair_integral_signed(z, w, -1, nodes) - std::exp(-z * w));
            report.max_deviation =
                std::max({report.max_deviation, s.deviation_t, s.deviation_pt});
            report.samples.push_back(s);
        }
    }
    report.pass = report.max_deviation <= tol;
    return report;
}

HermitePullbackReport hermite_conjugation_pullback(const ConjugationParams& params, int m,
                                                   int nodes, double tol) {
    params.require_valid();
    if (m > 8)
        throw std::invalid_argument("hermite_conjugation_pullback: m <= 8 supported");
    HermitePullbackReport report;
    report.m = m;
    Complex a = params.a.to_complex();
    Complex b = params.b.to_complex();
    Complex c = params.c.to_complex();

    auto binom = [](int n, int k) {
        double acc = 1.0;
        for (int j = 1; j <= k; ++j) acc *= static_cast<double>(n - k + j) / j;
        return acc;
    };

    const std::vector<Complex> z_grid = {
        {0.0, 0.0}, {0.8, 0.0}, {0.0, 0.9}, {-0.6, 0.3}, {1.1, -0.5}, {0.4, 1.3}};
    for (Complex z : z_grid) {
        // left side: conjugation applied to the transformed h_{0,m},
        // (C g)(z) = c e^{bz} conj(g(conj(az+b))) with g by quadrature
        Complex inner = sb_transform_hermite(Complex(0.0), m, std::conj(a * z + b), nodes);
        Complex lhs = c * std::exp(b * z) * std::conj(inner);
        // right side: transform of the binomial combination of h_{b,k}
        Complex rhs(0.0);
        for (int k = 0; k <= m; ++k) {
            Complex coeff = binom(m, k) * c * cpow_int(a, k) * cpow_int(b, m - k);
            if (coeff == Complex(0.0)) continue;
            rhs += coeff * sb_transform_hermite(b, k, z, nodes);
        }
        report.max_deviation = std::max(report.max_deviation, std::abs(lhs - rhs));
    }
    report.pass = report.max_deviation <= tol;
    return report;
}

}  // namespace fockcalc
