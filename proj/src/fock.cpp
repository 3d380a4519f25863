#include "fockcalc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace fockcalc {

namespace {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double factorial_d(int n) { return std::exp(log_factorial(n)); }

}  // namespace

double FockSeries::norm_squared() const {
    // scaled accumulation: factor out the largest log-term
    double max_log = -std::numeric_limits<double>::infinity();
    std::vector<double> logs(coeffs.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        double a = std::abs(coeffs[n]);
        if (a == 0.0) continue;
        logs[n] = 2.0 * std::log(a) + log_factorial(static_cast<int>(n));
        max_log = std::max(max_log, logs[n]);
    }
    if (max_log == -std::numeric_limits<double>::infinity()) return 0.0;
    double acc = 0.0;
    for (double l : logs) {
        if (l == -std::numeric_limits<double>::infinity()) continue;
        acc += std::exp(l - max_log);
    }
    return std::exp(max_log) * acc;
}

double FockSeries::norm() const { return std::sqrt(norm_squared()); }

bool FockSeries::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](Complex c) { return c == Complex(0.0); });
}

Complex FockSeries::derivative_at(int k, Complex z) const {
    Complex acc(0.0);
    Complex zp(1.0);
    for (int n = k; n < truncation(); ++n) {
        double falling = 1.0;
        for (int j = 0; j < k; ++j) falling *= static_cast<double>(n - j);
        acc += falling * coeffs[n] * zp;
        zp *= z;
    }
    return acc;
}

FockSeries FockSeries::from_poly(const Poly& p, int n_trunc) {
    FockSeries f;
    f.coeffs.assign(std::max(n_trunc, p.degree() + 1), Complex(0.0));
    for (int k = 0; k <= p.degree(); ++k) f.coeffs[k] = p.coeff(k).to_complex();
    return f;
}

Poly FockSeries::to_poly() const {
    std::vector<Scalar> cs(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) cs[k] = Scalar(coeffs[k]);
    return Poly(std::move(cs));
}

FockSeries& FockSeries::operator*=(Complex s) {
    for (auto& c : coeffs) c *= s;
    return *this;
}

FockSeries& FockSeries::add_scaled(const FockSeries& other, Complex s) {
    if (other.coeffs.size() > coeffs.size()) coeffs.resize(other.coeffs.size(), Complex(0.0));
    for (std::size_t n = 0; n < other.coeffs.size(); ++n) coeffs[n] += s * other.coeffs[n];
    return *this;
}

FockSeries operator-(const FockSeries& a, const FockSeries& b) {
    FockSeries out = a;
    out.add_scaled(b, Complex(-1.0));
    return out;
}

Complex inner_product(const FockSeries& f, const FockSeries& g) {
    int n = std::min(f.truncation(), g.truncation());
    Complex acc(0.0);
    for (int k = 0; k < n; ++k) acc += f.coeffs[k] * std::conj(g.coeffs[k]) * factorial_d(k);
    return acc;
}

Scalar inner_product_exact(const Poly& f, const Poly& g) {
    Scalar acc(0);
    int deg = std::min(f.degree(), g.degree());
    for (int n = 0; n <= deg; ++n)
        acc += f.coeff(n) * g.coeff(n).conj() * Scalar::factorial(static_cast<unsigned>(n));
    return acc;
}

FockSeries KernelVector::realize() const {
    FockSeries f;
    f.coeffs.assign(n_trunc, Complex(0.0));
    Complex zb = std::conj(z);
    Complex c(1.0);
    for (int n = m; n < n_trunc; ++n) {
        f.coeffs[n] = c;
        c *= zb / static_cast<double>(n - m + 1);
    }
    return f;
}

FockMatrix fock_matrix(const DiffOp& op, int n_trunc) {
    if (n_trunc < 1) throw std::invalid_argument("fock_matrix: truncation must be >= 1");
    FockMatrix fm;
    fm.m = Eigen::MatrixXcd::Zero(n_trunc, n_trunc);
    int kappa = std::max(op.order(), 0);
    int dmax = std::max(op.max_symbol_degree(), 0);
    fm.lower_bw = kappa;
    int upper = 0;
    for (int j = 0; j <= op.order(); ++j)
        if (!op.symbol(j).is_zero()) upper = std::max(upper, op.symbol(j).degree() - j);
    fm.upper_bw = std::max(upper, 0);
    fm.exact_columns = std::max(n_trunc - dmax, 0);

    for (int n = 0; n < n_trunc; ++n) {
        Poly image = diffop_apply(op, Poly::monomial(static_cast<unsigned>(n)));
        for (int m = 0; m <= image.degree() && m < n_trunc; ++m) {
            Complex c = image.coeff(m).to_complex();
            if (c == Complex(0.0)) continue;
            double scale = std::exp(0.5 * (log_factorial(m) - log_factorial(n)));
            fm.m(m, n) = c * scale;
        }
    }
    return fm;
}

FockSeries conjugation_apply(const ConjugationParams& params, const FockSeries& f) {
    params.require_valid();
    int n_trunc = f.truncation();
    Complex a = params.a.to_complex();
    Complex b = params.b.to_complex();
    Complex c = params.c.to_complex();

    // g = sum_k conj(f_k) (az+b)^k, degree bounded by the input length
    std::vector<Complex> g(f.coeffs.size(), Complex(0.0));
    std::vector<Complex> affine{Complex(1.0)};  // (az+b)^k, built iteratively
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
        Complex fk = std::conj(f.coeffs[k]);
        if (fk != Complex(0.0))
            for (std::size_t j = 0; j < affine.size(); ++j) g[j] += fk * affine[j];
        if (k + 1 < f.coeffs.size()) {
            affine.resize(k + 2, Complex(0.0));
            for (std::size_t j = k + 1; j > 0; --j) affine[j] = affine[j] * b + affine[j - 1] * a;
            affine[0] *= b;
        }
    }

    // multiply by the truncated exponential c e^{bz}
    FockSeries out;
    out.coeffs.assign(n_trunc, Complex(0.0));
    if (b == Complex(0.0)) {
        for (int n = 0; n < n_trunc; ++n) out.coeffs[n] = c * g[n];
        return out;
    }
    std::vector<Complex> expb(n_trunc);
    expb[0] = Complex(1.0);
    for (int n = 1; n < n_trunc; ++n) expb[n] = expb[n - 1] * b / static_cast<double>(n);
    for (int n = 0; n < n_trunc; ++n) {
        Complex acc(0.0);
        int kmax = std::min<int>(n, static_cast<int>(g.size()) - 1);
        for (int k = 0; k <= kmax; ++k) acc += g[k] * expb[n - k];
        out.coeffs[n] = c * acc;
    }
    return out;
}

double conjugation_tail_bound(const ConjugationParams& params, int n_trunc, double radius) {
    double babs = params.b.abs();
    if (babs == 0.0) return 0.0;
    double log_tail = n_trunc * std::log(babs) - log_factorial(n_trunc) + babs * radius;
    return std::exp(log_tail);
}

FockSeries adjoint_on_kernel(const DiffOp& op, Complex z, int m, int n_trunc) {
    if (m < 0) throw std::invalid_argument("adjoint_on_kernel: m must be nonnegative");
    auto table = omega_table(op, m);
    FockSeries out;
    out.coeffs.assign(n_trunc, Complex(0.0));
    const auto& row = table.rows[m];
    for (int j = 0; j < static_cast<int>(row.size()); ++j) {
        Complex w = std::conj(row[j].eval(Scalar(z)).to_complex());
        if (w == Complex(0.0)) continue;
        out.add_scaled(KernelVector{z, j, n_trunc}.realize(), w);
    }
    return out;
}

AdjointIdentityReport verify_adjoint_identity(const DiffOp& op, int n_trunc, int trials,
                                              std::uint64_t seed) {
    AdjointIdentityReport report;
    report.exact_mode = op.all_exact();
    report.trials = trials;
    DiffOp s = adjoint_op(op);
    int deg_cap = std::max(n_trunc - 1 - std::max(op.max_symbol_degree(), 0), 1);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> icoeff(-5, 5);
    std::uniform_real_distribution<double> dcoeff(-1.0, 1.0);
    std::uniform_int_distribution<int> degree(0, deg_cap);

    bool ok = true;
    for (int t = 0; t < trials; ++t) {
        if (report.exact_mode) {
            auto random_poly = [&] {
                std::vector<Scalar> cs(degree(rng) + 1);
                for (auto& c : cs) c = Scalar::rational(icoeff(rng), icoeff(rng));
                return Poly(std::move(cs));
            };
            Poly f = random_poly(), g = random_poly();
            Scalar lhs = inner_product_exact(diffop_apply(op, f), g);
            Scalar rhs = inner_product_exact(f, diffop_apply(s, g));
            Scalar diff = lhs - rhs;
            if (!diff.is_zero()) {
                ok = false;
                report.max_residual = std::max(report.max_residual, diff.abs());
            }
        } else {
            auto random_poly = [&] {
                std::vector<Scalar> cs(degree(rng) + 1);
                for (auto& c : cs) c = Scalar(Complex(dcoeff(rng), dcoeff(rng)));
                return Poly(std::move(cs));
            };
            Poly f = random_poly(), g = random_poly();
            Complex lhs = inner_product_exact(diffop_apply(op, f), g).to_complex();
            Complex rhs = inner_product_exact(f, diffop_apply(s, g)).to_complex();
            double resid = std::abs(lhs - rhs);
            report.max_residual = std::max(report.max_residual, resid);
            if (resid > 1e-9 * (1.0 + std::abs(lhs))) ok = false;
        }
    }
    report.pass = ok;
    return report;
}

bool derivative_bound_check(const FockSeries& f, int k, Complex z) {
    double lhs = std::abs(f.derivative_at(k, z));
    if (lhs == 0.0) return true;
    double zabs = std::abs(z);
    double log_bound = k * (k + 1.0) + k * std::log1p(zabs) + 0.5 * zabs * zabs +
                       std::log(std::max(f.norm(), std::numeric_limits<double>::min()));
    return std::log(lhs) <= log_bound;
}

bool gaussian_membership(Complex alpha, Complex /*beta*/) { return std::abs(alpha) < 1.0; }

double eigencheck(const DiffOp& op, Complex lambda, const FockSeries& f) {
    double fn = f.norm();
    if (fn == 0.0) throw std::invalid_argument("eigencheck: zero eigenvector");
    Poly p = f.to_poly();
    Poly residual = diffop_apply(op, p) - Scalar(lambda) * p;
    FockSeries r = FockSeries::from_poly(residual, residual.degree() + 1);
    return r.norm() / fn;
}

}  // namespace fockcalc
