#include "fockcalc/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace fockcalc {

namespace {

double binom_d(int k, int n) {
    double acc = 1.0;
    for (int j = 1; j <= n; ++j) acc *= static_cast<double>(k - n + j) / j;
    return acc;
}

Poly poly_from_complex(const std::vector<Complex>& cs) {
    std::vector<Scalar> sc(cs.size());
    for (std::size_t k = 0; k < cs.size(); ++k) sc[k] = Scalar(cs[k]);
    return Poly(std::move(sc));
}

std::vector<Complex> companion_roots(const std::vector<Complex>& monic) {
    int d = static_cast<int>(monic.size());  // coefficients c_0..c_{d-1}, leading 1
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -monic[i];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    std::vector<Complex> roots(d);
    for (int i = 0; i < d; ++i) roots[i] = solver.eigenvalues()(i);
    return roots;
}

Complex newton_polish(const Poly& p, int derivative_order, Complex w0) {
    Poly q = p.derivative(static_cast<unsigned>(derivative_order));
    Poly qd = q.derivative();
    Complex w = w0;
    for (int it = 0; it < 40; ++it) {
        Complex val = q.eval(Scalar(w)).to_complex();
        Complex der = qd.eval(Scalar(w)).to_complex();
        if (std::abs(der) == 0.0) break;
        Complex step = val / der;
        w -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(w))) break;
    }
    return w;
}

/// |p^{(j)}(w)| <= tol * scale for all j < mult, and clearly nonzero at j = mult.
bool multiplicity_verified(const Poly& p, Complex w, int mult, double tol) {
    double wabs = std::abs(w);
    for (int j = 0; j < mult; ++j) {
        Poly dj = p.derivative(static_cast<unsigned>(j));
        double scale = std::max(dj.max_coeff_abs(), 1.0) * std::pow(1.0 + wabs, std::max(dj.degree(), 0));
        if (std::abs(dj.eval(Scalar(w)).to_complex()) > tol * scale) return false;
    }
    Poly dn = p.derivative(static_cast<unsigned>(mult));
    double scale = std::max(dn.max_coeff_abs(), 1.0) * std::pow(1.0 + wabs, std::max(dn.degree(), 0));
    return std::abs(dn.eval(Scalar(w)).to_complex()) > tol * scale;
}

/// Exact binomial pattern p = c (z - w)^deg with rational-mode w.
std::optional<Complex> exact_full_multiplicity_root(const Poly& p) {
    if (!p.all_exact() || p.degree() < 1) return std::nullopt;
    int d = p.degree();
    Scalar lead = p.coeff(d);
    Scalar w = -(p.coeff(d - 1) / (Scalar(d) * lead));
    Poly probe = lead * Poly::affine_power(Scalar(1), -w, static_cast<unsigned>(d));
    if (probe == p) return w.to_complex();
    return std::nullopt;
}

}  // namespace

std::vector<RootCluster> poly_roots(const Poly& p, double tol) {
    std::vector<RootCluster> out;
    int d = p.degree();
    if (d <= 0) return out;

    if (d == 1) {
        Complex c1 = p.coeff(1).to_complex(), c0 = p.coeff(0).to_complex();
        out.push_back({-c0 / c1, 1});
        return out;
    }
    if (d == 2) {
        Complex a = p.coeff(2).to_complex(), b = p.coeff(1).to_complex(),
                c = p.coeff(0).to_complex();
        Complex disc = b * b - 4.0 * a * c;
        double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
        if (std::abs(disc) <= tol * scale * scale) {
            out.push_back({-b / (2.0 * a), 2});
        } else {
            Complex sq = std::sqrt(disc);
            out.push_back({(-b + sq) / (2.0 * a), 1});
            out.push_back({(-b - sq) / (2.0 * a), 1});
        }
        return out;
    }

    if (auto w = exact_full_multiplicity_root(p)) {
        out.push_back({*w, d});
        return out;
    }

    std::vector<Complex> monic(d);
    Complex lead = p.coeff(d).to_complex();
    for (int k = 0; k < d; ++k) monic[k] = p.coeff(k).to_complex() / lead;
    std::vector<Complex> raw = companion_roots(monic);

    // loose pre-clustering: companion eigenvalues of an order-n root scatter
    // at machine-eps^(1/n), far beyond tol
    double maxabs = 0.0;
    for (auto r : raw) maxabs = std::max(maxabs, std::abs(r));
    double loose = 1e-3 * (1.0 + maxabs);
    std::vector<bool> used(raw.size(), false);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) continue;
        std::vector<Complex> cluster{raw[i]};
        used[i] = true;
        for (std::size_t j = i + 1; j < raw.size(); ++j) {
            if (!used[j] && std::abs(raw[j] - raw[i]) < loose) {
                cluster.push_back(raw[j]);
                used[j] = true;
            }
        }
        Complex center(0.0);
        for (auto r : cluster) center += r;
        center /= static_cast<double>(cluster.size());
        int mult = static_cast<int>(cluster.size());
        Complex polished = newton_polish(p, mult - 1, center);
        if (multiplicity_verified(p, polished, mult, tol)) {
            out.push_back({polished, mult});
        } else {
            // cluster does not survive the tolerance check; keep the members
            // as polished simple roots
            for (auto r : cluster) out.push_back({newton_polish(p, 0, r), 1});
        }
    }
    return out;
}

namespace {

std::optional<Complex> order_n_zero(const Poly& psi_n, int n, double tol,
                                    std::vector<std::string>* notes) {
    if (psi_n.degree() < n) return std::nullopt;
    auto roots = poly_roots(psi_n, tol);
    std::optional<Complex> witness;
    for (const auto& r : roots) {
        if (r.multiplicity != n) continue;
        if (!witness) {
            witness = r.location;
        } else if (notes) {
            std::ostringstream os;
            os << "additional order-" << n << " zero at (" << r.location.real() << ","
               << r.location.imag() << ") not used as witness";
            notes->push_back(os.str());
        }
    }
    return witness;
}

ProgressionData make_progression(Complex base, Complex increment, Complex witness, int n,
                                 int kmax) {
    ProgressionData pd;
    pd.base = base;
    pd.increment = increment;
    pd.witness = witness;
    pd.order = n;
    pd.enumerated.push_back(base);
    for (int k = n; k <= kmax; ++k) pd.enumerated.push_back(base + binom_d(k, n) * increment);
    return pd;
}

bool progressions_differ(const ProgressionData& a, const ProgressionData& b) {
    auto differ = [](Complex x, Complex y) {
        return std::abs(x - y) > 1e-12 * (1.0 + std::abs(x));
    };
    return differ(a.base, b.base) || differ(a.increment, b.increment);
}

void check_two_term_shape(const DiffOp& op) {
    for (int j = 1; j < op.order(); ++j) {
        if (!op.symbol(j).is_zero()) {
            std::ostringstream os;
            os << "operator has a nonzero middle symbol at j = " << j
               << "; only two-term shapes psi_0 + psi_n d^n and first-order "
               << "operators are supported";
            throw unsupported_shape_error(os.str());
        }
    }
}

SpectrumResult oracle_spectrum(const DiffOp& op, int n, Complex witness,
                               const SpectrumOptions& opts, SpectrumResult result) {
    const Poly& psi0 = op.symbol(0);
    const Poly& psin = op.symbol(n);
    int kmax = opts.kmax;
    int bump = std::max({psi0.degree(), psin.degree(), 1});
    int section = kmax + 1 + bump;

    // column j = action on (z-w)^j, rebased to the shifted basis
    Scalar one(1), minus_w(-witness);
    if (witness == Complex(0.0)) minus_w = Scalar(0);
    std::vector<std::vector<Scalar>> cols(section);
    double scale = std::max(psi0.max_coeff_abs(), psin.max_coeff_abs());
    for (int j = 0; j < section; ++j) {
        Poly basis_j = Poly::affine_power(one, minus_w, static_cast<unsigned>(j));
        Poly image = diffop_apply(op, basis_j);
        cols[j] = poly_rebase(image, one, minus_w);
        for (int i = 0; i < j && i < static_cast<int>(cols[j].size()); ++i) {
            if (cols[j][i].abs() > opts.root_tol * (1.0 + scale) * 10.0) {
                throw criterion_not_applicable_error(
                    "shifted-monomial action is not triangular: the top symbol has no zero "
                    "of the required order at the witness");
            }
        }
    }
    auto entry = [&](int i, int j) -> Complex {
        if (j < 0 || j >= section) return {0.0, 0.0};
        if (i < 0 || i >= static_cast<int>(cols[j].size())) return {0.0, 0.0};
        return cols[j][i].to_complex();
    };

    ProgressionData pd;
    pd.base = entry(0, 0);
    pd.order = n;
    pd.witness = witness;
    pd.increment = (kmax >= n) ? (entry(n, n) - pd.base) : Complex(0.0);
    pd.enumerated.push_back(pd.base);
    for (int k = n; k <= kmax; ++k) pd.enumerated.push_back(entry(k, k));

    // eigenvectors by forward substitution, verified by eigencheck
    for (int k = 0; k <= kmax; ++k) {
        Complex lambda = entry(k, k);
        std::vector<Complex> v(section, Complex(0.0));
        v[k] = 1.0;
        bool degenerate = false;
        for (int i = k + 1; i < section; ++i) {
            Complex num(0.0);
            for (int j = k; j < i; ++j) num += entry(i, j) * v[j];
            Complex den = lambda - entry(i, i);
            if (std::abs(den) < 1e-12 * (1.0 + std::abs(lambda))) {
                if (std::abs(num) < 1e-12 * (1.0 + scale)) {
                    v[i] = 0.0;
                } else {
                    degenerate = true;
                    break;
                }
            } else {
                v[i] = num / den;
            }
        }
        if (degenerate) {
            std::ostringstream os;
            os << "eigenvector construction for k = " << k
               << " hits a repeated diagonal entry; residual not reported";
            result.notes.push_back(os.str());
            result.residuals.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        Poly eigen_poly;
        for (int i = 0; i < section; ++i) {
            if (v[i] == Complex(0.0)) continue;
            eigen_poly += Scalar(v[i]) * Poly::affine_power(one, minus_w, static_cast<unsigned>(i));
        }
        FockSeries f = FockSeries::from_poly(eigen_poly, eigen_poly.degree() + 1);
        result.residuals.push_back(eigencheck(op, lambda, f));
    }

    result.kind = opts.c_selfadjoint_asserted ? SpectrumKind::Progression : SpectrumKind::SubsetBound;
    if (!opts.c_selfadjoint_asserted)
        result.notes.push_back(
            "oracle eigenvalues are verified members of the point spectrum; the full "
            "spectrum equality requires a conjugation-selfadjointness assertion");
    result.progression = std::move(pd);
    return result;
}

}  // namespace

std::string to_string(SpectrumKind kind) {
    switch (kind) {
        case SpectrumKind::FiniteSet: return "FiniteSet";
        case SpectrumKind::Progression: return "Progression";
        case SpectrumKind::AllOfC: return "AllOfC";
        case SpectrumKind::Empty: return "Empty";
        case SpectrumKind::SubsetBound: return "SubsetBound";
    }
    return "?";
}

SpectrumResult spectrum(const DiffOp& op, SpectrumMode mode, const SpectrumOptions& opts) {
    SpectrumResult result;
    result.mode = mode;
    result.kmax = opts.kmax;

    int kappa = op.order();
    if (kappa <= 0) {
        const Poly& psi0 = op.symbol(0);
        if (psi0.is_constant()) {
            // multiplication by a constant: every nonzero element is an eigenvector
            result.kind = SpectrumKind::FiniteSet;
            result.finite_values.push_back(op.is_zero() ? Complex(0.0)
                                                        : psi0.coeff(0).to_complex());
        } else {
            result.kind = SpectrumKind::Empty;
            result.notes.push_back(
                "multiplication by a nonconstant entire function has no eigenvalues");
        }
        return result;
    }

    check_two_term_shape(op);
    int n = kappa;
    const Poly& psi0 = op.symbol(0);
    const Poly& psin = op.symbol(n);

    std::optional<Complex> witness = order_n_zero(psin, n, opts.root_tol, &result.notes);

    if (!witness) {
        if (n == 1 && psin.is_constant()) {
            // zero-free top symbol
            if (psi0.degree() <= 1) {
                Complex a_coef = psi0.coeff(1).to_complex();
                Complex c_coef = psin.coeff(0).to_complex();
                result.kind = (std::abs(a_coef) < std::abs(c_coef)) ? SpectrumKind::AllOfC
                                                                    : SpectrumKind::Empty;
            } else {
                result.kind = SpectrumKind::Empty;
                result.notes.push_back(
                    "psi_0 - lambda admits no affine factorization against a constant psi_1");
            }
            return result;
        }
        std::ostringstream os;
        os << "top symbol has no zero of order " << n
           << "; the closed-form spectrum criterion does not apply";
        throw criterion_not_applicable_error(os.str());
    }

    Complex w = *witness;
    if (mode == SpectrumMode::Oracle) return oracle_spectrum(op, n, w, opts, std::move(result));

    Complex base = psi0.eval(Scalar(w)).to_complex();
    Complex increment = psin.derivative(static_cast<unsigned>(n)).eval(Scalar(w)).to_complex();
    result.progression = make_progression(base, increment, w, n, opts.kmax);
    result.conjugate_variant =
        make_progression(std::conj(base), std::conj(increment), w, n, opts.kmax);
    result.variants_differ = progressions_differ(*result.progression, *result.conjugate_variant);
    if (result.variants_differ)
        result.notes.push_back(
            "conjugated and unconjugated closed forms disagree for this non-real data; "
            "both are reported, the oracle mode arbitrates");
    result.kind =
        opts.c_selfadjoint_asserted ? SpectrumKind::Progression : SpectrumKind::SubsetBound;
    return result;
}

std::optional<FirstOrderEigenfunction> first_order_eigenfunction(const Poly& psi0,
                                                                 const Poly& psi1,
                                                                 Complex lambda) {
    if (psi1.is_zero() || psi1.degree() >= 1)
        throw std::invalid_argument(
            "first_order_eigenfunction: psi_1 must be a nonzero constant (the only "
            "zero-free polynomials)");
    Complex c = psi1.coeff(0).to_complex();
    Poly q = psi0 - Poly::constant(Scalar(lambda));
    if (q.degree() > 1) return std::nullopt;
    FirstOrderEigenfunction out;
    out.alpha = q.coeff(1).to_complex() / c;
    out.beta = q.coeff(0).to_complex() / c;
    out.membership = gaussian_membership(out.alpha, out.beta);
    return out;
}

FockSeries KernelEigenPair::realize(int n_trunc) const {
    FockSeries out;
    out.coeffs.assign(n_trunc, Complex(0.0));
    for (int j = 0; j < static_cast<int>(kernel_coeffs.size()); ++j) {
        if (kernel_coeffs[j] == Complex(0.0)) continue;
        out.add_scaled(KernelVector{witness, j, n_trunc}.realize(), kernel_coeffs[j]);
    }
    return out;
}

KernelEigenPair adjoint_eigen_on_kernels(const DiffOp& op, Complex w, int m, double tol) {
    if (op.order() < 1)
        throw unsupported_shape_error(
            "adjoint_eigen_on_kernels: operator must be first-order or a higher-order "
            "two-term expression");
    check_two_term_shape(op);
    if (m < 0) throw std::invalid_argument("adjoint_eigen_on_kernels: m must be nonnegative");

    auto table = omega_table(op, m);
    double scale = 1.0;
    for (const auto& s : op.symbols()) scale = std::max(scale, s.max_coeff_abs());

    // column p of the section on span{K_w, ..., K_w^[m]}: a[j][p] = conj(omega_{j,p}(w));
    // entries with j > p must vanish at the witness for the section to close
    std::vector<std::vector<Complex>> a(m + 1, std::vector<Complex>(m + 1, Complex(0.0)));
    for (int p = 0; p <= m; ++p) {
        const auto& row = table.rows[p];
        for (int j = 0; j < static_cast<int>(row.size()); ++j) {
            Complex val = std::conj(row[j].eval(Scalar(w)).to_complex());
            if (j <= p) {
                a[j][p] = val;
            } else if (std::abs(val) > tol * (1.0 + scale) * 10.0) {
                throw criterion_not_applicable_error(
                    "kernel span is not invariant: the top symbol has no zero of the "
                    "required order at the given point");
            }
        }
    }

    KernelEigenPair pair;
    pair.witness = w;
    pair.lambda = a[m][m];
    pair.kernel_coeffs.assign(m + 1, Complex(0.0));
    pair.kernel_coeffs[m] = 1.0;
    for (int j = m - 1; j >= 0; --j) {
        Complex num(0.0);
        for (int p = j + 1; p <= m; ++p) num += a[j][p] * pair.kernel_coeffs[p];
        Complex den = pair.lambda - a[j][j];
        if (std::abs(den) < 1e-12 * (1.0 + std::abs(pair.lambda))) {
            if (std::abs(num) < 1e-12 * (1.0 + scale)) {
                pair.kernel_coeffs[j] = 0.0;
            } else {
                pair.degenerate = true;
                pair.kernel_coeffs[j] = 0.0;
            }
        } else {
            pair.kernel_coeffs[j] = num / den;
        }
    }
    return pair;
}

}  // namespace fockcalc
