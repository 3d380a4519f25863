#include "fockcalc/diffop.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace fockcalc {

const Poly DiffOp::kZero{};

void DiffOp::trim() {
    while (!sym_.empty() && sym_.back().is_zero()) sym_.pop_back();
}

const Poly& DiffOp::symbol(int j) const {
    if (j < 0 || j >= static_cast<int>(sym_.size())) return kZero;
    return sym_[j];
}

int DiffOp::max_symbol_degree() const {
    int d = -1;
    for (const auto& s : sym_) d = std::max(d, s.degree());
    return d;
}

bool DiffOp::all_exact() const {
    for (const auto& s : sym_)
        if (!s.all_exact()) return false;
    return true;
}

std::ostream& operator<<(std::ostream& os, const DiffOp& op) {
    if (op.is_zero()) return os << "0";
    for (int j = 0; j <= op.order(); ++j) {
        if (op.symbol(j).is_zero()) continue;
        if (j > 0) os << " + ";
        os << "[" << op.symbol(j) << "]";
        if (j == 1) os << " d/dz";
        if (j >= 2) os << " d^" << j << "/dz^" << j;
    }
    return os;
}

double ConjugationParams::validation_residual() const {
    double r1 = std::abs(a.abs() - 1.0);
    double r2 = (a.conj() * b + b.conj()).abs();
    double babs = b.abs();
    double r3 = std::abs(c.abs() * c.abs() * std::exp(babs * babs) - 1.0);
    return std::max({r1, r2, r3});
}

void ConjugationParams::require_valid() const {
    double r = validation_residual();
    if (r > eps_val) {
        std::ostringstream os;
        os << "conjugation parameters violate the admissibility constraints "
           << "(residual " << r << ", tolerance " << eps_val << ")";
        throw invalid_conjugation_error(os.str());
    }
}

ConjugationParams ConjugationParams::from_polar(double theta, double r, double gamma) {
    ConjugationParams p;
    p.a = Scalar(std::polar(1.0, theta));
    // conj(a) b = -conj(b) forces arg(b) = (theta + pi)/2 (mod pi).
    p.b = Scalar(std::polar(r, (theta + M_PI) / 2.0));
    p.c = Scalar(std::polar(std::exp(-r * r / 2.0), gamma));
    return p;
}

Poly diffop_apply(const DiffOp& op, const Poly& f) {
    Poly out;
    Poly fj = f;
    for (int j = 0; j <= op.order(); ++j) {
        if (j > 0) fj = fj.derivative();
        if (!op.symbol(j).is_zero() && !fj.is_zero()) out += op.symbol(j) * fj;
    }
    return out;
}

OmegaTable omega_table(const DiffOp& op, int m) {
    if (m < 0) throw std::invalid_argument("omega_table: m must be nonnegative");
    int kappa = std::max(op.order(), 0);
    OmegaTable table;
    table.rows.resize(m + 1);
    auto& row0 = table.rows[0];
    row0.resize(kappa + 1);
    for (int j = 0; j <= kappa; ++j) row0[j] = op.symbol(j);
    for (int l = 1; l <= m; ++l) {
        const auto& prev = table.rows[l - 1];
        auto& row = table.rows[l];
        row.resize(kappa + l + 1);
        row[0] = prev[0].derivative();
        for (int j = 1; j <= kappa + l - 1; ++j) row[j] = prev[j].derivative() + prev[j - 1];
        row[kappa + l] = prev[kappa + l - 1];
    }
    return table;
}

namespace {

/// Rectangular shifted-basis coefficients: column p holds the rebase of
/// psi_p, rows 0..height-1 zero padded.
std::vector<std::vector<Scalar>> rebased_columns(const DiffOp& op, const Scalar& a,
                                                 const Scalar& b, int height) {
    int kappa = op.order();
    std::vector<std::vector<Scalar>> cols(kappa + 1);
    for (int p = 0; p <= kappa; ++p) {
        cols[p] = poly_rebase(op.symbol(p), a, b);
        cols[p].resize(height, Scalar(0));
    }
    return cols;
}

}  // namespace

DiffOp adjoint_op(const DiffOp& op, const Scalar& a, const Scalar& b) {
    if (op.is_zero()) return {};
    int kappa = op.order();
    int dmax = op.max_symbol_degree();
    int height = std::max(dmax, 0) + 1;
    auto cols = rebased_columns(op, a, b, height);  // cols[j][l] = d_{l,j}

    Scalar ac = a.conj();
    Scalar bc = b.conj();
    // psi-hat_p(z) = sum_j z^j sum_{l>=p} C(l,p) conj(d_{l,j}) conj(a)^p conj(b)^{l-p}
    std::vector<Poly> out(height);
    for (int p = 0; p < height; ++p) {
        std::vector<Scalar> cs(kappa + 1, Scalar(0));
        for (int j = 0; j <= kappa; ++j) {
            Scalar acc(0);
            for (int l = p; l < height; ++l) {
                Scalar term = Scalar::binomial(l, p) * cols[j][l].conj() *
                              bc.pow(static_cast<unsigned>(l - p));
                acc += term;
            }
            cs[j] = acc * ac.pow(static_cast<unsigned>(p));
        }
        out[p] = Poly(std::move(cs));
    }
    return DiffOp(std::move(out));
}

DiffOp conjugate_op(const DiffOp& op, const ConjugationParams& params) {
    params.require_valid();
    if (op.is_zero()) return {};
    int kappa = op.order();
    int height = std::max(op.max_symbol_degree(), 0) + 1;
    auto cols = rebased_columns(op, params.a, params.b, height);  // cols[p][l] = d_{l,p}

    Scalar ac = params.a.conj();
    Scalar bc = params.b.conj();
    // phi_j(z) = sum_l z^l sum_{p>=j} C(p,j) conj(d_{l,p}) conj(a)^j conj(b)^{p-j}
    std::vector<Poly> out(kappa + 1);
    for (int j = 0; j <= kappa; ++j) {
        std::vector<Scalar> cs(height, Scalar(0));
        for (int l = 0; l < height; ++l) {
            Scalar acc(0);
            for (int p = j; p <= kappa; ++p) {
                acc += Scalar::binomial(p, j) * cols[p][l].conj() *
                       bc.pow(static_cast<unsigned>(p - j));
            }
            cs[l] = acc * ac.pow(static_cast<unsigned>(j));
        }
        out[j] = Poly(std::move(cs));
    }
    return DiffOp(std::move(out));
}

SymbolMatrix symbol_matrix(const DiffOp& op, const Scalar& a, const Scalar& b) {
    int kappa = std::max(op.order(), 0);
    if (op.max_symbol_degree() > kappa) {
        std::ostringstream os;
        os << "symbol degree " << op.max_symbol_degree() << " exceeds operator order " << kappa
           << "; no square symbol matrix exists";
        throw not_representable_error(os.str());
    }
    SymbolMatrix sm;
    sm.a = a;
    sm.b = b;
    sm.d.assign(kappa + 1, std::vector<Scalar>(kappa + 1, Scalar(0)));
    for (int p = 0; p <= kappa; ++p) {
        auto col = poly_rebase(op.symbol(p), a, b);
        for (int j = 0; j < static_cast<int>(col.size()) && j <= kappa; ++j) sm.d[j][p] = col[j];
    }
    return sm;
}

namespace {

CriterionReport symmetry_report(const DiffOp& op, const Scalar& a, const Scalar& b,
                                bool conjugate_transpose, double eps_sym) {
    CriterionReport report;
    SymbolMatrix sm;
    try {
        sm = symbol_matrix(op, a, b);
    } catch (const not_representable_error& e) {
        report.pass = false;
        report.representable = false;
        report.reason = e.what();
        return report;
    }
    report.representable = true;
    int n = sm.size();
    for (int j = 0; j < n; ++j) {
        for (int p = j; p < n; ++p) {
            Scalar rhs = conjugate_transpose ? sm.at(p, j).conj() : sm.at(p, j);
            double viol = abs_diff(sm.at(j, p), rhs);
            if (viol > eps_sym) report.violations.push_back({j, p, viol});
            report.max_violation = std::max(report.max_violation, viol);
        }
    }
    report.pass = report.violations.empty();
    if (!report.pass) {
        std::ostringstream os;
        os << report.violations.size() << " symbol-matrix entries violate the symmetry "
           << "criterion (max " << report.max_violation << ")";
        report.reason = os.str();
    }
    return report;
}

}  // namespace

CriterionReport is_c_selfadjoint(const DiffOp& op, const ConjugationParams& params,
                                 double eps_sym) {
    params.require_valid();
    return symmetry_report(op, params.a, params.b, /*conjugate_transpose=*/false, eps_sym);
}

CriterionReport is_selfadjoint(const DiffOp& op, double eps_sym) {
    return symmetry_report(op, Scalar(1), Scalar(0), /*conjugate_transpose=*/true, eps_sym);
}

GammaPair gamma_examples(const Scalar& G, const Scalar& K, const Scalar& alpha,
                         const ConjugationParams& params) {
    params.require_valid();
    const Scalar& a = params.a;
    const Scalar& b = params.b;
    GammaPair out;
    out.gamma1 = DiffOp({Poly({G, a * K}), Poly::constant(K)});
    out.gamma2 = DiffOp({Poly({G, -(alpha * (a * K + b))}), Poly({-(alpha * K), alpha})});
    return out;
}

}  // namespace fockcalc
