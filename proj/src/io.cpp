#include "fockcalc/io.hpp"

#include <cmath>
#include <sstream>

namespace fockcalc::io {

namespace {

json quad_to_json(const QuadQ2& q, bool* exact_ok) {
    if (!q.is_rational()) {
        *exact_ok = false;
        return q.to_double();
    }
    std::ostringstream os;
    os << q.rat;
    return os.str();
}

bool integral_double(double v) {
    return std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.007199254740992e15;
}

/// number or "p/q" string -> scalar component; reports whether the
/// component is exact.
QuadQ2 component_from_json(const json& j, bool* exact, double* approx) {
    if (j.is_string()) {
        Scalar s = Scalar::parse_rational(j.get<std::string>());
        *exact = true;
        return s.exact_value().re;
    }
    if (j.is_number()) {
        double v = j.get<double>();
        if (integral_double(v)) {
            *exact = true;
            return QuadQ2(BigRational(static_cast<long long>(v)));
        }
        *exact = false;
        *approx = v;
        return {};
    }
    throw spec_parse_error("coefficient component must be a number or a rational string");
}

}  // namespace

json scalar_to_json(const Scalar& s) {
    if (s.is_exact()) {
        bool exact_ok = true;
        json re = quad_to_json(s.exact_value().re, &exact_ok);
        json im = quad_to_json(s.exact_value().im, &exact_ok);
        if (exact_ok) return json::array({re, im});
    }
    Complex z = s.to_complex();
    return json::array({z.real(), z.imag()});
}

Scalar scalar_from_json(const json& j) {
    json re_j, im_j;
    if (j.is_array()) {
        if (j.size() != 2) throw spec_parse_error("coefficient array must be [re, im]");
        re_j = j[0];
        im_j = j[1];
    } else if (j.is_number() || j.is_string()) {
        re_j = j;
        im_j = 0.0;
    } else {
        throw spec_parse_error("coefficient must be [re, im], a number, or a rational string");
    }
    bool re_exact = false, im_exact = false;
    double re_d = 0.0, im_d = 0.0;
    QuadQ2 re_q = component_from_json(re_j, &re_exact, &re_d);
    QuadQ2 im_q = component_from_json(im_j, &im_exact, &im_d);
    if (re_exact && im_exact) return Scalar::exact(re_q, im_q);
    if (re_exact) re_d = re_q.to_double();
    if (im_exact) im_d = im_q.to_double();
    return Scalar(Complex(re_d, im_d));
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json diffop_to_json(const DiffOp& op) {
    json symbols = json::array();
    for (const auto& psi : op.symbols()) {
        json coeffs = json::array();
        for (int k = 0; k <= psi.degree(); ++k) coeffs.push_back(scalar_to_json(psi.coeff(k)));
        if (coeffs.empty()) coeffs.push_back(scalar_to_json(Scalar(0)));
        symbols.push_back(coeffs);
    }
    return json{{"symbols", symbols}};
}

DiffOp diffop_from_json(const json& j) {
    const json* symbols = nullptr;
    if (j.is_array()) {
        symbols = &j;
    } else if (j.is_object() && j.contains("symbols")) {
        symbols = &j.at("symbols");
    } else {
        throw spec_parse_error("operator document needs a \"symbols\" array");
    }
    if (!symbols->is_array() || symbols->empty())
        throw spec_parse_error("\"symbols\" must be a nonempty array of coefficient lists");
    std::vector<Poly> out;
    for (const auto& sym : *symbols) {
        if (!sym.is_array()) throw spec_parse_error("each symbol must be a coefficient array");
        std::vector<Scalar> cs;
        for (const auto& c : sym) cs.push_back(scalar_from_json(c));
        out.push_back(Poly(std::move(cs)));
    }
    return DiffOp(std::move(out));
}

json spec_to_json(const OperatorSpec& spec) {
    json j = diffop_to_json(spec.op);
    if (spec.conjugation) {
        j["conjugation"] = json{{"a", scalar_to_json(spec.conjugation->a)},
                                {"b", scalar_to_json(spec.conjugation->b)},
                                {"c", scalar_to_json(spec.conjugation->c)}};
    }
    if (spec.truncation) j["truncation"] = *spec.truncation;
    return j;
}

OperatorSpec spec_from_json(const json& j) {
    OperatorSpec spec;
    spec.op = diffop_from_json(j);
    if (j.is_object() && j.contains("conjugation")) {
        const json& c = j.at("conjugation");
        if (!c.is_object() || !c.contains("a") || !c.contains("b") || !c.contains("c"))
            throw spec_parse_error("\"conjugation\" block needs fields a, b, c");
        ConjugationParams params;
        params.a = scalar_from_json(c.at("a"));
        params.b = scalar_from_json(c.at("b"));
        params.c = scalar_from_json(c.at("c"));
        if (c.contains("eps_val")) params.eps_val = c.at("eps_val").get<double>();
        spec.conjugation = params;
    }
    if (j.is_object() && j.contains("truncation")) {
        int n = j.at("truncation").get<int>();
        if (n < 1) throw spec_parse_error("\"truncation\" must be positive");
        spec.truncation = n;
    }
    return spec;
}

OperatorSpec spec_from_string(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw spec_parse_error("input is not valid JSON");
    return spec_from_json(j);
}

json l2op_to_json(const L2Op& op) {
    json terms = json::array();
    for (const auto& t : op.terms()) {
        terms.push_back(json{{"x_power", t.x_power},
                             {"d_power", t.d_power},
                             {"coeff", scalar_to_json(t.coeff)}});
    }
    return json{{"terms", terms}};
}

L2Op l2op_from_json(const json& j) {
    if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
        throw spec_parse_error("expression document needs a \"terms\" array");
    std::vector<L2Term> terms;
    for (const auto& t : j.at("terms")) {
        if (!t.is_object() || !t.contains("x_power") || !t.contains("d_power") ||
            !t.contains("coeff"))
            throw spec_parse_error("each term needs x_power, d_power and coeff");
        L2Term term;
        term.x_power = t.at("x_power").get<int>();
        term.d_power = t.at("d_power").get<int>();
        term.coeff = scalar_from_json(t.at("coeff"));
        if (term.x_power < 0 || term.d_power < 0)
            throw spec_parse_error("term powers must be nonnegative");
        terms.push_back(std::move(term));
    }
    return L2Op(std::move(terms));
}

namespace {

json progression_to_json(const ProgressionData& pd) {
    json enumerated = json::array();
    for (Complex v : pd.enumerated) enumerated.push_back(complex_to_json(v));
    return json{{"base", complex_to_json(pd.base)},
                {"increment_rule", "C(k,n)*value"},
                {"value", complex_to_json(pd.increment)},
                {"witness_zero", complex_to_json(pd.witness)},
                {"order", pd.order},
                {"enumerated", enumerated}};
}

}  // namespace

json spectrum_to_json(const SpectrumResult& result) {
    json j{{"kind", to_string(result.kind)},
           {"mode", result.mode == SpectrumMode::Formula ? "formula" : "oracle"},
           {"kmax", result.kmax}};
    if (result.kind == SpectrumKind::FiniteSet) {
        json values = json::array();
        for (Complex v : result.finite_values) values.push_back(complex_to_json(v));
        j["values"] = values;
    }
    if (result.progression) j.update(progression_to_json(*result.progression));
    if (result.conjugate_variant) {
        j["conjugate_variant"] = progression_to_json(*result.conjugate_variant);
        j["variants_differ"] = result.variants_differ;
    }
    if (!result.residuals.empty()) {
        json res = json::array();
        double worst = 0.0;
        for (double r : result.residuals) {
            if (std::isnan(r)) {
                res.push_back(nullptr);
            } else {
                res.push_back(r);
                worst = std::max(worst, r);
            }
        }
        j["residuals"] = res;
        j["max_residual"] = worst;
    }
    if (!result.notes.empty()) j["notes"] = result.notes;
    return j;
}

json criterion_to_json(const std::string& check, const CriterionReport& report) {
    json details = json::array();
    for (const auto& v : report.violations) {
        details.push_back(json{{"j", v.j}, {"p", v.p}, {"violation", v.magnitude}});
    }
    if (!report.representable) details.push_back(json{{"reason", report.reason}});
    return json{{"check", check},
                {"pass", report.pass},
                {"max_residual", report.max_violation},
                {"details", details}};
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

}  // namespace fockcalc::io
