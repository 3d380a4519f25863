#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "fockcalc/io.hpp"
#include "fockcalc/sb_transform.hpp"

using namespace fockcalc;
using io::json;
using io::OperatorSpec;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitInvalidConjugation = 3;
constexpr int kExitUnsupportedShape = 4;

int default_truncation() {
    if (const char* env = std::getenv("FOCKCALC_DEFAULT_N")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 64;
}

OperatorSpec builtin_example(const std::string& name) {
    auto pt = ConjugationParams::pt();
    auto triv = ConjugationParams::identity();
    if (name == "gamma1") {
        auto pair = gamma_examples(Scalar(1), Scalar(1), Scalar(0), triv);
        return {pair.gamma1, triv, std::nullopt};
    }
    if (name == "gamma2") {
        auto pair = gamma_examples(Scalar(1), Scalar(1), Scalar(1), triv);
        return {pair.gamma2, triv, std::nullopt};
    }
    if (name == "harmonic-oscillator") {
        DiffOp h({Poly({Scalar(1)}), Poly({Scalar(0), Scalar(2)})});
        return {h, pt, std::nullopt};
    }
    if (name == "oscillator-fock") {
        DiffOp op({Poly::monomial(2), Poly{}, Poly({Scalar(-1)})});
        return {op, std::nullopt, std::nullopt};
    }
    if (name == "pt-euler") {
        DiffOp op({Poly{}, Poly::monomial(1)});
        return {op, pt, std::nullopt};
    }
    if (name == "position-plus-momentum") {
        DiffOp op({Poly::monomial(1), Poly({Scalar(1)})});
        return {op, std::nullopt, std::nullopt};
    }
    throw io::spec_parse_error(
        "unknown example \"" + name +
        "\"; available: gamma1, gamma2, harmonic-oscillator, oscillator-fock, pt-euler, "
        "position-plus-momentum");
}

std::vector<std::pair<std::string, OperatorSpec>> builtin_suite_specs() {
    return {{"gamma1", builtin_example("gamma1")},
            {"gamma2", builtin_example("gamma2")},
            {"harmonic-oscillator", builtin_example("harmonic-oscillator")},
            {"oscillator-fock", builtin_example("oscillator-fock")},
            {"pt-euler", builtin_example("pt-euler")},
            {"position-plus-momentum", builtin_example("position-plus-momentum")}};
}

struct InputOptions {
    std::string path;
    std::string example;
    bool json_output = true;

    bool has_spec() const { return !path.empty() || !example.empty(); }

    OperatorSpec load() const {
        if (!example.empty()) return builtin_example(example);
        if (path.empty()) throw io::spec_parse_error("no operator given: pass a file or --example");
        std::string text;
        if (path == "-") {
            std::ostringstream ss;
            ss << std::cin.rdbuf();
            text = ss.str();
        } else {
            std::ifstream in(path);
            if (!in) throw io::spec_parse_error("cannot open \"" + path + "\"");
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        return io::spec_from_string(text);
    }
};

void attach_input_flags(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("spec", in.path, "operator spec JSON file ('-' for stdin)");
    cmd->add_option("--example", in.example, "built-in example name");
    cmd->add_flag("--json,!--text", in.json_output, "emit JSON (default) or text");
}

std::uint64_t spec_digest(const OperatorSpec& spec, const std::string& command) {
    return io::fnv1a(command + ":" + io::spec_to_json(spec).dump());
}

json make_report(const std::string& command, const OperatorSpec& spec, json results, bool pass,
                 double elapsed_ms, std::uint64_t seed) {
    return json{{"command", command},
                {"inputs_digest", spec_digest(spec, command)},
                {"results", std::move(results)},
                {"pass", pass},
                {"seed", seed},
                {"timing_ms", elapsed_ms},
                {"timestamp", static_cast<std::int64_t>(std::time(nullptr))}};
}

void print_report(const json& report, bool as_json) {
    if (as_json) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::cout << report.at("command").get<std::string>() << ": "
              << (report.at("pass").get<bool>() ? "PASS" : "FAIL") << "\n";
    for (const auto& r : report.at("results")) {
        std::cout << "  " << r.at("check").get<std::string>() << ": "
                  << (r.at("pass").get<bool>() ? "pass" : "FAIL");
        if (r.contains("max_residual")) {
            std::cout << " (max residual " << r.at("max_residual").get<double>() << ")";
        }
        std::cout << "\n";
    }
}

// ---------------------------------------------------------------------------
// verify suites

json suite_adjoint(const OperatorSpec& spec, int n_trunc, int trials, std::uint64_t seed) {
    auto rep = verify_adjoint_identity(spec.op, n_trunc, trials, seed);
    return json{{"check", "adjoint-identity"},
                {"pass", rep.pass},
                {"max_residual", rep.max_residual},
                {"details", json{{"trials", rep.trials}, {"exact_mode", rep.exact_mode}}}};
}

json suite_conjugation(const OperatorSpec& spec, int n_trunc, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI), radius(0.0, 1.0),
        re(-1.0, 1.0);
    double worst = 0.0;
    json details = json::array();
    for (int t = 0; t < trials; ++t) {
        ConjugationParams params =
            spec.conjugation ? *spec.conjugation
                             : ConjugationParams::from_polar(angle(rng), radius(rng), angle(rng));
        // involution on a random polynomial
        std::vector<Complex> cs(9);
        for (auto& c : cs) c = Complex(re(rng), re(rng));
        FockSeries f{std::vector<Complex>(n_trunc, Complex(0.0))};
        std::copy(cs.begin(), cs.end(), f.coeffs.begin());
        FockSeries twice = conjugation_apply(params, conjugation_apply(params, f));
        double inv_dev = (twice - f).norm();
        // anti-isometry
        FockSeries g{std::vector<Complex>(n_trunc, Complex(0.0))};
        for (int k = 0; k < 9; ++k) g.coeffs[k] = Complex(re(rng), re(rng));
        Complex lhs = inner_product(conjugation_apply(params, f), conjugation_apply(params, g));
        Complex rhs = std::conj(inner_product(f, g));
        double iso_dev = std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
        // kernel image law
        Complex z(re(rng) * 2.0, re(rng) * 2.0);
        FockSeries kz = KernelVector{z, 0, n_trunc}.realize();
        FockSeries image = conjugation_apply(params, kz);
        Complex scale = params.c.to_complex() * std::exp(params.b.to_complex() * z);
        Complex target_pt =
            std::conj(params.a.to_complex() * z + params.b.to_complex());
        FockSeries expect = KernelVector{target_pt, 0, n_trunc}.realize();
        expect *= scale;
        double ker_dev = (image - expect).norm() / expect.norm();
        worst = std::max({worst, inv_dev, iso_dev, ker_dev});
    }
    bool pass = worst <= 1e-8;
    return json{{"check", "conjugation-axioms"},
                {"pass", pass},
                {"max_residual", worst},
                {"details", json{{"trials", trials}, {"truncation", n_trunc}}}};
}

json suite_kernel(const OperatorSpec& spec, int n_trunc, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-1.0, 1.0);
    const DiffOp& op = spec.op;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Complex z(re(rng), re(rng));
        // reproducing oracle: <op f, K_z> = (op f)(z) = <f, T* K_z>
        std::vector<Scalar> cs(10);
        for (auto& c : cs) c = Scalar(Complex(re(rng), re(rng)));
        Poly f(std::move(cs));
        Complex direct = diffop_apply(op, f).eval(Scalar(z)).to_complex();
        FockSeries fs = FockSeries::from_poly(f, n_trunc);
        FockSeries tk = adjoint_on_kernel(op, z, 0, n_trunc);
        Complex via_kernel = inner_product(fs, tk);
        worst = std::max(worst, std::abs(direct - via_kernel) / (1.0 + std::abs(direct)));
    }
    bool pass = worst <= 1e-9;
    return json{{"check", "kernel-reproduction"},
                {"pass", pass},
                {"max_residual", worst},
                {"details", json{{"trials", trials}}}};
}

json suite_spectrum(const OperatorSpec& spec, int kmax) {
    json details = json::array();
    double worst = 0.0;
    bool pass = true;
    SpectrumOptions opts;
    opts.kmax = std::min(kmax, 20);
    if (spec.conjugation && is_c_selfadjoint(spec.op, *spec.conjugation).pass)
        opts.c_selfadjoint_asserted = true;
    SpectrumResult formula = spectrum(spec.op, SpectrumMode::Formula, opts);
    SpectrumResult oracle = spectrum(spec.op, SpectrumMode::Oracle, opts);
    details.push_back(io::spectrum_to_json(formula));
    details.push_back(io::spectrum_to_json(oracle));
    for (double r : oracle.residuals) {
        if (std::isnan(r)) continue;
        worst = std::max(worst, r);
        if (r > 1e-8) pass = false;
    }
    if (formula.progression && oracle.progression) {
        auto& fe = formula.progression->enumerated;
        auto& oe = oracle.progression->enumerated;
        bool match_primary = true;
        for (std::size_t i = 0; i < std::min(fe.size(), oe.size()); ++i)
            if (std::abs(fe[i] - oe[i]) > 1e-8 * (1.0 + std::abs(oe[i]))) match_primary = false;
        bool match_conj = true;
        auto& ce = formula.conjugate_variant->enumerated;
        for (std::size_t i = 0; i < std::min(ce.size(), oe.size()); ++i)
            if (std::abs(ce[i] - oe[i]) > 1e-8 * (1.0 + std::abs(oe[i]))) match_conj = false;
        if (!match_primary && !match_conj) pass = false;
        details.push_back(json{{"oracle_matches_primary", match_primary},
                               {"oracle_matches_conjugate_variant", match_conj},
                               {"variants_differ", formula.variants_differ}});
    }
    return json{
        {"check", "spectrum-formula-vs-oracle"}, {"pass", pass}, {"max_residual", worst},
        {"details", details}};
}

json suite_sb(const OperatorSpec& spec, int nodes) {
    double worst = 0.0;
    json details = json::array();
    // kernel pair integral on a grid
    for (double zr : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        for (double ui : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
            Complex z(zr, 0.3), u(0.1, ui);
            double dev = std::abs(sb_pair_integral(z, u, nodes) - std::exp(z * u));
            worst = std::max(worst, dev);
        }
    }
    details.push_back(json{{"kernel_integral_max_dev", worst}});
    // kernel-level conjugation correspondences
    auto pt_rep = pt_correspondence_check(nodes, {Complex(0.0), Complex(1.0), Complex(0.0, 1.0),
                                                  Complex(-0.5, 0.8)});
    worst = std::max(worst, pt_rep.max_deviation);
    details.push_back(json{{"pt_correspondence_max_dev", pt_rep.max_deviation}});
    // round trip through the dictionary
    L2Op image = fock_to_lebesgue(spec.op);
    DiffOp back = lebesgue_to_fock(image);
    double rt = 0.0;
    int max_order = std::max(back.order(), spec.op.order());
    for (int j = 0; j <= max_order; ++j) rt = std::max(rt, poly_distance(back.symbol(j), spec.op.symbol(j)));
    worst = std::max(worst, rt);
    details.push_back(json{{"round_trip_max_dev", rt}});
    bool pass = worst <= 1e-8;
    return json{{"check", "segal-bargmann"},
                {"pass", pass},
                {"max_residual", worst},
                {"details", details}};
}

// ---------------------------------------------------------------------------

int run_adjoint(const InputOptions& in) {
    OperatorSpec spec = in.load();
    OperatorSpec out;
    out.op = adjoint_op(spec.op);
    out.conjugation = spec.conjugation;
    out.truncation = spec.truncation;
    std::cout << io::spec_to_json(out).dump(2) << "\n";
    return 0;
}

int run_check(const InputOptions& in, const std::string& mode, double tol) {
    OperatorSpec spec = in.load();
    CriterionReport rep;
    std::string name;
    if (mode == "self") {
        rep = is_selfadjoint(spec.op, tol);
        name = "selfadjoint";
    } else if (mode == "c-self") {
        if (!spec.conjugation)
            throw io::spec_parse_error("c-self mode requires a \"conjugation\" block");
        spec.conjugation->require_valid();
        rep = is_c_selfadjoint(spec.op, *spec.conjugation, tol);
        name = "c-selfadjoint";
    } else {
        throw CLI::ValidationError("--mode must be self or c-self");
    }
    json results = json::array({io::criterion_to_json(name, rep)});
    json report = make_report("check", spec, results, rep.pass, 0.0, 0);
    print_report(report, in.json_output);
    return rep.pass ? 0 : kExitFail;
}

int run_spectrum(const InputOptions& in, const std::string& mode, int kmax) {
    OperatorSpec spec = in.load();
    SpectrumOptions opts;
    opts.kmax = kmax;
    if (spec.conjugation) {
        spec.conjugation->require_valid();
        opts.c_selfadjoint_asserted = is_c_selfadjoint(spec.op, *spec.conjugation).pass;
    }
    SpectrumMode m;
    if (mode == "formula") {
        m = SpectrumMode::Formula;
    } else if (mode == "oracle") {
        m = SpectrumMode::Oracle;
    } else {
        throw CLI::ValidationError("--mode must be formula or oracle");
    }
    SpectrumResult result = spectrum(spec.op, m, opts);
    std::cout << io::spectrum_to_json(result).dump(2) << "\n";
    return 0;
}

int run_sb(const InputOptions& in, const std::string& direction) {
    if (direction == "to-l2") {
        OperatorSpec spec = in.load();
        std::cout << io::l2op_to_json(fock_to_lebesgue(spec.op)).dump(2) << "\n";
        return 0;
    }
    if (direction != "to-fock") throw CLI::ValidationError("--direction must be to-l2 or to-fock");
    // to-fock consumes the L2 term format
    std::string text;
    if (!in.example.empty())
        throw io::spec_parse_error("--example provides Fock-side operators only");
    if (in.path.empty()) throw io::spec_parse_error("no expression given");
    if (in.path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream f(in.path);
        if (!f) throw io::spec_parse_error("cannot open \"" + in.path + "\"");
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw io::spec_parse_error("input is not valid JSON");
    DiffOp op = lebesgue_to_fock(io::l2op_from_json(j));
    std::cout << io::diffop_to_json(op).dump(2) << "\n";
    return 0;
}

int run_verify(const InputOptions& in, const std::string& suite, std::uint64_t seed, int n_trunc,
               int nodes, int trials) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, OperatorSpec>> specs;
    if (in.has_spec()) {
        specs.emplace_back("input", in.load());
    } else {
        specs = builtin_suite_specs();
    }

    bool all = suite == "all";
    json results = json::array();
    bool pass = true;
    for (const auto& [name, spec] : specs) {
        json local = json::array();
        if (all || suite == "adjoint") local.push_back(suite_adjoint(spec, n_trunc, trials, seed));
        if (all || suite == "conjugation")
            local.push_back(suite_conjugation(spec, n_trunc, 10, seed));
        if (all || suite == "kernel") local.push_back(suite_kernel(spec, n_trunc, trials, seed));
        if (all || suite == "spectrum") {
            try {
                local.push_back(suite_spectrum(spec, 20));
            } catch (const unsupported_shape_error&) {
                // ops outside the two-term family carry no closed-form spectrum
            } catch (const criterion_not_applicable_error&) {
            }
        }
        if (all || suite == "sb") local.push_back(suite_sb(spec, nodes));
        if (local.empty())
            throw CLI::ValidationError(
                "--suite must be one of adjoint, conjugation, kernel, spectrum, sb, all");
        for (auto& r : local) {
            r["operator"] = name;
            if (!r.at("pass").get<bool>()) pass = false;
            results.push_back(std::move(r));
        }
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    OperatorSpec digest_spec = specs.front().second;
    json report = make_report("verify", digest_spec, results, pass, ms, seed);
    print_report(report, in.json_output);
    if (!pass) {
        // surface the first failing entry for scripting
        for (const auto& r : report.at("results")) {
            if (!r.at("pass").get<bool>()) {
                std::cerr << "first failure: " << r.dump() << "\n";
                break;
            }
        }
    }
    return pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator calculus on the Fock space: adjoints, conjugation symmetry, "
                 "point spectra and the transform dictionary"};
    app.require_subcommand(1);

    InputOptions in_adj, in_check, in_spec, in_sb, in_verify;

    auto* cmd_adjoint = app.add_subcommand("adjoint", "maximal adjoint of an operator");
    attach_input_flags(cmd_adjoint, in_adj);

    auto* cmd_check = app.add_subcommand("check", "selfadjointness criteria");
    attach_input_flags(cmd_check, in_check);
    std::string check_mode = "self";
    double check_tol = 1e-10;
    cmd_check->add_option("--mode", check_mode, "self | c-self")->required();
    cmd_check->add_option("--tol", check_tol, "symbol-matrix tolerance");

    auto* cmd_spectrum = app.add_subcommand("spectrum", "point spectrum of two-term operators");
    attach_input_flags(cmd_spectrum, in_spec);
    std::string spec_mode = "formula";
    int kmax = 64;
    cmd_spectrum->add_option("--mode", spec_mode, "formula | oracle");
    cmd_spectrum->add_option("--kmax", kmax, "enumeration cap");

    auto* cmd_sb = app.add_subcommand("sb", "transform dictionary between the two spaces");
    attach_input_flags(cmd_sb, in_sb);
    std::string direction;
    cmd_sb->add_option("--direction", direction, "to-l2 | to-fock")->required();

    auto* cmd_verify = app.add_subcommand("verify", "run the property suites");
    attach_input_flags(cmd_verify, in_verify);
    std::string suite = "all";
    std::uint64_t seed = 0;
    int n_trunc = default_truncation();
    int nodes = 128;
    int trials = 50;
    cmd_verify->add_option("--suite", suite, "adjoint|conjugation|kernel|spectrum|sb|all");
    cmd_verify->add_option("--seed", seed, "random seed");
    cmd_verify->add_option("--n", n_trunc, "truncation");
    cmd_verify->add_option("--nodes", nodes, "quadrature nodes");
    cmd_verify->add_option("--trials", trials, "trials per property");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_adjoint->parsed()) return run_adjoint(in_adj);
        if (cmd_check->parsed()) return run_check(in_check, check_mode, check_tol);
        if (cmd_spectrum->parsed()) return run_spectrum(in_spec, spec_mode, kmax);
        if (cmd_sb->parsed()) return run_sb(in_sb, direction);
        if (cmd_verify->parsed()) return run_verify(in_verify, suite, seed, n_trunc, nodes, trials);
    } catch (const io::spec_parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const invalid_conjugation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidConjugation;
    } catch (const unsupported_shape_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupportedShape;
    } catch (const criterion_not_applicable_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupportedShape;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    return 0;
}
