#include <doctest.h>

#include <random>
#include <set>

#include "fockcalc/spectrum.hpp"

using namespace fockcalc;

namespace {

DiffOp oscillator() { return DiffOp({Poly({Scalar(1)}), Poly({Scalar(0), Scalar(2)})}); }

DiffOp two_term(Poly psi0, Poly psin, int n) {
    std::vector<Poly> symbols(n + 1);
    symbols[0] = std::move(psi0);
    symbols[n] = std::move(psin);
    return DiffOp(std::move(symbols));
}

}  // namespace

TEST_CASE("poly_roots: closed forms and clustering") {
    // simple roots of (z-1)(z-2i)
    Poly p = Poly({Scalar(-1), Scalar(1)}) * Poly({Scalar::rational(0, -2), Scalar(1)});
    auto roots = poly_roots(p);
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) CHECK(r.multiplicity == 1);

    // double root
    Poly q = Poly({Scalar(-3), Scalar(1)}) * Poly({Scalar(-3), Scalar(1)});
    auto dr = poly_roots(q);
    REQUIRE(dr.size() == 1);
    CHECK(dr[0].multiplicity == 2);
    CHECK(std::abs(dr[0].location - Complex(3.0)) < 1e-10);

    // exact binomial pattern (z - (1+i)/2)^4
    Poly quad = Poly::affine_power(Scalar(1), -Scalar::rational(BigRational(1, 2), BigRational(1, 2)), 4);
    auto qr = poly_roots(quad);
    REQUIRE(qr.size() == 1);
    CHECK(qr[0].multiplicity == 4);
    CHECK(std::abs(qr[0].location - Complex(0.5, 0.5)) < 1e-12);

    // triple root among noise: (z-1)^3 (z+2) via companion + polishing
    Poly mixed = Poly::affine_power(Scalar(1), Scalar(-1), 3) * Poly({Scalar(2), Scalar(1)});
    auto mr = poly_roots(mixed);
    std::multiset<int> mults;
    for (const auto& r : mr) mults.insert(r.multiplicity);
    CHECK(mults == std::multiset<int>({1, 3}));
    for (const auto& r : mr) {
        if (r.multiplicity == 3) CHECK(std::abs(r.location - Complex(1.0)) < 1e-9);
        if (r.multiplicity == 1) CHECK(std::abs(r.location - Complex(-2.0)) < 1e-9);
    }
}

TEST_CASE("oscillator spectrum: odd positive integers") {
    SpectrumOptions opts;
    opts.kmax = 20;
    opts.c_selfadjoint_asserted = true;
    auto result = spectrum(oscillator(), SpectrumMode::Formula, opts);
    CHECK(result.kind == SpectrumKind::Progression);
    REQUIRE(result.progression.has_value());
    CHECK(result.progression->base == Complex(1.0));
    CHECK(result.progression->increment == Complex(2.0));
    REQUIRE(result.progression->enumerated.size() == 21);
    for (int k = 0; k <= 20; ++k)
        CHECK(result.progression->enumerated[k] == Complex(2.0 * k + 1.0));
    CHECK_FALSE(result.variants_differ);

    auto oracle = spectrum(oscillator(), SpectrumMode::Oracle, opts);
    REQUIRE(oracle.progression.has_value());
    for (int k = 0; k <= 20; ++k)
        CHECK(oracle.progression->enumerated[k] == Complex(2.0 * k + 1.0));
    for (double r : oracle.residuals) CHECK(r == 0.0);
}

TEST_CASE("without the selfadjointness assertion only an inclusion is claimed") {
    auto result = spectrum(oscillator(), SpectrumMode::Formula, {});
    CHECK(result.kind == SpectrumKind::SubsetBound);
}

TEST_CASE("first-order constant top symbol: all of C or empty") {
    auto mk = [](Complex a_coef, Complex c_coef) {
        return DiffOp({Poly({Scalar(2.0), Scalar(a_coef)}), Poly({Scalar(c_coef)})});
    };
    CHECK(spectrum(mk(Complex(0.5), Complex(1.0)), SpectrumMode::Formula, {}).kind ==
          SpectrumKind::AllOfC);
    CHECK(spectrum(mk(Complex(0.0), Complex(1.0)), SpectrumMode::Formula, {}).kind ==
          SpectrumKind::AllOfC);
    CHECK(spectrum(mk(Complex(1.0), Complex(1.0)), SpectrumMode::Formula, {}).kind ==
          SpectrumKind::Empty);
    CHECK(spectrum(mk(Complex(0.0, 1.5), Complex(1.0)), SpectrumMode::Formula, {}).kind ==
          SpectrumKind::Empty);
    // psi_0 of degree >= 2 against a constant psi_1: no eigenfunctions
    DiffOp quad({Poly::monomial(2), Poly({Scalar(1)})});
    CHECK(spectrum(quad, SpectrumMode::Formula, {}).kind == SpectrumKind::Empty);
}

TEST_CASE("order-zero operators") {
    DiffOp scalar_mult({Poly({Scalar(5)})});
    auto r = spectrum(scalar_mult, SpectrumMode::Formula, {});
    CHECK(r.kind == SpectrumKind::FiniteSet);
    REQUIRE(r.finite_values.size() == 1);
    CHECK(r.finite_values[0] == Complex(5.0));

    DiffOp zero_op;
    auto rz = spectrum(zero_op, SpectrumMode::Formula, {});
    CHECK(rz.kind == SpectrumKind::FiniteSet);
    CHECK(rz.finite_values[0] == Complex(0.0));

    DiffOp mult_z({Poly::monomial(1)});
    CHECK(spectrum(mult_z, SpectrumMode::Formula, {}).kind == SpectrumKind::Empty);
}

TEST_CASE("unsupported shapes and inapplicable criteria") {
    // middle symbol present
    DiffOp three({Poly({Scalar(1)}), Poly({Scalar(1)}), Poly({Scalar(1)})});
    CHECK_THROWS_AS(spectrum(three, SpectrumMode::Formula, {}), unsupported_shape_error);

    // top symbol with no zero of the required order
    DiffOp deg_short = two_term(Poly({Scalar(1)}), Poly::monomial(1), 2);
    CHECK_THROWS_AS(spectrum(deg_short, SpectrumMode::Formula, {}),
                    criterion_not_applicable_error);

    // first-order with only a double zero
    DiffOp dbl({Poly({Scalar(1)}), Poly::affine_power(Scalar(1), Scalar(-1), 2)});
    CHECK_THROWS_AS(spectrum(dbl, SpectrumMode::Formula, {}), criterion_not_applicable_error);
}

TEST_CASE("oracle agrees with the unconjugated formula variant") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI), re(-2.0, 2.0);
    std::uniform_int_distribution<int> ndist(1, 3);
    for (int trial = 0; trial < 12; ++trial) {
        int n = ndist(rng);
        Complex alpha(re(rng), re(rng));
        Complex a = std::polar(1.0, angle(rng));
        Complex b(re(rng) / 2.0, re(rng) / 2.0);
        DiffOp op = two_term(Poly({Scalar(alpha)}),
                             Poly::affine_power(Scalar(a), Scalar(b), static_cast<unsigned>(n)), n);
        SpectrumOptions opts;
        opts.kmax = 20;
        auto formula = spectrum(op, SpectrumMode::Formula, opts);
        auto oracle = spectrum(op, SpectrumMode::Oracle, opts);
        REQUIRE(formula.progression.has_value());
        REQUIRE(oracle.progression.has_value());
        for (std::size_t i = 0; i < oracle.progression->enumerated.size(); ++i) {
            Complex o = oracle.progression->enumerated[i];
            Complex f = formula.progression->enumerated[i];
            CHECK(std::abs(o - f) < 1e-8 * (1.0 + std::abs(o)));
        }
        for (double r : oracle.residuals) CHECK(r < 1e-10);
        // the conjugate variant differs exactly when the data is not real
        bool nonreal = std::abs(std::imag(alpha)) > 1e-9 ||
                       std::abs(std::imag(std::pow(a, n) * std::tgamma(n + 1.0))) > 1e-9;
        CHECK(formula.variants_differ == nonreal);
    }
}

TEST_CASE("progression values are pairwise distinct") {
    std::mt19937 rng(73);
    std::uniform_real_distribution<double> re(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        Complex alpha(re(rng), re(rng));
        int n = 1 + trial % 3;
        DiffOp op = two_term(Poly({Scalar(alpha)}),
                             Poly::affine_power(Scalar(1), Scalar(re(rng)), static_cast<unsigned>(n)), n);
        auto result = spectrum(op, SpectrumMode::Formula, {});
        REQUIRE(result.progression.has_value());
        const auto& e = result.progression->enumerated;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                CHECK(std::abs(e[i] - e[j]) > 1e-12);
    }
}

TEST_CASE("first_order_eigenfunction") {
    // psi_0 = A z + B, psi_1 = C
    Poly psi0({Scalar(3), Scalar(2)});
    Poly psi1({Scalar(4)});
    auto sol = first_order_eigenfunction(psi0, psi1, Complex(1.0));
    REQUIRE(sol.has_value());
    CHECK(sol->alpha == Complex(0.5));
    CHECK(sol->beta == Complex(0.5));
    CHECK(sol->membership);

    // constant psi_0 equal to lambda: the constant eigenfunction
    auto sol2 = first_order_eigenfunction(Poly({Scalar(7)}), Poly({Scalar(1)}), Complex(7.0));
    REQUIRE(sol2.has_value());
    CHECK(sol2->alpha == Complex(0.0));
    CHECK(sol2->beta == Complex(0.0));
    CHECK(sol2->membership);

    // |alpha| = 2 >= 1: candidate exists but fails membership
    auto sol3 = first_order_eigenfunction(Poly({Scalar(0), Scalar(2)}), Poly({Scalar(1)}),
                                          Complex(0.0));
    REQUIRE(sol3.has_value());
    CHECK_FALSE(sol3->membership);

    // division failure
    CHECK_FALSE(first_order_eigenfunction(Poly::monomial(2), Poly({Scalar(1)}), Complex(0.0))
                    .has_value());

    // zero-free hypothesis fails for nonconstant polynomials
    CHECK_THROWS_AS(first_order_eigenfunction(psi0, Poly::monomial(1), Complex(0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(first_order_eigenfunction(psi0, Poly{}, Complex(0.0)),
                    std::invalid_argument);
}

TEST_CASE("adjoint eigenvectors on kernel spans: first order") {
    // psi_1 = z - w with w = 1/2, psi_0 = 2 + z (psi_0'(w) = 1 != 0)
    Complex w(0.5);
    DiffOp op({Poly({Scalar(2), Scalar(1)}), Poly({Scalar(-0.5), Scalar(1)})});

    auto p0 = adjoint_eigen_on_kernels(op, w, 0);
    CHECK(p0.lambda == std::conj(Complex(2.5)));
    REQUIRE(p0.kernel_coeffs.size() == 1);
    CHECK(p0.kernel_coeffs[0] == Complex(1.0));
    CHECK_FALSE(p0.degenerate);

    auto p1 = adjoint_eigen_on_kernels(op, w, 1);
    // lambda = conj(psi_0(w) + psi_1'(w)); eigenvector K_w + (conj psi_1'/conj psi_0') K_w^[1]
    CHECK(std::abs(p1.lambda - std::conj(Complex(3.5))) < 1e-12);
    REQUIRE(p1.kernel_coeffs.size() == 2);
    Complex ratio = p1.kernel_coeffs[1] / p1.kernel_coeffs[0];
    CHECK(std::abs(ratio - Complex(1.0)) < 1e-12);  // conj(1)/conj(1)
    CHECK_FALSE(p1.degenerate);

    // psi_0'(w) = 0: the eigenvector collapses to K_w^[1]
    DiffOp flat({Poly({Scalar(2)}), Poly({Scalar(-0.5), Scalar(1)})});
    auto p2 = adjoint_eigen_on_kernels(flat, w, 1);
    CHECK(std::abs(p2.kernel_coeffs[0]) < 1e-12);
    CHECK(p2.kernel_coeffs[1] == Complex(1.0));
}

TEST_CASE("adjoint eigenpairs verify against the adjoint operator") {
    // residual check at truncation for the enumerated eigenvalues
    const int n_trunc = 64;
    DiffOp op({Poly({Scalar(1), Scalar(Complex(0.5, 0.5))}), Poly({Scalar(-1), Scalar(2)})});
    Complex w(0.5);  // simple zero of psi_1 = 2z - 1
    DiffOp adj = adjoint_op(op);
    for (int m = 0; m <= 8; ++m) {
        auto pair = adjoint_eigen_on_kernels(op, w, m);
        REQUIRE_FALSE(pair.degenerate);
        FockSeries vec = pair.realize(n_trunc);
        CHECK(eigencheck(adj, pair.lambda, vec) < 1e-8);
    }
}

TEST_CASE("eigenvalue duality for a conjugation-selfadjoint two-term operator") {
    // op = alpha + (i z)^2 d^2: symmetric in the (i z) basis
    Complex alpha(0.3, -1.1);
    DiffOp op = two_term(Poly({Scalar(alpha)}),
                         Poly::affine_power(Scalar::i(), Scalar(0), 2), 2);
    ConjugationParams params{Scalar::i(), Scalar(0), Scalar(1)};
    REQUIRE(is_c_selfadjoint(op, params).pass);

    SpectrumOptions opts;
    opts.kmax = 10;
    opts.c_selfadjoint_asserted = true;
    auto oracle = spectrum(op, SpectrumMode::Oracle, opts);
    REQUIRE(oracle.progression.has_value());

    // every oracle eigenvalue lambda must appear conjugated in the adjoint
    // kernel eigenpairs, and vice versa
    std::vector<Complex> adj_values;
    for (int m = 0; m <= 10; ++m)
        adj_values.push_back(adjoint_eigen_on_kernels(op, Complex(0.0), m).lambda);
    for (Complex lambda : oracle.progression->enumerated) {
        bool found = false;
        for (Complex mu : adj_values)
            if (std::abs(std::conj(lambda) - mu) < 1e-9) found = true;
        CHECK(found);
    }
}

TEST_CASE("degenerate kernel section is flagged, not resolved") {
    // order-2 two-term operator with psi_0' (w) != 0 makes the m = 1 section
    // defective: both diagonal entries equal conj(psi_0(w))
    DiffOp op = two_term(Poly::monomial(1), Poly::monomial(2), 2);
    auto pair = adjoint_eigen_on_kernels(op, Complex(0.0), 1);
    CHECK(pair.degenerate);
}

TEST_CASE("kernel span requires the witness zero") {
    DiffOp op({Poly({Scalar(1)}), Poly({Scalar(1)})});  // psi_1 = 1 never vanishes
    CHECK_THROWS_AS(adjoint_eigen_on_kernels(op, Complex(0.0), 1),
                    criterion_not_applicable_error);
}
