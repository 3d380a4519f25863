#include <doctest.h>

#include <random>

#include "fockcalc/fock.hpp"

using namespace fockcalc;

namespace {

FockSeries monomial_series(int k, int n_trunc) {
    FockSeries f;
    f.coeffs.assign(n_trunc, Complex(0.0));
    f.coeffs[k] = 1.0;
    return f;
}

DiffOp oscillator() { return DiffOp({Poly({Scalar(1)}), Poly({Scalar(0), Scalar(2)})}); }

DiffOp random_exact_op(std::mt19937& rng, int max_order, int max_deg) {
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> ord(0, max_order);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::vector<Poly> symbols(ord(rng) + 1);
    for (auto& s : symbols) {
        std::vector<Scalar> cs(deg(rng) + 1);
        for (auto& c : cs) c = Scalar::rational(coeff(rng), coeff(rng));
        s = Poly(std::move(cs));
    }
    return DiffOp(std::move(symbols));
}

}  // namespace

TEST_CASE("inner product is diagonal on monomials") {
    CHECK(inner_product(monomial_series(1, 8), monomial_series(1, 8)) == Complex(1.0));
    CHECK(inner_product(monomial_series(2, 8), monomial_series(5, 8)) == Complex(0.0));
    for (int n : {0, 1, 3, 6}) {
        double fact = 1.0;
        for (int k = 2; k <= n; ++k) fact *= k;
        CHECK(std::abs(inner_product(monomial_series(n, 8), monomial_series(n, 8)) - fact) <
              1e-12 * fact);
    }
}

TEST_CASE("exact inner product carries large factorials") {
    Poly f = Poly::monomial(40, Scalar::rational(1, 1));
    Poly g = Poly::monomial(40, Scalar(3));
    // <f, g> = (1+i) * conj(3) * 40!
    Scalar expect = Scalar::rational(1, 1) * Scalar(3) * Scalar::factorial(40);
    CHECK(inner_product_exact(f, g) == expect);
    CHECK(inner_product_exact(Poly::monomial(3), Poly::monomial(4)).is_zero());
}

TEST_CASE("norms accumulate stably") {
    FockSeries f = monomial_series(60, 64);
    // ||z^60||^2 = 60!; log comparison avoids demanding exact doubles
    CHECK(std::log(f.norm_squared()) == doctest::Approx(std::lgamma(61.0)).epsilon(1e-12));
    FockSeries zero;
    zero.coeffs.assign(10, Complex(0.0));
    CHECK(zero.norm() == 0.0);
}

TEST_CASE("kernel vectors reproduce derivatives") {
    const int n_trunc = 32;
    Complex z(0.7, -0.4);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> re(-1.0, 1.0);
    for (int m = 0; m <= 3; ++m) {
        FockSeries k = KernelVector{z, m, n_trunc}.realize();
        std::vector<Complex> cs(12);
        for (auto& c : cs) c = Complex(re(rng), re(rng));
        FockSeries f;
        f.coeffs = cs;
        f.coeffs.resize(n_trunc, Complex(0.0));
        Complex expect = f.derivative_at(m, z);
        CHECK(std::abs(inner_product(f, k) - expect) < 1e-12 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("fock_matrix ladder entries") {
    const int n_trunc = 16;
    auto mz = fock_matrix(DiffOp({Poly::monomial(1)}), n_trunc);
    auto dz = fock_matrix(DiffOp({Poly{}, Poly({Scalar(1)})}), n_trunc);
    for (int n = 0; n + 1 < n_trunc; ++n) {
        CHECK(std::abs(mz.m(n + 1, n) - std::sqrt(n + 1.0)) < 1e-12);
        CHECK(std::abs(dz.m(n, n + 1) - std::sqrt(n + 1.0)) < 1e-12);
    }
    CHECK(mz.lower_bw == 0);
    CHECK(mz.upper_bw == 1);
    CHECK(dz.lower_bw == 1);
    CHECK(dz.upper_bw == 0);

    auto h = fock_matrix(oscillator(), n_trunc);
    for (int n = 0; n < n_trunc; ++n) CHECK(h.m(n, n) == Complex(2.0 * n + 1.0));
}

TEST_CASE("fock_matrix entries vanish outside the band") {
    std::mt19937 rng(5);
    DiffOp op = random_exact_op(rng, 3, 3);
    auto fm = fock_matrix(op, 24);
    for (int row = 0; row < 24; ++row)
        for (int col = 0; col < 24; ++col)
            if (row < col - fm.lower_bw || row > col + fm.upper_bw)
                CHECK(fm.m(row, col) == Complex(0.0));
}

TEST_CASE("adjoint matrix block is the conjugate transpose") {
    std::mt19937 rng(7);
    const int n_trunc = 24;
    for (int trial = 0; trial < 10; ++trial) {
        DiffOp op = random_exact_op(rng, 2, 2);
        if (op.is_zero()) continue;
        DiffOp adj = adjoint_op(op);
        auto a = fock_matrix(op, n_trunc);
        auto b = fock_matrix(adj, n_trunc);
        int safe = n_trunc - std::max(op.order(), 0) -
                   std::max({op.max_symbol_degree(), adj.max_symbol_degree(), 0});
        REQUIRE(safe > 4);
        double dev = (b.m.topLeftCorner(safe, safe) - a.m.topLeftCorner(safe, safe).adjoint())
                         .cwiseAbs()
                         .maxCoeff();
        CHECK(dev < 1e-9);
    }
}

TEST_CASE("conjugation_apply: sign flip and anti-linearity") {
    auto pt = ConjugationParams::pt();
    FockSeries z = monomial_series(1, 8);
    FockSeries out = conjugation_apply(pt, z);
    CHECK(out.coeffs[1] == Complex(-1.0));

    FockSeries iz = monomial_series(1, 8);
    iz *= Complex(0.0, 1.0);
    FockSeries out2 = conjugation_apply(ConjugationParams::identity(), iz);
    CHECK(out2.coeffs[1] == Complex(0.0, -1.0));
}

TEST_CASE("conjugation involution and anti-isometry at truncation") {
    const int n_trunc = 64;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI), radius(0.0, 1.0),
        re(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        auto params = ConjugationParams::from_polar(angle(rng), radius(rng), angle(rng));
        FockSeries f, g;
        f.coeffs.assign(n_trunc, Complex(0.0));
        g.coeffs.assign(n_trunc, Complex(0.0));
        for (int k = 0; k <= 8; ++k) {
            f.coeffs[k] = Complex(re(rng), re(rng));
            g.coeffs[k] = Complex(re(rng), re(rng));
        }
        FockSeries twice = conjugation_apply(params, conjugation_apply(params, f));
        CHECK((twice - f).norm() < 1e-8 * (1.0 + f.norm()));

        Complex lhs = inner_product(conjugation_apply(params, f), conjugation_apply(params, g));
        Complex rhs = std::conj(inner_product(f, g));
        CHECK(std::abs(lhs - rhs) < 1e-8 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("conjugation sends kernels to scaled kernels") {
    const int n_trunc = 64;
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI), radius(0.0, 1.0),
        re(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        auto params = ConjugationParams::from_polar(angle(rng), radius(rng), angle(rng));
        Complex z(re(rng), re(rng));
        FockSeries image = conjugation_apply(params, KernelVector{z, 0, n_trunc}.realize());
        Complex a = params.a.to_complex(), b = params.b.to_complex(), c = params.c.to_complex();
        FockSeries expect = KernelVector{std::conj(a * z + b), 0, n_trunc}.realize();
        expect *= c * std::exp(b * z);
        double tol = 1e-8 * expect.norm() + 10.0 * conjugation_tail_bound(params, n_trunc, 3.0);
        CHECK((image - expect).norm() <= tol);
    }
}

TEST_CASE("adjoint_on_kernel: base cases") {
    const int n_trunc = 32;
    DiffOp ddz({Poly{}, Poly({Scalar(1)})});
    FockSeries k1 = adjoint_on_kernel(ddz, Complex(0.0), 0, n_trunc);
    // conj(psi_1(0)) K_0^[1] = the series of u
    CHECK(k1.coeffs[1] == Complex(1.0));
    CHECK(std::abs(k1.coeffs[0]) == 0.0);

    DiffOp mz({Poly::monomial(1)});
    Complex z(0.3, 0.8);
    FockSeries k2 = adjoint_on_kernel(mz, z, 0, n_trunc);
    FockSeries expect = KernelVector{z, 0, n_trunc}.realize();
    expect *= std::conj(z);
    CHECK((k2 - expect).norm() < 1e-12 * (1.0 + expect.norm()));
}

TEST_CASE("adjoint_on_kernel reproduces <op f, K_z>") {
    const int n_trunc = 48;
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> re(-1.0, 1.0);
    for (int trial = 0; trial < 15; ++trial) {
        DiffOp op = random_exact_op(rng, 3, 3);
        Complex z(re(rng), re(rng));
        std::vector<Scalar> cs(10);
        for (auto& c : cs) c = Scalar(Complex(re(rng), re(rng)));
        Poly f(std::move(cs));
        Complex direct = diffop_apply(op, f).eval(Scalar(z)).to_complex();
        Complex via = inner_product(FockSeries::from_poly(f, n_trunc),
                                    adjoint_on_kernel(op, z, 0, n_trunc));
        CHECK(std::abs(direct - via) < 1e-9 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("conjugated adjoint on kernels matches the closed-form series") {
    // C T* C K_z realized numerically against
    // sum_j psi_j(conj(az+b)) (au+b)^j e^{u conj z}, coefficientwise.
    const int n_trunc = 64;
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI), radius(0.0, 1.0),
        re(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        DiffOp op = random_exact_op(rng, 2, 2);
        if (op.is_zero()) continue;
        auto params = ConjugationParams::from_polar(angle(rng), radius(rng), angle(rng));
        Complex a = params.a.to_complex(), b = params.b.to_complex(), c = params.c.to_complex();
        Complex z(re(rng), re(rng));
        Complex w = std::conj(a * z + b);

        FockSeries lhs = conjugation_apply(params, adjoint_on_kernel(op, w, 0, n_trunc));
        lhs *= std::conj(c * std::exp(b * z));

        // closed form: polynomial sum_j psi_j(w) (au+b)^j times e^{u conj z}
        Poly factor;
        for (int j = 0; j <= op.order(); ++j) {
            Scalar pj = op.symbol(j).eval(Scalar(w));
            factor += pj * Poly::affine_power(Scalar(a), Scalar(b), static_cast<unsigned>(j));
        }
        FockSeries rhs;
        rhs.coeffs.assign(n_trunc, Complex(0.0));
        FockSeries expz = KernelVector{z, 0, n_trunc}.realize();
        for (int k = 0; k <= factor.degree(); ++k) {
            Complex fk = factor.coeff(k).to_complex();
            for (int n = 0; n + k < n_trunc; ++n) rhs.coeffs[n + k] += fk * expz.coeffs[n];
        }
        CHECK((lhs - rhs).norm() < 1e-7 * (1.0 + rhs.norm()));
    }
}

TEST_CASE("verify_adjoint_identity") {
    // multiplication by z on monomial pairs: both sides equal (n+1)!
    DiffOp mz({Poly::monomial(1)});
    for (int n : {0, 2, 5}) {
        Poly f = Poly::monomial(static_cast<unsigned>(n));
        Poly g = Poly::monomial(static_cast<unsigned>(n + 1));
        Scalar lhs = inner_product_exact(diffop_apply(mz, f), g);
        Scalar rhs = inner_product_exact(f, diffop_apply(adjoint_op(mz), g));
        CHECK(lhs == Scalar::factorial(static_cast<unsigned>(n + 1)));
        CHECK(lhs == rhs);
    }

    auto rep = verify_adjoint_identity(DiffOp{}, 32, 5);
    CHECK(rep.pass);
    CHECK(rep.max_residual == 0.0);

    auto rep2 = verify_adjoint_identity(oscillator(), 64, 25, 42);
    CHECK(rep2.pass);
    CHECK(rep2.exact_mode);
    CHECK(rep2.max_residual == 0.0);

    // approximate-mode operator stays within the relative tolerance
    DiffOp approx_op({Poly({Scalar(0.5), Scalar(Complex(0.0, 0.25))}), Poly({Scalar(1.25)})});
    auto rep3 = verify_adjoint_identity(approx_op, 64, 25, 43);
    CHECK(rep3.pass);
    CHECK_FALSE(rep3.exact_mode);
}

TEST_CASE("derivative bound holds") {
    FockSeries one = monomial_series(0, 4);
    CHECK(derivative_bound_check(one, 0, Complex(0.0)));

    FockSeries k1 = KernelVector{Complex(1.0), 0, 64}.realize();
    CHECK(derivative_bound_check(k1, 1, Complex(1.0)));

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> re(-1.0, 1.0), zc(-3.0, 3.0);
    std::uniform_int_distribution<int> kdist(0, 5);
    for (int trial = 0; trial < 200; ++trial) {
        FockSeries f;
        f.coeffs.assign(64, Complex(0.0));
        for (int k = 0; k < 20; ++k) f.coeffs[k] = Complex(re(rng), re(rng));
        Complex z(zc(rng), zc(rng));
        if (std::abs(z) > 3.0) continue;
        CHECK(derivative_bound_check(f, kdist(rng), z));
    }
}

TEST_CASE("gaussian membership rule") {
    CHECK(gaussian_membership(Complex(0.0), Complex(0.0)));
    CHECK_FALSE(gaussian_membership(Complex(1.0), Complex(5.0)));
    CHECK(gaussian_membership(Complex(0.0, 0.5), Complex(100.0)));
    CHECK_FALSE(gaussian_membership(Complex(0.8, 0.8), Complex(0.0)));
}

TEST_CASE("eigencheck") {
    FockSeries z = monomial_series(1, 4);
    CHECK(eigencheck(oscillator(), Complex(3.0), z) == 0.0);

    // pure d/dz with truncated e^{mu z}: residual at the scale of the tail
    const int n_trunc = 32;
    Complex mu(0.9, 0.3);
    FockSeries emu = KernelVector{std::conj(mu), 0, n_trunc}.realize();
    DiffOp ddz({Poly{}, Poly({Scalar(1)})});
    double resid = eigencheck(ddz, mu, emu);
    // |mu|^N sqrt(N!) / ||e^{mu z}|| ~ |mu|^N / sqrt(N!) up to constants
    double tail = std::exp(n_trunc * std::log(std::abs(mu)) - 0.5 * std::lgamma(n_trunc + 1.0) +
                           0.5 * std::abs(mu) * std::abs(mu));
    CHECK(resid < 100.0 * tail);
    CHECK(resid > 0.0);

    FockSeries zero;
    zero.coeffs.assign(4, Complex(0.0));
    CHECK_THROWS_AS(eigencheck(oscillator(), Complex(1.0), zero), std::invalid_argument);
}
