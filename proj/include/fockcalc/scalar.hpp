#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace fockcalc {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

/// Element of Q(sqrt(2)): rat + irr*sqrt(2). Closed under +,-,*,/.
struct QuadQ2 {
    BigRational rat;
    BigRational irr;

    QuadQ2() = default;
    QuadQ2(BigRational r) : rat(std::move(r)) {}
    QuadQ2(BigRational r, BigRational i) : rat(std::move(r)), irr(std::move(i)) {}

    bool is_zero() const { return rat == 0 && irr == 0; }
    bool is_rational() const { return irr == 0; }
    double to_double() const;

    QuadQ2 operator-() const { return {-rat, -irr}; }
    QuadQ2& operator+=(const QuadQ2& o);
    QuadQ2& operator-=(const QuadQ2& o);
    friend QuadQ2 operator+(QuadQ2 a, const QuadQ2& b) { return a += b; }
    friend QuadQ2 operator-(QuadQ2 a, const QuadQ2& b) { return a -= b; }
    friend QuadQ2 operator*(const QuadQ2& a, const QuadQ2& b);
    friend QuadQ2 operator/(const QuadQ2& a, const QuadQ2& b);
    friend bool operator==(const QuadQ2& a, const QuadQ2& b) {
        return a.rat == b.rat && a.irr == b.irr;
    }
};

struct ExactComplex {
    QuadQ2 re;
    QuadQ2 im;

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    Complex to_complex() const { return {re.to_double(), im.to_double()}; }
    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// Complex number in one of two modes: exact (Q(sqrt2) + i*Q(sqrt2)) or
/// approximate (double complex). Exact arithmetic is closed under +,-,*
/// and / by a nonzero divisor; any mixed-mode operation promotes the
/// result to approximate mode.
class Scalar {
public:
    Scalar() : v_(ExactComplex{}) {}
    Scalar(int n) : v_(ExactComplex{QuadQ2(BigRational(n)), QuadQ2()}) {}
    Scalar(long long n) : v_(ExactComplex{QuadQ2(BigRational(n)), QuadQ2()}) {}
    Scalar(double x) : v_(Complex(x, 0.0)) {}
    Scalar(Complex z) : v_(z) {}
    explicit Scalar(ExactComplex e) : v_(std::move(e)) {}

    static Scalar rational(BigRational re, BigRational im = 0);
    static Scalar exact(QuadQ2 re, QuadQ2 im = QuadQ2());
    static Scalar i();
    static Scalar sqrt2();
    static Scalar inv_sqrt2();
    /// Parse "p/q" (or "p") as an exact rational.
    static Scalar parse_rational(const std::string& text);
    static Scalar factorial(unsigned n);
    static Scalar binomial(unsigned n, unsigned k);

    bool is_exact() const { return std::holds_alternative<ExactComplex>(v_); }
    bool is_zero() const;
    bool is_real() const;

    const ExactComplex& exact_value() const { return std::get<ExactComplex>(v_); }
    Complex to_complex() const;
    double abs() const { return std::abs(to_complex()); }

    /// If exact with zero sqrt2-part, the rational components.
    std::optional<std::pair<BigRational, BigRational>> as_rational() const;

    Scalar conj() const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar pow(unsigned n) const;

    /// Exact equality in exact mode, bitwise complex equality otherwise.
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string to_string() const;
    friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

private:
    std::variant<ExactComplex, Complex> v_;
};

inline double abs_diff(const Scalar& a, const Scalar& b) { return (a - b).abs(); }

}  // namespace fockcalc
