#include "fockcalc/scalar.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace fockcalc {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

double QuadQ2::to_double() const {
    return static_cast<double>(rat) + static_cast<double>(irr) * kSqrt2;
}

QuadQ2& QuadQ2::operator+=(const QuadQ2& o) {
    rat += o.rat;
    irr += o.irr;
    return *this;
}

QuadQ2& QuadQ2::operator-=(const QuadQ2& o) {
    rat -= o.rat;
    irr -= o.irr;
    return *this;
}

QuadQ2 operator*(const QuadQ2& a, const QuadQ2& b) {
    // (r1 + s1*sqrt2)(r2 + s2*sqrt2) = r1 r2 + 2 s1 s2 + (r1 s2 + r2 s1) sqrt2
    return {a.rat * b.rat + 2 * a.irr * b.irr, a.rat * b.irr + a.irr * b.rat};
}

QuadQ2 operator/(const QuadQ2& a, const QuadQ2& b) {
    if (b.is_zero()) throw std::domain_error("QuadQ2: division by zero");
    // 1/(r + s*sqrt2) = (r - s*sqrt2)/(r^2 - 2 s^2)
    BigRational denom = b.rat * b.rat - 2 * b.irr * b.irr;
    QuadQ2 binv{b.rat / denom, -b.irr / denom};
    return a * binv;
}

Scalar Scalar::rational(BigRational re, BigRational im) {
    return Scalar(ExactComplex{QuadQ2(std::move(re)), QuadQ2(std::move(im))});
}

Scalar Scalar::exact(QuadQ2 re, QuadQ2 im) {
    return Scalar(ExactComplex{std::move(re), std::move(im)});
}

Scalar Scalar::i() { return rational(0, 1); }

Scalar Scalar::sqrt2() { return Scalar(ExactComplex{QuadQ2(0, 1), QuadQ2()}); }

Scalar Scalar::inv_sqrt2() {
    return Scalar(ExactComplex{QuadQ2(0, BigRational(1, 2)), QuadQ2()});
}

Scalar Scalar::parse_rational(const std::string& text) {
    try {
        return rational(BigRational(text));
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational literal: \"" + text + "\"");
    }
}

Scalar Scalar::factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return rational(BigRational(f));
}

Scalar Scalar::binomial(unsigned n, unsigned k) {
    if (k > n) return Scalar(0);
    k = std::min(k, n - k);
    BigInt num = 1, den = 1;
    for (unsigned j = 1; j <= k; ++j) {
        num *= (n - k + j);
        den *= j;
    }
    return rational(BigRational(num, den));
}

bool Scalar::is_zero() const {
    if (is_exact()) return exact_value().is_zero();
    return std::get<Complex>(v_) == Complex(0.0, 0.0);
}

bool Scalar::is_real() const {
    if (is_exact()) return exact_value().im.is_zero();
    return std::get<Complex>(v_).imag() == 0.0;
}

Complex Scalar::to_complex() const {
    if (is_exact()) return exact_value().to_complex();
    return std::get<Complex>(v_);
}

std::optional<std::pair<BigRational, BigRational>> Scalar::as_rational() const {
    if (!is_exact()) return std::nullopt;
    const auto& e = exact_value();
    if (!e.re.is_rational() || !e.im.is_rational()) return std::nullopt;
    return std::make_pair(e.re.rat, e.im.rat);
}

Scalar Scalar::conj() const {
    if (is_exact()) {
        const auto& e = exact_value();
        return Scalar(ExactComplex{e.re, -e.im});
    }
    return Scalar(std::conj(std::get<Complex>(v_)));
}

Scalar Scalar::operator-() const {
    if (is_exact()) {
        const auto& e = exact_value();
        return Scalar(ExactComplex{-e.re, -e.im});
    }
    return Scalar(-std::get<Complex>(v_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (is_exact() && o.is_exact()) {
        auto& e = std::get<ExactComplex>(v_);
        e.re += o.exact_value().re;
        e.im += o.exact_value().im;
    } else {
        v_ = to_complex() + o.to_complex();
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    if (is_exact() && o.is_exact()) {
        auto& e = std::get<ExactComplex>(v_);
        e.re -= o.exact_value().re;
        e.im -= o.exact_value().im;
    } else {
        v_ = to_complex() - o.to_complex();
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_exact() && o.is_exact()) {
        const auto& a = exact_value();
        const auto& b = o.exact_value();
        ExactComplex r;
        r.re = a.re * b.re - a.im * b.im;
        r.im = a.re * b.im + a.im * b.re;
        v_ = std::move(r);
    } else {
        v_ = to_complex() * o.to_complex();
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
    if (is_exact() && o.is_exact()) {
        const auto& a = exact_value();
        const auto& b = o.exact_value();
        QuadQ2 norm = b.re * b.re + b.im * b.im;
        ExactComplex r;
        r.re = (a.re * b.re + a.im * b.im) / norm;
        r.im = (a.im * b.re - a.re * b.im) / norm;
        v_ = std::move(r);
    } else {
        v_ = to_complex() / o.to_complex();
    }
    return *this;
}

Scalar Scalar::pow(unsigned n) const {
    Scalar out(1);
    Scalar base = *this;
    while (n > 0) {
        if (n & 1u) out *= base;
        base *= base;
        n >>= 1;
    }
    return out;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return a.exact_value() == b.exact_value();
    return a.to_complex() == b.to_complex();
}

namespace {
std::string quad_to_string(const QuadQ2& q) {
    std::ostringstream os;
    if (q.is_rational()) {
        os << q.rat;
    } else {
        os << q.rat << "+" << q.irr << "*sqrt2";
    }
    return os.str();
}
}  // namespace

std::string Scalar::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    if (s.is_exact()) {
        const auto& e = s.exact_value();
        if (e.im.is_zero()) return os << quad_to_string(e.re);
        return os << "(" << quad_to_string(e.re) << ")+(" << quad_to_string(e.im) << ")i";
    }
    Complex z = s.to_complex();
    if (z.imag() == 0.0) return os << z.real();
    return os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
}

}  // namespace fockcalc
