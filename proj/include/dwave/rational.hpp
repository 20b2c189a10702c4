#pragma once

// Exact rational scalar backed by GMP. Always stored in lowest terms with a
// positive denominator; zero is 0/1.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace dwave {

using Integer = mpz_class;

class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}          // NOLINT(google-explicit-constructor)
    Rational(int value) : value_(value) {}           // NOLINT(google-explicit-constructor)
    Rational(const Integer& value) : value_(value) {} // NOLINT(google-explicit-constructor)
    template <class U>
    Rational(const __gmp_expr<mpz_t, U>& expr) : value_(Integer(expr)) {} // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den);
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

    /// Parses "p" or "p/q" (the serialized form produced by str()).
    static Rational parse(const std::string& text);

    Integer numerator() const { return value_.get_num(); }
    Integer denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    double to_double() const { return value_.get_d(); }
    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
    Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
    Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Integer power, negative exponents allowed for nonzero values.
    Rational pow(int exponent) const;

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

private:
    explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }
    mpq_class value_{0};
};

}  // namespace dwave
