#include "dwave/rational.hpp"

#include <stdexcept>

namespace dwave {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) {
        throw std::domain_error("Rational: zero denominator");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Integer(text));
        }
        return Rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    }
}

std::string Rational::str() const {
    if (is_integer()) {
        return value_.get_num().get_str();
    }
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) {
        throw std::domain_error("Rational: division by zero");
    }
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::pow(int exponent) const {
    if (exponent < 0) {
        return Rational(1) / pow(-exponent);
    }
    Integer num;
    Integer den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num().get_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), value_.get_den().get_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(num, den);
}

}  // namespace dwave
