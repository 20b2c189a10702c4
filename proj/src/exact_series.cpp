#include "dwave/exact_series.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dwave::series {

Integer double_factorial(int n) {
    if (n < -1) {
        throw std::domain_error("double_factorial: n must be >= -1, got " + std::to_string(n));
    }
    Integer result = 1;
    for (int i = n; i > 1; i -= 2) {
        result *= i;
    }
    return result;
}

Integer factorial(int n) {
    if (n < 0) {
        throw std::domain_error("factorial: negative argument");
    }
    Integer result;
    mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
    return result;
}

Integer binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    Integer result;
    mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return result;
}

Rational l_constant(int j) {
    if (j < 1) {
        throw std::domain_error("l_constant: j must be >= 1");
    }
    if (j == 1) {
        return Rational(-1, 2);
    }
    Integer two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(j));
    return -Rational(double_factorial(2 * j - 3), two_pow);
}

int FaaPartition::blocks() const {
    return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

namespace {

// Fills p_j for j = index+1 .. k, largest multiplicity first.
void enumerate_from(int k, int index, int remaining, std::vector<int>& current,
                    std::vector<FaaPartition>& out) {
    if (index == k) {
        if (remaining == 0) {
            out.push_back(FaaPartition{current});
        }
        return;
    }
    const int part = index + 1;
    for (int p = remaining / part; p >= 0; --p) {
        current[static_cast<std::size_t>(index)] = p;
        enumerate_from(k, index + 1, remaining - p * part, current, out);
    }
    current[static_cast<std::size_t>(index)] = 0;
}

}  // namespace

std::vector<FaaPartition> enumerate_faa_partitions(int k) {
    if (k < 1) {
        throw std::domain_error("enumerate_faa_partitions: k must be >= 1");
    }
    std::vector<FaaPartition> out;
    std::vector<int> current(static_cast<std::size_t>(k), 0);
    enumerate_from(k, 0, k, current, out);
    return out;
}

Rational faa_di_bruno_coefficient(const FaaPartition& partition, int k) {
    if (partition.order() != k) {
        throw std::domain_error("faa_di_bruno_coefficient: partition order does not match k");
    }
    int weight = 0;
    Integer denominator = 1;
    for (int j = 1; j <= k; ++j) {
        const int pj = partition.p(j);
        if (pj < 0) {
            throw std::domain_error("faa_di_bruno_coefficient: negative multiplicity");
        }
        weight += j * pj;
        Integer jfact_pow;
        mpz_pow_ui(jfact_pow.get_mpz_t(), factorial(j).get_mpz_t(), static_cast<unsigned long>(pj));
        denominator *= factorial(pj) * jfact_pow;
    }
    if (weight != k) {
        throw std::domain_error("faa_di_bruno_coefficient: sum j*p_j != k");
    }
    return Rational(factorial(k), denominator);
}

PowerSeries::PowerSeries(int truncation)
    : coeffs_(static_cast<std::size_t>(std::max(truncation, 0) + 1)), truncation_(truncation) {
    if (truncation < 0) {
        throw std::domain_error("PowerSeries: negative truncation order");
    }
}

PowerSeries::PowerSeries(std::vector<Rational> coefficients, int truncation) : PowerSeries(truncation) {
    const auto n = std::min(coefficients.size(), coeffs_.size());
    std::copy_n(coefficients.begin(), n, coeffs_.begin());
}

PowerSeries PowerSeries::constant(const Rational& value, int truncation) {
    PowerSeries s(truncation);
    s[0] = value;
    return s;
}

PowerSeries PowerSeries::linear(const Rational& a, const Rational& b, int truncation) {
    PowerSeries s(truncation);
    s[0] = a;
    if (truncation >= 1) {
        s[1] = b;
    }
    return s;
}

Rational PowerSeries::derivative_at_zero(int k) const {
    if (k < 0 || k > truncation_) {
        throw std::domain_error("derivative_at_zero: order outside truncation");
    }
    return (*this)[k] * Rational(factorial(k));
}

PowerSeries PowerSeries::truncated(int truncation) const {
    return PowerSeries(coeffs_, std::min(truncation, truncation_));
}

PowerSeries PowerSeries::pow(int exponent) const {
    if (exponent < 0) {
        return series_reciprocal(*this).pow(-exponent);
    }
    PowerSeries result = constant(1, truncation_);
    PowerSeries base = *this;
    while (exponent > 0) {
        if (exponent & 1) {
            result = result * base;
        }
        exponent >>= 1;
        if (exponent > 0) {
            base = base * base;
        }
    }
    return result;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& rhs) {
    truncation_ = std::min(truncation_, rhs.truncation_);
    coeffs_.resize(static_cast<std::size_t>(truncation_ + 1));
    for (int i = 0; i <= truncation_; ++i) {
        (*this)[i] += rhs[i];
    }
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& rhs) {
    truncation_ = std::min(truncation_, rhs.truncation_);
    coeffs_.resize(static_cast<std::size_t>(truncation_ + 1));
    for (int i = 0; i <= truncation_; ++i) {
        (*this)[i] -= rhs[i];
    }
    return *this;
}

PowerSeries& PowerSeries::operator*=(const Rational& scalar) {
    for (auto& c : coeffs_) {
        c *= scalar;
    }
    return *this;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    const int t = std::min(a.truncation(), b.truncation());
    PowerSeries out(t);
    for (int i = 0; i <= t; ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (int j = 0; i + j <= t; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) { return a * b; }

PowerSeries series_compose(const PowerSeries& outer, const PowerSeries& inner) {
    if (!inner[0].is_zero()) {
        throw std::domain_error("series_compose: inner series must have zero constant term");
    }
    const int t = std::min(outer.truncation(), inner.truncation());
    // Horner in the inner series.
    PowerSeries result = PowerSeries::constant(outer[t], t);
    for (int i = t - 1; i >= 0; --i) {
        result = result * inner;
        result[0] += outer[i];
    }
    return result;
}

PowerSeries series_reciprocal(const PowerSeries& a) {
    if (a[0].is_zero()) {
        throw std::domain_error("series_reciprocal: constant term must be nonzero");
    }
    const int t = a.truncation();
    PowerSeries out(t);
    const Rational inv0 = Rational(1) / a[0];
    out[0] = inv0;
    for (int n = 1; n <= t; ++n) {
        Rational acc;
        for (int i = 1; i <= n; ++i) {
            acc += a[i] * out[n - i];
        }
        out[n] = -acc * inv0;
    }
    return out;
}

PowerSeries series_sqrt(const PowerSeries& a) {
    if (a[0] != Rational(1)) {
        throw std::domain_error("series_sqrt: constant term must be 1");
    }
    const int t = a.truncation();
    PowerSeries out(t);
    out[0] = 1;
    // (sum s_i x^i)^2 = a  =>  2 s_n = a_n - sum_{i=1}^{n-1} s_i s_{n-i}.
    for (int n = 1; n <= t; ++n) {
        Rational acc = a[n];
        for (int i = 1; i < n; ++i) {
            acc -= out[i] * out[n - i];
        }
        out[n] = acc / Rational(2);
    }
    return out;
}

}  // namespace dwave::series
