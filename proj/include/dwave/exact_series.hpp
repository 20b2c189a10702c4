#pragma once

// Double factorials, the higher-order chain rule over integer partitions, and
// truncated formal power series with exact rational coefficients.

#include "dwave/rational.hpp"

#include <cstddef>
#include <vector>

namespace dwave::series {

/// n!! with the conventions (-1)!! = 0!! = 1. Throws std::domain_error for n < -1.
Integer double_factorial(int n);

/// n! for n >= 0.
Integer factorial(int n);

/// Binomial coefficient C(n, k), zero outside 0 <= k <= n.
Integer binomial(int n, int k);

/// j-th c-derivative constant of sqrt(r^2 - c): d^j/dc^j sqrt(r^2-c) = L_j (r^2-c)^{-(2j-1)/2}.
/// L_1 = -1/2, L_j = -(2j-3)!!/2^j.
Rational l_constant(int j);

/// A multiplicity vector (p_1, ..., p_k) with sum_j j*p_j = k.
struct FaaPartition {
    std::vector<int> multiplicities;

    int order() const { return static_cast<int>(multiplicities.size()); }
    /// Total number of blocks, sum_j p_j.
    int blocks() const;
    /// p_j for 1-based j.
    int p(int j) const { return multiplicities[static_cast<std::size_t>(j - 1)]; }

    friend bool operator==(const FaaPartition&, const FaaPartition&) = default;
};

/// All partitions of k as multiplicity vectors, in descending lexicographic
/// order of (p_1, ..., p_k): (k,0,...,0) first, (0,...,0,1) last.
std::vector<FaaPartition> enumerate_faa_partitions(int k);

/// k! / prod_j (p_j! (j!)^{p_j}).
Rational faa_di_bruno_coefficient(const FaaPartition& partition, int k);

/// Truncated power series sum_{i<=T} c_i s^i.
class PowerSeries {
public:
    /// Zero series with truncation order T.
    explicit PowerSeries(int truncation);
    PowerSeries(std::vector<Rational> coefficients, int truncation);

    static PowerSeries constant(const Rational& value, int truncation);
    /// a + b s.
    static PowerSeries linear(const Rational& a, const Rational& b, int truncation);

    int truncation() const { return truncation_; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    const Rational& operator[](int degree) const { return coeffs_[static_cast<std::size_t>(degree)]; }
    Rational& operator[](int degree) { return coeffs_[static_cast<std::size_t>(degree)]; }

    /// d^k/ds^k at s = 0, i.e. k! c_k.
    Rational derivative_at_zero(int k) const;

    PowerSeries truncated(int truncation) const;
    PowerSeries pow(int exponent) const;

    PowerSeries& operator+=(const PowerSeries& rhs);
    PowerSeries& operator-=(const PowerSeries& rhs);
    PowerSeries& operator*=(const Rational& scalar);

    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(PowerSeries a, const Rational& s) { return a *= s; }
    friend PowerSeries operator*(const Rational& s, PowerSeries a) { return a *= s; }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);

    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

private:
    std::vector<Rational> coeffs_;
    int truncation_;
};

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b);
/// outer(inner(s)); inner must have zero constant term.
PowerSeries series_compose(const PowerSeries& outer, const PowerSeries& inner);
/// 1/a; a must have nonzero constant term.
PowerSeries series_reciprocal(const PowerSeries& a);
/// sqrt(a); a must have constant term 1.
PowerSeries series_sqrt(const PowerSeries& a);

}  // namespace dwave::series
