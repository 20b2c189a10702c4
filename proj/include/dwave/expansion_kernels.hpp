#pragma once

// Exact symbolic construction of the derivative families behind the wave and
// diffusive asymptotic profiles.
//
// Wave side: F_k(r,t) = d^k/dc^k cos(t sqrt(r^2 - c)) at c = 0 equals
// I_k(r,t) / r^{2k-1}, where I_k is a trigonometric polynomial in (t, r, tr).
//
// Diffusive side: with g(r,a,t) = exp(-2tr^2 / (1 + sqrt(1 - 4ar^2))) and
// h = g / sqrt(1 - 4ar^2), every a-derivative at a = 0 is a finite sum
// sum c_{k,j} r^{2k} (t r^2)^j e^{-t r^2}.

#include "dwave/exact_series.hpp"
#include "dwave/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace dwave::kernels {

enum class Phase { Sin, Cos };

/// Polynomial in (r, t) with exact coefficients, keyed by (r_power, t_power).
using BivariatePoly = std::map<std::pair<int, int>, Rational>;

/// [sum coeff * t^p * r^q * phase(t r)] / r^d.
class TrigPoly {
public:
    struct Key {
        int t_power;
        int r_power;
        Phase phase;
        friend auto operator<=>(const Key&, const Key&) = default;
    };

    TrigPoly() = default;
    explicit TrigPoly(int denominator_r_power) : denominator_(denominator_r_power) {}

    static TrigPoly monomial(const Rational& coeff, int t_power, int r_power, Phase phase);

    void add_term(const Rational& coeff, int t_power, int r_power, Phase phase);

    const std::map<Key, Rational>& terms() const { return terms_; }
    int denominator_r_power() const { return denominator_; }
    bool empty() const { return terms_.empty(); }

    TrigPoly with_denominator(int d) const;
    /// Multiplies every term by t^dt r^dr; a negative shift requires every
    /// affected power to stay nonnegative.
    TrigPoly shifted(int dt, int dr) const;
    /// d/dr of the numerator (the denominator power is left unchanged).
    TrigPoly derivative_r() const;

    /// Numerator expanded in powers of r through r^{max_r_power}, with sin/cos
    /// replaced by their Maclaurin series in (t r).
    BivariatePoly numerator_series(int max_r_power) const;

    /// Direct floating-point evaluation. Undefined at r = 0 when d > 0.
    double evaluate(double r, double t) const;

    TrigPoly& operator+=(const TrigPoly& rhs);
    TrigPoly& operator*=(const Rational& scalar);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a += b * Rational(-1); }
    friend TrigPoly operator*(TrigPoly a, const Rational& s) { return a *= s; }
    friend TrigPoly operator*(const Rational& s, TrigPoly a) { return a *= s; }
    friend bool operator==(const TrigPoly&, const TrigPoly&) = default;

private:
    std::map<Key, Rational> terms_;
    int denominator_ = 0;
};

std::string to_string(const TrigPoly& poly);

/// sum c_{k,j} r^{2k} (t r^2)^j e^{-t r^2}, keyed by (k, j).
class DiffusivePoly {
public:
    using Key = std::pair<int, int>;

    void add_term(const Rational& coeff, int k, int j);
    const std::map<Key, Rational>& terms() const { return terms_; }
    Rational coeff(int k, int j) const;
    bool empty() const { return terms_.empty(); }

    /// Multiplies by r^{2m}.
    DiffusivePoly times_r2(int m) const;
    double evaluate(double r, double t) const;

    DiffusivePoly& operator+=(const DiffusivePoly& rhs);
    DiffusivePoly& operator*=(const Rational& scalar);
    friend DiffusivePoly operator+(DiffusivePoly a, const DiffusivePoly& b) { return a += b; }
    friend DiffusivePoly operator*(DiffusivePoly a, const Rational& s) { return a *= s; }
    friend DiffusivePoly operator*(const Rational& s, DiffusivePoly a) { return a *= s; }
    friend bool operator==(const DiffusivePoly&, const DiffusivePoly&) = default;

private:
    std::map<Key, Rational> terms_;
};

std::string to_string(const DiffusivePoly& poly);

// ---------------------------------------------------------------------------
// Wave part

/// I_k from the three-term recurrence, k >= 1.
TrigPoly wave_Ik(int k);

/// I_k assembled independently from the Faa di Bruno sum for
/// d^k/dc^k cos(t sqrt(r^2-c)) at c = 0, multiplied by r^{2k-1}.
TrigPoly wave_Ik_faa_di_bruno(int k);

/// F_k(r,0,t) as a TrigPoly with denominator r^{2k-1}; F_0 = cos(tr).
TrigPoly wave_Fk(int k);

/// d^k/dc^k cos(t sqrt(r^2 - c)) by the numeric three-term recurrence.
/// Requires r^2 > c.
double wave_Fk_general(int k, double r, double c, double t);

struct SingLimit {
    int t_power;
    Rational coeff;
    friend bool operator==(const SingLimit&, const SingLimit&) = default;
};

/// lim_{r->0} F_k(r,0,t) as coeff * t^t_power, by series expansion of I_k.
SingLimit sing_limit(int k);

/// Power series in x = t r of F_k(r,0,t) / t^{2k}, coefficients of x^0..x^{2*terms-2}
/// (odd powers vanish). Entry m is the coefficient of x^{2m}.
std::vector<Rational> wave_Fk_scaled_series(int k, int terms);

struct WeightedKernel {
    Rational weight;
    int derivative_order;  ///< k in F_k
    TrigPoly kernel;       ///< already includes the 1/t factor for i = 2
};

/// W^1_b = sum_{k<b} (1/4)^k/k! F_k;  W^2_b = 2/t sum_{k<=b-2} (1/4)^k/k! F_{k+1}.
std::vector<WeightedKernel> wave_profile(int i, int b);

// ---------------------------------------------------------------------------
// Diffusive part

enum class Generator { G, H };

/// (1 + sqrt(1 - 4s))^{-1} through s^T.
series::PowerSeries inverse_one_plus_root(int truncation);
/// (1 - 4s)^{-1/2} through s^T.
series::PowerSeries inverse_root(int truncation);

/// d^k/da^k g(r,0,t) (resp. h) as an exact DiffusivePoly.
DiffusivePoly diffusive_derivative(Generator which, int k);

/// D^1_l = 1/2 sum_{k<l} (1/k!) d^k g;  D^2_l = sum_{k<l} (1/k!) d^k h.
DiffusivePoly diffusive_profile(int i, int l);

struct TakedaCoefficients {
    std::map<std::pair<int, int>, Rational> alpha;
    std::vector<Rational> beta;
    int max_order = 0;

    const Rational& a(int j, int k) const { return alpha.at({j, k}); }
};

TakedaCoefficients takeda_coefficients(int m);

struct TakedaExpansion {
    DiffusivePoly u0_part;  ///< includes the global 1/2
    DiffusivePoly u1_part;
};

TakedaExpansion takeda_expansion(int m);

struct EquivalenceMismatch {
    Generator which;
    int k;
    int j;
    Rational profile_coeff;
    Rational takeda_coeff;
};

struct EquivalenceResult {
    bool equal = true;
    std::optional<EquivalenceMismatch> mismatch;
};

/// Compares sum_{k<=m} (1/k!) d^k g with the Takeda double sum and the h
/// analogue with the triple sum, monomial by monomial.
EquivalenceResult check_equivalence(int m);

/// First differing (k, j) between two DiffusivePolys, if any.
std::optional<std::tuple<int, int, Rational, Rational>> first_mismatch(const DiffusivePoly& lhs,
                                                                       const DiffusivePoly& rhs);

}  // namespace dwave::kernels
