#include "dwave/expansion_kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dwave::kernels {

using series::binomial;
using series::double_factorial;
using series::factorial;
using series::PowerSeries;

// ---------------------------------------------------------------------------
// TrigPoly

TrigPoly TrigPoly::monomial(const Rational& coeff, int t_power, int r_power, Phase phase) {
    TrigPoly p;
    p.add_term(coeff, t_power, r_power, phase);
    return p;
}

void TrigPoly::add_term(const Rational& coeff, int t_power, int r_power, Phase phase) {
    if (t_power < 0 || r_power < 0) {
        throw std::domain_error("TrigPoly: negative power");
    }
    if (coeff.is_zero()) {
        return;
    }
    const Key key{t_power, r_power, phase};
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

TrigPoly TrigPoly::with_denominator(int d) const {
    if (d < 0) {
        throw std::domain_error("TrigPoly: negative denominator power");
    }
    TrigPoly out = *this;
    out.denominator_ = d;
    return out;
}

TrigPoly TrigPoly::shifted(int dt, int dr) const {
    TrigPoly out(denominator_);
    for (const auto& [key, c] : terms_) {
        out.add_term(c, key.t_power + dt, key.r_power + dr, key.phase);
    }
    return out;
}

TrigPoly TrigPoly::derivative_r() const {
    TrigPoly out(denominator_);
    for (const auto& [key, c] : terms_) {
        if (key.r_power > 0) {
            out.add_term(c * Rational(key.r_power), key.t_power, key.r_power - 1, key.phase);
        }
        // d/dr sin(tr) = t cos(tr), d/dr cos(tr) = -t sin(tr)
        if (key.phase == Phase::Sin) {
            out.add_term(c, key.t_power + 1, key.r_power, Phase::Cos);
        } else {
            out.add_term(-c, key.t_power + 1, key.r_power, Phase::Sin);
        }
    }
    return out;
}

BivariatePoly TrigPoly::numerator_series(int max_r_power) const {
    BivariatePoly out;
    for (const auto& [key, c] : terms_) {
        const int first = key.phase == Phase::Cos ? 0 : 1;
        for (int n = first; key.r_power + n <= max_r_power; n += 2) {
            // sin x = sum (-1)^m x^{2m+1}/(2m+1)!, cos x = sum (-1)^m x^{2m}/(2m)!
            const int m = n / 2;
            Rational term = c / Rational(factorial(n));
            if (m % 2 == 1) {
                term = -term;
            }
            auto& slot = out[{key.r_power + n, key.t_power + n}];
            slot += term;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    return out;
}

double TrigPoly::evaluate(double r, double t) const {
    const double s = std::sin(t * r);
    const double c = std::cos(t * r);
    double acc = 0.0;
    for (const auto& [key, coeff] : terms_) {
        const double mono = std::pow(t, key.t_power) * std::pow(r, key.r_power);
        acc += coeff.to_double() * mono * (key.phase == Phase::Sin ? s : c);
    }
    return denominator_ == 0 ? acc : acc / std::pow(r, denominator_);
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& rhs) {
    if (denominator_ != rhs.denominator_ && !rhs.empty() && !empty()) {
        throw std::domain_error("TrigPoly: adding polynomials with different denominators");
    }
    if (empty()) {
        denominator_ = rhs.denominator_;
    }
    for (const auto& [key, c] : rhs.terms_) {
        add_term(c, key.t_power, key.r_power, key.phase);
    }
    return *this;
}

TrigPoly& TrigPoly::operator*=(const Rational& scalar) {
    if (scalar.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, c] : terms_) {
        c *= scalar;
    }
    return *this;
}

std::string to_string(const TrigPoly& poly) {
    if (poly.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : poly.terms()) {
        os << (first ? "" : " + ") << "(" << c << ")";
        if (key.t_power > 0) os << "*t^" << key.t_power;
        if (key.r_power > 0) os << "*r^" << key.r_power;
        os << (key.phase == Phase::Sin ? "*sin(tr)" : "*cos(tr)");
        first = false;
    }
    if (poly.denominator_r_power() > 0) {
        return "[" + os.str() + "] / r^" + std::to_string(poly.denominator_r_power());
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// DiffusivePoly

void DiffusivePoly::add_term(const Rational& coeff, int k, int j) {
    if (k < 0 || j < 0) {
        throw std::domain_error("DiffusivePoly: negative index");
    }
    if (coeff.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace({k, j}, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

Rational DiffusivePoly::coeff(int k, int j) const {
    const auto it = terms_.find({k, j});
    return it == terms_.end() ? Rational(0) : it->second;
}

DiffusivePoly DiffusivePoly::times_r2(int m) const {
    DiffusivePoly out;
    for (const auto& [key, c] : terms_) {
        out.add_term(c, key.first + m, key.second);
    }
    return out;
}

double DiffusivePoly::evaluate(double r, double t) const {
    const double r2 = r * r;
    const double tr2 = t * r2;
    double acc = 0.0;
    for (const auto& [key, c] : terms_) {
        acc += c.to_double() * std::pow(r2, key.first) * std::pow(tr2, key.second);
    }
    return acc * std::exp(-tr2);
}

DiffusivePoly& DiffusivePoly::operator+=(const DiffusivePoly& rhs) {
    for (const auto& [key, c] : rhs.terms_) {
        add_term(c, key.first, key.second);
    }
    return *this;
}

DiffusivePoly& DiffusivePoly::operator*=(const Rational& scalar) {
    if (scalar.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, c] : terms_) {
        c *= scalar;
    }
    return *this;
}

std::string to_string(const DiffusivePoly& poly) {
    if (poly.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : poly.terms()) {
        os << (first ? "" : " + ") << "(" << c << ")";
        if (key.first > 0) os << "*r^" << 2 * key.first;
        if (key.second > 0) os << "*(tr^2)^" << key.second;
        first = false;
    }
    os << " * e^{-tr^2}";
    return os.str();
}

// ---------------------------------------------------------------------------
// Wave part

TrigPoly wave_Ik(int k) {
    if (k < 1) {
        throw std::domain_error("wave_Ik: k must be >= 1");
    }
    // I_1 = (t/2) sin(tr);  I_2 = (1/4)(-t^2 r cos(tr) + t sin(tr))
    TrigPoly prev = TrigPoly::monomial(Rational(1, 2), 1, 0, Phase::Sin);
    if (k == 1) {
        return prev;
    }
    TrigPoly cur = TrigPoly::monomial(Rational(-1, 4), 2, 1, Phase::Cos) +
                   TrigPoly::monomial(Rational(1, 4), 1, 0, Phase::Sin);
    // I_{j+1} = (2j-1)/2 I_j - (t^2 r^2 / 4) I_{j-1}
    for (int j = 2; j < k; ++j) {
        TrigPoly next = cur * Rational(2 * j - 1, 2) + prev.shifted(2, 2) * Rational(-1, 4);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

TrigPoly wave_Ik_faa_di_bruno(int k) {
    if (k < 1) {
        throw std::domain_error("wave_Ik_faa_di_bruno: k must be >= 1");
    }
    std::vector<Rational> l_values;
    for (int j = 1; j <= k; ++j) {
        l_values.push_back(series::l_constant(j));
    }
    TrigPoly out;
    for (const auto& partition : series::enumerate_faa_partitions(k)) {
        Rational coeff = series::faa_di_bruno_coefficient(partition, k);
        for (int j = 1; j <= k; ++j) {
            coeff *= l_values[static_cast<std::size_t>(j - 1)].pow(partition.p(j));
        }
        const int m = partition.blocks();
        // m-th derivative of cos: cos, -sin, -cos, sin
        Phase phase = (m % 2 == 0) ? Phase::Cos : Phase::Sin;
        if (m % 4 == 1 || m % 4 == 2) {
            coeff = -coeff;
        }
        // t^m r^{-2k+m} times r^{2k-1}
        out.add_term(coeff, m, m - 1, phase);
    }
    return out;
}

TrigPoly wave_Fk(int k) {
    if (k < 0) {
        throw std::domain_error("wave_Fk: k must be >= 0");
    }
    if (k == 0) {
        return TrigPoly::monomial(Rational(1), 0, 0, Phase::Cos);
    }
    return wave_Ik(k).with_denominator(2 * k - 1);
}

double wave_Fk_general(int k, double r, double c, double t) {
    if (k < 0) {
        throw std::domain_error("wave_Fk_general: k must be >= 0");
    }
    const double z2 = r * r - c;
    if (!(z2 > 0.0)) {
        throw std::domain_error("wave_Fk_general: requires r^2 > c");
    }
    const double z = std::sqrt(z2);
    double f_prev = std::cos(t * z);
    if (k == 0) {
        return f_prev;
    }
    double f_cur = t * std::sin(t * z) / (2.0 * z);
    for (int j = 2; j <= k; ++j) {
        const double next = (-t * t * f_prev + 2.0 * (2 * j - 3) * f_cur) / (4.0 * z2);
        f_prev = f_cur;
        f_cur = next;
    }
    return f_cur;
}

SingLimit sing_limit(int k) {
    if (k < 1) {
        throw std::domain_error("sing_limit: k must be >= 1");
    }
    const int lead = 2 * k - 1;
    const BivariatePoly expansion = wave_Ik(k).numerator_series(2 * k + 4);
    std::optional<SingLimit> found;
    for (const auto& [key, c] : expansion) {
        const auto [r_power, t_power] = key;
        if (r_power < lead) {
            throw std::logic_error("sing_limit: I_k has a nonvanishing r^" + std::to_string(r_power) +
                                   " term");
        }
        if (r_power == lead) {
            if (found) {
                throw std::logic_error("sing_limit: limit is not a single t monomial");
            }
            found = SingLimit{t_power, c};
        }
    }
    if (!found) {
        return SingLimit{0, Rational(0)};
    }
    return *found;
}

std::vector<Rational> wave_Fk_scaled_series(int k, int terms) {
    if (k < 0 || terms < 1) {
        throw std::domain_error("wave_Fk_scaled_series: invalid arguments");
    }
    std::vector<Rational> out(static_cast<std::size_t>(terms));
    if (k == 0) {
        for (int m = 0; m < terms; ++m) {
            const Rational c(Integer(1), factorial(2 * m));
            out[static_cast<std::size_t>(m)] = (m % 2 == 0) ? c : -c;
        }
        return out;
    }
    const int shift = 2 * k - 1;
    const BivariatePoly expansion = wave_Ik(k).numerator_series(shift + 2 * (terms - 1));
    for (const auto& [key, c] : expansion) {
        const auto [r_power, t_power] = key;
        // every term of I_k carries t^{q+1} r^q
        if (t_power != r_power + 1 || r_power < shift) {
            throw std::logic_error("wave_Fk_scaled_series: unexpected monomial in I_k expansion");
        }
        const int x_power = r_power - shift;
        if (x_power % 2 != 0) {
            throw std::logic_error("wave_Fk_scaled_series: odd power in even function");
        }
        out[static_cast<std::size_t>(x_power / 2)] += c;
    }
    return out;
}

std::vector<WeightedKernel> wave_profile(int i, int b) {
    if ((i != 1 && i != 2) || b < 1) {
        throw std::domain_error("wave_profile: need i in {1,2} and b >= 1");
    }
    std::vector<WeightedKernel> out;
    if (i == 1) {
        for (int k = 0; k < b; ++k) {
            out.push_back({Rational(Integer(1), factorial(k)) * Rational(1, 4).pow(k), k, wave_Fk(k)});
        }
        return out;
    }
    for (int k = 0; k + 2 <= b; ++k) {
        const Rational weight = Rational(2) * Rational(Integer(1), factorial(k)) * Rational(1, 4).pow(k);
        out.push_back({weight, k + 1, wave_Fk(k + 1).shifted(-1, 0)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Diffusive part

PowerSeries inverse_one_plus_root(int truncation) {
    const PowerSeries root = series::series_sqrt(PowerSeries::linear(1, -4, truncation));
    return series::series_reciprocal(PowerSeries::constant(1, truncation) + root);
}

PowerSeries inverse_root(int truncation) {
    return series::series_reciprocal(series::series_sqrt(PowerSeries::linear(1, -4, truncation)));
}

namespace {

DiffusivePoly g_derivative(int k) {
    DiffusivePoly out;
    if (k == 0) {
        out.add_term(1, 0, 0);
        return out;
    }
    // d^j/da^j (1 + sqrt(1 - 4 a r^2))^{-1} at a = 0 is j! [s^j]Q(s) r^{2j}.
    const PowerSeries q = inverse_one_plus_root(k);
    std::vector<Rational> c2(static_cast<std::size_t>(k + 1));
    for (int j = 1; j <= k; ++j) {
        c2[static_cast<std::size_t>(j)] = q.derivative_at_zero(j);
    }
    for (const auto& partition : series::enumerate_faa_partitions(k)) {
        const int blocks = partition.blocks();
        // outer exp contributes (-2 t r^2)^{blocks}; inner r-powers sum to r^{2k}
        Rational coeff = series::faa_di_bruno_coefficient(partition, k) * Rational(-2).pow(blocks);
        for (int j = 1; j <= k; ++j) {
            coeff *= c2[static_cast<std::size_t>(j)].pow(partition.p(j));
        }
        out.add_term(coeff, k, blocks);
    }
    return out;
}

// d^i/da^i (1 - 4 a r^2)^{-1/2} at a = 0, without the r^{2i} factor.
Rational inverse_root_derivative(int i) {
    Integer two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(i));
    return Rational(Integer(two_pow * double_factorial(2 * i - 1)));
}

}  // namespace

DiffusivePoly diffusive_derivative(Generator which, int k) {
    if (k < 0) {
        throw std::domain_error("diffusive_derivative: k must be >= 0");
    }
    if (which == Generator::G) {
        return g_derivative(k);
    }
    // Leibniz over h = (1 - 4ar^2)^{-1/2} g
    DiffusivePoly out;
    for (int j = 0; j <= k; ++j) {
        const Rational factor = Rational(binomial(k, j)) * inverse_root_derivative(k - j);
        out += g_derivative(j).times_r2(k - j) * factor;
    }
    return out;
}

DiffusivePoly diffusive_profile(int i, int l) {
    if ((i != 1 && i != 2) || l < 1) {
        throw std::domain_error("diffusive_profile: need i in {1,2} and l >= 1");
    }
    const Generator which = i == 1 ? Generator::G : Generator::H;
    DiffusivePoly out;
    for (int k = 0; k < l; ++k) {
        out += diffusive_derivative(which, k) * Rational(Integer(1), factorial(k));
    }
    if (i == 1) {
        out *= Rational(1, 2);
    }
    return out;
}

TakedaCoefficients takeda_coefficients(int m) {
    if (m < 0) {
        throw std::domain_error("takeda_coefficients: m must be >= 0");
    }
    TakedaCoefficients out;
    out.max_order = m;
    // 1/(1/2 + sqrt(1/4 - s)) = 2 Q(s), so phi_1 = 4 Q^2 and phi_j = phi_1^j.
    const PowerSeries q = inverse_one_plus_root(m);
    const PowerSeries phi1 = (q * q) * Rational(4);
    PowerSeries phi_j = PowerSeries::constant(1, m);
    for (int j = 0; j <= m; ++j) {
        const Rational inv_jfact(Integer(1), factorial(j));
        for (int k = 0; j + k <= m; ++k) {
            out.alpha[{j, k}] = phi_j[k] * inv_jfact;
        }
        phi_j = phi_j * phi1;
    }
    const PowerSeries psi = inverse_root(m);
    for (int l = 0; l <= m; ++l) {
        out.beta.push_back(psi[l]);
    }
    return out;
}

TakedaExpansion takeda_expansion(int m) {
    const TakedaCoefficients coeffs = takeda_coefficients(m);
    TakedaExpansion out;
    // (-t)^j r^{2(2j+k)} = (-1)^j r^{2(j+k)} (t r^2)^j
    for (const auto& [jk, alpha] : coeffs.alpha) {
        const auto [j, k] = jk;
        const Rational signed_alpha = (j % 2 == 0) ? alpha : -alpha;
        out.u0_part.add_term(signed_alpha * Rational(1, 2), j + k, j);
        for (int l = 0; j + k + l <= m; ++l) {
            out.u1_part.add_term(signed_alpha * coeffs.beta[static_cast<std::size_t>(l)], j + k + l, j);
        }
    }
    return out;
}

std::optional<std::tuple<int, int, Rational, Rational>> first_mismatch(const DiffusivePoly& lhs,
                                                                       const DiffusivePoly& rhs) {
    std::map<DiffusivePoly::Key, bool> keys;
    for (const auto& [key, c] : lhs.terms()) keys[key] = true;
    for (const auto& [key, c] : rhs.terms()) keys[key] = true;
    for (const auto& [key, unused] : keys) {
        const Rational a = lhs.coeff(key.first, key.second);
        const Rational b = rhs.coeff(key.first, key.second);
        if (a != b) {
            return std::make_tuple(key.first, key.second, a, b);
        }
    }
    return std::nullopt;
}

EquivalenceResult check_equivalence(int m) {
    if (m < 0) {
        throw std::domain_error("check_equivalence: m must be >= 0");
    }
    const TakedaExpansion takeda = takeda_expansion(m);
    // D^i_{m+1} carries the Taylor terms k = 0..m
    const DiffusivePoly g_side = diffusive_profile(1, m + 1) * Rational(2);
    const DiffusivePoly h_side = diffusive_profile(2, m + 1);

    EquivalenceResult result;
    if (auto mm = first_mismatch(g_side, takeda.u0_part * Rational(2))) {
        result.equal = false;
        result.mismatch = EquivalenceMismatch{Generator::G, std::get<0>(*mm), std::get<1>(*mm),
                                              std::get<2>(*mm), std::get<3>(*mm)};
        return result;
    }
    if (auto mm = first_mismatch(h_side, takeda.u1_part)) {
        result.equal = false;
        result.mismatch = EquivalenceMismatch{Generator::H, std::get<0>(*mm), std::get<1>(*mm),
                                              std::get<2>(*mm), std::get<3>(*mm)};
    }
    return result;
}

}  // namespace dwave::kernels
