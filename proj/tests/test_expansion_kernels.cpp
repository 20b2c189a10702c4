#include "dwave/expansion_kernels.hpp"

#include "doctest.h"

#include <cmath>

using dwave::Integer;
using dwave::Rational;
using namespace dwave::kernels;
using dwave::series::double_factorial;
using dwave::series::factorial;

namespace {

TrigPoly term(const Rational& c, int tp, int rp, Phase ph) { return TrigPoly::monomial(c, tp, rp, ph); }

DiffusivePoly diff(std::initializer_list<std::tuple<int, int, Rational>> entries) {
    DiffusivePoly p;
    for (const auto& [k, j, c] : entries) p.add_term(c, k, j);
    return p;
}

}  // namespace

TEST_CASE("I_k closed forms") {
    CHECK(wave_Ik(1) == term(Rational(1, 2), 1, 0, Phase::Sin));
    CHECK(wave_Ik(2) == term(Rational(-1, 4), 2, 1, Phase::Cos) + term(Rational(1, 4), 1, 0, Phase::Sin));
    CHECK(wave_Ik(3) == term(Rational(-1, 8), 3, 2, Phase::Sin) + term(Rational(-3, 8), 2, 1, Phase::Cos) +
                            term(Rational(3, 8), 1, 0, Phase::Sin));
    CHECK_THROWS_AS(wave_Ik(0), std::domain_error);
}

TEST_CASE("recurrence agrees with the direct chain-rule expansion") {
    for (int k = 1; k <= 8; ++k) {
        CAPTURE(k);
        CHECK(wave_Ik(k) == wave_Ik_faa_di_bruno(k));
    }
}

TEST_CASE("I_k vanishes at r = 0") {
    for (int k = 1; k <= 8; ++k) {
        const TrigPoly ik = wave_Ik(k);
        for (const auto& [key, c] : ik.terms()) {
            CHECK_FALSE((key.r_power == 0 && key.phase == Phase::Cos));
        }
        const auto expansion = wave_Ik(k).numerator_series(2 * k + 2);
        for (const auto& [rt, c] : expansion) CHECK(rt.first > 0);
    }
}

TEST_CASE("(1/r) d/dr I_k = (t^2/2) I_{k-1}") {
    for (int k = 2; k <= 8; ++k) {
        CAPTURE(k);
        const TrigPoly lhs = wave_Ik(k).derivative_r();
        const TrigPoly rhs = wave_Ik(k - 1).shifted(2, 1) * Rational(1, 2);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("singular limit") {
    CHECK(sing_limit(1) == SingLimit{2, Rational(1, 2)});
    CHECK(sing_limit(2) == SingLimit{4, Rational(1, 12)});
    CHECK(sing_limit(3) == SingLimit{6, Rational(1, 120)});
    for (int k = 1; k <= 8; ++k) {
        Integer two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(k));
        CHECK(sing_limit(k) == SingLimit{2 * k, Rational(Integer(1), Integer(two_pow * double_factorial(2 * k - 1)))});
    }
}

TEST_CASE("scaled series starts at the singular limit and matches evaluation") {
    for (int k = 0; k <= 6; ++k) {
        const auto phi = wave_Fk_scaled_series(k, 30);
        if (k >= 1) CHECK(phi[0] == sing_limit(k).coeff);
        const double t = 1.7;
        for (double r : {0.3, 0.8, 1.5}) {
            const double x = t * r;
            double acc = 0.0;
            for (int m = 29; m >= 0; --m) acc = acc * x * x + phi[static_cast<std::size_t>(m)].to_double();
            const double direct = wave_Fk(k).evaluate(r, t) / std::pow(t, 2 * k);
            CHECK(acc == doctest::Approx(direct).epsilon(1e-9));
        }
    }
}

TEST_CASE("numeric recurrence") {
    CHECK(wave_Fk_general(0, 1.0, 0.0, M_PI) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(wave_Fk_general(2, 1.0, 0.0, 1.0) ==
          doctest::Approx((std::sin(1.0) - std::cos(1.0)) / 4.0).epsilon(1e-14));
    CHECK_THROWS_AS(wave_Fk_general(1, 0.5, 0.25, 1.0), std::domain_error);
    CHECK_THROWS_AS(wave_Fk_general(1, 0.4, 0.25, 1.0), std::domain_error);

    // Symbolic F_k at c = 0 against the recurrence. Both forms cancel badly
    // for t r small compared with k, so only the well-conditioned points are used.
    for (int k = 0; k <= 8; ++k) {
        for (double r : {0.2, 0.9, 2.5}) {
            for (double t : {0.5, 3.0, 9.0}) {
                if (t * r < 2.0 * k) continue;
                CHECK(wave_Fk(k).evaluate(r, t) == doctest::Approx(wave_Fk_general(k, r, 0.0, t)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("wave profiles") {
    const auto w11 = wave_profile(1, 1);
    REQUIRE(w11.size() == 1);
    CHECK(w11[0].weight == Rational(1));
    CHECK(w11[0].kernel == term(Rational(1), 0, 0, Phase::Cos));

    CHECK(wave_profile(2, 1).empty());
    CHECK_THROWS_AS(wave_profile(3, 1), std::domain_error);
    CHECK_THROWS_AS(wave_profile(1, 0), std::domain_error);

    const auto w13 = wave_profile(1, 3);
    REQUIRE(w13.size() == 3);
    CHECK(w13[1].weight == Rational(1, 4));
    CHECK(w13[2].weight == Rational(1, 32));
    const double r = 0.7;
    const double t = 2.3;
    double total = 0.0;
    for (const auto& wk : w13) total += wk.weight.to_double() * wk.kernel.evaluate(r, t);
    const double expected = std::cos(t * r) + t * std::sin(t * r) / (8 * r) +
                            (t * std::sin(t * r) - t * t * r * std::cos(t * r)) / (128 * std::pow(r, 3));
    CHECK(total == doctest::Approx(expected).epsilon(1e-14));

    const auto w23 = wave_profile(2, 3);
    REQUIRE(w23.size() == 2);
    CHECK(w23[0].weight == Rational(2));
    CHECK(w23[0].derivative_order == 1);
    CHECK(w23[1].weight == Rational(1, 2));
    // 2/t * F_1 = sin(tr)/r
    CHECK(w23[0].kernel.evaluate(r, t) * t == doctest::Approx(wave_Fk(1).evaluate(r, t)).epsilon(1e-14));
}

TEST_CASE("diffusive derivatives") {
    CHECK(diffusive_derivative(Generator::G, 0) == diff({{0, 0, Rational(1)}}));
    CHECK(diffusive_derivative(Generator::G, 1) == diff({{1, 1, Rational(-1)}}));
    CHECK(diffusive_derivative(Generator::G, 2) == diff({{2, 1, Rational(-4)}, {2, 2, Rational(1)}}));
    CHECK(diffusive_derivative(Generator::H, 1) == diff({{1, 0, Rational(2)}, {1, 1, Rational(-1)}}));
    CHECK(diffusive_derivative(Generator::H, 2) ==
          diff({{2, 0, Rational(12)}, {2, 1, Rational(-8)}, {2, 2, Rational(1)}}));
}

TEST_CASE("diffusive derivative normal form") {
    for (int k = 1; k <= 8; ++k) {
        const auto g = diffusive_derivative(Generator::G, k);
        const auto h = diffusive_derivative(Generator::H, k);
        for (const auto& [key, c] : g.terms()) {
            CHECK(key.first == k);
            CHECK(key.second >= 1);
            CHECK(key.second <= k);
        }
        for (const auto& [key, c] : h.terms()) {
            CHECK(key.first == k);
            CHECK(key.second <= k);
        }
        CHECK(g.coeff(k, k) == Rational((k % 2 == 0) ? 1 : -1));
        CHECK_FALSE(h.coeff(k, 0).is_zero());
        // the (tr^2)^0 band of h is the pure psi-derivative 2^k (2k-1)!!
        Integer two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(k));
        CHECK(h.coeff(k, 0) == Rational(Integer(two_pow * double_factorial(2 * k - 1))));
    }
}

TEST_CASE("h derivatives by Leibniz agree with an independent series product") {
    // h(r,a,t) at fixed r, t as a power series in a: psi(a r^2) * g, with
    // g expanded through exp of the series -2 t r^2 Q(a r^2). Compare the
    // coefficient polynomial in (r, t) at a few rational points.
    const int order = 6;
    for (const auto& [r2, t] : {std::pair{Rational(1, 3), Rational(2)}, std::pair{Rational(3, 2), Rational(1, 5)}}) {
        using dwave::series::PowerSeries;
        const PowerSeries q = inverse_one_plus_root(order);
        PowerSeries inner(order);
        for (int i = 1; i <= order; ++i) inner[i] = Rational(-2) * t * r2 * q[i] * r2.pow(i);
        // exp(inner) by its series; inner has zero constant term
        PowerSeries expo = PowerSeries::constant(1, order);
        PowerSeries power = PowerSeries::constant(1, order);
        for (int n = 1; n <= order; ++n) {
            power = power * inner;
            expo += power * Rational(Integer(1), factorial(n));
        }
        const PowerSeries psi = inverse_root(order);
        PowerSeries psi_scaled(order);
        for (int i = 0; i <= order; ++i) psi_scaled[i] = psi[i] * r2.pow(i);
        const PowerSeries h_series = psi_scaled * expo;
        const PowerSeries g_series = expo;
        for (int k = 0; k <= order; ++k) {
            const auto eval = [&](const DiffusivePoly& p) {
                Rational acc;
                for (const auto& [key, c] : p.terms()) acc += c * r2.pow(key.first) * (t * r2).pow(key.second);
                return acc;
            };
            // the common factor e^{-t r^2} is the constant term of exp(-2tr^2 Q(0)) = e^{-t r^2}
            CHECK(eval(diffusive_derivative(Generator::G, k)) == g_series.derivative_at_zero(k));
            CHECK(eval(diffusive_derivative(Generator::H, k)) == h_series.derivative_at_zero(k));
        }
    }
}

TEST_CASE("diffusive profiles") {
    CHECK(diffusive_profile(1, 1) == diff({{0, 0, Rational(1, 2)}}));
    CHECK(diffusive_profile(2, 1) == diff({{0, 0, Rational(1)}}));
    CHECK(diffusive_profile(2, 2) == diff({{0, 0, Rational(1)}, {1, 0, Rational(2)}, {1, 1, Rational(-1)}}));
    CHECK_THROWS_AS(diffusive_profile(1, 0), std::domain_error);
    CHECK_THROWS_AS(diffusive_profile(0, 2), std::domain_error);
}

TEST_CASE("Takeda coefficients") {
    const auto tc = takeda_coefficients(4);
    CHECK(tc.a(0, 0) == Rational(1));
    CHECK(tc.a(1, 1) == Rational(2));
    CHECK(tc.a(2, 0) == Rational(1, 2));
    CHECK(tc.a(1, 2) == Rational(5));
    CHECK(tc.a(2, 1) == Rational(2));
    for (int k = 1; k <= 4; ++k) CHECK(tc.a(0, k).is_zero());
    REQUIRE(tc.beta.size() == 5);
    CHECK(tc.beta[0] == Rational(1));
    CHECK(tc.beta[1] == Rational(2));
    CHECK(tc.beta[2] == Rational(6));
    CHECK(tc.beta[3] == Rational(20));

    const auto big = takeda_coefficients(12);
    for (int l = 0; l <= 12; ++l) {
        Integer two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(l));
        CHECK(big.beta[static_cast<std::size_t>(l)] == Rational(Integer(two_pow * double_factorial(2 * l - 1)), factorial(l)));
    }
}

TEST_CASE("Takeda expansions") {
    CHECK(takeda_expansion(0).u1_part == diff({{0, 0, Rational(1)}}));
    CHECK(takeda_expansion(1).u1_part == diff({{0, 0, Rational(1)}, {1, 0, Rational(2)}, {1, 1, Rational(-1)}}));
    // (1/2)[1 + (r^2 + 2r^4)(-tr^2) + (1/2) r^4 (-tr^2)^2]
    CHECK(takeda_expansion(2).u0_part ==
          diff({{0, 0, Rational(1, 2)}, {1, 1, Rational(-1, 2)}, {2, 1, Rational(-1)}, {2, 2, Rational(1, 4)}}));
}

TEST_CASE("equivalence of the two diffusive expansions") {
    for (int m = 0; m <= 8; ++m) {
        CAPTURE(m);
        const auto result = check_equivalence(m);
        CHECK(result.equal);
        CHECK_FALSE(result.mismatch.has_value());
    }
    CHECK_THROWS_AS(check_equivalence(-1), std::domain_error);
}

TEST_CASE("first_mismatch reports the differing monomial") {
    const auto a = diff({{1, 1, Rational(2)}, {2, 0, Rational(1)}});
    const auto b = diff({{1, 1, Rational(2)}, {2, 0, Rational(3)}});
    const auto mm = first_mismatch(a, b);
    REQUIRE(mm.has_value());
    CHECK(std::get<0>(*mm) == 2);
    CHECK(std::get<1>(*mm) == 0);
    CHECK(std::get<2>(*mm) == Rational(1));
    CHECK(std::get<3>(*mm) == Rational(3));
    CHECK_FALSE(first_mismatch(a, a).has_value());
}

TEST_CASE("poly evaluation and formatting") {
    const auto g2 = diffusive_derivative(Generator::G, 2);
    const double r = 0.6;
    const double t = 1.3;
    const double x = t * r * r;
    CHECK(g2.evaluate(r, t) == doctest::Approx(std::pow(r, 4) * (-4 * x + x * x) * std::exp(-x)).epsilon(1e-14));
    CHECK(to_string(DiffusivePoly{}) == "0");
    CHECK(to_string(wave_Ik(1)) == "(1/2)*t^1*sin(tr)");
    CHECK(to_string(wave_Fk(2)).find("/ r^3") != std::string::npos);
}
