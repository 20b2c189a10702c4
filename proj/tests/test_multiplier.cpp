#include "dwave/generating_functions.hpp"
#include "dwave/multiplier.hpp"
#include "dwave/oracle.hpp"

#include "doctest.h"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <random>

using namespace dwave;
using namespace dwave::mult;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// Straight transcription of the two branches in 50-digit arithmetic.
double k0_reference(double r, double t) {
    const Big rb(r);
    const Big tb(t);
    const Big z2 = rb * rb - Big(1) / 4;
    const Big damp = exp(-tb / 2);
    if (z2 >= 0) return static_cast<double>(damp * cos(tb * sqrt(z2)));
    return static_cast<double>(damp * cosh(tb * sqrt(-z2)));
}

double k1_reference(double r, double t) {
    const Big rb(r);
    const Big tb(t);
    const Big z2 = rb * rb - Big(1) / 4;
    const Big damp = exp(-tb / 2);
    if (z2 > 0) return static_cast<double>(damp * sin(tb * sqrt(z2)) / sqrt(z2));
    return static_cast<double>(damp * sinh(tb * sqrt(-z2)) / sqrt(-z2));
}

}  // namespace

TEST_CASE("solution symbols at printed points") {
    for (double t : {0.5, 3.0, 40.0}) {
        CHECK(k0_hat(0.0, t) == doctest::Approx((1 + std::exp(-t)) / 2).epsilon(1e-14));
        CHECK(std::abs(k1_hat(0.0, t) - (1 - std::exp(-t))) <= 1e-12);
    }
    CHECK(k0_hat(0.5, 3.0) == doctest::Approx(std::exp(-1.5)).epsilon(1e-15));
    CHECK(k0_hat(1.0, 2.0) == doctest::Approx(std::exp(-1.0) * std::cos(std::sqrt(3.0))).epsilon(1e-14));
    CHECK(k1_hat(0.5, 4.0) == doctest::Approx(4 * std::exp(-2.0)).epsilon(1e-15));
    // the two sides differ by 2 eps k1'(1/2) = -2e-4 * 1000 e^{-5} / 6 up to O(eps^3)
    const double slope = -1000.0 * std::exp(-5.0) / 6.0;
    CHECK(std::abs(k1_hat(0.5001, 10.0) - k1_hat(0.4999, 10.0) - 2e-4 * slope) < 1e-6);
    CHECK_THROWS_AS(k0_hat(-0.1, 1.0), std::domain_error);
}

TEST_CASE("solution symbols against a multiprecision transcription") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> rdist(0.0, 4.0);
    std::uniform_real_distribution<double> tdist(0.01, 200.0);
    for (int i = 0; i < 500; ++i) {
        const double r = rdist(rng);
        const double t = tdist(rng);
        const double scale = std::max(std::abs(k0_reference(r, t)), std::exp(-t / 2));
        CHECK(std::abs(k0_hat(r, t) - k0_reference(r, t)) <= 1e-12 * scale);
        const double scale1 = std::max(std::abs(k1_reference(r, t)), std::exp(-t / 2));
        CHECK(std::abs(k1_hat(r, t) - k1_reference(r, t)) <= 1e-11 * scale1);
    }
}

TEST_CASE("branch continuity") {
    // Both symbols have a nonzero r-derivative at the branch point, so a
    // plain difference moves by |k'| eps; continuity is checked against the
    // first-order expansion k'(1/2) = -t^2 e^{-t/2}/2 and -t^3 e^{-t/2}/6.
    for (double t : {1.0, 10.0, 50.0}) {
        const double d0 = -0.5 * t * t * std::exp(-t / 2);
        const double d1 = -t * t * t * std::exp(-t / 2) / 6;
        for (double eps : {1e-5, -1e-5}) {
            CHECK(std::abs(k0_hat(0.5 + eps, t) - k0_hat(0.5, t) - eps * d0) <= 1e-8);
            CHECK(std::abs(k1_hat(0.5 + eps, t) - k1_hat(0.5, t) - eps * d1) <= 1e-8);
        }
        // just inside and outside the series window
        const double edge = std::sqrt(0.25 + kBranchSeriesWindow / (t * t));
        for (double r : {edge * (1 - 1e-12), edge * (1 + 1e-12)}) {
            CHECK(std::abs(k0_hat(r, t) - k0_reference(r, t)) <= 1e-14);
            CHECK(std::abs(k1_hat(r, t) - k1_reference(r, t)) <= 1e-13 * t);
        }
    }
}

TEST_CASE("cutoff family") {
    const CutoffFamily chi = cutoffs();
    CHECK(chi.chi_low(0.2) == 1.0);
    CHECK(chi.chi_high(2.5) == 1.0);
    CHECK(chi.chi_low(0.3) + chi.chi_middle(0.3) + chi.chi_high(0.3) == doctest::Approx(1.0).epsilon(1e-15));
    double worst = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        const double r = 5.0 * i / 10000.0;
        const double lo = chi.chi_low(r);
        const double mid = chi.chi_middle(r);
        const double hi = chi.chi_high(r);
        worst = std::max(worst, std::abs(lo + mid + hi - 1.0));
        CHECK(lo >= 0.0);
        CHECK(lo <= 1.0);
        CHECK(hi >= 0.0);
        CHECK(hi <= 1.0);
        CHECK(mid >= -1e-16);
        CHECK(mid <= 1.0 + 1e-16);
        if (r <= 0.25) CHECK(lo == 1.0);
        if (r >= 1.0 / 3.0) CHECK(lo == 0.0);
        if (r <= 1.0) CHECK(hi == 0.0);
        if (r >= 2.0) CHECK(hi == 1.0);
    }
    CHECK(worst <= 1e-15);
    CHECK(chi.chi(Region::All, 0.3) == 1.0);
}

TEST_CASE("wave kernels against extended-precision evaluation") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> rdist(0.0, 3.0);
    std::uniform_real_distribution<double> tdist(0.1, 30.0);
    for (int k = 0; k <= 9; ++k) {
        const WaveKernel kernel(k);
        const auto poly = kernels::wave_Fk(k);
        const double phi0 = k == 0 ? 1.0 : kernels::sing_limit(k).coeff.to_double();
        for (int i = 0; i < 60; ++i) {
            const double r = (i == 0) ? 0.0 : rdist(rng);
            const double t = tdist(rng);
            // |F_k| <= t^{2k} F_k-limit at the origin, so this is a relative bound
            const double bound = std::pow(t, 2 * k) * phi0;
            const double ref = r == 0.0 ? bound : oracle::evaluate_extended(poly, r, t);
            CHECK(std::abs(kernel(r, t) - ref) <= 1e-12 * bound);
        }
    }
}

TEST_CASE("profiles at the origin use the singular limit") {
    const WaveProfile w13(1, 3);
    const double t = 2.0;
    const double expected = 1.0 + 0.25 * t * t / 2 + (1.0 / 32) * std::pow(t, 4) / 12;
    CHECK(w13(0.0, t) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(WaveProfile(2, 1)(0.7, 3.0) == 0.0);
    // W^2_3 = sin(tr)/r + (sin(tr) - tr cos(tr)) / (8 r^3)
    const double r = 0.9;
    const WaveProfile w23(2, 3);
    CHECK(w23(r, t) == doctest::Approx(std::sin(t * r) / r +
                                       (std::sin(t * r) - t * r * std::cos(t * r)) / (8 * r * r * r))
                           .epsilon(1e-13));
    const DiffusiveProfile d22(2, 2);
    CHECK(d22(r, t) == doctest::Approx((1 + 2 * r * r - t * r * r * r * r) * std::exp(-t * r * r)).epsilon(1e-14));
}

TEST_CASE("remainder symbols") {
    const auto chi = cutoffs();
    for (double t : {0.5, 2.0, 30.0}) {
        CHECK(remainder_multiplier(2, 1, 1, Region::Low)(0.0, t) == doctest::Approx(-std::exp(-t)).epsilon(1e-10));
    }
    // D^1_1 = e^{-t r^2} / 2
    const double expected = chi.chi_high(3.0) * (std::exp(-1.0) * std::cos(2 * std::sqrt(8.75)) -
                                                  std::exp(-1.0) * std::cos(6.0) - 0.5 * std::exp(-18.0));
    CHECK(std::abs(remainder_multiplier(1, 1, 1, Region::High)(3.0, 2.0) - expected) <= 1e-15);

    for (int i : {1, 2}) {
        for (int b : {1, 2, 3}) {
            for (int l : {1, 2}) {
                const double all = remainder_multiplier(i, b, l, Region::All)(0.7, 5.0);
                const double split = remainder_multiplier(i, b, l, Region::Low)(0.7, 5.0) +
                                     remainder_multiplier(i, b, l, Region::Middle)(0.7, 5.0) +
                                     remainder_multiplier(i, b, l, Region::High)(0.7, 5.0);
                CHECK(split == doctest::Approx(all).epsilon(1e-13));
            }
        }
    }
    CHECK_THROWS_AS(remainder_multiplier(3, 1, 1, Region::All), std::domain_error);
    CHECK_THROWS_AS(remainder_multiplier(1, 0, 1, Region::All), std::domain_error);
    CHECK_THROWS_AS(remainder_multiplier(1, 1, 0, Region::All), std::domain_error);
}

TEST_CASE("remainder plus profile reproduces the exact symbol") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> rdist(0.01, 5.0);
    std::uniform_real_distribution<double> tdist(0.1, 20.0);
    for (int b : {1, 2, 3}) {
        for (int l : {1, 2, 3}) {
            const Multiplier rem = remainder_multiplier(1, b, l, Region::All);
            const auto w = kernels::wave_profile(1, b);
            const auto d = kernels::diffusive_profile(1, l);
            for (int s = 0; s < 12; ++s) {
                const double r = rdist(rng);
                const double t = tdist(rng);
                double wave = 0.0;
                for (const auto& term : w) wave += term.weight.to_double() * oracle::evaluate_extended(term.kernel, r, t);
                const double profile = std::exp(-t / 2) * wave + oracle::evaluate_extended(d, r, t);
                CHECK(std::abs(rem(r, t) + profile - k0_hat(r, t)) <= 1e-12 * (1 + std::abs(profile)));
            }
        }
    }
}

TEST_CASE("low-frequency split identity") {
    for (double t : {0.5, 5.0, 60.0}) {
        for (int i = 0; i <= 20; ++i) {
            const double r = (1.0 / 3.0) * i / 20.0;
            const double s = std::sqrt(0.25 - r * r);
            const double lhs = k0_hat(r, t) - 0.5 * gen::g(r, 1.0, t);
            CHECK(std::abs(lhs - 0.5 * std::exp(-t * (0.5 + s))) <= 1e-12);
        }
    }
}

TEST_CASE("comparison symbols") {
    const auto cmp = comparison_multipliers();
    CHECK(cmp.heat_hat(0.0, 7.0) == 1.0);
    CHECK(cmp.w1_hat(0.0, 3.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(cmp.w1_hat(1e-9, 3.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(cmp.w1_hat(0.4, 3.0) == doctest::Approx(std::sin(1.2) / 0.4).epsilon(1e-15));
    CHECK(cmp.w0_hat(1.0, M_PI) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(sinc(0.0) == 1.0);
}

TEST_CASE("region names") {
    CHECK(parse_region("all") == Region::All);
    CHECK(parse_region("L") == Region::Low);
    CHECK(parse_region("m") == Region::Middle);
    CHECK(parse_region("H") == Region::High);
    CHECK(to_string(Region::Middle) == "M");
    CHECK_THROWS_AS(parse_region("X"), std::invalid_argument);
}
