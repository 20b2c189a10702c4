#include "dwave/rate_lab.hpp"

#include "doctest.h"

#include <cmath>

using namespace dwave;
using namespace dwave::rates;

namespace {

SweepResult synthetic(const std::function<double(double)>& f, double t_min, double t_max, int samples = 12) {
    return sweep_function("synthetic", f, geometric_times(t_min, t_max, samples));
}

SweepConfig config(int n, int b, int l, mult::Region region = mult::Region::All, Piece piece = Piece::Both) {
    SweepConfig c;
    c.n = n;
    c.b = b;
    c.l = l;
    c.region = region;
    c.piece = piece;
    return c;
}

}  // namespace

TEST_CASE("geometric times") {
    const auto times = geometric_times(50, 800, 12);
    CHECK(times.size() == 12);
    CHECK(times.front() == 50.0);
    CHECK(times.back() == 800.0);
    for (std::size_t k = 1; k < times.size(); ++k) {
        CHECK(times[k] / times[k - 1] == doctest::Approx(std::pow(16.0, 1.0 / 11)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(geometric_times(0, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(geometric_times(2, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(geometric_times(1, 2, 1), std::invalid_argument);
}

TEST_CASE("fit_rate on synthetic power laws") {
    const RateFit exact = fit_rate(synthetic([](double t) { return 7.0 / (t * t); }, 1, 100));
    CHECK(exact.slope == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(exact.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-12));
    CHECK(exact.max_residual <= 1e-12);

    const RateFit perturbed = fit_rate(synthetic([](double t) { return (1.0 + 0.1 / t) / t; }, 100, 1000));
    CHECK(std::abs(perturbed.slope + 1.0) <= 0.01);

    CHECK(std::abs(fit_rate(synthetic([](double) { return 3.0; }, 1, 10)).slope) <= 1e-14);

    for (double p : {-0.25, -1.25, -1.5, -2.75}) {
        const RateFit fit = fit_rate(synthetic([p](double t) { return 0.3 * std::pow(t, p); }, 50, 800));
        CHECK(std::abs(fit.slope - p) <= 1e-10);
    }
}

TEST_CASE("fit_rate errors and windows") {
    const SweepResult s = synthetic([](double t) { return 1.0 / t; }, 1, 1000, 13);
    CHECK_THROWS_AS(fit_rate(s, Window{1, 5}), std::invalid_argument);
    const RateFit part = fit_rate(s, Window{10, 1000});
    CHECK(part.samples == 9);
    CHECK(part.window.t_min == 10.0);
    SweepResult bad = s;
    bad.values[6] = 0.0;
    CHECK_THROWS_AS(fit_rate(bad), std::domain_error);
    // a dead value outside the window is ignored
    CHECK_NOTHROW(fit_rate(bad, Window{100, 1000}));
}

TEST_CASE("heat control slope") {
    const auto heat = mult::comparison_multipliers().heat_hat;
    const spectral::RadialProfile g = spectral::gaussian(1.0);
    const SweepResult s = sweep_function(
        "heat",
        [&](double t) { return spectral::l2_norm_radial(heat, g, 1, t, spectral::make_rule({}, t)); },
        geometric_times(50, 800, 12));
    CHECK(std::abs(fit_rate(s).slope + 0.25) <= 0.02);
}

TEST_CASE("remainder sweeps") {
    const SweepResult s = sweep(config(1, 2, 1, mult::Region::All, Piece::First), geometric_times(10, 400, 15));
    for (std::size_t k = 0; k < s.values.size(); ++k) {
        CHECK(s.values[k] > 0.0);
        if (k > 0) CHECK(s.values[k] < s.values[k - 1]);
    }
    CHECK(s.config["n"] == 1);
    CHECK(s.config["i"] == 1);
    CHECK(s.config["region"] == "ALL");

    // the three-piece split and Cauchy-Schwarz
    for (int n : {1, 2, 3}) {
        const auto times = geometric_times(2, 300, 9);
        const SweepResult all = sweep(config(n, 2, 1), times);
        const SweepResult lo = sweep(config(n, 2, 1, mult::Region::Low), times);
        const SweepResult mid = sweep(config(n, 2, 1, mult::Region::Middle), times);
        const SweepResult hi = sweep(config(n, 2, 1, mult::Region::High), times);
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double split = lo.values[k] * lo.values[k] + mid.values[k] * mid.values[k] +
                                 hi.values[k] * hi.values[k];
            CHECK(all.values[k] * all.values[k] <= 3.0 * split * (1 + 1e-12));
            CHECK(all.values[k] <= lo.values[k] + mid.values[k] + hi.values[k] + 1e-15);
        }
    }
    CHECK_THROWS_AS(sweep(config(1, 1, 1), {2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(piece_from_index(3), std::invalid_argument);
}

TEST_CASE("diffusive slope is stable under window sliding") {
    for (const auto& [n, b, l] : {std::tuple{1, 1, 1}, std::tuple{2, 2, 1}, std::tuple{3, 2, 2}}) {
        const SweepResult s = sweep(config(n, b, l), geometric_times(50, 800, 13));
        const double early = fit_rate(s, Window{50, 400}).slope;
        const double late = fit_rate(s, Window{100, 800}).slope;
        CHECK(std::abs(early - late) < 0.05);
    }
}

TEST_CASE("dominance ordering in l") {
    for (int n : {1, 2, 3}) {
        const int b = n == 1 ? 1 : 2;
        std::vector<double> slopes;
        for (int l : {1, 2, 3}) {
            slopes.push_back(fit_rate(sweep(config(n, b, l), geometric_times(50, 800, 12))).slope);
        }
        for (std::size_t k = 1; k < slopes.size(); ++k) {
            CHECK(std::abs(slopes[k - 1] - slopes[k] - 1.0) <= 0.2);
        }
    }
}

TEST_CASE("middle band decay") {
    // on supp chi_M = [1/4, 2] the slowest symbol decay is e^{-t d(1/4)}
    CHECK(middle_band_rate() == doctest::Approx(0.5 - std::sqrt(3.0) / 4).epsilon(1e-15));
    const auto times = geometric_times(10, 200, 12);
    for (int i : {1, 2}) {
        const SweepConfig c = config(1, 2, 1, mult::Region::Middle, piece_from_index(i));
        const SweepResult s = sweep(c, times);
        const EnvelopeCheck corrected = envelope_check("M", s, [&](double t) { return predicted_envelope(c, t); });
        CHECK(corrected.pass);
        // e^{-t/9} is not an upper envelope on the full support: the ratio keeps growing
        const EnvelopeCheck ninth = envelope_check("M/9", s, [](double t) { return std::exp(-t / 9); });
        CHECK(ninth.ratios.back() > 100.0 * ninth.ratios.front());
        CHECK_FALSE(ninth.pass);
    }
}

TEST_CASE("theorem check") {
    const auto g = spectral::gaussian(1.0);
    CHECK_THROWS_AS(check_theorem1(2, 1, 1, g, g), std::invalid_argument);
    CHECK_THROWS_AS(check_theorem1(1, 1, 0, g, g), std::invalid_argument);
    const Theorem1Report report = check_theorem1(1, 1, 1, g, g);
    CHECK(report.diffusive_pass);
    CHECK(std::abs(report.fit.slope + 1.25) <= 0.15);
    CHECK(report.exponential_share < 1e-3);
    CHECK(report.hyperbolic.size() == 2);
    for (const auto& h : report.hyperbolic) CHECK(h.pass);
    CHECK(report.middle.pass);
    CHECK(report.low_pass);
    CHECK(std::abs(report.box_smoke.slope + 1.25) <= 0.15);
    CHECK(report.pass);

    const Json j = to_json(report);
    CHECK(j["pass"] == true);
    CHECK(j.dump() == to_json(check_theorem1(1, 1, 1, g, g)).dump());
    CHECK(to_table(report).find("overall PASS") != std::string::npos);
}

TEST_CASE("decomposition") {
    const DecompositionReport one = check_decomposition(1);
    CHECK(one.pass);
    CHECK(one.remainder_fit.slope <= -1.1);
    CHECK(std::abs(one.heat_fit.slope + 0.25) <= 0.05);

    const DecompositionReport three = check_decomposition(3);
    CHECK(three.tilde_fit.slope <= -1.6);
    CHECK(std::abs(three.heat_fit.slope + 0.75) <= 0.05);
    CHECK(std::isfinite(three.steepening));
    CHECK_THROWS_AS(check_decomposition(4), std::invalid_argument);
}

TEST_CASE("report output") {
    const SweepResult s = sweep(config(1, 1, 1), geometric_times(50, 800, 5));
    const std::string csv = to_csv(s);
    CHECK(csv.rfind("t,E,predicted_envelope\n", 0) == 0);
    CHECK(csv.find("\r") == std::string::npos);
    CHECK(csv.find("\n50,") != std::string::npos);
    CHECK(format_double(0.1) == "0.10000000000000001");
    const Json j = to_json(s);
    CHECK(j.dump().find("\"label\":") < j.dump().find("\"config\":"));
    RatesOptions options;
    options.samples = 6;
    const RatesReport r = run_rates(config(1, 1, 1), options);
    CHECK(r.pass);
    CHECK(to_table(r).find("PASS") != std::string::npos);
}
