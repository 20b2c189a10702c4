// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "dwave/commands.hpp"
#include "dwave/expansion_kernels.hpp"
#include "dwave/lemma_suite.hpp"
#include "dwave/rate_lab.hpp"
#include "dwave/spectral.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace dwave;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// 2^l (2l-1)!! / l!, in exact integer arithmetic
std::string beta_closed_form(int l) {
    std::uint64_t num = 1;
    for (int k = 0; k < l; ++k) num *= 2;
    for (int k = 2 * l - 1; k > 1; k -= 2) num *= static_cast<std::uint64_t>(k);
    std::uint64_t den = 1;
    for (int k = 2; k <= l; ++k) den *= static_cast<std::uint64_t>(k);
    if (num % den != 0) return "non-integer";
    return std::to_string(num / den);
}

Verdict ac1() {
    const auto start = Clock::now();
    cli::RunConfig config;
    config.subcommand = "coeffs";
    config.format = "json";
    config.alpha = 3;
    config.beta = 12;
    std::ostringstream out;
    const int code = cli::cmd_coeffs(config, out);
    const auto json = nlohmann::ordered_json::parse(out.str());
    std::map<std::pair<int, int>, std::string> alpha;
    for (const auto& e : json["alpha"]) alpha[{e["j"].get<int>(), e["k"].get<int>()}] = e["value"];

    Verdict v;
    std::ostringstream bad;
    const std::vector<std::tuple<int, int, std::string>> printed = {
        {0, 0, "1"}, {1, 0, "1"}, {1, 1, "2"}, {2, 0, "1/2"}, {1, 2, "5"},
        {2, 1, "2"}, {3, 0, "1/6"}, {0, 1, "0"}, {0, 2, "0"},   {0, 3, "0"}};
    for (const auto& [j, k, value] : printed) {
        const auto it = alpha.find({j, k});
        if (it == alpha.end() || it->second != value) {
            v.pass = false;
            bad << " alpha_{" << j << "," << k << "}=" << (it == alpha.end() ? "missing" : it->second);
        }
    }
    for (int l = 0; l <= 12; ++l) {
        const std::string got = json["beta"][static_cast<std::size_t>(l)];
        if (got != beta_closed_form(l)) {
            v.pass = false;
            bad << " beta_" << l << "=" << got;
        }
    }
    const double elapsed = seconds_since(start);
    v.pass = v.pass && code == 0 && elapsed < 1.0;
    std::ostringstream d;
    d << "10 printed alpha values, beta_0..12 vs 2^l(2l-1)!!/l!, " << elapsed << " s (< 1 s)" << bad.str();
    v.detail = d.str();
    return v;
}

Verdict ac2() {
    const auto start = Clock::now();
    lemmas::LemmaOptions options;
    options.max_k = 8;
    Verdict v;
    std::ostringstream d;
    for (const auto& suite : {lemmas::vanishing_at_origin, lemmas::radial_derivative, lemmas::singular_limit,
                              lemmas::derivative_tables}) {
        const lemmas::LemmaResult r = suite(options);
        v.pass = v.pass && r.pass;
        d << r.name << (r.pass ? " ok" : " FAILED") << " (" << r.checks << "), ";
        if (r.counterexample) d << "counterexample: " << *r.counterexample << ", ";
    }
    const double elapsed = seconds_since(start);
    v.pass = v.pass && elapsed < 10.0;
    d << "k <= 8, " << elapsed << " s (< 10 s)";
    v.detail = d.str();
    return v;
}

Verdict ac3() {
    const auto start = Clock::now();
    Verdict v;
    std::ostringstream d;
    for (int m = 0; m <= 8; ++m) {
        const kernels::EquivalenceResult r = kernels::check_equivalence(m);
        if (!r.equal) {
            v.pass = false;
            d << "m=" << m << " mismatch, ";
        }
    }
    const double elapsed = seconds_since(start);
    v.pass = v.pass && elapsed < 30.0;
    d << "m = 0..8 exact, " << elapsed << " s (< 30 s)";
    v.detail = d.str();
    return v;
}

Verdict ac4() {
    lemmas::LemmaOptions options;
    options.fd_points = 20;
    options.fd_max_k = 5;
    const lemmas::LemmaResult r = lemmas::finite_differences(options);
    Verdict v;
    v.pass = r.pass;
    std::ostringstream d;
    d << "F_k, d^k g, d^k h for k <= 5 at 20 seeded points vs central differences, rel <= 1e-6, " << r.checks
      << " checks";
    if (r.counterexample) d << ", counterexample: " << *r.counterexample;
    v.detail = d.str();
    return v;
}

Verdict ac5() {
    const auto start = Clock::now();
    Verdict v;
    std::ostringstream d;
    const std::vector<std::tuple<int, int, int, double>> cases = {
        {1, 1, 1, -1.25}, {2, 2, 1, -1.50}, {1, 1, 2, -2.25}, {3, 2, 2, -2.75}};
    for (const auto& [n, b, l, expected] : cases) {
        rates::SweepConfig config;
        config.n = n;
        config.b = b;
        config.l = l;
        const rates::RateFit fit =
            rates::fit_rate(rates::sweep(config, rates::geometric_times(50.0, 800.0, rates::kDefaultSamples)),
                            rates::Window{50.0, 800.0});
        const bool ok = std::abs(fit.slope - expected) <= 0.15;
        v.pass = v.pass && ok;
        d << "(n=" << n << ",b=" << b << ",l=" << l << ") " << fit.slope << " vs " << expected
          << (ok ? "" : " OUT") << "; ";
    }
    const double elapsed = seconds_since(start);
    v.pass = v.pass && elapsed < 120.0;
    d << elapsed << " s (< 120 s)";
    v.detail = d.str();
    return v;
}

Verdict ac6() {
    Verdict v;
    std::ostringstream d;
    const auto times = rates::geometric_times(5.0, 60.0, rates::kDefaultSamples);
    for (const auto& [n, b] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{3, 2}}) {
        for (int i : {1, 2}) {
            rates::SweepConfig config;
            config.n = n;
            config.b = b;
            config.piece = rates::piece_from_index(i);
            config.region = mult::Region::High;
            const rates::SweepResult s = rates::sweep(config, times);
            const double p = i == 1 ? b : b - 1;
            const rates::EnvelopeCheck check = rates::envelope_check(
                "H", s, [p](double t) { return std::pow(t, p) * std::exp(-0.5 * t); });
            v.pass = v.pass && check.pass;
            d << "(n=" << n << ",b=" << b << ",i=" << i << ") ratio slope " << check.slope
              << (check.pass ? "" : " UNBOUNDED") << "; ";
        }
    }
    d << "bounded = finite ratios with log-log slope <= " << rates::kSlopeTolerance << " on [5, 60]";
    v.detail = d.str();
    return v;
}

Verdict ac7() {
    Verdict v;
    std::ostringstream d;
    const rates::DecompositionReport one = rates::check_decomposition(1);
    const bool one_rem = one.remainder_fit.slope <= -1.1;
    const bool one_heat = std::abs(one.heat_fit.slope + 0.25) <= 0.05;
    d << "n=1 remainder slope " << one.remainder_fit.slope << (one_rem ? " <= -1.1" : " > -1.1") << ", heat slope "
      << one.heat_fit.slope << (one_heat ? " within" : " outside") << " 0.05 of -0.25; ";

    const rates::DecompositionReport three = rates::check_decomposition(3);
    const bool steep = three.steepening >= 0.4;
    d << "n=3 slope without w~ " << three.remainder_fit.slope << ", with w~ " << three.tilde_fit.slope
      << ", steepening " << three.steepening << (steep ? " >= 0.4" : " < 0.4");
    v.pass = one_rem && one_heat && steep;
    v.detail = d.str();
    return v;
}

Verdict ac8() {
    Verdict v;
    std::ostringstream d;
    const spectral::RadialProfile g = spectral::gaussian(1.0);
    const auto heat = mult::comparison_multipliers().heat_hat;
    double worst = 0.0;
    for (int n : {1, 2, 3}) {
        for (double t : {1.0, 10.0, 100.0}) {
            const double numeric = spectral::l2_norm_radial(heat, g, n, t, spectral::make_rule({}, t));
            // int_{R^n} e^{-2(t+1)|xi|^2} d xi = (pi / (2(t+1)))^{n/2}
            const double exact = std::pow(std::numbers::pi / (2.0 * (t + 1.0)), 0.25 * n);
            worst = std::max(worst, std::abs(numeric - exact) / exact);
        }
    }
    v.pass = worst <= 1e-10;
    d << "n = 1, 2, 3 and t = 1, 10, 100, worst relative error " << worst << " (<= 1e-10)";
    v.detail = d.str();
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"AC1 exact coefficients", ac1}, {"AC2 lemma identities", ac2},   {"AC3 equivalence", ac3},
        {"AC4 finite differences", ac4}, {"AC5 diffusive rates", ac5},    {"AC6 hyperbolic envelope", ac6},
        {"AC7 decomposition", ac7},      {"AC8 closed-form norm", ac8}};
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += v.pass ? 0 : 1;
        std::printf("%s  %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    }
    std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
