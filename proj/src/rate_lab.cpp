#include "dwave/rate_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dwave::rates {

Piece piece_from_index(int i) {
    switch (i) {
        case 0: return Piece::Both;
        case 1: return Piece::First;
        case 2: return Piece::Second;
        default: throw std::invalid_argument("piece index must be 0 (both), 1 or 2");
    }
}

std::vector<double> geometric_times(double t_min, double t_max, int samples) {
    if (!(t_min > 0.0) || !(t_max > t_min) || samples < 2) {
        throw std::invalid_argument("time window needs 0 < t_min < t_max and at least 2 samples");
    }
    std::vector<double> times(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        times[j] = t_min * std::pow(t_max / t_min, static_cast<double>(j) / (samples - 1));
    }
    times.back() = t_max;
    return times;
}

double middle_band_rate() { return 0.5 - std::sqrt(0.25 - 0.0625); }

namespace {

// a * p + b * q, with a tail bound from the triangle inequality.
spectral::RadialProfile combine(double a, const spectral::RadialProfile& p, double b,
                                const spectral::RadialProfile& q) {
    spectral::RadialProfile out;
    out.evaluate = [=](double r) { return a * p(r) + b * q(r); };
    out.tail_l2sq = [=](double R, int n) {
        const double s = std::abs(a) * std::sqrt(p.tail_l2sq(R, n)) + std::abs(b) * std::sqrt(q.tail_l2sq(R, n));
        return s * s;
    };
    out.breakpoints = p.breakpoints;
    out.breakpoints.insert(out.breakpoints.end(), q.breakpoints.begin(), q.breakpoints.end());
    std::ostringstream label;
    label << a << "*" << p.label << "+" << b << "*" << q.label;
    out.label = label.str();
    return out;
}

spectral::QuadratureRule rule_for(const spectral::QuadratureSettings& settings, double t,
                                  const spectral::RadialProfile& a, const spectral::RadialProfile& b) {
    std::vector<double> extra = a.breakpoints;
    extra.insert(extra.end(), b.breakpoints.begin(), b.breakpoints.end());
    return spectral::make_rule(settings, t, extra);
}

Json config_json(const SweepConfig& c) {
    Json j;
    j["n"] = c.n;
    j["b"] = c.b;
    j["l"] = c.l;
    j["i"] = static_cast<int>(c.piece);
    j["region"] = mult::to_string(c.region);
    j["data0"] = c.data0.label;
    j["data1"] = c.data1.label;
    j["R"] = c.quadrature.cutoff_radius;
    j["nodes"] = c.quadrature.nodes_per_panel;
    return j;
}

std::string piece_name(Piece p) {
    switch (p) {
        case Piece::Both: return "both";
        case Piece::First: return "m1";
        case Piece::Second: return "m2";
    }
    return "?";
}

void check_config(const SweepConfig& c) {
    if (c.n < 1 || c.b < 1 || c.l < 1) {
        throw std::invalid_argument("sweep needs n >= 1, b >= 1, l >= 1");
    }
}

}  // namespace

double predicted_envelope(const SweepConfig& c, double t) {
    const double damp = std::exp(-0.5 * t);
    const double diffusive = std::pow(t, -0.25 * c.n - c.l);
    switch (c.region) {
        case mult::Region::All:
        case mult::Region::Low:
            return std::pow(t, 2 * (c.b - 1)) * damp + std::pow(t, c.b) * damp + diffusive;
        case mult::Region::Middle:
            return std::pow(t, c.l - 1) * std::exp(-middle_band_rate() * t);
        case mult::Region::High:
            return std::pow(t, c.piece == Piece::Second ? c.b - 1 : c.b) * damp;
    }
    return 0.0;
}

SweepResult sweep(const SweepConfig& config, const std::vector<double>& times) {
    check_config(config);
    const mult::Multiplier m1 = mult::remainder_multiplier(1, config.b, config.l, config.region);
    const mult::Multiplier m2 = mult::remainder_multiplier(2, config.b, config.l, config.region);
    const spectral::RadialProfile second = combine(0.5, config.data0, 1.0, config.data1);

    SweepResult out;
    out.label = piece_name(config.piece) + "[b=" + std::to_string(config.b) + ",l=" + std::to_string(config.l) +
                "," + mult::to_string(config.region) + "]";
    out.config = config_json(config);
    for (double t : times) {
        if (!out.times.empty() && !(t > out.times.back())) {
            throw std::invalid_argument("sweep times must be strictly increasing");
        }
        const spectral::QuadratureRule rule = rule_for(config.quadrature, t, config.data0, config.data1);
        double value = 0.0;
        if (config.piece != Piece::Second) {
            value += spectral::l2_norm_radial(m1, config.data0, config.n, t, rule, config.tail_tolerance);
        }
        if (config.piece != Piece::First) {
            value += spectral::l2_norm_radial(m2, second, config.n, t, rule, config.tail_tolerance);
        }
        out.times.push_back(t);
        out.values.push_back(value);
        out.envelope.push_back(predicted_envelope(config, t));
    }
    return out;
}

SweepResult sweep_function(const std::string& label, const std::function<double(double)>& value,
                           const std::vector<double>& times, const std::function<double(double)>& envelope) {
    SweepResult out;
    out.label = label;
    out.config = Json::object();
    out.config["label"] = label;
    for (double t : times) {
        if (!out.times.empty() && !(t > out.times.back())) {
            throw std::invalid_argument("sweep times must be strictly increasing");
        }
        out.times.push_back(t);
        out.values.push_back(value(t));
        out.envelope.push_back(envelope ? envelope(t) : std::numeric_limits<double>::quiet_NaN());
    }
    return out;
}

RateFit fit_rate(const SweepResult& sweep, Window window) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t k = 0; k < sweep.times.size(); ++k) {
        const double t = sweep.times[k];
        if (t < window.t_min * (1 - 1e-12) || t > window.t_max * (1 + 1e-12)) continue;
        if (!(sweep.values[k] > 0.0) || !std::isfinite(sweep.values[k])) {
            std::ostringstream msg;
            msg << "fit_rate: value " << sweep.values[k] << " at t = " << t << " is not positive and finite";
            throw std::domain_error(msg.str());
        }
        xs.push_back(std::log(t));
        ys.push_back(std::log(sweep.values[k]));
    }
    if (xs.size() < 5) {
        throw std::invalid_argument("fit_rate: fewer than 5 samples in the window");
    }
    const double count = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        fit.max_residual = std::max(fit.max_residual, std::abs(ys[k] - fit.intercept - fit.slope * xs[k]));
    }
    fit.window = window;
    fit.samples = static_cast<int>(xs.size());
    return fit;
}

RateFit fit_rate(const SweepResult& sweep) {
    if (sweep.times.empty()) {
        throw std::invalid_argument("fit_rate: empty sweep");
    }
    return fit_rate(sweep, Window{sweep.times.front(), sweep.times.back()});
}

EnvelopeCheck envelope_check(const std::string& label, const SweepResult& sweep,
                             const std::function<double(double)>& envelope) {
    EnvelopeCheck check;
    check.label = label;
    check.times = sweep.times;
    bool finite = true;
    for (std::size_t k = 0; k < sweep.times.size(); ++k) {
        const double ratio = sweep.values[k] / envelope(sweep.times[k]);
        finite = finite && std::isfinite(ratio) && ratio >= 0.0;
        check.ratios.push_back(ratio);
    }
    bool positive = finite;
    for (double r : check.ratios) positive = positive && r > 0.0;
    if (positive) {
        SweepResult ratios;
        ratios.times = check.times;
        ratios.values = check.ratios;
        check.slope = fit_rate(ratios).slope;
    }
    // an identically zero remainder is trivially bounded
    check.pass = finite && check.slope <= kSlopeTolerance;
    return check;
}

RatesReport run_rates(const SweepConfig& config, const RatesOptions& options) {
    RatesReport report;
    report.config = config;
    report.predicted_slope = -0.25 * config.n - config.l;
    report.sweep = sweep(config, geometric_times(options.window.t_min, options.window.t_max, options.samples));
    report.fit = fit_rate(report.sweep, options.window);
    report.pass = std::abs(report.fit.slope - report.predicted_slope) <= options.tolerance;
    return report;
}

Theorem1Report check_theorem1(int n, int b, int l, const spectral::RadialProfile& data0,
                              const spectral::RadialProfile& data1, const RatesOptions& options) {
    if (n < 1 || l < 1 || !(2 * b > n)) {
        std::ostringstream msg;
        msg << "the theorem check needs b > n/2 and l >= 1 (got n = " << n << ", b = " << b << ", l = " << l << ")";
        throw std::invalid_argument(msg.str());
    }
    Theorem1Report report;
    report.n = n;
    report.b = b;
    report.l = l;
    report.data0 = data0.label;
    report.data1 = data1.label;
    report.predicted_slope = -0.25 * n - l;

    SweepConfig config;
    config.n = n;
    config.b = b;
    config.l = l;
    config.data0 = data0;
    config.data1 = data1;
    config.quadrature = options.quadrature;
    const std::vector<double> times = geometric_times(options.window.t_min, options.window.t_max, options.samples);

    report.full = sweep(config, times);
    report.fit = fit_rate(report.full, options.window);
    const double t0 = options.window.t_min;
    report.exponential_share = std::pow(t0, 2 * (b - 1)) * std::exp(-0.5 * t0) / std::pow(t0, report.predicted_slope);
    report.diffusive_pass = std::abs(report.fit.slope - report.predicted_slope) <= options.tolerance &&
                            report.exponential_share < 1e-3;

    const std::vector<double> hyper_times =
        geometric_times(options.hyperbolic_window.t_min, options.hyperbolic_window.t_max, options.samples);
    for (Piece piece : {Piece::First, Piece::Second}) {
        SweepConfig h = config;
        h.piece = piece;
        h.region = mult::Region::High;
        const SweepResult s = sweep(h, hyper_times);
        report.hyperbolic.push_back(
            envelope_check("H," + piece_name(piece), s, [&](double t) { return predicted_envelope(h, t); }));
    }

    SweepConfig mid = config;
    mid.region = mult::Region::Middle;
    const SweepResult ms =
        sweep(mid, geometric_times(options.middle_window.t_min, options.middle_window.t_max, options.samples));
    report.middle = envelope_check("M,both", ms, [&](double t) { return predicted_envelope(mid, t); });

    SweepConfig low = config;
    low.region = mult::Region::Low;
    report.low_fit = fit_rate(sweep(low, times), options.window);
    report.low_pass = std::abs(report.low_fit.slope - report.predicted_slope) <= options.tolerance;

    SweepConfig smoke = config;
    smoke.data0 = spectral::box(1.0);
    smoke.data1 = spectral::box(1.0);
    report.box_smoke = fit_rate(sweep(smoke, times), options.window);

    report.pass = report.diffusive_pass && report.low_pass && report.middle.pass;
    for (const auto& h : report.hyperbolic) report.pass = report.pass && h.pass;
    return report;
}

double decomposition_norm(int n, double t, const spectral::RadialProfile& data, double tilde_weight,
                          const spectral::QuadratureSettings& settings) {
    const spectral::QuadratureRule rule = rule_for(settings, t, data, data);
    const auto values = [&](double r) {
        const double a = data(r);
        const double s = t * mult::sinc(t * r);
        const double exact = mult::k0_hat(r, t) * a + mult::k1_hat(r, t) * 1.5 * a;
        const double w = std::cos(t * r) * a + s * a;
        const double wtilde = s * a;
        const double wave = std::exp(-0.5 * t) * (w + tilde_weight * (0.5 + t / 8.0) * wtilde);
        return exact - wave - std::exp(-t * r * r) * 2.0 * a;
    };
    // |exact| <= 1 + t/2 and |w|, |w~| <= t away from the origin
    const double factor = 4.0 + 2.0 * t * (1.0 + t);
    return spectral::l2_norm_radial(values, data, n, factor, rule);
}

DecompositionReport check_decomposition(int n, const spectral::RadialProfile& data, const RatesOptions& options) {
    if (n < 1 || n > 3) {
        throw std::invalid_argument("decomposition check supports n = 1, 2, 3");
    }
    DecompositionReport report;
    report.n = n;
    const std::vector<double> times = geometric_times(options.window.t_min, options.window.t_max, options.samples);
    const spectral::QuadratureSettings settings = options.quadrature;

    const auto remainder = [&](double t, double tilde_weight) {
        return decomposition_norm(n, t, data, tilde_weight, settings);
    };
    const auto heat = [&](double t) {
        const spectral::QuadratureRule rule = rule_for(settings, t, data, data);
        return 2.0 * spectral::l2_norm_radial(mult::comparison_multipliers().heat_hat, data, n, t, rule);
    };

    report.remainder = sweep_function("u-e^{-t/2}w-v", [&](double t) { return remainder(t, 0.0); }, times,
                                      [n](double t) { return std::pow(t, -0.25 * n - 1.0); });
    report.remainder_with_tilde =
        sweep_function("u-e^{-t/2}(w+(1/2+t/8)wtilde)-v", [&](double t) { return remainder(t, 1.0); }, times,
                       [n](double t) { return std::pow(t, -0.25 * n - 1.0); });
    report.heat = sweep_function("v", heat, times, [n](double t) { return std::pow(t, -0.25 * n); });
    report.remainder_fit = fit_rate(report.remainder, options.window);
    report.tilde_fit = fit_rate(report.remainder_with_tilde, options.window);
    report.heat_fit = fit_rate(report.heat, options.window);
    report.steepening = report.remainder_fit.slope - report.tilde_fit.slope;

    const double bound = -0.25 * n - 1.0 + options.tolerance;
    const RateFit& main_fit = n == 3 ? report.tilde_fit : report.remainder_fit;
    std::ostringstream msg;
    if (!(main_fit.slope <= bound)) {
        msg << "remainder slope " << main_fit.slope << " above " << bound;
        report.failures.push_back(msg.str());
        msg.str("");
    }
    if (!(main_fit.slope < report.heat_fit.slope)) {
        report.failures.push_back("remainder does not decay faster than the heat part");
    }
    if (!(std::abs(report.heat_fit.slope + 0.25 * n) <= 0.05)) {
        msg << "heat slope " << report.heat_fit.slope << " not within 0.05 of " << -0.25 * n;
        report.failures.push_back(msg.str());
        msg.str("");
    }
    if (n == 3 && !(report.steepening >= 0.4)) {
        msg << "the w-tilde term steepens the slope by " << report.steepening << ", below 0.4";
        report.failures.push_back(msg.str());
    }
    report.pass = report.failures.empty();
    return report;
}

// ---------------------------------------------------------------------------
// Output

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

Json to_json(const RateFit& fit) {
    Json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["max_residual"] = fit.max_residual;
    j["window"] = Json::array({fit.window.t_min, fit.window.t_max});
    j["samples"] = fit.samples;
    return j;
}

Json to_json(const SweepResult& sweep) {
    Json j;
    j["label"] = sweep.label;
    j["config"] = sweep.config;
    j["times"] = sweep.times;
    j["values"] = sweep.values;
    Json env = Json::array();
    for (double e : sweep.envelope) env.push_back(std::isfinite(e) ? Json(e) : Json(nullptr));
    j["envelope"] = env;
    return j;
}

Json to_json(const EnvelopeCheck& check) {
    Json j;
    j["label"] = check.label;
    j["times"] = check.times;
    j["ratios"] = check.ratios;
    j["slope"] = check.slope;
    j["pass"] = check.pass;
    return j;
}

Json to_json(const RatesReport& report) {
    Json j;
    j["config"] = report.sweep.config;
    j["predicted_slope"] = report.predicted_slope;
    j["fit"] = to_json(report.fit);
    j["sweep"] = to_json(report.sweep);
    j["pass"] = report.pass;
    return j;
}

Json to_json(const Theorem1Report& report) {
    Json j;
    j["n"] = report.n;
    j["b"] = report.b;
    j["l"] = report.l;
    j["data0"] = report.data0;
    j["data1"] = report.data1;
    j["predicted_slope"] = report.predicted_slope;
    j["fit"] = to_json(report.fit);
    j["exponential_share"] = report.exponential_share;
    j["diffusive_pass"] = report.diffusive_pass;
    Json hyper = Json::array();
    for (const auto& h : report.hyperbolic) hyper.push_back(to_json(h));
    j["hyperbolic"] = hyper;
    j["middle"] = to_json(report.middle);
    j["middle_rate"] = middle_band_rate();
    j["low_fit"] = to_json(report.low_fit);
    j["low_pass"] = report.low_pass;
    j["box_smoke"] = to_json(report.box_smoke);
    j["sweep"] = to_json(report.full);
    j["pass"] = report.pass;
    return j;
}

Json to_json(const DecompositionReport& report) {
    Json j;
    j["n"] = report.n;
    j["remainder_fit"] = to_json(report.remainder_fit);
    j["tilde_fit"] = to_json(report.tilde_fit);
    j["heat_fit"] = to_json(report.heat_fit);
    j["steepening"] = report.steepening;
    j["remainder"] = to_json(report.remainder);
    j["remainder_with_tilde"] = to_json(report.remainder_with_tilde);
    j["heat"] = to_json(report.heat);
    j["failures"] = report.failures;
    j["pass"] = report.pass;
    return j;
}

std::string to_csv(const SweepResult& sweep) {
    std::string out = "t,E,predicted_envelope\n";
    for (std::size_t k = 0; k < sweep.times.size(); ++k) {
        out += format_double(sweep.times[k]) + "," + format_double(sweep.values[k]) + "," +
               format_double(sweep.envelope[k]) + "\n";
    }
    return out;
}

namespace {

std::string fit_line(const std::string& name, const RateFit& fit) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-28s slope %9.5f  residual %.2e  window [%g, %g]\n", name.c_str(), fit.slope,
                  fit.max_residual, fit.window.t_min, fit.window.t_max);
    return buf;
}

std::string sweep_table(const SweepResult& s) {
    std::string out;
    char buf[120];
    std::snprintf(buf, sizeof buf, "%14s %24s %24s\n", "t", "E", "envelope");
    out += buf;
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%14.6g %24.16e %24.16e\n", s.times[k], s.values[k], s.envelope[k]);
        out += buf;
    }
    return out;
}

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

}  // namespace

std::string to_table(const RatesReport& report) {
    std::ostringstream out;
    out << "rates " << report.sweep.label << " n=" << report.config.n << " data0=" << report.config.data0.label
        << " data1=" << report.config.data1.label << "\n";
    out << sweep_table(report.sweep);
    out << fit_line("fit", report.fit);
    out << "predicted slope " << report.predicted_slope << "  " << verdict(report.pass) << "\n";
    return out.str();
}

std::string to_table(const Theorem1Report& report) {
    std::ostringstream out;
    out << "theorem check n=" << report.n << " b=" << report.b << " l=" << report.l << " data0=" << report.data0
        << " data1=" << report.data1 << "\n";
    out << sweep_table(report.full);
    out << fit_line("full remainder", report.fit);
    out << "predicted slope " << report.predicted_slope << ", exponential share at window start "
        << report.exponential_share << "  " << verdict(report.diffusive_pass) << "\n";
    out << fit_line("low region", report.low_fit);
    out << "low region  " << verdict(report.low_pass) << "\n";
    for (const auto& h : report.hyperbolic) {
        out << "envelope " << h.label << " ratio slope " << h.slope << "  " << verdict(h.pass) << "\n";
    }
    out << "envelope " << report.middle.label << " (rate " << middle_band_rate() << ") ratio slope "
        << report.middle.slope << "  " << verdict(report.middle.pass) << "\n";
    out << fit_line("box(1) smoke", report.box_smoke);
    out << "overall " << verdict(report.pass) << "\n";
    return out.str();
}

std::string to_table(const DecompositionReport& report) {
    std::ostringstream out;
    out << "decomposition n=" << report.n << "\n";
    out << fit_line(report.remainder.label, report.remainder_fit);
    out << fit_line(report.remainder_with_tilde.label, report.tilde_fit);
    out << fit_line(report.heat.label, report.heat_fit);
    out << "steepening from the w-tilde term " << report.steepening << "\n";
    for (const auto& f : report.failures) out << "failure: " << f << "\n";
    out << "overall " << verdict(report.pass) << "\n";
    return out.str();
}

}  // namespace dwave::rates
