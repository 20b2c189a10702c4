#pragma once

// Time sweeps of remainder norms, log-log rate fits, and the decay-rate
// checks for the full remainder, the frequency regions and the
// decomposition profiles.

#include "dwave/spectral.hpp"

#include "json.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dwave::rates {

using Json = nlohmann::ordered_json;

/// Which remainder piece a sweep measures. Both is
/// ||m^1 u0^|| + ||m^2 (u0^/2 + u1^)||.
enum class Piece { Both = 0, First = 1, Second = 2 };

Piece piece_from_index(int i);

/// t_min (t_max / t_min)^{j/(samples-1)}, j = 0..samples-1.
std::vector<double> geometric_times(double t_min, double t_max, int samples);

struct SweepConfig {
    int n = 1;
    int b = 1;
    int l = 1;
    Piece piece = Piece::Both;
    mult::Region region = mult::Region::All;
    spectral::RadialProfile data0 = spectral::gaussian(1.0);
    spectral::RadialProfile data1 = spectral::gaussian(1.0);
    spectral::QuadratureSettings quadrature;
    double tail_tolerance = spectral::kDefaultTailTolerance;
};

struct SweepResult {
    std::string label;
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> envelope;  ///< predicted shape, unit constant
    Json config;
};

/// E(t) at each time. Propagates spectral::AccuracyError.
SweepResult sweep(const SweepConfig& config, const std::vector<double>& times);

/// Sweep of an arbitrary E(t); envelope is optional.
SweepResult sweep_function(const std::string& label, const std::function<double(double)>& value,
                           const std::vector<double>& times,
                           const std::function<double(double)>& envelope = nullptr);

/// Envelope shape for a remainder sweep, constants set to 1:
///   ALL, L: t^{2(b-1)} e^{-t/2} + t^b e^{-t/2} + t^{-n/4-l}
///   M: t^{l-1} e^{-middle_band_rate() t}
///   H: t^p e^{-t/2} with p = b (first piece) or b - 1 (second)
double predicted_envelope(const SweepConfig& config, double t);

/// Exponential decay rate of K0^, K1^ on the support of the middle cutoff,
/// 1/2 - sqrt(1/4 - 1/16), attained at its left edge r = 1/4.
double middle_band_rate();

struct Window {
    double t_min;
    double t_max;
};

inline constexpr Window kDefaultWindow{50.0, 800.0};
inline constexpr int kDefaultSamples = 12;
inline constexpr double kSlopeTolerance = 0.15;

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    Window window{0.0, 0.0};
    int samples = 0;
};

/// Ordinary least squares of log E on log t over the samples inside the
/// window. Throws std::invalid_argument with fewer than 5 samples and
/// std::domain_error on a nonpositive value.
RateFit fit_rate(const SweepResult& sweep, Window window);
RateFit fit_rate(const SweepResult& sweep);

/// Boundedness of E(t) / envelope(t): all ratios finite and a log-log slope
/// of at most kSlopeTolerance.
struct EnvelopeCheck {
    std::string label;
    std::vector<double> times;
    std::vector<double> ratios;
    double slope = 0.0;
    bool pass = false;
};

EnvelopeCheck envelope_check(const std::string& label, const SweepResult& sweep,
                             const std::function<double(double)>& envelope);

struct RatesOptions {
    Window window = kDefaultWindow;
    int samples = kDefaultSamples;
    double tolerance = kSlopeTolerance;
    Window hyperbolic_window{5.0, 60.0};
    Window middle_window{10.0, 200.0};
    spectral::QuadratureSettings quadrature;
};

struct RatesReport {
    SweepConfig config;
    double predicted_slope = 0.0;
    SweepResult sweep;
    RateFit fit;
    bool pass = false;
};

/// Sweep of the chosen piece/region over the window and its fitted slope
/// against -n/4 - l. No hypothesis on b.
RatesReport run_rates(const SweepConfig& config, const RatesOptions& options = {});

struct Theorem1Report {
    int n = 0;
    int b = 0;
    int l = 0;
    std::string data0;
    std::string data1;
    double predicted_slope = 0.0;
    SweepResult full;
    RateFit fit;
    /// t^{2(b-1)} e^{-t/2} / t^{-n/4-l} at the window start
    double exponential_share = 0.0;
    bool diffusive_pass = false;
    std::vector<EnvelopeCheck> hyperbolic;
    EnvelopeCheck middle;
    RateFit low_fit;
    bool low_pass = false;
    /// same full sweep with box(1) data, reported only
    RateFit box_smoke;
    bool pass = false;
};

/// Throws std::invalid_argument unless b > n/2 and l >= 1.
Theorem1Report check_theorem1(int n, int b, int l, const spectral::RadialProfile& data0,
                              const spectral::RadialProfile& data1, const RatesOptions& options = {});

struct DecompositionReport {
    int n = 0;
    SweepResult remainder;             ///< ||u^ - e^{-t/2} w^ - v^||
    SweepResult remainder_with_tilde;  ///< ||u^ - e^{-t/2}(w^ + (1/2 + t/8) w~^) - v^||
    SweepResult heat;                  ///< ||v^||
    RateFit remainder_fit;
    RateFit tilde_fit;
    RateFit heat_fit;
    double steepening = 0.0;  ///< remainder_fit.slope - tilde_fit.slope
    bool pass = false;
    std::vector<std::string> failures;
};

/// ||u^ - e^{-t/2}(w^ + tilde_weight (1/2 + t/8) w~^) - v^|| for data u0 = u1.
double decomposition_norm(int n, double t, const spectral::RadialProfile& data, double tilde_weight,
                          const spectral::QuadratureSettings& settings = {});

/// Gaussian data u0 = u1 = data. Pass requires the remainder slope at most
/// -n/4 - 1 + 0.15 and the heat slope within 0.05 of -n/4; for n = 3 the
/// remainder is the one with the w-tilde term and adding that term must
/// steepen the slope by at least 0.4.
DecompositionReport check_decomposition(int n, const spectral::RadialProfile& data = spectral::gaussian(1.0),
                                        const RatesOptions& options = {});

// ---------------------------------------------------------------------------
// Output

Json to_json(const RateFit& fit);
Json to_json(const SweepResult& sweep);
Json to_json(const EnvelopeCheck& check);
Json to_json(const RatesReport& report);
Json to_json(const Theorem1Report& report);
Json to_json(const DecompositionReport& report);

/// Header "t,E,predicted_envelope", 17 significant digits, LF endings.
std::string to_csv(const SweepResult& sweep);

std::string to_table(const RatesReport& report);
std::string to_table(const Theorem1Report& report);
std::string to_table(const DecompositionReport& report);

/// printf("%.17g").
std::string format_double(double value);

}  // namespace dwave::rates
