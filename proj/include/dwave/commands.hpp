#pragma once

// Subcommand implementations behind the command-line tool. Each returns the
// process exit code.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace dwave::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAccuracy = 3;

/// Invalid flag values; maps to kExitUsage.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string subcommand;
    int n = 1;
    int b = 1;
    int l = 1;
    int i = 0;  ///< 0 = both pieces
    std::string region = "ALL";
    int m = 3;
    int max_k = 8;
    std::string data = "gaussian";
    std::optional<double> sigma;
    double R = 12.0;
    int nodes = 20;
    double tmin = 50.0;
    double tmax = 800.0;
    int samples = 12;
    std::string format = "table";
    std::string out;
    std::uint64_t seed = 20240917;
    bool theorem1 = false;

    // coeffs table selection; none set means all of them
    std::optional<int> L;
    std::optional<int> alpha;
    std::optional<int> beta;
    std::optional<int> sing;
    std::optional<int> ik;

    bool corrupt = false;  ///< lemmas self-test
    double t = 20.0;       ///< decompose snapshot time
    std::size_t grid = 0;  ///< decompose grid points per axis, 0 = default
    double length = 0.0;   ///< decompose box side, 0 = default
};

/// Throws ConfigError on values outside the documented ranges.
void validate(const RunConfig& config);

int cmd_coeffs(const RunConfig& config, std::ostream& out);
int cmd_lemmas(const RunConfig& config, std::ostream& out);
int cmd_equiv(const RunConfig& config, std::ostream& out);
int cmd_rates(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_decompose(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Validates, dispatches on config.subcommand, routes output to config.out
/// when set (decompose treats it as a directory), and maps errors to exit
/// codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dwave::cli
