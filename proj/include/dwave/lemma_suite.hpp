#pragma once

// Executable checks of the kernel identities, the derivative tables and the
// multiplier invariants. Each suite reports pass/fail and the first
// counterexample it finds.

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dwave::lemmas {

struct LemmaOptions {
    int max_k = 8;
    std::uint64_t seed = 20240917;
    int fd_points = 20;
    int fd_max_k = 5;
    /// Negates one coefficient of I_2 before the identity checks.
    bool corrupt = false;
};

struct LemmaResult {
    std::string name;
    std::string description;
    bool pass = true;
    int checks = 0;
    std::optional<std::string> counterexample;
    /// free-form numbers worth reporting (sup values and the like)
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

using Suite = std::function<LemmaResult(const LemmaOptions&)>;

LemmaResult cos_recurrence(const LemmaOptions& options);
LemmaResult chain_rule(const LemmaOptions& options);
LemmaResult vanishing_at_origin(const LemmaOptions& options);
LemmaResult radial_derivative(const LemmaOptions& options);
LemmaResult singular_limit(const LemmaOptions& options);
LemmaResult inverse_root_derivatives(const LemmaOptions& options);
LemmaResult g_derivatives(const LemmaOptions& options);
LemmaResult h_derivatives(const LemmaOptions& options);
LemmaResult moment_bound(const LemmaOptions& options);
LemmaResult cos_growth(const LemmaOptions& options);
LemmaResult derivative_tables(const LemmaOptions& options);
LemmaResult finite_differences(const LemmaOptions& options);
LemmaResult cutoff_partition(const LemmaOptions& options);
LemmaResult profile_split(const LemmaOptions& options);

/// Every suite above, in that order.
std::vector<LemmaResult> run_all(const LemmaOptions& options);

nlohmann::ordered_json to_json(const LemmaResult& result);
std::string to_line(const LemmaResult& result);

}  // namespace dwave::lemmas
