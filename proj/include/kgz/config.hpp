/// @file config.hpp
/// @brief INI-style run configuration and the merged run plan shared by
///        the command-line drivers.
///
/// File format: [section] headers with key=value lines, '#' or ';'
/// comments, blank lines ignored. Sections and keys outside the known
/// vocabulary are fatal. Values given on the command line win over the
/// file; every resolved setting is echoed into output headers.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kgz/scheme.hpp"
#include "kgz/study.hpp"

namespace kgz {

/// Parsed key/value pairs, keyed as "section.key".
using ConfigMap = std::map<std::string, std::string>;

/// Parses INI text. Unknown sections or keys raise ConfigError naming
/// the offender; duplicate keys keep the last value.
ConfigMap parse_config(const std::string& text);

/// Reads and parses a config file; missing file raises ConfigError.
ConfigMap load_config_file(const std::string& path);

struct RunPlan {
    std::string command;  // convergence | energy | simulate
    std::string problem;
    std::vector<int> Ms;
    TauRule tau_rule;
    std::optional<double> T;  // empty: problem default
    SchemeParams params;
    std::string out;  // CSV path, or snapshot directory for simulate
    std::vector<double> snapshot_times;

    double final_time(const ProblemSpec& p) const { return T ? *T : p.default_T; }
    /// Resolved settings for provenance headers, one "key=value" per entry.
    std::vector<std::string> provenance(const ProblemSpec& p) const;
};

/// Merges config-file values and command-line overrides into a plan.
/// Overrides use the same "section.key" vocabulary; empty optional
/// strings mean "not given". Missing required settings are reported
/// together in one error.
RunPlan make_plan(const std::string& command, const ConfigMap& file_values,
                  const ConfigMap& overrides);

}  // namespace kgz
