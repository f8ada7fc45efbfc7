#include "kgz/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace kgz {
namespace {

const std::set<std::string> kKnownKeys = {
    "problem.name",     "mesh.M",           "time.tau",
    "time.T",           "solver.picard_tol", "solver.cg_tol",
    "solver.quad_order", "solver.max_picard", "output.path",
    "output.snapshots"};

const std::set<std::string> kKnownSections = {"problem", "mesh", "time", "solver",
                                              "output"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw ConfigError("setting " + key + ": cannot parse number '" + text + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0')
        throw ConfigError("setting " + key + ": cannot parse integer '" + text + "'");
    return static_cast<int>(v);
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ConfigMap parse_config(const std::string& text) {
    ConfigMap out;
    std::stringstream ss(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (!kKnownSections.count(section))
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key=value, got '" + line + "'");
        if (section.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": key outside any [section]");
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!kKnownKeys.count(key))
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": unknown setting '" + key + "'");
        out[key] = value;
    }
    return out;
}

ConfigMap load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

RunPlan make_plan(const std::string& command, const ConfigMap& file_values,
                  const ConfigMap& overrides) {
    ConfigMap merged = file_values;
    for (const auto& [k, v] : overrides) {
        if (!kKnownKeys.count(k))
            throw ConfigError("unknown setting '" + k + "'");
        merged[k] = v;
    }

    std::vector<std::string> missing;
    if (!merged.count("problem.name")) missing.push_back("problem.name");
    if (!merged.count("mesh.M")) missing.push_back("mesh.M");
    if (!missing.empty()) {
        std::string msg = "missing required settings:";
        for (const auto& m : missing) msg += " " + m;
        throw ConfigError(msg);
    }

    RunPlan plan;
    plan.command = command;
    plan.problem = merged.at("problem.name");
    for (const auto& part : split_commas(merged.at("mesh.M"))) {
        const int M = parse_int("mesh.M", part);
        if (M < 2) throw ConfigError("mesh.M entries must be at least 2, got " + part);
        plan.Ms.push_back(M);
    }
    if (plan.Ms.empty()) throw ConfigError("mesh.M: empty resolution list");

    plan.tau_rule = TauRule::parse(merged.count("time.tau") ? merged.at("time.tau") : "h");
    if (merged.count("time.T")) {
        const double T = parse_double("time.T", merged.at("time.T"));
        if (!(T > 0.0)) throw ConfigError("time.T must be positive");
        plan.T = T;
    }
    if (merged.count("solver.picard_tol")) {
        plan.params.picard_tol = parse_double("solver.picard_tol",
                                              merged.at("solver.picard_tol"));
        if (!(plan.params.picard_tol > 0.0))
            throw ConfigError("solver.picard_tol must be positive");
    }
    if (merged.count("solver.cg_tol")) {
        plan.params.cg_tol = parse_double("solver.cg_tol", merged.at("solver.cg_tol"));
        if (!(plan.params.cg_tol > 0.0) || plan.params.cg_tol > 1e-4)
            throw ConfigError("solver.cg_tol must lie in (0, 1e-4]");
    }
    if (merged.count("solver.quad_order")) {
        plan.params.quad_points = parse_int("solver.quad_order",
                                            merged.at("solver.quad_order"));
        if (plan.params.quad_points < 1 || plan.params.quad_points > 6)
            throw ConfigError("solver.quad_order must lie in [1, 6]");
    }
    if (merged.count("solver.max_picard")) {
        plan.params.max_picard = parse_int("solver.max_picard",
                                           merged.at("solver.max_picard"));
        if (plan.params.max_picard < 1)
            throw ConfigError("solver.max_picard must be at least 1");
    }
    if (merged.count("output.path")) plan.out = merged.at("output.path");
    if (merged.count("output.snapshots")) {
        for (const auto& part : split_commas(merged.at("output.snapshots")))
            plan.snapshot_times.push_back(parse_double("output.snapshots", part));
    }

    if (command == "energy" || command == "simulate") {
        if (plan.Ms.size() != 1)
            throw ConfigError(command + " takes exactly one mesh resolution, got " +
                              std::to_string(plan.Ms.size()));
    }
    return plan;
}

std::vector<std::string> RunPlan::provenance(const ProblemSpec& p) const {
    std::vector<std::string> lines;
    lines.push_back("problem=" + problem);
    std::string ms = "M=";
    for (size_t i = 0; i < Ms.size(); ++i) {
        if (i) ms += ",";
        ms += std::to_string(Ms[i]);
    }
    lines.push_back(ms);
    lines.push_back("tau=" + tau_rule.str());
    lines.push_back("T=" + format_double(final_time(p)));
    lines.push_back("quad_order=" + std::to_string(params.quad_points));
    lines.push_back("picard_tol=" + format_double(params.picard_tol));
    lines.push_back("cg_tol=" + format_double(params.cg_tol));
    lines.push_back("max_picard=" + std::to_string(params.max_picard));
    if (!snapshot_times.empty()) {
        std::string st = "snapshots=";
        for (size_t i = 0; i < snapshot_times.size(); ++i) {
            if (i) st += ",";
            st += format_double(snapshot_times[i]);
        }
        lines.push_back(st);
    }
    return lines;
}

}  // namespace kgz
