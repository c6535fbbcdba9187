#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qaction/error.hpp"

namespace qaction::cli {

struct KeySpec {
    std::string_view key;
    std::string_view fallback;  // "" = unset unless given
    std::string_view help;
};

inline constexpr std::string_view kModels[] = {"prep",       "grover-h1",   "grover-h2", "directory",
                                               "cavity",     "shor-phase",  "bound-suite", "hypothesis"};

inline bool is_model(std::string_view m) {
    for (auto k : kModels)
        if (k == m) return true;
    return false;
}

inline bool uses_randomness(std::string_view m) {
    return m == "directory" || m == "bound-suite" || m == "hypothesis";
}

inline const std::vector<KeySpec>& common_keys() {
    static const std::vector<KeySpec> k{
        {"format", "csv", "output format: csv or json"},
        {"out", "", "output file (default: $QACTION_OUTPUT_DIR/<model>.<format>, else stdout)"},
        {"seed", "", "random seed (required by directory, bound-suite, hypothesis)"},
    };
    return k;
}

inline const std::vector<KeySpec>& model_keys(std::string_view model) {
    static const std::map<std::string_view, std::vector<KeySpec>> table{
        {"prep",
         {{"n", "8", "number of q-bits"},
          {"t_c", "1", "time budget per flip"},
          {"mask", "all", "flip mask: all, checkerboard, or an integer"}}},
        {"grover-h1",
         {{"N", "16", "number of labels"}, {"E", "1", "energy scale"}, {"target", "0", "searched index"}}},
        {"grover-h2",
         {{"N", "16", "number of labels"}, {"E", "1", "energy scale"}, {"target", "0", "searched index"}}},
        {"directory",
         {{"N", "32", "number of labels"},
          {"E_max", "1", "largest label energy (equally spaced spectrum)"},
          {"epsilon", "0.01", "perturbation strength relative to E_max"},
          {"target", "middle", "target index (0-based) or 'middle'"},
          {"horizon", "auto", "evolution horizon (auto = 8 N / E_max)"},
          {"steps_per_period", "40", "midpoint steps per period of the fastest scale"},
          {"record_every", "4", "record populations every k steps"},
          {"dominance", "10", "probability ratio that counts as discrimination"}}},
        {"cavity",
         {{"target", "12", "target label N"},
          {"window", "auto", "label window lo:hi (auto = target-4:target+4)"},
          {"omega", "1", "frequency unit"},
          {"Q", "auto", "largest admitted prime (auto = window top)"},
          {"epsilon", "0.01", "coupling strength relative to omega / window top"},
          {"v", "auto", "vacuum-window coupling (auto = epsilon * omega / window top)"},
          {"horizon", "auto", "evolution horizon (auto = 10 target / omega)"},
          {"steps_per_period", "40", "midpoint steps per period of the fastest scale"},
          {"record_every", "10", "record populations every k steps"},
          {"dominance", "10", "probability ratio that counts as discrimination"}}},
        {"shor-phase",
         {{"n", "3", "number of q-bits"}, {"omega", "1", "energy unit"}, {"alpha", "pi", "phase in [0, 2pi)"}}},
        {"bound-suite", {{"cases", "200", "random cases"}, {"max_dim", "64", "largest Hilbert-space dim"}}},
        {"hypothesis",
         {{"prep_n", "8", "q-bits in the preparation row"},
          {"grover_N", "256", "labels in the Grover row"},
          {"directory_N", "32", "labels in the directory row"},
          {"cavity_target", "30", "target label in the cavity row"},
          {"shor_n", "6", "q-bits in the phase-shift row"}}},
    };
    const auto it = table.find(model);
    if (it == table.end()) throw ConfigError("unknown model '" + std::string(model) + "'");
    return it->second;
}

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

// Explicit settings from a flat key=value file plus command-line overrides.
struct ExperimentConfig {
    std::string model;
    std::map<std::string, std::string> values;

    void set(const std::string& key, const std::string& value) {
        if (key == "model") model = value;
        else values[key] = value;
    }
};

inline ExperimentConfig parse_config_text(std::string_view text) {
    ExperimentConfig cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        cfg.set(key, value);
    }
    return cfg;
}

inline ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

// Accepts plain decimals and multiples of pi: "pi", "2pi", "2*pi", "pi/2", "0.5*pi/3".
inline double parse_number(std::string_view key, std::string_view raw) {
    auto fail = [&]() -> double {
        throw ConfigError("'" + std::string(key) + "' is not a number: '" + std::string(raw) + "'");
    };
    auto plain = [&](std::string_view s) -> double {
        double v = 0.0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) return fail();
        return v;
    };
    const std::string s = trim(raw);
    const auto pos = s.find("pi");
    if (pos == std::string::npos) return plain(s);
    std::string_view head = std::string_view(s).substr(0, pos);
    std::string_view tail = std::string_view(s).substr(pos + 2);
    if (!head.empty() && head.back() == '*') head.remove_suffix(1);
    double v = std::numbers::pi * (head.empty() ? 1.0 : plain(head));
    if (!tail.empty()) {
        if (tail.front() != '/') return fail();
        v /= plain(tail.substr(1));
    }
    return v;
}

inline std::uint64_t parse_unsigned(std::string_view key, std::string_view raw) {
    const std::string s = trim(raw);
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw ConfigError("'" + std::string(key) + "' is not a non-negative integer: '" + s + "'");
    return v;
}

// Config with every key of the model present (defaults filled in).
class ResolvedConfig {
public:
    ResolvedConfig(std::string model, std::map<std::string, std::string> values)
        : model_(std::move(model)), values_(std::move(values)) {}

    const std::string& model() const { return model_; }
    const std::map<std::string, std::string>& values() const { return values_; }

    const std::string& text(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("missing key '" + key + "'");
        return it->second;
    }
    bool is(const std::string& key, std::string_view v) const { return text(key) == v; }
    bool has(const std::string& key) const { return values_.count(key) && !values_.at(key).empty(); }
    double number(const std::string& key) const { return parse_number(key, text(key)); }
    std::uint64_t integer(const std::string& key) const { return parse_unsigned(key, text(key)); }

    std::pair<std::uint64_t, std::uint64_t> window(const std::string& key) const {
        const std::string& s = text(key);
        const auto colon = s.find(':');
        if (colon == std::string::npos) throw ConfigError("'" + key + "' must be lo:hi, got '" + s + "'");
        return {parse_unsigned(key, s.substr(0, colon)), parse_unsigned(key, s.substr(colon + 1))};
    }

    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

private:
    std::string model_;
    std::map<std::string, std::string> values_;
};

inline ResolvedConfig resolve(const ExperimentConfig& cfg) {
    if (cfg.model.empty()) throw ConfigError("no model given");
    if (!is_model(cfg.model)) throw ConfigError("unknown model '" + cfg.model + "'");
    std::map<std::string, std::string> out;
    for (const auto& k : common_keys()) out[std::string(k.key)] = std::string(k.fallback);
    for (const auto& k : model_keys(cfg.model)) out[std::string(k.key)] = std::string(k.fallback);
    for (const auto& [k, v] : cfg.values) {
        if (!out.count(k)) throw ConfigError("key '" + k + "' is not valid for model '" + cfg.model + "'");
        out[k] = v;
    }
    if (out["format"] != "csv" && out["format"] != "json")
        throw ConfigError("format must be csv or json, got '" + out["format"] + "'");
    if (uses_randomness(cfg.model) && out["seed"].empty())
        throw ConfigError("model '" + cfg.model + "' draws random numbers; a seed is required");
    if (!out["seed"].empty()) parse_unsigned("seed", out["seed"]);
    return {cfg.model, std::move(out)};
}

}  // namespace qaction::cli
