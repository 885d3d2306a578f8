// config.hpp — flat key=value run configuration shared by all CLI commands:
// parsing, override merging, and validation into a ready-to-run RunConfig.
//
// Validation is collect-then-fail: every offending key is reported in one
// ConfigError rather than stopping at the first.

#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oposim/covariance.hpp"
#include "oposim/errors.hpp"

namespace oposim {

enum class Command { single, chain, scan, grid, certify };

struct RunConfig {
    Command command = Command::single;
    std::size_t opo_count = 1;
    std::vector<OpoStage> stages;
    double sigma_first = 1.5;
    double omega_rel_first = 0.5;
    double loss = 0.0;      // uniform output loss on every mode
    double pump_loss = 0.0; // loss on each inter-stage pump link
    double tol_entangle = 1e-6;
    double tol_purity = 1e-6;

    std::string scan_param = "sigma_first";
    double scan_from = 1.02, scan_to = 2.4;
    int scan_steps = 200;

    std::string grid_x_param = "omega_rel_first";
    double grid_x_from = 0.01, grid_x_to = 1.0;
    int grid_x_steps = 100;
    std::string grid_y_param = "threshold_ratio_2";
    double grid_y_from = 0.1, grid_y_to = 1.0;
    int grid_y_steps = 100;

    std::string format = "json"; // csv | json
    std::string out = "-";       // "-" = stdout
    bool quiet = false;

    ChainSpec chain_spec() const {
        ChainSpec s;
        s.opos = stages;
        s.sigma_first = sigma_first;
        s.omega_rel_first = omega_rel_first;
        s.pump_loss = pump_loss;
        if (loss > 0.0) s.beam_loss.assign(2 * stages.size() + 1, loss);
        return s;
    }
};

using KeyValues = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace detail

// Flat UTF-8 "key = value" lines; '#' starts a comment; later keys win.
inline KeyValues parse_config_text(std::istream& is) {
    KeyValues kv;
    std::vector<std::string> bad;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        const std::string key = eq == std::string::npos ? "" : detail::trim(t.substr(0, eq));
        if (key.empty()) {
            bad.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
            continue;
        }
        kv[key] = detail::trim(t.substr(eq + 1));
    }
    if (!bad.empty()) {
        std::string msg = "malformed config";
        for (const auto& b : bad) msg += "; " + b;
        throw ConfigError(msg);
    }
    return kv;
}

inline KeyValues parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config_text(f);
}

// --set style overrides, each "key=value"
inline void merge_overrides(KeyValues& kv, const std::vector<std::string>& sets) {
    std::vector<std::string> bad;
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        const std::string key = eq == std::string::npos ? "" : detail::trim(s.substr(0, eq));
        if (key.empty()) {
            bad.push_back("--set '" + s + "': expected key=value");
            continue;
        }
        kv[key] = detail::trim(s.substr(eq + 1));
    }
    if (!bad.empty()) {
        std::string msg = "malformed overrides";
        for (const auto& b : bad) msg += "; " + b;
        throw ConfigError(msg);
    }
}

// Resolves defaults (which depend on the command and the stage count),
// validates every key, and reports all problems at once.
inline RunConfig build_config(Command cmd, const KeyValues& kv) {
    std::vector<std::string> errors;
    std::set<std::string> consumed;

    auto raw = [&](const std::string& key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        consumed.insert(key);
        return it->second;
    };
    auto get_double = [&](const std::string& key, double def) {
        const auto v = raw(key);
        if (!v) return def;
        try {
            std::size_t pos = 0;
            const double x = std::stod(*v, &pos);
            if (pos != v->size() || !std::isfinite(x)) throw std::invalid_argument("");
            return x;
        } catch (const std::exception&) {
            errors.push_back(key + ": not a finite number ('" + *v + "')");
            return def;
        }
    };
    auto get_int = [&](const std::string& key, int def) {
        const auto v = raw(key);
        if (!v) return def;
        try {
            std::size_t pos = 0;
            const long x = std::stol(*v, &pos);
            if (pos != v->size()) throw std::invalid_argument("");
            return static_cast<int>(x);
        } catch (const std::exception&) {
            errors.push_back(key + ": not an integer ('" + *v + "')");
            return def;
        }
    };
    auto get_bool = [&](const std::string& key, bool def) {
        const auto v = raw(key);
        if (!v) return def;
        if (*v == "true" || *v == "1" || *v == "yes") return true;
        if (*v == "false" || *v == "0" || *v == "no") return false;
        errors.push_back(key + ": not a boolean ('" + *v + "')");
        return def;
    };

    RunConfig rc;
    rc.command = cmd;

    // stage count first: the key schema depends on it
    const int default_count = (cmd == Command::single || cmd == Command::certify) ? 1 : 2;
    const int count = get_int("opo_count", default_count);
    if (count < 1) {
        errors.push_back("opo_count: must be at least 1");
        rc.opo_count = 1;
    } else {
        rc.opo_count = static_cast<std::size_t>(count);
    }
    if (cmd == Command::single && rc.opo_count != 1)
        errors.push_back("opo_count: 'single' runs exactly one OPO (use 'chain')");
    if ((cmd == Command::scan || cmd == Command::grid) && rc.opo_count != 2)
        errors.push_back("opo_count: scans and grids cover exactly two OPOs");

    for (std::size_t k = 1; k <= rc.opo_count; ++k) {
        const std::string suffix = "_" + std::to_string(k);
        OpoStage st{};
        const bool has_default = k <= 2;
        st.gamma0 = get_double("gamma0" + suffix, k == 1 ? 0.05 : 0.04);
        st.gamma = get_double("gamma" + suffix, k == 1 ? 0.01 : 0.0075);
        st.threshold_ratio = get_double("threshold_ratio" + suffix, k == 1 ? 1.0 : 0.45);
        if (!has_default)
            for (const std::string& key :
                 {"gamma0" + suffix, "gamma" + suffix, "threshold_ratio" + suffix})
                if (!kv.count(key)) errors.push_back(key + ": required when opo_count > 2");
        if (k == 1 && st.threshold_ratio != 1.0)
            errors.push_back("threshold_ratio_1: must be 1 (thresholds are relative to "
                             "the first OPO)");
        rc.stages.push_back(st);
    }

    rc.sigma_first = get_double("sigma_first", cmd == Command::grid ? 1.1 : 1.5);
    rc.omega_rel_first = get_double("omega_rel_first", rc.opo_count == 1 ? 0.5 : 0.1);
    rc.loss = get_double("loss", 0.0);
    if (!(rc.loss >= 0.0) || rc.loss >= 1.0) errors.push_back("loss: outside [0, 1)");
    rc.pump_loss = get_double("pump_loss", 0.0);
    if (!(rc.pump_loss >= 0.0) || rc.pump_loss >= 1.0)
        errors.push_back("pump_loss: outside [0, 1)");
    rc.tol_entangle = get_double("tol_entangle", 1e-6);
    if (!(rc.tol_entangle > 0.0)) errors.push_back("tol_entangle: must be positive");
    rc.tol_purity = get_double("tol_purity", 1e-6);
    if (!(rc.tol_purity > 0.0)) errors.push_back("tol_purity: must be positive");

    const std::set<std::string> axes = {"sigma_first", "omega_rel_first", "threshold_ratio_2",
                                        "loss"};
    auto get_axis = [&](const std::string& key, const std::string& def) {
        const auto v = raw(key);
        if (!v) return def;
        if (!axes.count(*v)) {
            errors.push_back(key + ": unknown scan parameter '" + *v + "'");
            return def;
        }
        return *v;
    };
    rc.scan_param = get_axis("scan_param", "sigma_first");
    rc.scan_from = get_double("scan_from", 1.02);
    rc.scan_to = get_double("scan_to", 2.4);
    rc.scan_steps = get_int("scan_steps", 200);
    if (rc.scan_steps < 2) errors.push_back("scan_steps: need at least 2");

    rc.grid_x_param = get_axis("grid_x_param", "omega_rel_first");
    rc.grid_x_from = get_double("grid_x_from", 0.01);
    rc.grid_x_to = get_double("grid_x_to", 1.0);
    rc.grid_x_steps = get_int("grid_x_steps", 100);
    rc.grid_y_param = get_axis("grid_y_param", "threshold_ratio_2");
    rc.grid_y_from = get_double("grid_y_from", 0.1);
    rc.grid_y_to = get_double("grid_y_to", 1.0);
    rc.grid_y_steps = get_int("grid_y_steps", 100);
    if (rc.grid_x_steps < 2 || rc.grid_y_steps < 2)
        errors.push_back("grid_x_steps/grid_y_steps: need at least 2");
    if (rc.grid_x_param == rc.grid_y_param)
        errors.push_back("grid_y_param: must differ from grid_x_param");

    const auto fmt = raw("format");
    rc.format = fmt ? *fmt
                    : ((cmd == Command::scan || cmd == Command::grid) ? "csv" : "json");
    if (rc.format != "csv" && rc.format != "json")
        errors.push_back("format: must be 'csv' or 'json' (got '" + rc.format + "')");
    if (const auto o = raw("out")) rc.out = *o;
    rc.quiet = get_bool("quiet", false);

    for (const auto& [key, value] : kv)
        if (!consumed.count(key)) errors.push_back("unknown key '" + key + "'");

    if (!errors.empty()) {
        std::string msg = "invalid configuration";
        for (const auto& e : errors) msg += "; " + e;
        throw ConfigError(msg);
    }
    return rc;
}

} // namespace oposim
