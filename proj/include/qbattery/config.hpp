#pragma once

// Run configuration: a sectioned key = value document.
//
//   # comment
//   [system]   n, topology | edge_list, label
//   [model]    kind (ising|xxz|custom), J, delta, Delta, D, Omega, omega0, lambda, hbar
//   [time]     t_max (number, optionally with a "pi" suffix: 3pi), samples, backend
//   [output]   directory, emit_svg
//
// ising fixes delta = 1, Delta = 0; xxz fixes delta = 0 and defaults Delta = 2.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>

#include "qbattery/errors.hpp"
#include "qbattery/experiments.hpp"
#include "qbattery/series_io.hpp"
#include "qbattery/topology.hpp"

namespace qbattery {

struct RunConfig {
    std::optional<int> n;
    std::string topology;   // catalog name
    std::string edge_list;  // or a path to an edge-list file, relative to the config file
    std::string label;
    ModelKind kind = ModelKind::Custom;
    ModelParams params;
    double t_max = std::numbers::pi;
    int samples = kIsingSamples;
    Backend backend = Backend::Auto;
    KrylovConfig krylov{};
    std::string output_directory = "out";
    bool emit_svg = false;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_double(const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return v;
}

// Number, or a multiple of pi written as "pi", "3pi", "0.5pi" or "3*pi".
inline std::optional<double> parse_time_value(std::string text) {
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
        text.erase(text.size() - 2);
        if (!text.empty() && text.back() == '*') text.pop_back();
        if (text.empty()) return std::numbers::pi;
        const auto k = parse_double(text);
        if (!k) return std::nullopt;
        return *k * std::numbers::pi;
    }
    return parse_double(text);
}

inline std::string exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline RunConfig parse_run_config(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, int> seen;  // "section.key" -> line
    std::string section;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;

    auto fail = [&](int line, const std::string& msg) -> DomainError {
        return DomainError("config line " + std::to_string(line) + ": " + msg);
    };

    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw fail(lineno, "malformed section header '" + line + "'");
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section != "system" && section != "model" && section != "time" && section != "output") {
                throw fail(lineno, "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw fail(lineno, "expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (section.empty()) throw fail(lineno, "key '" + key + "' appears before any section");
        if (value.empty()) throw fail(lineno, "empty value for '" + key + "'");
        const std::string qualified = section + "." + key;
        if (auto [it, fresh] = seen.emplace(qualified, lineno); !fresh) {
            throw fail(lineno, "duplicate key '" + key + "' (first set on line " + std::to_string(it->second) + ")");
        }

        auto number = [&]() {
            const auto v = detail::parse_double(value);
            if (!v || !std::isfinite(*v)) throw fail(lineno, "'" + key + "' expects a number, got '" + value + "'");
            return *v;
        };
        auto integer = [&]() {
            int v = 0;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (ec != std::errc{} || ptr != value.data() + value.size()) {
                throw fail(lineno, "'" + key + "' expects an integer, got '" + value + "'");
            }
            return v;
        };

        if (section == "system") {
            if (key == "n") {
                cfg.n = integer();
                if (*cfg.n < 1 || *cfg.n > kMaxQubits) {
                    throw fail(lineno, "n = " + value + " outside [1, " + std::to_string(kMaxQubits) + "]");
                }
            } else if (key == "topology") {
                cfg.topology = value;
            } else if (key == "edge_list") {
                cfg.edge_list = value;
            } else if (key == "label") {
                cfg.label = value;
            } else {
                throw fail(lineno, "unknown key '" + key + "' in [system]");
            }
        } else if (section == "model") {
            if (key == "kind") {
                try {
                    cfg.kind = parse_model_kind(value);
                } catch (const DomainError& e) {
                    throw fail(lineno, e.what());
                }
            } else if (key == "J") {
                cfg.params.J = number();
            } else if (key == "delta") {
                cfg.params.delta = number();
            } else if (key == "Delta") {
                cfg.params.Delta = number();
            } else if (key == "D") {
                cfg.params.D = number();
            } else if (key == "Omega") {
                cfg.params.Omega = number();
                if (cfg.params.Omega < 0.0) throw fail(lineno, "Omega = " + value + " must be >= 0");
            } else if (key == "omega0") {
                cfg.params.omega0 = number();
                if (!(cfg.params.omega0 > 0.0)) throw fail(lineno, "omega0 = " + value + " must be > 0");
            } else if (key == "lambda") {
                cfg.params.lambda = number();
                if (cfg.params.lambda < 0.0 || cfg.params.lambda > 1.0) {
                    throw fail(lineno, "lambda = " + value + " violates lambda in [0, 1]");
                }
            } else if (key == "hbar") {
                cfg.params.hbar = number();
                if (!(cfg.params.hbar > 0.0)) throw fail(lineno, "hbar = " + value + " must be > 0");
            } else {
                throw fail(lineno, "unknown key '" + key + "' in [model]");
            }
        } else if (section == "time") {
            if (key == "t_max") {
                const auto v = detail::parse_time_value(value);
                if (!v || !std::isfinite(*v) || !(*v > 0.0)) {
                    throw fail(lineno, "t_max expects a positive number (e.g. 3.5 or 3pi), got '" + value + "'");
                }
                cfg.t_max = *v;
            } else if (key == "samples") {
                cfg.samples = integer();
                if (cfg.samples < 2) throw fail(lineno, "samples must be >= 2");
            } else if (key == "backend") {
                try {
                    cfg.backend = parse_backend(value);
                } catch (const DomainError& e) {
                    throw fail(lineno, e.what());
                }
            } else if (key == "krylov_dim") {
                cfg.krylov.subspace_dim = integer();
                if (cfg.krylov.subspace_dim < 2) throw fail(lineno, "krylov_dim must be >= 2");
            } else if (key == "krylov_step") {
                cfg.krylov.step_size = number();
                if (!(cfg.krylov.step_size > 0.0)) throw fail(lineno, "krylov_step must be > 0");
            } else if (key == "krylov_tolerance") {
                cfg.krylov.tolerance = number();
                if (!(cfg.krylov.tolerance > 0.0)) throw fail(lineno, "krylov_tolerance must be > 0");
            } else {
                throw fail(lineno, "unknown key '" + key + "' in [time]");
            }
        } else if (section == "output") {
            if (key == "directory") {
                cfg.output_directory = value;
            } else if (key == "emit_svg") {
                if (value == "true" || value == "yes" || value == "1") {
                    cfg.emit_svg = true;
                } else if (value == "false" || value == "no" || value == "0") {
                    cfg.emit_svg = false;
                } else {
                    throw fail(lineno, "emit_svg expects true or false, got '" + value + "'");
                }
            } else {
                throw fail(lineno, "unknown key '" + key + "' in [output]");
            }
        }
    }

    auto line_of = [&](const std::string& qualified) {
        const auto it = seen.find(qualified);
        return it == seen.end() ? 0 : it->second;
    };

    if (cfg.topology.empty() == cfg.edge_list.empty()) {
        throw DomainError("config: [system] needs exactly one of 'topology' or 'edge_list'");
    }
    if (!seen.count("model.kind")) throw DomainError("config: [model] kind is required");

    const bool has_delta = seen.count("model.delta") != 0;
    const bool has_Delta = seen.count("model.Delta") != 0;
    if (cfg.kind == ModelKind::Ising) {
        if (has_delta && cfg.params.delta != 1.0) throw fail(line_of("model.delta"), "ising model requires delta = 1");
        if (has_Delta && cfg.params.Delta != 0.0) throw fail(line_of("model.Delta"), "ising model requires Delta = 0");
        cfg.params.delta = 1.0;
        cfg.params.Delta = 0.0;
    } else if (cfg.kind == ModelKind::XXZ) {
        if (has_delta && cfg.params.delta != 0.0) throw fail(line_of("model.delta"), "xxz model requires delta = 0");
        if (!has_Delta) cfg.params.Delta = 2.0;
        if (cfg.params.Delta == 0.0) throw fail(line_of("model.Delta"), "xxz model requires Delta != 0");
        cfg.params.delta = 0.0;
    }
    if (cfg.kind != ModelKind::Ising) {
        if (!seen.count("time.t_max")) cfg.t_max = 3.0 * std::numbers::pi;
        if (!seen.count("time.samples")) cfg.samples = kXxzSamples;
    }
    return cfg;
}

inline RunConfig read_run_config(const std::filesystem::path& path) { return parse_run_config(read_text_file(path)); }

/// Resolves the topology and assembles a validated plan. Relative edge_list
/// paths are taken relative to `base_dir`.
inline SimulationPlan plan_from_config(const RunConfig& cfg, const std::filesystem::path& base_dir = {}) {
    std::optional<SpinTopology> topo;
    if (!cfg.topology.empty()) {
        topo = topology_by_name(cfg.topology, cfg.n.value_or(8));
    } else {
        std::filesystem::path p = cfg.edge_list;
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        topo = parse_edge_list(read_text_file(p), p.stem().string());
    }
    if (cfg.n && *cfg.n != topo->n()) {
        throw DomainError("config: n = " + std::to_string(*cfg.n) + " but topology '" + topo->name() + "' has " +
                          std::to_string(topo->n()) + " sites");
    }
    std::string label = cfg.label;
    if (label.empty()) label = std::string(to_string(cfg.kind)) + "-" + topo->name();
    SimulationPlan plan{label, std::move(*topo), cfg.params, cfg.kind, cfg.t_max, cfg.samples, cfg.backend, cfg.krylov};
    validate(plan);
    return plan;
}

inline RunConfig config_from_plan(const SimulationPlan& plan, std::string output_directory = "out",
                                  bool emit_svg = false) {
    const auto names = topology_names();
    if (std::find(names.begin(), names.end(), plan.topology.name()) == names.end() ||
        topology_by_name(plan.topology.name(), plan.topology.n()).edges() != plan.topology.edges()) {
        throw DomainError("topology '" + plan.topology.name() + "' is not a catalog topology");
    }
    RunConfig cfg;
    cfg.n = plan.topology.n();
    cfg.topology = plan.topology.name();
    cfg.label = plan.label;
    cfg.kind = plan.kind;
    cfg.params = plan.params;
    cfg.t_max = plan.t_max;
    cfg.samples = plan.samples;
    cfg.backend = plan.backend;
    cfg.krylov = plan.krylov;
    cfg.output_directory = std::move(output_directory);
    cfg.emit_svg = emit_svg;
    return cfg;
}

inline std::string format_run_config(const RunConfig& cfg) {
    using detail::exact;
    std::string s = "[system]\n";
    if (cfg.n) s += "n = " + std::to_string(*cfg.n) + "\n";
    if (!cfg.topology.empty()) s += "topology = " + cfg.topology + "\n";
    if (!cfg.edge_list.empty()) s += "edge_list = " + cfg.edge_list + "\n";
    if (!cfg.label.empty()) s += "label = " + cfg.label + "\n";
    const auto& p = cfg.params;
    s += "\n[model]\nkind = " + std::string(to_string(cfg.kind)) + "\n";
    s += "J = " + exact(p.J) + "\ndelta = " + exact(p.delta) + "\nDelta = " + exact(p.Delta) + "\n";
    s += "D = " + exact(p.D) + "\nOmega = " + exact(p.Omega) + "\nomega0 = " + exact(p.omega0) + "\n";
    s += "lambda = " + exact(p.lambda) + "\nhbar = " + exact(p.hbar) + "\n";
    s += "\n[time]\nt_max = " + exact(cfg.t_max) + "\nsamples = " + std::to_string(cfg.samples) + "\n";
    s += "backend = " + std::string(to_string(cfg.backend)) + "\n";
    s += "krylov_dim = " + std::to_string(cfg.krylov.subspace_dim) + "\nkrylov_step = " + exact(cfg.krylov.step_size) +
         "\nkrylov_tolerance = " + exact(cfg.krylov.tolerance) + "\n";
    s += "\n[output]\ndirectory = " + cfg.output_directory + "\nemit_svg = " + (cfg.emit_svg ? "true" : "false") +
         "\n";
    return s;
}

}  // namespace qbattery
