#pragma once

// Simulation plans, parameter sweeps and the named preset catalog.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qbattery/errors.hpp"
#include "qbattery/evolution.hpp"
#include "qbattery/hamiltonian.hpp"
#include "qbattery/metrics.hpp"
#include "qbattery/topology.hpp"

namespace qbattery {

struct SimulationPlan {
    std::string label;
    SpinTopology topology;
    ModelParams params;
    ModelKind kind = ModelKind::Custom;
    double t_max = std::numbers::pi;
    int samples = 401;
    Backend backend = Backend::Auto;
    KrylovConfig krylov{};
};

inline void validate(const SimulationPlan& plan) {
    validate(plan.params, plan.kind);
    validate(plan.krylov);
    if (plan.samples < 2) throw DomainError("plan needs at least 2 samples");
    if (!(plan.t_max > 0.0) || !std::isfinite(plan.t_max)) throw DomainError("plan needs a finite t_max > 0");
}

inline ChargeTimeSeries run_plan(const SimulationPlan& plan) {
    validate(plan);
    const int n = plan.topology.n();
    const SparseOperator h = driver_hamiltonian_sparse(plan.topology, plan.params);
    const auto times = time_grid(plan.t_max, plan.samples);
    try {
        const auto states = sample_trajectory(h, uncharged_state(n), times, {plan.backend, plan.krylov});
        return charge_series(times, states, battery_energies(n, plan.params));
    } catch (const ConvergenceError& e) {
        throw ConvergenceError("plan '" + plan.label + "': " + e.what());
    }
}

inline const std::vector<std::string>& parameter_names() {
    static const std::vector<std::string> names{"J", "delta", "Delta", "D", "Omega", "omega0", "lambda", "hbar"};
    return names;
}

inline double& parameter_ref(ModelParams& p, const std::string& name) {
    if (name == "J") return p.J;
    if (name == "delta") return p.delta;
    if (name == "Delta") return p.Delta;
    if (name == "D") return p.D;
    if (name == "Omega") return p.Omega;
    if (name == "omega0") return p.omega0;
    if (name == "lambda" || name == "λ") return p.lambda;
    if (name == "hbar") return p.hbar;
    throw DomainError("unknown model parameter '" + name + "'");
}

inline bool is_parameter_name(const std::string& name) {
    const auto& names = parameter_names();
    return name == "λ" || std::find(names.begin(), names.end(), name) != names.end();
}

struct SweepAxis {
    std::string parameter;
    std::vector<double> values;
};

struct SweepSpec {
    SimulationPlan base;
    std::vector<SweepAxis> axes;
};

using AxisPoint = std::vector<std::pair<std::string, double>>;

struct SweepResult {
    AxisPoint point;
    SimulationPlan plan;
    std::optional<ChargeTimeSeries> series;
    std::string error;  // set when series is empty
    bool convergence_failure = false;
};

/// Shortest decimal form used in labels and preset names ("0.5", "1.7", "10").
inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string point_tag(const AxisPoint& point) {
    std::string tag;
    for (const auto& [name, value] : point) {
        if (!tag.empty()) tag += '_';
        tag += (name == "λ" ? std::string("lambda") : name) + "=" + format_number(value);
    }
    return tag;
}

inline void validate(const SweepSpec& spec) {
    if (spec.axes.empty()) throw DomainError("sweep needs at least one axis");
    for (const auto& axis : spec.axes) {
        if (!is_parameter_name(axis.parameter)) {
            throw DomainError("unknown sweep parameter '" + axis.parameter + "'");
        }
        if (axis.values.empty()) throw DomainError("sweep axis '" + axis.parameter + "' has no values");
    }
}

/// Cartesian product of the axes, first axis varying slowest.
inline std::vector<AxisPoint> sweep_points(const SweepSpec& spec) {
    std::vector<AxisPoint> points{{}};
    for (const auto& axis : spec.axes) {
        std::vector<AxisPoint> next;
        for (const auto& prefix : points) {
            for (double v : axis.values) {
                auto p = prefix;
                p.emplace_back(axis.parameter, v);
                next.push_back(std::move(p));
            }
        }
        points = std::move(next);
    }
    return points;
}

/// Runs every axis point on a pool of `workers` threads (0 = hardware concurrency).
/// A failing point records its error and does not abort the others.
inline std::vector<SweepResult> run_sweep(const SweepSpec& spec, unsigned workers = 0) {
    validate(spec);
    std::vector<SweepResult> results;
    for (auto& point : sweep_points(spec)) {
        SimulationPlan plan = spec.base;
        for (const auto& [name, value] : point) parameter_ref(plan.params, name) = value;
        plan.label = spec.base.label + "[" + point_tag(point) + "]";
        results.push_back({std::move(point), std::move(plan), std::nullopt, {}, false});
    }

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(results.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < results.size(); k = next++) {
            try {
                results[k].series = run_plan(results[k].plan);
            } catch (const ConvergenceError& e) {
                results[k].error = e.what();
                results[k].convergence_failure = true;
            } catch (const std::exception& e) {
                results[k].error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return results;
}

struct PlanPreset {
    std::string name;
    std::vector<std::string> figures;
    SimulationPlan plan;
};

struct SweepPreset {
    std::string name;
    std::vector<std::string> figures;
    SweepSpec spec;
};

inline constexpr int kIsingSamples = 401;
inline constexpr int kXxzSamples = 1200;

/// Replaces the ASCII alias "lambda" with the canonical "λ".
inline std::string canonical_preset_name(std::string name) {
    for (std::size_t pos; (pos = name.find("lambda")) != std::string::npos;) name.replace(pos, 6, "λ");
    return name;
}

/// Replaces "λ" with "lambda" (file-system friendly form).
inline std::string ascii_preset_name(std::string name) {
    for (std::size_t pos; (pos = name.find("λ")) != std::string::npos;) name.replace(pos, std::string("λ").size(), "lambda");
    return name;
}

class PresetCatalog {
public:
    PresetCatalog() { populate(); }

    const std::vector<PlanPreset>& plans() const { return plans_; }
    const std::vector<SweepPreset>& sweeps() const { return sweeps_; }

    const PlanPreset* find_plan(const std::string& name) const {
        const auto key = canonical_preset_name(name);
        for (const auto& p : plans_)
            if (p.name == key) return &p;
        return nullptr;
    }

    const SweepPreset* find_sweep(const std::string& name) const {
        const auto key = canonical_preset_name(name);
        for (const auto& s : sweeps_)
            if (s.name == key) return &s;
        return nullptr;
    }

    /// Throws DomainError listing every available name when `name` is unknown.
    const PlanPreset& plan(const std::string& name) const {
        if (const auto* p = find_plan(name)) return *p;
        throw DomainError("unknown preset '" + name + "'; available presets:\n" + listing());
    }

    const SweepPreset& sweep(const std::string& name) const {
        if (const auto* s = find_sweep(name)) return *s;
        throw DomainError("unknown sweep preset '" + name + "'; available presets:\n" + listing());
    }

    std::string listing() const {
        std::string out;
        for (const auto& p : plans_) out += "  " + p.name + "\n";
        for (const auto& s : sweeps_) out += "  " + s.name + " (sweep)\n";
        return out;
    }

private:
    static SimulationPlan make_plan(std::string label, SpinTopology topo, ModelParams params, ModelKind kind) {
        SimulationPlan plan{std::move(label), std::move(topo), params, kind};
        if (kind == ModelKind::Ising) {
            plan.t_max = std::numbers::pi;
            plan.samples = kIsingSamples;
        } else {
            plan.t_max = 3.0 * std::numbers::pi;
            plan.samples = kXxzSamples;
        }
        return plan;
    }

    void add_plan(std::string name, std::vector<std::string> figures, SpinTopology topo, ModelParams params,
                  ModelKind kind) {
        auto plan = make_plan(name, std::move(topo), params, kind);
        plans_.push_back({std::move(name), std::move(figures), std::move(plan)});
    }

    void add_sweep(std::string name, std::vector<std::string> figures, SimulationPlan base,
                   std::vector<SweepAxis> axes) {
        base.label = name;
        sweeps_.push_back({std::move(name), std::move(figures), SweepSpec{std::move(base), std::move(axes)}});
    }

    void populate() {
        const std::vector<std::string> chains{"open", "closed", "supercube"};
        const std::vector<double> lambdas{0.0, 0.5, 1.0};

        for (const auto& topo : chains) {
            for (double D : {0.0, 5.0, 10.0}) {
                for (double lambda : lambdas) {
                    std::vector<std::string> figs;
                    if (D == 0.0 && lambda == 0.0) figs.push_back("fig1");
                    if (D == 0.0) figs.insert(figs.end(), {"fig2", "fig3"});
                    figs.insert(figs.end(), {"fig4", "fig5"});
                    add_plan("ising-" + topo + "-D" + format_number(D) + "-λ" + format_number(lambda), figs,
                             topology_by_name(topo), ising_params(D, lambda), ModelKind::Ising);
                }
            }
            for (double D : {0.0, 1.7}) {
                for (double lambda : lambdas) {
                    add_plan("xxz-" + topo + "-D" + format_number(D) + "-λ" + format_number(lambda), {"fig6", "fig7"},
                             topology_by_name(topo), xxz_params(D, lambda), ModelKind::XXZ);
                }
            }
        }

        for (double D : {0.0, 0.5, 1.0, 1.7, 2.5}) {
            add_plan("xxz-supercube-Dscan-D" + format_number(D), {"fig8"}, supercube(), xxz_params(D, 0.0),
                     ModelKind::XXZ);
        }
        for (double J : {0.5, 1.0, 2.0, 3.0}) {
            auto p = xxz_params(1.7, 0.0);
            p.J = J;
            add_plan("xxz-supercube-Jscan-J" + format_number(J), {"fig8"}, supercube(), p, ModelKind::XXZ);
        }

        for (const char* variant : {"body2", "body4", "topface", "allface", "body4-allface"}) {
            const std::string topo = std::string("supercube-") + variant;
            add_plan("xxz-" + topo + "-D1.7", {"fig9"}, topology_by_name(topo), xxz_params(1.7, 0.0),
                     ModelKind::XXZ);
        }

        add_plan("xxz-cube12-D1.7", {"fig10"}, cube_extension_12(), xxz_params(1.7, 0.0), ModelKind::XXZ);
        add_plan("xxz-cuboctahedron-D1.94", {"fig10"}, cuboctahedron_12(), xxz_params(1.94, 0.0), ModelKind::XXZ);
        add_plan("xxz-icosahedron-D2.06", {"fig10"}, icosahedron_12(), xxz_params(2.06, 0.0), ModelKind::XXZ);

        for (const auto& topo : chains) {
            add_sweep("ising-" + topo + "-λ-sweep", {"fig2", "fig3"},
                      make_plan({}, topology_by_name(topo), ising_params(0.0, 0.0), ModelKind::Ising),
                      {{"lambda", lambdas}});
            add_sweep("ising-" + topo + "-D-sweep", {"fig4", "fig5"},
                      make_plan({}, topology_by_name(topo), ising_params(0.0, 0.0), ModelKind::Ising),
                      {{"D", {0.0, 5.0, 10.0}}, {"lambda", lambdas}});
            add_sweep("xxz-" + topo + "-D-sweep", {"fig6", "fig7"},
                      make_plan({}, topology_by_name(topo), xxz_params(0.0, 0.0), ModelKind::XXZ),
                      {{"D", {0.0, 1.7}}, {"lambda", lambdas}});
        }
        add_sweep("xxz-supercube-D-scan", {"fig8"},
                  make_plan({}, supercube(), xxz_params(0.0, 0.0), ModelKind::XXZ),
                  {{"D", {0.0, 0.5, 1.0, 1.7, 2.5}}});
        add_sweep("xxz-supercube-J-scan", {"fig8"},
                  make_plan({}, supercube(), xxz_params(1.7, 0.0), ModelKind::XXZ), {{"J", {0.5, 1.0, 2.0, 3.0}}});
    }

    std::vector<PlanPreset> plans_;
    std::vector<SweepPreset> sweeps_;
};

inline const PresetCatalog& preset_catalog() {
    static const PresetCatalog catalog;
    return catalog;
}

}  // namespace qbattery
