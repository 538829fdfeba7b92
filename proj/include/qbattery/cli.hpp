#pragma once

// Command-line front end. Exit status: 0 success, 1 configuration/domain or
// file-system error, 2 numerical convergence failure.

#include <CLI11.hpp>

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "qbattery/config.hpp"
#include "qbattery/errors.hpp"
#include "qbattery/experiments.hpp"
#include "qbattery/metrics.hpp"
#include "qbattery/series_io.hpp"
#include "qbattery/svg.hpp"
#include "qbattery/topology.hpp"

namespace qbattery {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitConvergence = 2;

inline std::string parameter_summary(const SimulationPlan& plan) {
    const auto& p = plan.params;
    return "n=" + std::to_string(plan.topology.n()) + "  " + to_string(plan.kind) + "  J=" + format_number(p.J) +
           " delta=" + format_number(p.delta) + " Delta=" + format_number(p.Delta) + " D=" + format_number(p.D) +
           " Omega=" + format_number(p.Omega) + " omega0=" + format_number(p.omega0) +
           " lambda=" + format_number(p.lambda);
}

inline std::string describe(const CycleReport& r) {
    std::string s = "peak ergotropy " + format_fixed(r.peak_value) + " at t = " + format_fixed(r.peak_time);
    if (r.residual) s += ", residual " + format_fixed(*r.residual);
    if (r.period_estimate) s += ", period " + format_fixed(*r.period_estimate);
    if (r.drift) s += ", drift " + format_fixed(*r.drift);
    return s;
}

/// Writes series.csv (and the two plots when emit_svg) into `dir`.
inline void write_run_outputs(const ChargeTimeSeries& series, const SimulationPlan& plan,
                              const std::filesystem::path& dir, bool emit_svg) {
    write_series_csv(series, dir / "series.csv");
    if (emit_svg) {
        const PlotLabel label{plan.label, parameter_summary(plan)};
        render_svg(series, PlotMetric::Ergotropy, dir / "ergotropy.svg", label);
        render_svg(series, PlotMetric::Power, dir / "power.svg", label);
    }
}

/// One CSV per axis point plus summary.csv. Returns the exit status implied by failed points.
inline int write_sweep_outputs(const std::vector<SweepResult>& results, const std::filesystem::path& dir,
                               std::ostream& out, std::ostream& err) {
    std::string summary = summary_header();
    int status = kExitOk;
    for (const auto& r : results) {
        const std::string tag = point_tag(r.point);
        if (r.series) {
            write_series_csv(*r.series, dir / (tag + ".csv"));
            const auto report = cycle_report(*r.series);
            summary += summary_row(tag, report);
            out << tag << ": " << describe(report) << '\n';
        } else {
            summary += summary_error_row(tag, r.error);
            err << tag << ": " << r.error << '\n';
            status = std::max(status, r.convergence_failure ? kExitConvergence : kExitDomain);
        }
    }
    write_text_file(dir / "summary.csv", summary);
    return status;
}

inline SweepAxis parse_axis(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("axis '" + text + "' must look like name=v1,v2,...");
    SweepAxis axis{text.substr(0, eq), {}};
    if (!is_parameter_name(axis.parameter)) throw DomainError("unknown sweep parameter '" + axis.parameter + "'");
    std::istringstream is(text.substr(eq + 1));
    std::string cell;
    while (std::getline(is, cell, ',')) {
        const auto v = detail::parse_double(detail::trim(cell));
        if (!v) throw DomainError("axis '" + axis.parameter + "': bad value '" + cell + "'");
        axis.values.push_back(*v);
    }
    if (axis.values.empty()) throw DomainError("axis '" + axis.parameter + "' has no values");
    return axis;
}

inline int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spin-chain quantum battery simulator"};
    app.name("qbattery");
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> axes;
    unsigned threads = 0;

    auto* simulate = app.add_subcommand("simulate", "Run one configuration");
    simulate->add_option("--config", config_path, "Run configuration file")->required();
    simulate->add_option("--out", out_dir, "Output directory (overrides [output] directory)");

    auto* sweep = app.add_subcommand("sweep", "Run a configuration over a parameter grid");
    sweep->add_option("--config", config_path, "Base run configuration file")->required();
    sweep->add_option("--axis", axes, "Sweep axis name=v1,v2,... (repeatable)")->required();
    sweep->add_option("--out", out_dir, "Output directory (overrides [output] directory)");
    sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* preset = app.add_subcommand("preset", "Named experiment presets");
    preset->require_subcommand(1);
    auto* preset_list = preset->add_subcommand("list", "List preset names");
    auto* preset_run = preset->add_subcommand("run", "Run a preset");
    std::string preset_name;
    bool no_svg = false;
    std::string backend_name;
    preset_run->add_option("name", preset_name, "Preset name ('lambda' may replace 'λ')")->required();
    preset_run->add_option("--out", out_dir, "Output directory (default out/<name>)");
    preset_run->add_flag("--no-svg", no_svg, "Skip SVG plots");
    preset_run->add_option("--backend", backend_name, "spectral, krylov or auto");
    preset_run->add_option("--threads", threads, "Worker threads for sweep presets");

    auto* topology = app.add_subcommand("topology", "Interaction graphs");
    topology->require_subcommand(1);
    auto* topology_list = topology->add_subcommand("list", "List catalog topologies");
    auto* topology_export = topology->add_subcommand("export", "Print a topology as an edge list");
    std::string topology_name;
    int chain_n = 8;
    std::string export_path;
    topology_export->add_option("name", topology_name, "Topology name")->required();
    topology_export->add_option("--n", chain_n, "Site count for open/closed chains");
    topology_export->add_option("--out", export_path, "Write to a file instead of standard output");

    auto* validate_cmd = app.add_subcommand("validate", "Check a configuration without running it");
    validate_cmd->add_option("--config", config_path, "Run configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitDomain;
    }

    try {
        if (*simulate || *validate_cmd || *sweep) {
            const auto cfg = read_run_config(config_path);
            const auto plan = plan_from_config(cfg, std::filesystem::path(config_path).parent_path());
            const std::filesystem::path dir = out_dir.empty() ? cfg.output_directory : out_dir;
            if (*validate_cmd) {
                out << "ok: " << plan.label << " (" << parameter_summary(plan) << ", " << plan.topology.edge_count()
                    << " edges, " << plan.samples << " samples on [0, " << format_number(plan.t_max) << "])\n";
                return kExitOk;
            }
            if (*simulate) {
                const auto series = run_plan(plan);
                write_run_outputs(series, plan, dir, cfg.emit_svg);
                out << plan.label << ": " << describe(cycle_report(series)) << '\n';
                return kExitOk;
            }
            SweepSpec spec{plan, {}};
            for (const auto& a : axes) spec.axes.push_back(parse_axis(a));
            return write_sweep_outputs(run_sweep(spec, threads), dir, out, err);
        }
        if (*preset_list) {
            const auto& catalog = preset_catalog();
            for (const auto& p : catalog.plans()) {
                out << p.name;
                for (const auto& f : p.figures) out << ' ' << f;
                out << '\n';
            }
            for (const auto& s : catalog.sweeps()) {
                out << s.name << " (sweep)";
                for (const auto& f : s.figures) out << ' ' << f;
                out << '\n';
            }
            return kExitOk;
        }
        if (*preset_run) {
            const auto& catalog = preset_catalog();
            const std::filesystem::path dir =
                out_dir.empty() ? std::filesystem::path("out") / ascii_preset_name(canonical_preset_name(preset_name))
                                : std::filesystem::path(out_dir);
            if (const auto* sp = catalog.find_sweep(preset_name)) {
                SweepSpec spec = sp->spec;
                if (!backend_name.empty()) spec.base.backend = parse_backend(backend_name);
                return write_sweep_outputs(run_sweep(spec, threads), dir, out, err);
            }
            SimulationPlan plan = catalog.plan(preset_name).plan;
            if (!backend_name.empty()) plan.backend = parse_backend(backend_name);
            const auto series = run_plan(plan);
            write_run_outputs(series, plan, dir, !no_svg);
            out << plan.label << ": " << describe(cycle_report(series)) << '\n';
            return kExitOk;
        }
        if (*topology_list) {
            for (const auto& name : topology_names()) out << name << '\n';
            return kExitOk;
        }
        if (*topology_export) {
            const auto text = to_edge_list(topology_by_name(topology_name, chain_n));
            if (export_path.empty()) {
                out << text;
            } else {
                write_text_file(export_path, text);
            }
            return kExitOk;
        }
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    err << "error: no command given\n";
    return kExitDomain;
}

}  // namespace qbattery
