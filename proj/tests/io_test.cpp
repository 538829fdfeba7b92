#include <gtest/gtest.h>

#include <filesystem>
#include <numbers>

#include "qbattery/config.hpp"
#include "qbattery/series_io.hpp"
#include "qbattery/svg.hpp"

namespace qb = qbattery;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("qbattery_io_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

qb::ChargeTimeSeries ising_open_series() {
    qb::SimulationPlan plan{"ising-open", qb::open_chain(8), qb::ising_params(0, 0), qb::ModelKind::Ising};
    return qb::run_plan(plan);
}

std::string error_of(const std::string& text) {
    try {
        qb::parse_run_config(text);
    } catch (const qb::DomainError& e) {
        return e.what();
    }
    return {};
}

const char* kIsingConfig = R"(# open chain, no DMI
[system]
n = 8
topology = open

[model]
kind = ising
D = 0
lambda = 0

[time]
t_max = pi
samples = 401
)";

}  // namespace

TEST(SeriesCsv, HeaderAndFirstRow) {
    const auto text = qb::series_csv(ising_open_series());
    const auto first_newline = text.find('\n');
    EXPECT_EQ(text.substr(0, first_newline), "t,energy,ergotropy,power");
    const auto second = text.find('\n', first_newline + 1);
    EXPECT_EQ(text.substr(first_newline + 1, second - first_newline - 1),
              "0.000000000000,-8.000000000000,0.000000000000,0.000000000000");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 402);
    EXPECT_EQ(text.find('\r'), std::string::npos);
}

TEST(SeriesCsv, RoundTrip) {
    const auto s = ising_open_series();
    const auto dir = scratch_dir("roundtrip");
    qb::write_series_csv(s, dir / "nested" / "series.csv");
    const auto back = qb::read_series_csv(dir / "nested" / "series.csv");
    ASSERT_EQ(back.size(), s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        EXPECT_NEAR(back.times[k], s.times[k], 1e-12);
        EXPECT_NEAR(back.energy[k], s.energy[k], 1e-12);
        EXPECT_NEAR(back.ergotropy[k], s.ergotropy[k], 1e-12);
        EXPECT_NEAR(back.power[k], s.power[k], 1e-12);
    }
    EXPECT_NEAR(back.ergotropy[200], 16.0, 1e-9);
}

TEST(SeriesCsv, NegativeZeroIsNormalized) {
    EXPECT_EQ(qb::format_fixed(-1e-15), "0.000000000000");
    EXPECT_EQ(qb::format_fixed(-0.5), "-0.500000000000");
}

TEST(SeriesCsv, ParseErrorsCarryLineNumbers) {
    EXPECT_THROW(qb::parse_series_csv("t,e\n"), qb::DomainError);
    try {
        qb::parse_series_csv("t,energy,ergotropy,power\n0,1,2,3\n0,1,x,3\n");
        FAIL();
    } catch (const qb::DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(SeriesCsv, MissingFileIsIoError) {
    EXPECT_THROW(qb::read_series_csv("/nonexistent/qbattery/series.csv"), qb::IoError);
}

TEST(Summary, RowsHaveFixedColumns) {
    qb::CycleReport r;
    r.peak_value = 15.5;
    r.peak_time = 2.5;
    r.residual = 0.25;
    const auto row = qb::summary_row("D=1.7", r);
    EXPECT_EQ(row, "D=1.7,15.500000000000,2.500000000000,0.250000000000,,,,\n");
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 7);
    const auto err = qb::summary_error_row("D=2", "bad, value\nhere");
    EXPECT_EQ(std::count(err.begin(), err.end(), ','), 7);
    const auto header = qb::summary_header();
    EXPECT_EQ(std::count(header.begin(), header.end(), ','), 7);
}

TEST(RunConfig, ParsesIsingExample) {
    const auto cfg = qb::parse_run_config(kIsingConfig);
    EXPECT_EQ(cfg.kind, qb::ModelKind::Ising);
    EXPECT_EQ(cfg.topology, "open");
    EXPECT_EQ(cfg.params, qb::ising_params(0, 0));
    EXPECT_DOUBLE_EQ(cfg.t_max, pi);
    const auto plan = qb::plan_from_config(cfg);
    EXPECT_EQ(plan.topology.edge_count(), 7u);
    EXPECT_EQ(plan.label, "ising-open");
}

TEST(RunConfig, XxzDefaults) {
    const auto cfg = qb::parse_run_config("[system]\ntopology = supercube\n[model]\nkind = xxz\nD = 1.7\n");
    EXPECT_EQ(cfg.params, qb::xxz_params(1.7, 0.0));
    EXPECT_DOUBLE_EQ(cfg.t_max, 3 * pi);
    EXPECT_EQ(cfg.samples, qb::kXxzSamples);
}

TEST(RunConfig, TimeValues) {
    auto cfg = qb::parse_run_config("[system]\ntopology = open\n[model]\nkind = ising\n[time]\nt_max = 3*pi\n");
    EXPECT_DOUBLE_EQ(cfg.t_max, 3 * pi);
    cfg = qb::parse_run_config("[system]\ntopology = open\n[model]\nkind = ising\n[time]\nt_max = 2.5\n");
    EXPECT_DOUBLE_EQ(cfg.t_max, 2.5);
}

TEST(RunConfig, LambdaOutOfRangeNamesLineAndConstraint) {
    const std::string text = "[system]\ntopology = open\n\n[model]\nkind = ising\nlambda = 1.5\n";
    const auto msg = error_of(text);
    EXPECT_NE(msg.find("line 6"), std::string::npos) << msg;
    EXPECT_NE(msg.find("lambda in [0, 1]"), std::string::npos) << msg;
}

TEST(RunConfig, LineNumberedErrors) {
    EXPECT_NE(error_of("[system]\ntopology = open\n[model]\nkind = ising\nfoo = 1\n").find("line 5"), std::string::npos);
    EXPECT_NE(error_of("[system]\ntopology = open\ntopology = closed\n").find("line 3"), std::string::npos);
    EXPECT_NE(error_of("[bogus]\n").find("line 1"), std::string::npos);
    EXPECT_NE(error_of("[system]\ntopology = open\n[model]\nkind = ising\nD = abc\n").find("line 5"),
              std::string::npos);
    EXPECT_NE(error_of("[system]\ntopology = open\n[model]\nkind = ising\nDelta = 2\n").find("line 5"),
              std::string::npos);
    EXPECT_NE(error_of("[system]\ntopology = open\n[model]\nkind = xxz\n[time]\nsamples = 1\n").find("line 6"),
              std::string::npos);
    EXPECT_NE(error_of("[model]\nkind = ising\n").find("topology"), std::string::npos);
    EXPECT_NE(error_of("[system]\ntopology = open\n").find("kind"), std::string::npos);
}

TEST(RunConfig, RoundTripThroughText) {
    const auto& preset = qb::preset_catalog().plan("xxz-closed-D1.7-λ0.5").plan;
    const auto cfg = qb::config_from_plan(preset, "results", true);
    const auto back = qb::parse_run_config(qb::format_run_config(cfg));
    EXPECT_EQ(back.params, preset.params);
    EXPECT_EQ(back.kind, preset.kind);
    EXPECT_EQ(back.t_max, preset.t_max);
    EXPECT_EQ(back.samples, preset.samples);
    EXPECT_EQ(back.output_directory, "results");
    EXPECT_TRUE(back.emit_svg);
    const auto plan = qb::plan_from_config(back);
    EXPECT_EQ(plan.topology.edges(), preset.topology.edges());
    EXPECT_EQ(plan.label, preset.label);
}

TEST(RunConfig, EdgeListRelativeToConfig) {
    const auto dir = scratch_dir("edges");
    qb::write_text_file(dir / "graphs" / "triangle.edges", "n 3\n1 2 edge\n2 3 edge\n1 3 edge\n");
    qb::write_text_file(dir / "run.ini", "[system]\nedge_list = graphs/triangle.edges\n[model]\nkind = xxz\n");
    const auto cfg = qb::read_run_config(dir / "run.ini");
    const auto plan = qb::plan_from_config(cfg, dir);
    EXPECT_EQ(plan.topology.n(), 3);
    EXPECT_EQ(plan.topology.edge_count(), 3u);
}

TEST(RunConfig, SiteCountMismatch) {
    const auto cfg = qb::parse_run_config("[system]\nn = 12\ntopology = supercube\n[model]\nkind = xxz\n");
    EXPECT_THROW(qb::plan_from_config(cfg), qb::DomainError);
}

TEST(Svg, DeterministicAndLabelled) {
    const auto s = ising_open_series();
    const qb::PlotLabel label{"ising-open", "D=0 <lambda=0>"};
    const auto a = qb::svg_plot(s, qb::PlotMetric::Ergotropy, label);
    EXPECT_EQ(a, qb::svg_plot(s, qb::PlotMetric::Ergotropy, label));
    EXPECT_EQ(a.rfind("<?xml", 0), 0u);
    EXPECT_NE(a.find("<svg"), std::string::npos);
    EXPECT_NE(a.find("ising-open"), std::string::npos);
    EXPECT_NE(a.find("&lt;lambda=0&gt;"), std::string::npos);
    EXPECT_NE(a.find("<polyline"), std::string::npos);
    EXPECT_NE(a.find("</svg>"), std::string::npos);
    EXPECT_NE(a, qb::svg_plot(s, qb::PlotMetric::Power, label));
}

TEST(Svg, FlatSeriesStillRenders) {
    qb::ChargeTimeSeries s;
    s.times = {0.0, 1.0, 2.0};
    s.energy = s.ergotropy = s.power = {0.0, 0.0, 0.0};
    const auto text = qb::svg_plot(s, qb::PlotMetric::Ergotropy, {"flat", ""});
    EXPECT_EQ(text.find("nan"), std::string::npos);
    EXPECT_EQ(text.find("inf"), std::string::npos);
}

TEST(Svg, WritesFile) {
    const auto dir = scratch_dir("svg");
    qb::render_svg(ising_open_series(), qb::PlotMetric::Power, dir / "p.svg", {"t", "s"});
    EXPECT_TRUE(fs::exists(dir / "p.svg"));
}
