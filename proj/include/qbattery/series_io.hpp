#pragma once

// CSV output of charge trajectories and cycle summaries.
//
// series.csv: header "t,energy,ergotropy,power", one row per sample, fixed
// notation with 12 fractional digits, '\n' line endings.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qbattery/errors.hpp"
#include "qbattery/experiments.hpp"
#include "qbattery/metrics.hpp"

namespace qbattery {

inline std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    std::string s = buf;
    if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
    return s;
}

inline std::string series_csv(const ChargeTimeSeries& s) {
    if (s.energy.size() != s.size() || s.ergotropy.size() != s.size() || s.power.size() != s.size()) {
        throw DomainError("series columns have different lengths");
    }
    std::string out = "t,energy,ergotropy,power\n";
    for (std::size_t k = 0; k < s.size(); ++k) {
        out += format_fixed(s.times[k]) + ',' + format_fixed(s.energy[k]) + ',' + format_fixed(s.ergotropy[k]) + ',' +
               format_fixed(s.power[k]) + '\n';
    }
    return out;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os << content;
    os.flush();
    if (!os) throw IoError("write failed for " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string() + " for reading");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

inline void write_series_csv(const ChargeTimeSeries& series, const std::filesystem::path& path) {
    write_text_file(path, series_csv(series));
}

inline ChargeTimeSeries parse_series_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "t,energy,ergotropy,power") {
        throw DomainError("series csv: missing header 't,energy,ergotropy,power'");
    }
    ChargeTimeSeries s;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != cell.size()) {
                throw DomainError("series csv line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
            row.push_back(v);
        }
        if (row.size() != 4) throw DomainError("series csv line " + std::to_string(lineno) + ": expected 4 columns");
        s.times.push_back(row[0]);
        s.energy.push_back(row[1]);
        s.ergotropy.push_back(row[2]);
        s.power.push_back(row[3]);
    }
    return s;
}

inline ChargeTimeSeries read_series_csv(const std::filesystem::path& path) {
    return parse_series_csv(read_text_file(path));
}

namespace detail {

inline std::string optional_cell(const std::optional<double>& v) { return v ? format_fixed(*v) : std::string{}; }

}  // namespace detail

inline std::string summary_header() { return "point,peak_value,peak_time,residual,residual_time,period,drift,error\n"; }

inline std::string summary_row(const std::string& point, const CycleReport& r) {
    return point + ',' + format_fixed(r.peak_value) + ',' + format_fixed(r.peak_time) + ',' +
           detail::optional_cell(r.residual) + ',' + detail::optional_cell(r.residual_time) + ',' +
           detail::optional_cell(r.period_estimate) + ',' + detail::optional_cell(r.drift) + ",\n";
}

inline std::string summary_error_row(const std::string& point, std::string error) {
    for (char& c : error)
        if (c == ',' || c == '\n') c = ';';
    return point + ",,,,,,," + error + '\n';
}

}  // namespace qbattery
