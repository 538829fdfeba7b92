#pragma once

// Ergotropy, charging power and charge-cycle statistics.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qbattery/errors.hpp"
#include "qbattery/evolution.hpp"
#include "qbattery/operators.hpp"

namespace qbattery {

struct ChargeTimeSeries {
    std::vector<double> times;
    std::vector<double> energy;     // <H_B>(t)
    std::vector<double> ergotropy;  // zeta(t)
    std::vector<double> power;      // P(t) = zeta(t) / t

    std::size_t size() const { return times.size(); }
};

namespace detail {

inline bool is_diagonal(const OperatorMatrix& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            if (r != c && m(r, c) != Complex{0.0, 0.0}) return false;
    return true;
}

inline Eigen::VectorXd ascending_spectrum(const OperatorMatrix& h) {
    if (is_diagonal(h)) {
        Eigen::VectorXd d = h.diagonal().real();
        std::sort(d.begin(), d.end());
        return d;
    }
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

}  // namespace detail

/// Pure-state ergotropy <psi|H_B|psi> - E_min(H_B): the ground state is the passive state.
inline double ergotropy_pure(const StateVector& psi, const OperatorMatrix& battery) {
    if (battery.rows() != psi.dim() || battery.cols() != psi.dim()) {
        throw DomainError("battery Hamiltonian dimension does not match state dimension");
    }
    return expectation(psi, battery) - detail::ascending_spectrum(battery)[0];
}

/// Same quantity for a diagonal H_B given by its basis-state energies.
inline double ergotropy_pure(const StateVector& psi, const Eigen::VectorXd& battery_energies) {
    if (battery_energies.size() != psi.dim()) {
        throw DomainError("battery energy vector does not match state dimension");
    }
    return psi.amplitudes().cwiseAbs2().dot(battery_energies) - battery_energies.minCoeff();
}

/// Mixed-state ergotropy Tr(rho H_B) - sum_k r_k eps_k, with rho's eigenvalues r
/// descending paired against H_B's eigenvalues eps ascending.
inline double ergotropy_general(const OperatorMatrix& rho, const OperatorMatrix& battery) {
    constexpr double tol = 1e-8;
    if (rho.rows() != rho.cols() || rho.rows() != battery.rows() || battery.rows() != battery.cols()) {
        throw DomainError("density matrix and battery Hamiltonian dimensions differ");
    }
    if (hermiticity_defect(rho) > tol) throw DomainError("density matrix is not Hermitian");
    if (std::abs(rho.trace() - Complex{1.0, 0.0}) > tol) throw DomainError("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(rho, Eigen::EigenvaluesOnly);
    Eigen::VectorXd populations = solver.eigenvalues();
    if (populations.minCoeff() < -tol) throw DomainError("density matrix is not positive semidefinite");
    std::sort(populations.begin(), populations.end(), std::greater<>());
    const Eigen::VectorXd levels = detail::ascending_spectrum(battery);
    const double passive = populations.dot(levels);
    return (rho * battery).trace().real() - passive;
}

inline OperatorMatrix density_matrix(const StateVector& psi) {
    return psi.amplitudes() * psi.amplitudes().adjoint();
}

/// Fills power[k] = ergotropy[k] / times[k]; power[0] = 0 at t = 0.
inline ChargeTimeSeries charging_power(ChargeTimeSeries series) {
    if (series.ergotropy.size() != series.times.size()) {
        throw DomainError("ergotropy column length differs from time column");
    }
    series.power.assign(series.times.size(), 0.0);
    for (std::size_t k = 0; k < series.times.size(); ++k) {
        if (series.times[k] == 0.0) {
            if (k != 0) throw DomainError("only the first sample may sit at t = 0");
            continue;
        }
        series.power[k] = series.ergotropy[k] / series.times[k];
    }
    return series;
}

/// Energy, ergotropy and power along a sampled trajectory.
inline ChargeTimeSeries charge_series(const std::vector<double>& times, const std::vector<StateVector>& states,
                                      const Eigen::VectorXd& battery_energies) {
    if (times.size() != states.size()) throw DomainError("one state per sample time required");
    ChargeTimeSeries s;
    s.times = times;
    const double ground = battery_energies.minCoeff();
    for (const auto& psi : states) {
        if (psi.dim() != battery_energies.size()) throw DomainError("state dimension mismatch");
        const double e = psi.amplitudes().cwiseAbs2().dot(battery_energies);
        s.energy.push_back(e);
        s.ergotropy.push_back(e - ground);
    }
    return charging_power(std::move(s));
}

struct Extremum {
    double time = 0.0;
    double value = 0.0;
    std::size_t index = 0;
};

struct CycleReport {
    double peak_value = 0.0;
    double peak_time = 0.0;
    std::optional<double> residual;
    std::optional<double> residual_time;
    std::optional<double> period_estimate;
    std::optional<double> drift;
    std::vector<Extremum> peaks;   // prominence-filtered maxima
    std::vector<Extremum> minima;  // prominence-filtered minima after the first peak
};

namespace detail {

// Height of values[k] above the higher of the two lowest points reachable on
// either side before meeting a strictly higher sample. With one_sided, only
// the left side is considered (used for a maximum at the final sample).
inline double prominence(const std::vector<double>& values, std::size_t k, bool one_sided) {
    const double top = values[k];
    double left_min = top;
    for (std::size_t j = k; j-- > 0;) {
        if (values[j] > top) break;
        left_min = std::min(left_min, values[j]);
    }
    if (one_sided) return top - left_min;
    double right_min = top;
    for (std::size_t j = k + 1; j < values.size(); ++j) {
        if (values[j] > top) break;
        right_min = std::min(right_min, values[j]);
    }
    return top - std::max(left_min, right_min);
}

inline std::vector<std::size_t> find_maxima(const std::vector<double>& values, double floor, bool include_end) {
    std::vector<std::size_t> out;
    const std::size_t n = values.size();
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (values[k] > values[k - 1] && values[k] > values[k + 1] && prominence(values, k, false) >= floor) {
            out.push_back(k);
        }
    }
    if (include_end && n >= 2 && values[n - 1] > values[n - 2] && prominence(values, n - 1, true) >= floor) {
        out.push_back(n - 1);
    }
    return out;
}

}  // namespace detail

inline constexpr double kProminenceFraction = 0.01;

inline CycleReport cycle_report(const ChargeTimeSeries& series) {
    const auto& zeta = series.ergotropy;
    if (zeta.size() < 3 || series.times.size() != zeta.size()) {
        throw DomainError("cycle report needs at least 3 aligned samples");
    }
    CycleReport r;
    const auto max_it = std::max_element(zeta.begin(), zeta.end());
    const auto min_it = std::min_element(zeta.begin(), zeta.end());
    r.peak_value = *max_it;
    r.peak_time = series.times[static_cast<std::size_t>(max_it - zeta.begin())];
    const double range = *max_it - *min_it;
    if (!(range > 0.0)) return r;
    const double floor = kProminenceFraction * range;

    for (std::size_t k : detail::find_maxima(zeta, floor, true)) r.peaks.push_back({series.times[k], zeta[k], k});
    if (r.peaks.empty()) return r;
    if (r.peaks.size() >= 2) r.period_estimate = r.peaks[1].time - r.peaks[0].time;

    std::vector<double> negated(zeta.size());
    std::transform(zeta.begin(), zeta.end(), negated.begin(), [](double v) { return -v; });
    for (std::size_t k : detail::find_maxima(negated, floor, false)) {
        if (k > r.peaks.front().index) r.minima.push_back({series.times[k], zeta[k], k});
    }
    if (!r.minima.empty()) {
        r.residual = r.minima[0].value;
        r.residual_time = r.minima[0].time;
    }
    if (r.minima.size() >= 2) r.drift = r.minima[1].value - r.minima[0].value;
    return r;
}

/// Checks the series invariants for an n-qubit battery with level splitting hbar*omega0.
/// Returns an empty string when all hold, otherwise a description of the first failure.
inline std::string series_invariant_violation(const ChargeTimeSeries& s, int n, double hbar_omega0,
                                              double tol = 1e-9) {
    const std::size_t len = s.times.size();
    if (s.energy.size() != len || s.ergotropy.size() != len || s.power.size() != len) return "column lengths differ";
    if (len == 0) return "empty series";
    if (std::abs(s.ergotropy[0]) > 1e-10) return "initial ergotropy is not zero";
    const double cap = 2.0 * n * hbar_omega0;
    for (std::size_t k = 0; k < len; ++k) {
        if (s.ergotropy[k] < -tol || s.ergotropy[k] > cap + tol) {
            return "ergotropy " + std::to_string(s.ergotropy[k]) + " outside [0, " + std::to_string(cap) + "]";
        }
        if (s.times[k] > 0.0 && std::abs(s.power[k] * s.times[k] - s.ergotropy[k]) > tol * std::max(1.0, cap)) {
            return "power does not match ergotropy / t";
        }
    }
    return {};
}

}  // namespace qbattery
