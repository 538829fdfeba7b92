#pragma once

// Unitary evolution |psi(t)> = exp(-i H t) |psi(0)> (hbar = 1 in the exponent).
//
// Two backends: a dense spectral propagator (eigendecomposition computed once,
// reused for every sample time) and fixed-step Lanczos propagation that only
// needs matrix-vector products.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qbattery/errors.hpp"
#include "qbattery/hamiltonian.hpp"
#include "qbattery/operators.hpp"

namespace qbattery {

inline constexpr double kNormTolerance = 1e-10;

/// Normalized amplitude vector of an n-qubit pure state.
class StateVector {
public:
    StateVector(int n, Eigen::VectorXcd amplitudes) : n_(n), amplitudes_(std::move(amplitudes)) {
        if (static_cast<std::size_t>(amplitudes_.size()) != hilbert_dim(n_)) {
            throw DomainError("state of length " + std::to_string(amplitudes_.size()) + " does not match n = " +
                              std::to_string(n_));
        }
        const double norm = amplitudes_.norm();
        if (std::abs(norm - 1.0) > kNormTolerance) {
            throw DomainError("state norm " + std::to_string(norm) + " differs from 1");
        }
    }

    /// Rescales `amplitudes` to unit norm first.
    static StateVector normalized(int n, Eigen::VectorXcd amplitudes) {
        const double norm = amplitudes.norm();
        if (!(norm > 0.0)) throw DomainError("cannot normalize a zero vector");
        amplitudes /= norm;
        return {n, std::move(amplitudes)};
    }

    int n() const { return n_; }
    Eigen::Index dim() const { return amplitudes_.size(); }
    const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

private:
    int n_;
    Eigen::VectorXcd amplitudes_;
};

inline StateVector basis_state(int n, BasisIndex index) {
    const std::size_t dim = hilbert_dim(n);
    if (index >= dim) throw DomainError("basis index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return {n, std::move(v)};
}

/// |0...0>: every qubit uncharged.
inline StateVector uncharged_state(int n) { return basis_state(n, 0); }

/// |1...1>: every qubit charged.
inline StateVector charged_state(int n) { return basis_state(n, hilbert_dim(n) - 1); }

template <typename Matrix>
double expectation(const StateVector& psi, const Matrix& op) {
    const Eigen::VectorXcd hv = op * psi.amplitudes();
    return psi.amplitudes().dot(hv).real();
}

/// Eigendecomposition H = V diag(eps) V^dagger of a Hermitian operator.
class SpectralPropagator {
public:
    explicit SpectralPropagator(const OperatorMatrix& h) {
        if (h.rows() != h.cols() || h.rows() == 0) throw DomainError("propagator needs a square operator");
        const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
        if (hermiticity_defect(h) > 1e-12 * scale) throw DomainError("propagator needs a Hermitian operator");
        Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(h);
        if (solver.info() != Eigen::Success) throw ConvergenceError("Hermitian eigensolver failed");
        eigenvalues_ = solver.eigenvalues();
        eigenvectors_ = solver.eigenvectors();
    }

    Eigen::Index dim() const { return eigenvalues_.size(); }
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    const OperatorMatrix& eigenvectors() const { return eigenvectors_; }

    /// Expansion coefficients V^dagger psi, reusable across sample times.
    Eigen::VectorXcd coefficients(const StateVector& psi) const {
        check_dim(psi);
        return eigenvectors_.adjoint() * psi.amplitudes();
    }

    Eigen::VectorXcd evolve_coefficients(const Eigen::VectorXcd& coeffs, double t) const {
        Eigen::VectorXcd phased(coeffs.size());
        for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
            phased[k] = std::polar(1.0, -eigenvalues_[k] * t) * coeffs[k];
        }
        return eigenvectors_ * phased;
    }

    void check_dim(const StateVector& psi) const {
        if (psi.dim() != dim()) {
            throw DomainError("state dimension " + std::to_string(psi.dim()) + " does not match propagator dimension " +
                              std::to_string(dim()));
        }
    }

private:
    Eigen::VectorXd eigenvalues_;
    OperatorMatrix eigenvectors_;
};

inline StateVector spectral_evolve(const SpectralPropagator& prop, const StateVector& psi0, double t) {
    return {psi0.n(), prop.evolve_coefficients(prop.coefficients(psi0), t)};
}

struct KrylovConfig {
    int subspace_dim = 30;
    double step_size = 0.05;
    double tolerance = 1e-10;  // on the Lanczos error estimate of each step
};

inline void validate(const KrylovConfig& cfg) {
    if (cfg.subspace_dim < 2) throw DomainError("Krylov subspace_dim must be >= 2");
    if (!(cfg.step_size > 0.0)) throw DomainError("Krylov step_size must be > 0");
    if (!(cfg.tolerance > 0.0)) throw DomainError("Krylov tolerance must be > 0");
}

namespace detail {

// One Lanczos step v -> exp(-i h H) v. The subspace grows until the error
// estimate beta_m |e_m^T exp(-i h T_m) e_1| drops below the tolerance.
template <typename Matrix>
Eigen::VectorXcd lanczos_step(const Matrix& H, const Eigen::VectorXcd& v, double h, const KrylovConfig& cfg) {
    const Eigen::Index dim = v.size();
    const double beta0 = v.norm();
    if (beta0 == 0.0) return v;
    const Eigen::Index max_m = std::min<Eigen::Index>(cfg.subspace_dim, dim);

    Eigen::MatrixXcd basis(dim, max_m);
    std::vector<double> alpha;
    std::vector<double> beta;
    basis.col(0) = v / beta0;

    const double breakdown = 1e-13;
    double last_estimate = 0.0;
    for (Eigen::Index j = 0; j < max_m; ++j) {
        Eigen::VectorXcd w = H * basis.col(j);
        alpha.push_back(basis.col(j).dot(w).real());
        w -= alpha.back() * basis.col(j);
        if (j > 0) w -= beta.back() * basis.col(j - 1);
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index k = 0; k <= j; ++k) w -= basis.col(k).dot(w) * basis.col(k);
        }
        const double b = w.norm();
        const Eigen::Index m = j + 1;

        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index k = 0; k < m; ++k) {
            T(k, k) = alpha[static_cast<std::size_t>(k)];
            if (k + 1 < m) T(k, k + 1) = T(k + 1, k) = beta[static_cast<std::size_t>(k)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(T);
        const Eigen::VectorXd& theta = small.eigenvalues();
        const Eigen::MatrixXd& Q = small.eigenvectors();
        Eigen::VectorXcd y = Eigen::VectorXcd::Zero(m);
        for (Eigen::Index k = 0; k < m; ++k) {
            y += (std::polar(1.0, -h * theta[k]) * Q(0, k)) * Q.col(k).cast<Complex>();
        }

        last_estimate = b * std::abs(y[m - 1]);
        if (b < breakdown || last_estimate <= cfg.tolerance) {
            return beta0 * (basis.leftCols(m) * y);
        }
        if (m == max_m) break;
        beta.push_back(b);
        basis.col(j + 1) = w / b;
    }
    throw ConvergenceError("Lanczos step of length " + std::to_string(h) + " did not reach tolerance " +
                           std::to_string(cfg.tolerance) + " within subspace dimension " +
                           std::to_string(max_m) + " (estimate " + std::to_string(last_estimate) + ")");
}

}  // namespace detail

/// Propagates over t in ceil(|t| / step_size) equal Lanczos steps.
template <typename Matrix>
StateVector krylov_evolve(const Matrix& H, const StateVector& psi0, double t, const KrylovConfig& cfg = {}) {
    validate(cfg);
    if (H.rows() != psi0.dim() || H.cols() != psi0.dim()) {
        throw DomainError("operator dimension does not match state dimension");
    }
    if (t == 0.0) return psi0;
    const auto steps = static_cast<long>(std::ceil(std::abs(t) / cfg.step_size));
    const double h = t / static_cast<double>(steps);
    Eigen::VectorXcd v = psi0.amplitudes();
    for (long s = 0; s < steps; ++s) v = detail::lanczos_step(H, v, h, cfg);
    // Truncation error accumulates in the norm as well; undo that drift, but
    // refuse to hide anything larger.
    const double norm = v.norm();
    if (!(std::abs(norm - 1.0) <= 1e-6)) {
        throw ConvergenceError("Krylov propagation lost unitarity (norm " + std::to_string(norm) + ")");
    }
    return {psi0.n(), v / norm};
}

enum class Backend { Spectral, Krylov, Auto };

inline const char* to_string(Backend b) {
    switch (b) {
        case Backend::Spectral: return "spectral";
        case Backend::Krylov: return "krylov";
        case Backend::Auto: return "auto";
    }
    return "?";
}

inline Backend parse_backend(const std::string& s) {
    if (s == "spectral") return Backend::Spectral;
    if (s == "krylov") return Backend::Krylov;
    if (s == "auto") return Backend::Auto;
    throw DomainError("unknown backend '" + s + "' (expected spectral, krylov or auto)");
}

/// Largest dimension for which Backend::Auto picks the dense spectral path.
inline constexpr Eigen::Index kSpectralMaxDim = 1024;

inline Backend resolve_backend(Backend b, Eigen::Index dim) {
    if (b != Backend::Auto) return b;
    return dim <= kSpectralMaxDim ? Backend::Spectral : Backend::Krylov;
}

/// count samples evenly spaced on [0, t_max], endpoints included.
inline std::vector<double> time_grid(double t_max, int count) {
    if (count < 2) throw DomainError("time grid needs at least 2 samples");
    if (!(t_max > 0.0)) throw DomainError("time grid needs t_max > 0");
    std::vector<double> t(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) t[static_cast<std::size_t>(k)] = t_max * k / (count - 1);
    return t;
}

struct TrajectoryOptions {
    Backend backend = Backend::Auto;
    KrylovConfig krylov{};
};

inline void check_time_grid(const std::vector<double>& times) {
    if (times.empty() || times.front() != 0.0) throw DomainError("time grid must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) throw DomainError("time grid must be strictly increasing");
    }
}

inline std::vector<StateVector> sample_trajectory(const SparseOperator& H, const StateVector& psi0,
                                                  const std::vector<double>& times,
                                                  const TrajectoryOptions& opts = {}) {
    check_time_grid(times);
    if (H.rows() != psi0.dim()) throw DomainError("operator dimension does not match state dimension");
    std::vector<StateVector> out;
    out.reserve(times.size());
    if (resolve_backend(opts.backend, psi0.dim()) == Backend::Spectral) {
        const SpectralPropagator prop(to_dense(H));
        const Eigen::VectorXcd coeffs = prop.coefficients(psi0);
        for (double t : times) out.emplace_back(psi0.n(), prop.evolve_coefficients(coeffs, t));
        return out;
    }
    out.push_back(psi0);
    for (std::size_t k = 1; k < times.size(); ++k) {
        out.push_back(krylov_evolve(H, out.back(), times[k] - times[k - 1], opts.krylov));
    }
    return out;
}

inline std::vector<StateVector> sample_trajectory(const OperatorMatrix& H, const StateVector& psi0,
                                                  const std::vector<double>& times,
                                                  const TrajectoryOptions& opts = {}) {
    return sample_trajectory(SparseOperator(H.sparseView()), psi0, times, opts);
}

}  // namespace qbattery
