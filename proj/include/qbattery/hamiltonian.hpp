#pragma once

// Battery, charging and driver Hamiltonians.
//
//   H_B   = hbar*omega0 * sum_i Z_i
//   H_x   = hbar*Omega  * sum_i X_i
//   H_HS  = J*hbar * sum_edges [(1+delta) X_i X_j + (1-delta) Y_i Y_j + Delta Z_i Z_j]
//   H_DM  = D * sum_edges (X_i Y_j - Y_i X_j)        (edge orientation i < j)
//   H     = H_x + H_HS + H_DM + lambda * H_B
//
// Terms are assembled by acting with Pauli products on computational basis
// states, never through Kronecker products.

#include <bit>
#include <cmath>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "qbattery/operators.hpp"
#include "qbattery/topology.hpp"

namespace qbattery {

struct ModelParams {
    double J = 1.0;
    double delta = 0.0;
    double Delta = 0.0;
    double D = 0.0;
    double Omega = 1.0;
    double omega0 = 1.0;
    double lambda = 0.0;
    double hbar = 1.0;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

enum class ModelKind { Ising, XXZ, Custom };

inline const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Ising: return "ising";
        case ModelKind::XXZ: return "xxz";
        case ModelKind::Custom: return "custom";
    }
    return "?";
}

inline ModelKind parse_model_kind(const std::string& s) {
    if (s == "ising") return ModelKind::Ising;
    if (s == "xxz") return ModelKind::XXZ;
    if (s == "custom") return ModelKind::Custom;
    throw DomainError("unknown model kind '" + s + "' (expected ising, xxz or custom)");
}

inline void validate(const ModelParams& p) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!(finite(p.J) && finite(p.delta) && finite(p.Delta) && finite(p.D) && finite(p.Omega) &&
          finite(p.omega0) && finite(p.lambda) && finite(p.hbar))) {
        throw DomainError("model parameters must be finite");
    }
    if (p.lambda < 0.0 || p.lambda > 1.0) {
        throw DomainError("lambda = " + std::to_string(p.lambda) + " violates lambda in [0, 1]");
    }
    if (!(p.omega0 > 0.0)) throw DomainError("omega0 must be > 0, got " + std::to_string(p.omega0));
    if (p.Omega < 0.0) throw DomainError("Omega must be >= 0, got " + std::to_string(p.Omega));
    if (!(p.hbar > 0.0)) throw DomainError("hbar must be > 0, got " + std::to_string(p.hbar));
}

inline void validate(const ModelParams& p, ModelKind kind) {
    validate(p);
    if (kind == ModelKind::Ising && (p.delta != 1.0 || p.Delta != 0.0)) {
        throw DomainError("ising model requires delta = 1 and Delta = 0");
    }
    if (kind == ModelKind::XXZ && (p.delta != 0.0 || p.Delta == 0.0)) {
        throw DomainError("xxz model requires delta = 0 and Delta != 0");
    }
}

/// Defaults used throughout the experiments: hbar = omega0 = Omega = J = 1.
inline ModelParams ising_params(double D, double lambda) {
    ModelParams p;
    p.delta = 1.0;
    p.Delta = 0.0;
    p.D = D;
    p.lambda = lambda;
    return p;
}

inline ModelParams xxz_params(double D, double lambda, double Delta = 2.0) {
    ModelParams p;
    p.delta = 0.0;
    p.Delta = Delta;
    p.D = D;
    p.lambda = lambda;
    return p;
}

/// Accumulates sums of Pauli products into a sparse matrix.
class PauliSumBuilder {
public:
    using Factor = std::pair<PauliAxis, int>;

    explicit PauliSumBuilder(int n) : n_(n), dim_(hilbert_dim(n)) {}

    void add_product(Complex coeff, std::initializer_list<Factor> factors) {
        if (coeff == Complex{0.0, 0.0}) return;
        struct Resolved {
            PauliAxis axis;
            BasisIndex mask;
        };
        std::vector<Resolved> resolved;
        BasisIndex used = 0;
        for (auto [axis, site] : factors) {
            const BasisIndex mask = site_mask(site, n_);
            if (used & mask) throw DomainError("Pauli product repeats site " + std::to_string(site));
            used |= mask;
            resolved.push_back({axis, mask});
        }
        triplets_.reserve(triplets_.size() + dim_);
        for (BasisIndex b = 0; b < dim_; ++b) {
            BasisIndex target = b;
            Complex amp = coeff;
            for (const auto& f : resolved) {
                const auto act = local_action(f.axis, (b & f.mask) != 0);
                amp *= act.phase;
                if (act.flips) target ^= f.mask;
            }
            triplets_.emplace_back(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(b), amp);
        }
    }

    SparseOperator build() const {
        SparseOperator m(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
        m.setFromTriplets(triplets_.begin(), triplets_.end());
        m.prune(Complex{0.0, 0.0});
        m.makeCompressed();
        return m;
    }

    int n() const { return n_; }

private:
    int n_;
    std::size_t dim_;
    std::vector<Eigen::Triplet<Complex>> triplets_;
};

namespace detail {

inline void add_battery(PauliSumBuilder& b, double scale, const ModelParams& p) {
    for (int i = 1; i <= b.n(); ++i) b.add_product(scale * p.hbar * p.omega0, {{PauliAxis::Z, i}});
}

inline void add_transverse(PauliSumBuilder& b, const ModelParams& p) {
    for (int i = 1; i <= b.n(); ++i) b.add_product(p.hbar * p.Omega, {{PauliAxis::X, i}});
}

inline void add_heisenberg_edge(PauliSumBuilder& b, int i, int j, const ModelParams& p) {
    const double c = p.J * p.hbar;
    b.add_product(c * (1.0 + p.delta), {{PauliAxis::X, i}, {PauliAxis::X, j}});
    b.add_product(c * (1.0 - p.delta), {{PauliAxis::Y, i}, {PauliAxis::Y, j}});
    b.add_product(c * p.Delta, {{PauliAxis::Z, i}, {PauliAxis::Z, j}});
}

inline void add_dmi_edge(PauliSumBuilder& b, int i, int j, double D) {
    b.add_product(D, {{PauliAxis::X, i}, {PauliAxis::Y, j}});
    b.add_product(-D, {{PauliAxis::Y, i}, {PauliAxis::X, j}});
}

inline void check_sites(int n) {
    if (n < 1) throw DomainError("qubit count must be >= 1, got " + std::to_string(n));
}

}  // namespace detail

inline SparseOperator battery_hamiltonian_sparse(int n, const ModelParams& p) {
    detail::check_sites(n);
    PauliSumBuilder b(n);
    detail::add_battery(b, 1.0, p);
    return b.build();
}

/// Diagonal of H_B, i.e. the energy of each computational basis state.
inline Eigen::VectorXd battery_energies(int n, const ModelParams& p) {
    const std::size_t dim = hilbert_dim(n);
    Eigen::VectorXd e(static_cast<Eigen::Index>(dim));
    for (BasisIndex b = 0; b < dim; ++b) {
        const int charged = std::popcount(b);
        e[static_cast<Eigen::Index>(b)] = p.hbar * p.omega0 * (2.0 * charged - n);
    }
    return e;
}

inline SparseOperator transverse_field_sparse(int n, const ModelParams& p) {
    detail::check_sites(n);
    PauliSumBuilder b(n);
    detail::add_transverse(b, p);
    return b.build();
}

inline SparseOperator heisenberg_term_sparse(const SpinTopology& topo, const ModelParams& p) {
    PauliSumBuilder b(topo.n());
    for (const auto& e : topo.edges()) detail::add_heisenberg_edge(b, e.i, e.j, p);
    return b.build();
}

inline SparseOperator dmi_term_sparse(const SpinTopology& topo, const ModelParams& p) {
    PauliSumBuilder b(topo.n());
    for (const auto& e : topo.edges()) detail::add_dmi_edge(b, e.i, e.j, p.D);
    return b.build();
}

/// D (X_i Y_j - Y_i X_j) for an explicitly oriented pair; (j, i) gives the negative of (i, j).
inline SparseOperator dmi_pair_sparse(int i, int j, int n, double D) {
    if (i == j) throw DomainError("DMI pair requires distinct sites");
    PauliSumBuilder b(n);
    detail::add_dmi_edge(b, i, j, D);
    return b.build();
}

inline SparseOperator driver_hamiltonian_sparse(const SpinTopology& topo, const ModelParams& p) {
    validate(p);
    PauliSumBuilder b(topo.n());
    detail::add_transverse(b, p);
    for (const auto& e : topo.edges()) {
        detail::add_heisenberg_edge(b, e.i, e.j, p);
        detail::add_dmi_edge(b, e.i, e.j, p.D);
    }
    if (p.lambda != 0.0) detail::add_battery(b, p.lambda, p);
    return b.build();
}

inline OperatorMatrix to_dense(const SparseOperator& m) { return OperatorMatrix(m); }

inline OperatorMatrix battery_hamiltonian(int n, const ModelParams& p) {
    return to_dense(battery_hamiltonian_sparse(n, p));
}

inline OperatorMatrix transverse_field(int n, const ModelParams& p) {
    return to_dense(transverse_field_sparse(n, p));
}

inline OperatorMatrix heisenberg_term(const SpinTopology& topo, const ModelParams& p) {
    return to_dense(heisenberg_term_sparse(topo, p));
}

inline OperatorMatrix dmi_term(const SpinTopology& topo, const ModelParams& p) {
    return to_dense(dmi_term_sparse(topo, p));
}

inline OperatorMatrix driver_hamiltonian(const SpinTopology& topo, const ModelParams& p) {
    return to_dense(driver_hamiltonian_sparse(topo, p));
}

}  // namespace qbattery
