#pragma once

// Pauli operators on n qubits.
//
// Basis convention: basis index b in [0, 2^n); site 1 is the most significant
// bit. Bit value 0 is the uncharged local state, and the local Z matrix is
// diag(-1, +1) so that sum_i Z_i has eigenvalue -n on |0...0>. In this
// ordering Y = [[0, i], [-i, 0]].

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <cstdint>
#include <string>

#include "qbattery/errors.hpp"

namespace qbattery {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using SparseOperator = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using BasisIndex = std::uint64_t;

enum class PauliAxis { X, Y, Z };

inline constexpr int kMaxQubits = 20;

inline const char* to_string(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X: return "X";
        case PauliAxis::Y: return "Y";
        case PauliAxis::Z: return "Z";
    }
    return "?";
}

inline OperatorMatrix local_pauli(PauliAxis axis) {
    constexpr Complex i{0.0, 1.0};
    OperatorMatrix m(2, 2);
    switch (axis) {
        case PauliAxis::X: m << 0.0, 1.0, 1.0, 0.0; break;
        case PauliAxis::Y: m << 0.0, i, -i, 0.0; break;
        case PauliAxis::Z: m << -1.0, 0.0, 0.0, 1.0; break;
    }
    return m;
}

inline std::size_t hilbert_dim(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw DomainError("qubit count " + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
    }
    return std::size_t{1} << n;
}

/// Bit mask selecting `site` (1-based, site 1 = most significant) in an n-qubit index.
inline BasisIndex site_mask(int site, int n) {
    if (site < 1 || site > n) {
        throw DomainError("site " + std::to_string(site) + " outside [1, " + std::to_string(n) + "]");
    }
    return BasisIndex{1} << (n - site);
}

/// Action of a single Pauli on local bit value `bit`: sigma|bit> = phase * |bit ^ flips>.
struct LocalAction {
    bool flips;
    Complex phase;
};

inline LocalAction local_action(PauliAxis axis, bool bit) {
    switch (axis) {
        case PauliAxis::X: return {true, 1.0};
        case PauliAxis::Y: return {true, bit ? Complex{0.0, 1.0} : Complex{0.0, -1.0}};
        case PauliAxis::Z: return {false, bit ? 1.0 : -1.0};
    }
    return {false, 0.0};
}

/// I (x) ... (x) sigma(axis) (x) ... (x) I with the Pauli factor at `site`.
inline OperatorMatrix embed(PauliAxis axis, int site, int n) {
    hilbert_dim(n);
    site_mask(site, n);
    OperatorMatrix result = OperatorMatrix::Identity(1, 1);
    const OperatorMatrix id2 = OperatorMatrix::Identity(2, 2);
    const OperatorMatrix pauli = local_pauli(axis);
    for (int k = 1; k <= n; ++k) {
        OperatorMatrix next = Eigen::kroneckerProduct(result, k == site ? pauli : id2).eval();
        result = std::move(next);
    }
    return result;
}

inline OperatorMatrix two_site_term(PauliAxis axis_a, PauliAxis axis_b, int i, int j, int n) {
    if (i == j) {
        throw DomainError("two_site_term requires distinct sites, got i = j = " + std::to_string(i));
    }
    return embed(axis_a, i, n) * embed(axis_b, j, n);
}

inline double hermiticity_defect(const OperatorMatrix& h) {
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace qbattery
