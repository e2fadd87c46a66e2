#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gdrb/superop.hpp"

namespace gdrb {

using GateId = std::int32_t;

/// A finite gate group as a multiplication table with cached ideal transfer
/// matrices. Elements are identified projectively (at the transfer-matrix
/// level), so global phases never enter. Immutable after construction.
struct GroupTable {
    std::string kind;                 ///< "t_pauli", "clifford", ...
    int order = 0;
    GateId identity = 0;
    std::vector<GateId> mult;         ///< row-major: mult[a * order + b] = a compose b
    std::vector<GateId> inv;
    std::vector<SuperOp> ideal;
    std::vector<std::string> labels;
    /// For the T-Pauli group: (t, pauli index) per element, in frozen order.
    std::vector<std::array<int, 2>> tp_labels;

    /// Id of the composition "a after b".
    GateId multiply(GateId a, GateId b) const { return mult[std::size_t(a) * order + b]; }
    GateId inverse(GateId g) const { return inv[std::size_t(g)]; }

    /// Id of (G_m ... G_1)^dagger for a sequence applied left to right.
    GateId sequence_inverse(std::span<const GateId> gates) const;
};

/// T-Pauli group {T^t P : t in Z_3, P in {I,X,Y,Z}}, order 12, ordered
/// lexicographically by (t, P). A unitary two-design.
GroupTable build_t_pauli_group();

/// Single-qubit Clifford group (24 elements), generated from {H, S} by
/// breadth-first enumeration with dedup at the transfer-matrix level.
/// The discovery order is frozen; partitions reference these indices.
GroupTable build_clifford_group();

/// Exact uniform average E_G(G^dagger C G).
SuperOp twirl(const SuperOp& c, const GroupTable& g);

struct TwoDesignCheck {
    double max_residual = 0.0;
    bool pass = false;
};

/// Max over random test channels (convex mixtures of Haar-random unitary
/// channels) of ||twirl(C) - D_{p(C),t(C)}||. Passes iff <= tol.
TwoDesignCheck verify_two_design(const GroupTable& g, int trials, double tol,
                                 std::uint64_t seed = 0);

} // namespace gdrb
