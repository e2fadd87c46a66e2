#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdrb/group.hpp"
#include "gdrb/rng.hpp"
#include "gdrb/superop.hpp"

namespace gdrb {

/// A group together with one noisy transfer matrix per element. Noise is
/// sampled once at construction: time-independent, gate-dependent, Markovian.
struct GateSet {
    GroupTable group;
    std::vector<SuperOp> noisy;
    std::string descriptor;

    const SuperOp& ideal(GateId g) const { return group.ideal[std::size_t(g)]; }
    const SuperOp& noisy_of(GateId g) const { return noisy[std::size_t(g)]; }
};

/// Transfer matrix of Z_theta = diag(1, e^{i theta}).
SuperOp ptm_z_theta(double theta);

/// Unitary of fixed infidelity r: U = V exp(-i theta Z) V^dagger with
/// theta = arcsin(sqrt(3 r / 2)) and V Haar-random. Requires 0 <= r <= 2/3.
Eigen::Matrix2cd fixed_infidelity_unitary(double r, PhiloxRng& rng);

/// T-Pauli set with per-element unitary noise: element G = T^t P receives the
/// fixed noisy transfer matrix of U_G T^t V_G P, where U_G and V_G are fresh
/// independent infidelity-r unitaries (stream keyed by (seed, element)).
GateSet random_unitary_gateset(const GroupTable& group, double r, std::uint64_t seed);

/// Clifford set where the elements in `partition` are implemented as
/// G D_nu Z_theta and the rest as G D_nu. Default partition: odd indices
/// under the frozen element order (12 of 24 elements).
GateSet depol_z_gateset(const GroupTable& group, double nu, double theta,
                        std::optional<std::vector<int>> partition = std::nullopt);

enum class NoiseSide { Left, Right };

/// Gate-independent noise: noisy = E * ideal (Left) or ideal * E (Right).
GateSet gate_independent_gateset(const GroupTable& group, const SuperOp& e, NoiseSide side);

/// Gate-independent two-sided noise: noisy = L * ideal * R.
GateSet gate_independent_gateset(const GroupTable& group, const SuperOp& l, const SuperOp& r);

} // namespace gdrb
