#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gdrb/noise.hpp"
#include "gdrb/superop.hpp"

namespace gdrb {

enum class GroupKind { TPauli, Clifford };
enum class NoiseModel { RandomUnitary, DepolZ, GateIndependent };
enum class FitModel { FixedSpam, Free };

/// Noise-model descriptor, mirroring the JSON config schema.
struct NoiseSpec {
    NoiseModel model = NoiseModel::RandomUnitary;
    double r = 1e-3;
    double nu = 0.99;
    double theta = 0.09;
    std::optional<std::vector<int>> partition;
    std::optional<SuperOp> e;      ///< explicit gate-independent map
    NoiseSide side = NoiseSide::Right;
    std::uint64_t seed = 0;
};

/// Full experiment description: group, noise, schedule, SPAM, fit options.
struct ExperimentSpec {
    GroupKind group = GroupKind::TPauli;
    NoiseSpec noise;
    std::vector<int> m_list;       ///< empty = default {4, 8, ..., 2048}
    int n_seq = 100;
    std::uint64_t seed = 1;
    StateVec rho;                  ///< dim 0 = default |0><0|
    ObsVec obs;
    FitModel fit_model = FitModel::FixedSpam;
    int min_m = 3;
};

std::vector<int> default_m_list();

GroupTable build_group(GroupKind kind);

/// Instantiate the noise model on a group; `seed_override`, when set,
/// replaces spec.seed (fresh draws for repeated experiments).
GateSet build_gateset(const GroupTable& group, const NoiseSpec& spec,
                      std::optional<std::uint64_t> seed_override = std::nullopt);

StateVec spec_state(const ExperimentSpec& spec);
ObsVec spec_observable(const ExperimentSpec& spec);

} // namespace gdrb
