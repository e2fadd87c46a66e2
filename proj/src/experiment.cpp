#include "gdrb/experiment.hpp"

#include "gdrb/error.hpp"

namespace gdrb {

std::vector<int> default_m_list()
{
    std::vector<int> out;
    for (int m = 4; m <= 2048; m *= 2)
        out.push_back(m);
    return out;
}

GroupTable build_group(GroupKind kind)
{
    return kind == GroupKind::TPauli ? build_t_pauli_group() : build_clifford_group();
}

GateSet build_gateset(const GroupTable& group, const NoiseSpec& spec,
                      std::optional<std::uint64_t> seed_override)
{
    const std::uint64_t seed = seed_override.value_or(spec.seed);
    switch (spec.model) {
    case NoiseModel::RandomUnitary:
        return random_unitary_gateset(group, spec.r, seed);
    case NoiseModel::DepolZ:
        return depol_z_gateset(group, spec.nu, spec.theta, spec.partition);
    case NoiseModel::GateIndependent: {
        const SuperOp e = spec.e ? *spec.e : depolarizing(1.0 - 2.0 * spec.r, 1.0, 2);
        return gate_independent_gateset(group, e, spec.side);
    }
    }
    throw ValidationError("build_gateset: unknown noise model");
}

StateVec spec_state(const ExperimentSpec& spec)
{
    return spec.rho.dim > 0 ? spec.rho : zero_state();
}

ObsVec spec_observable(const ExperimentSpec& spec)
{
    return spec.obs.dim > 0 ? spec.obs : zero_observable();
}

} // namespace gdrb
