#include "gdrb/noise.hpp"

#include <cmath>
#include <numbers>

#include "gdrb/error.hpp"

namespace gdrb {

namespace {

constexpr std::uint8_t kNoiseStreamTag = 0x4E;

} // namespace

SuperOp ptm_z_theta(double theta)
{
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
    const double c = std::cos(theta), s = std::sin(theta);
    m(1, 1) = c;
    m(1, 2) = -s;
    m(2, 1) = s;
    m(2, 2) = c;
    return SuperOp(2, std::move(m));
}

Eigen::Matrix2cd fixed_infidelity_unitary(double r, PhiloxRng& rng)
{
    if (r < 0.0 || r > 2.0 / 3.0)
        throw ValidationError("fixed_infidelity_unitary: r must lie in [0, 2/3]");
    const double theta = std::asin(std::sqrt(1.5 * r));
    const Eigen::Matrix2cd v = haar_su2(rng);
    Eigen::Matrix2cd phase = Eigen::Matrix2cd::Zero();
    phase(0, 0) = std::exp(std::complex<double>(0, -theta));
    phase(1, 1) = std::exp(std::complex<double>(0, theta));
    return v * phase * v.adjoint();
}

GateSet random_unitary_gateset(const GroupTable& group, double r, std::uint64_t seed)
{
    if (group.kind != "t_pauli")
        throw ValidationError("random_unitary_gateset: requires the T-Pauli group");
    const Eigen::Matrix2cd t_mat = (Eigen::Matrix2cd() << 1.0, std::complex<double>(0, -1),
                                    1.0, std::complex<double>(0, 1))
                                       .finished()
                                   / std::sqrt(2.0);
    GateSet gs;
    gs.group = group;
    gs.noisy.reserve(group.order);
    for (int i = 0; i < group.order; ++i) {
        PhiloxRng rng(seed, make_stream(kNoiseStreamTag, 0, std::uint32_t(i)));
        const Eigen::Matrix2cd u = fixed_infidelity_unitary(r, rng);
        const Eigen::Matrix2cd v = fixed_infidelity_unitary(r, rng);
        const auto [t, p] = group.tp_labels[std::size_t(i)];
        Eigen::Matrix2cd tp = Eigen::Matrix2cd::Identity();
        for (int k = 0; k < t; ++k)
            tp = t_mat * tp;
        gs.noisy.push_back(ptm_from_unitary(u * tp * v * pauli(p)));
    }
    gs.descriptor = "random_unitary(r=" + std::to_string(r) + ", seed=" + std::to_string(seed) + ")";
    return gs;
}

GateSet depol_z_gateset(const GroupTable& group, double nu, double theta,
                        std::optional<std::vector<int>> partition)
{
    if (!(nu > 0.0 && nu <= 1.0))
        throw ValidationError("depol_z_gateset: nu must lie in (0, 1]");
    if (!(theta >= 0.0 && theta < std::numbers::pi / 2))
        throw ValidationError("depol_z_gateset: theta must lie in [0, pi/2)");
    std::vector<int> part;
    if (partition) {
        part = *partition;
        for (const int i : part)
            if (i < 0 || i >= group.order)
                throw ValidationError("depol_z_gateset: partition index out of range");
    } else {
        for (int i = 1; i < group.order; i += 2)
            part.push_back(i);
    }
    const SuperOp d = depolarizing(nu, 1.0, 2);
    const SuperOp z = ptm_z_theta(theta);
    std::vector<bool> in_part(std::size_t(group.order), false);
    for (const int i : part)
        in_part[std::size_t(i)] = true;

    GateSet gs;
    gs.group = group;
    gs.noisy.reserve(group.order);
    for (int i = 0; i < group.order; ++i) {
        SuperOp n = compose(group.ideal[std::size_t(i)], d);
        if (in_part[std::size_t(i)])
            n = compose(n, z);
        gs.noisy.push_back(std::move(n));
    }
    gs.descriptor = "depol_z(nu=" + std::to_string(nu) + ", theta=" + std::to_string(theta) + ")";
    return gs;
}

GateSet gate_independent_gateset(const GroupTable& group, const SuperOp& e, NoiseSide side)
{
    GateSet gs;
    gs.group = group;
    gs.noisy.reserve(group.order);
    for (int i = 0; i < group.order; ++i)
        gs.noisy.push_back(side == NoiseSide::Left ? compose(e, group.ideal[std::size_t(i)])
                                                   : compose(group.ideal[std::size_t(i)], e));
    gs.descriptor = side == NoiseSide::Left ? "gate_independent(left)" : "gate_independent(right)";
    return gs;
}

GateSet gate_independent_gateset(const GroupTable& group, const SuperOp& l, const SuperOp& r)
{
    GateSet gs;
    gs.group = group;
    gs.noisy.reserve(group.order);
    for (int i = 0; i < group.order; ++i)
        gs.noisy.push_back(compose(l, group.ideal[std::size_t(i)], r));
    gs.descriptor = "gate_independent(both)";
    return gs;
}

} // namespace gdrb
