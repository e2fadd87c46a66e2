#include "gdrb/rbsim.hpp"

#include <cmath>

#include "gdrb/error.hpp"
#include "gdrb/parallel.hpp"

namespace gdrb {

namespace {

constexpr std::uint8_t kSequenceStreamTag = 0x53;

struct MeanVar {
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t n = 0;
};

MeanVar combine(const MeanVar& a, const MeanVar& b)
{
    if (a.n == 0)
        return b;
    if (b.n == 0)
        return a;
    MeanVar out;
    out.n = a.n + b.n;
    const double delta = b.mean - a.mean;
    out.mean = a.mean + delta * double(b.n) / double(out.n);
    out.m2 = a.m2 + b.m2 + delta * delta * double(a.n) * double(b.n) / double(out.n);
    return out;
}

MeanVar pairwise_reduce(const std::vector<double>& xs, std::size_t lo, std::size_t hi)
{
    if (hi - lo == 1)
        return { xs[lo], 0.0, 1 };
    const std::size_t mid = lo + (hi - lo) / 2;
    return combine(pairwise_reduce(xs, lo, mid), pairwise_reduce(xs, mid, hi));
}

} // namespace

std::pair<double, double> pairwise_mean_variance(const std::vector<double>& xs)
{
    if (xs.empty())
        throw ValidationError("pairwise_mean_variance: empty input");
    const MeanVar mv = pairwise_reduce(xs, 0, xs.size());
    const double var = mv.n > 1 ? mv.m2 / double(mv.n - 1) : 0.0;
    return { mv.mean, var };
}

SequenceSpec sample_sequence(const GroupTable& group, int m, PhiloxRng& rng)
{
    if (m < 1)
        throw ValidationError("sample_sequence: m must be >= 1");
    SequenceSpec seq;
    seq.m = m;
    seq.gates.reserve(std::size_t(m));
    GateId acc = group.identity;
    for (int j = 0; j < m; ++j) {
        const GateId g = GateId(rng.next_below(std::uint64_t(group.order)));
        seq.gates.push_back(g);
        acc = group.multiply(g, acc);
    }
    seq.inverse = group.inverse(acc);
    return seq;
}

double survival_probability(const GateSet& gs, const SequenceSpec& seq, const StateVec& rho,
                            const ObsVec& obs)
{
    if (rho.dim != gs.group.ideal.front().dim || obs.dim != rho.dim)
        throw ValidationError("survival_probability: dimension mismatch");
    Eigen::VectorXd v = rho.v;
    for (const GateId g : seq.gates)
        v = gs.noisy[std::size_t(g)].mat * v;
    v = gs.noisy[std::size_t(seq.inverse)].mat * v;
    return obs.v.dot(v);
}

DecayDataset run_experiment(const GateSet& gs, const std::vector<int>& m_list, int n_seq,
                            const StateVec& rho, const ObsVec& obs, std::uint64_t seed)
{
    if (n_seq < 2)
        throw ValidationError("run_experiment: n_seq must be >= 2 for a variance");

    // Fixed-size copies of the 4x4 maps keep the hot loop cheap.
    const bool qubit = gs.group.ideal.front().dim == 2;
    std::vector<Eigen::Matrix4d> noisy4;
    if (qubit) {
        noisy4.reserve(gs.noisy.size());
        for (const SuperOp& n : gs.noisy)
            noisy4.push_back(n.mat);
    }

    DecayDataset ds;
    ds.rows.reserve(m_list.size());
    for (const int m : m_list) {
        std::vector<double> surv(static_cast<std::size_t>(n_seq));
        parallel_for(std::size_t(n_seq), [&](std::size_t i) {
            PhiloxRng rng(seed, make_stream(kSequenceStreamTag, std::uint32_t(m),
                                            std::uint32_t(i)));
            const SequenceSpec seq = sample_sequence(gs.group, m, rng);
            if (qubit) {
                Eigen::Vector4d v = rho.v;
                for (const GateId g : seq.gates)
                    v = noisy4[std::size_t(g)] * v;
                v = noisy4[std::size_t(seq.inverse)] * v;
                surv[i] = obs.v.dot(v);
            } else {
                surv[i] = survival_probability(gs, seq, rho, obs);
            }
        });
        const auto [mean, var] = pairwise_mean_variance(surv);
        ds.rows.push_back({ m, mean, var, n_seq });
    }
    return ds;
}

namespace {

struct BruteForce {
    const GateSet& gs;
    const std::vector<SuperOp>* ops; // per-gate maps to chain (noisy or delta)
    const ObsVec& obs;
    int m;
    long double total = 0.0;

    void recurse(int depth, GateId composite, const Eigen::VectorXd& v)
    {
        if (depth == m) {
            const GateId ginv = gs.group.inverse(composite);
            total += obs.v.dot((*ops)[std::size_t(ginv)].mat * v);
            return;
        }
        for (GateId g = 0; g < gs.group.order; ++g)
            recurse(depth + 1, gs.group.multiply(g, composite),
                    Eigen::VectorXd((*ops)[std::size_t(g)].mat * v));
    }
};

double brute_force_impl(const GateSet& gs, const std::vector<SuperOp>& ops, int m,
                        const StateVec& rho, const ObsVec& obs)
{
    if (m < 1)
        throw ValidationError("brute_force_average: m must be >= 1");
    const double count = std::pow(double(gs.group.order), double(m));
    if (count > 1e7)
        throw ValidationError("brute_force_average: |G|^m exceeds 1e7 sequences");
    BruteForce bf{ gs, &ops, obs, m };
    bf.recurse(0, gs.group.identity, rho.v);
    return double(bf.total / (long double)(count));
}

} // namespace

double brute_force_average(const GateSet& gs, int m, const StateVec& rho, const ObsVec& obs)
{
    return brute_force_impl(gs, gs.noisy, m, rho, obs);
}

double brute_force_delta_average(const GateSet& gs, const std::vector<SuperOp>& delta, int m,
                                 const StateVec& rho, const ObsVec& obs)
{
    if (delta.size() != std::size_t(gs.group.order))
        throw ValidationError("brute_force_delta_average: one delta per group element required");
    return brute_force_impl(gs, delta, m, rho, obs);
}

TheoryCurve theory_curve(const Decomposition& dec, const DeltaReport& report,
                         const StateVec& rho, const ObsVec& obs, const std::vector<int>& m_list)
{
    const int d = dec.L.dim;
    Eigen::VectorXd ident_state = Eigen::VectorXd::Zero(Eigen::Index(d) * d);
    ident_state(0) = 1.0 / std::sqrt(double(d)); // |I_d / d>>

    TheoryCurve curve;
    curve.p = dec.p;
    curve.t = dec.t;
    curve.B = obs.v.dot(dec.L.mat * ident_state);
    curve.A = obs.v.dot(dec.L.mat * (dec.R.mat * rho.v - ident_state));
    curve.rows.reserve(m_list.size());
    for (const int m : m_list) {
        TheoryCurveRow row;
        row.m = m;
        row.value = curve.A * std::pow(dec.p, m) + curve.B * std::pow(dec.t, m);
        row.bound = report.delta1 * std::pow(report.delta2, m);
        curve.rows.push_back(row);
    }
    return curve;
}

} // namespace gdrb
