#pragma once

#include <cstdint>
#include <vector>

#include "gdrb/decomp.hpp"
#include "gdrb/noise.hpp"
#include "gdrb/rng.hpp"
#include "gdrb/superop.hpp"

namespace gdrb {

/// One benchmarking sequence: m uniformly random gates plus the group-inverse
/// of their composition.
struct SequenceSpec {
    int m = 0;
    std::vector<GateId> gates;
    GateId inverse = 0;
};

struct DecayRow {
    int m = 0;
    double mean = 0.0;
    double variance = 0.0;
    int num_sequences = 0;
};

/// Survival-probability statistics per sequence length.
struct DecayDataset {
    std::vector<DecayRow> rows;
};

struct TheoryCurveRow {
    int m = 0;
    double value = 0.0;  ///< A p^m + B t^m
    double bound = 0.0;  ///< delta1 delta2^m
};

/// Exact decay prediction A p^m + B t^m with the perturbation envelope.
struct TheoryCurve {
    double A = 0.0;
    double B = 0.0;
    double p = 1.0;
    double t = 1.0;
    std::vector<TheoryCurveRow> rows;
};

SequenceSpec sample_sequence(const GroupTable& group, int m, PhiloxRng& rng);

/// <<Q| prod noisy |rho>> for one sequence, right to left, inverse included.
double survival_probability(const GateSet& gs, const SequenceSpec& seq, const StateVec& rho,
                            const ObsVec& obs);

/// Monte Carlo experiment: n_seq independent sequences per m, each driven by
/// an RNG stream keyed by (seed, m, sequence index); means and unbiased
/// variances reduced pairwise, so the result is independent of evaluation
/// order or parallelism.
DecayDataset run_experiment(const GateSet& gs, const std::vector<int>& m_list, int n_seq,
                            const StateVec& rho, const ObsVec& obs, std::uint64_t seed);

/// Exact uniform average over all |G|^m sequences (inverse gate included).
/// Throws ValidationError when |G|^m > 1e7.
double brute_force_average(const GateSet& gs, int m, const StateVec& rho, const ObsVec& obs);

/// <<Q| E(Delta_{m+1:1}) |rho>> by the same enumeration: the exact
/// perturbation term of the decay identity.
double brute_force_delta_average(const GateSet& gs, const std::vector<SuperOp>& delta, int m,
                                 const StateVec& rho, const ObsVec& obs);

/// A = <<Q|L|R(rho) - I/d>>, B = <<Q|L|I/d>>, rows A p^m + B t^m with the
/// per-m bound delta1 delta2^m. Evaluate with (dec, rho, obs) expressed in
/// one common gauge; A and B are gauge invariant.
TheoryCurve theory_curve(const Decomposition& dec, const DeltaReport& report,
                         const StateVec& rho, const ObsVec& obs, const std::vector<int>& m_list);

/// Pairwise (numerically stable, order-insensitive) mean and unbiased variance.
std::pair<double, double> pairwise_mean_variance(const std::vector<double>& xs);

} // namespace gdrb
