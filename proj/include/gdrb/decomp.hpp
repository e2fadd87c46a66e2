#pragma once

#include <utility>
#include <vector>

#include "gdrb/noise.hpp"
#include "gdrb/superop.hpp"

namespace gdrb {

/// Solved left/right noise decomposition noisy = L * ideal * R + Delta_G.
///
/// L = |L>><<I| + L' with L'|I>> = 0; R = |I>><<R| + R' with <<I|R' = 0.
/// Scales are fixed so that <<R|L>> = t and tr(R' L') = p (d^2 - 1), which
/// makes the twirl of R L exactly D_{p,t}. All rescaling lands on R: L' keeps
/// unit operator norm, |L>> unit 2-norm, with signs fixed by tr(L') >= 0 and
/// a positive leading component of |L>>.
struct Decomposition {
    double p = 1.0;
    double t = 1.0;
    SuperOp L;
    SuperOp R;
    double residual_L = 0.0;      ///< ||E(noisy L ideal^dag) - L D_{p,t}||
    double residual_R = 0.0;      ///< ||E(ideal^dag R noisy) - D_{p,t} R||
    double residual_scale = 0.0;  ///< ||E(ideal R L ideal^dag) - D_{p,t}||
    double eigengap_p = 0.0;      ///< Bauer-Fike diagnostic for p
    double eigengap_t = 0.0;      ///< Bauer-Fike diagnostic for t
    bool dominant_complex = false; ///< nearest competing eigenvalue is complex
};

/// Per-gate deviations Delta_G = noisy - L ideal R and their size summaries:
/// delta2 = E_G ||Delta_G||, delta1 = max_G ||Delta_G||_{1->1} ||rho||_1 ||Q||_1.
struct DeltaReport {
    std::vector<SuperOp> delta;
    std::vector<double> op_norms;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double rho_trace_norm = 1.0;
    double obs_trace_norm = 1.0;
};

/// Factors of the right-noise perturbation bound.
struct RightNoiseBound {
    double value = 0.0;          ///< max_G ||noisy - ideal D|| + twirl_dev / denominator
    double max_depol_dev = 0.0;  ///< max_G ||noisy - ideal D_{p,t}||
    double mean_depol_dev = 0.0; ///< E_G ||noisy - ideal D_{p,t}||
    double twirl_dev = 0.0;      ///< ||E(ideal^dag noisy) - D_{p,t}||
    double dinv_norm = 0.0;      ///< ||D_{1/p,1/t}||
    double denominator = 0.0;
};

/// Fidelity reading of (p, t) for the noise between ideal gates.
struct NoiseInterpretation {
    double p = 1.0;
    double t = 1.0;
    double f_avg = 1.0;
    double r = 0.0;
};

/// (M_t, M_p): the element-averaged noisy map and the averaged
/// kron(unital ideal, noisy) whose dominant eigenvalues are t and p.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> average_maps(const GateSet& gs);

/// Solve the eigenvector systems for (p, t, L, R) and normalize.
Decomposition solve_LR(const GateSet& gs);

/// Conjugate every noisy gate: noisy -> S^{-1} noisy S. The solved L maps to
/// S^{-1} L, R to R S; the product R L and the pair (p, t) are invariant.
/// Requires cond(S) <= 1e8.
GateSet gauge_transform(const GateSet& gs, const SuperOp& s);

/// Vector transforms matching gauge_transform: |rho>> -> S^{-1}|rho>>,
/// <<Q| -> <<Q| S.
StateVec gauge_state(const SuperOp& s, const StateVec& rho);
ObsVec gauge_observable(const SuperOp& s, const ObsVec& q);

/// Move to the gauge where L = identity (conjugation by S = L) and re-solve.
std::pair<GateSet, Decomposition> gauge_to_L_identity(const GateSet& gs,
                                                      const Decomposition& dec);

/// Per-gate deltas in the supplied gauge. `frame` defines the feasible input
/// set of delta1's induced norm as images frame|psi>> of pure states; pass the
/// original-gauge L after gauge_to_L_identity, identity otherwise.
DeltaReport deltas(const GateSet& gs, const Decomposition& dec, const StateVec& rho,
                   const ObsVec& obs, const Eigen::MatrixXd& frame);
DeltaReport deltas(const GateSet& gs, const Decomposition& dec, const StateVec& rho,
                   const ObsVec& obs);

/// Right-noise distance bound, valid in the L = identity gauge.
/// Throws NumericalError when the denominator is not positive (noise too
/// strong for the bound to say anything).
RightNoiseBound right_noise_bound(const GateSet& gs_identity_gauge, const Decomposition& dec);

/// Map (p, t) to the average fidelity/infidelity of the inter-gate noise.
NoiseInterpretation interpret(const Decomposition& dec, int dim = 2);

/// Full reference workflow: solve, move to the L = identity gauge, transform
/// SPAM, evaluate deltas (frame = original L) and the right-noise bound.
struct IdentityGaugeAnalysis {
    Decomposition dec;       ///< original-gauge solution
    GateSet gs_identity;     ///< gauge-transformed set
    Decomposition dec_identity;
    StateVec rho_identity;
    ObsVec obs_identity;
    DeltaReport report;
    RightNoiseBound bound;
};

IdentityGaugeAnalysis analyze_identity_gauge(const GateSet& gs, const StateVec& rho,
                                             const ObsVec& obs);

} // namespace gdrb
