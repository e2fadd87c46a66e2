#pragma once

#include <string>
#include <vector>

#include "gdrb/experiment.hpp"
#include "gdrb/noise.hpp"
#include "gdrb/rbsim.hpp"

namespace gdrb {

/// Fitted decay parameters.
struct FitResult {
    std::string model;
    double p_est = 1.0;
    double A_est = 0.5;
    double B_est = 0.5;
    double weighted_sse = 0.0;
    int iterations = 0;
    bool flat_likelihood = false; ///< data carried no decay information
};

/// Weighted fit of mean = 0.5 p^m + 0.5 by bracketed 1-D minimization over
/// p in [0, 1] (weights 1/variance; zero variances clamped to the smallest
/// positive one). Rows with m < min_m are dropped.
FitResult fit_fixed_spam(const DecayDataset& ds, int min_m = 3);

/// Weighted fit of mean = A p^m + B by damped Gauss-Newton. Needs >= 4 rows
/// after the min_m cutoff. Throws NumericalError with an iteration trace on
/// divergence.
FitResult fit_free(const DecayDataset& ds, int min_m = 3);

struct ConfidenceResult {
    double lo = 0.0;                ///< lower interval edge of p_est
    double hi = 1.0;                ///< upper interval edge of p_est
    std::vector<double> p_ests;     ///< per-experiment fits (sorted)
    std::vector<double> p_solved;   ///< per-experiment decomposition p
};

/// K independent full experiments (fresh noise draw and fresh sequences per
/// experiment), each fitted; returns the empirical [(1-q)/2, (1+q)/2]
/// percentile interval of p_est. Requires K >= 10.
ConfidenceResult confidence_interval(const ExperimentSpec& spec, int K, double quantile = 0.9);

/// Average noise E = E_G(ideal^dagger noisy).
SuperOp average_noise(const GateSet& gs);

/// First-order perturbation size of the average-noise expansion.
struct GammaReport {
    double gamma = 0.0;         ///< E_G ||ideal^dag noisy - E||_{1->1}
    double r_of_E = 0.0;        ///< infidelity of the average noise
    double systematic_dr = 0.0; ///< gamma / (2 (f_m - B))
    double f_m_minus_B = 0.5;
};

GammaReport first_order_gamma(const GateSet& gs, double f_m_minus_B = 0.5);

/// binom(m+1, k) gamma^k: the k-th order term bound of the expansion.
double kth_order_bound(const GammaReport& rep, int m, int k);

/// Closed forms for the half-depolarizing / half-Z_theta Clifford model:
/// gamma = nu |sin(theta/2)|, r(E) = (3 - 2 nu - nu cos theta)/6, and the
/// systematic-uncertainty ratio [gamma / (2 (f_m - B))] / r(E) evaluated with
/// the linear-regime convention f_m - B = A = 0.5.
struct CounterexampleAnalytics {
    double gamma = 0.0;
    double r_of_E = 0.0;
    double ratio = 0.0;
    double systematic_dr = 0.0;
};

CounterexampleAnalytics counterexample_analytics(double nu, double theta);

} // namespace gdrb
