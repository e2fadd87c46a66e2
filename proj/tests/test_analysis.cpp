#include <doctest.h>

#include <cmath>

#include "gdrb/analysis.hpp"
#include "gdrb/decomp.hpp"
#include "gdrb/error.hpp"
#include "gdrb/noise.hpp"

using namespace gdrb;

namespace {

const GroupTable& t_pauli()
{
    static const GroupTable g = build_t_pauli_group();
    return g;
}

const GroupTable& clifford()
{
    static const GroupTable g = build_clifford_group();
    return g;
}

DecayDataset exact_dataset(double a, double b, double p, const std::vector<int>& m_list,
                           double variance = 0.0)
{
    DecayDataset ds;
    for (const int m : m_list)
        ds.rows.push_back({ m, a * std::pow(p, m) + b, variance, 100 });
    return ds;
}

const std::vector<int> kGrid = { 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048 };

} // namespace

TEST_CASE("fit_fixed_spam recovers p from exact data")
{
    const FitResult fit = fit_fixed_spam(exact_dataset(0.5, 0.5, 0.97, kGrid));
    CHECK(std::abs(fit.p_est - 0.97) < 1e-9);
    CHECK(fit.model == "fixed_spam");
    CHECK_FALSE(fit.flat_likelihood);
}

TEST_CASE("fit_fixed_spam weight-scale covariance")
{
    DecayDataset a = exact_dataset(0.5, 0.5, 0.91, kGrid, 1e-4);
    DecayDataset b = a;
    for (DecayRow& row : b.rows)
        row.variance *= 7.5;
    CHECK(std::abs(fit_fixed_spam(a).p_est - fit_fixed_spam(b).p_est) < 1e-12);
}

TEST_CASE("fit_fixed_spam diagnostics rather than errors on misfit")
{
    DecayDataset shifted = exact_dataset(0.5, 0.5, 0.9, kGrid, 1e-4);
    for (DecayRow& row : shifted.rows)
        row.mean += 0.3;
    const FitResult fit = fit_fixed_spam(shifted);
    CHECK(fit.p_est >= 0.0);
    CHECK(fit.p_est <= 1.0);
    CHECK(fit.weighted_sse > 1.0);

    CHECK_THROWS_AS(fit_fixed_spam(DecayDataset{}), ValidationError);

    const FitResult flat = fit_fixed_spam(exact_dataset(0.0, 0.5, 0.9, kGrid));
    CHECK(flat.flat_likelihood);
}

TEST_CASE("fit_fixed_spam on a simulated depolarizing experiment")
{
    // The simulated survival is 0.5 p0^{m+1} + 0.5 (noisy inverse gate), so the
    // fixed-SPAM model 0.5 p^m + 0.5 carries a small deterministic mismatch.
    // The fit of the simulation must coincide with the fit of the closed form,
    // and the mismatch bias stays well under (1 - p0).
    const double p0 = 0.99;
    const GateSet gs = gate_independent_gateset(t_pauli(), depolarizing(p0, 1, 2),
                                                NoiseSide::Right);
    const DecayDataset ds = run_experiment(gs, kGrid, 100, zero_state(), zero_observable(), 3);
    const FitResult sim_fit = fit_fixed_spam(ds);

    DecayDataset exact;
    for (const int m : kGrid)
        exact.rows.push_back({ m, 0.5 * std::pow(p0, m + 1) + 0.5, 0.0, 100 });
    const FitResult exact_fit = fit_fixed_spam(exact);

    CHECK(std::abs(sim_fit.p_est - exact_fit.p_est) < 1e-9);
    CHECK(std::abs(sim_fit.p_est - p0) < 0.1 * (1.0 - p0));
}

TEST_CASE("fit_free recovers (A, B, p)")
{
    const FitResult fit = fit_free(exact_dataset(0.3, 0.6, 0.95, kGrid));
    CHECK(std::abs(fit.A_est - 0.3) < 1e-8);
    CHECK(std::abs(fit.B_est - 0.6) < 1e-8);
    CHECK(std::abs(fit.p_est - 0.95) < 1e-8);

    const FitResult fixed = fit_free(exact_dataset(0.5, 0.5, 0.97, kGrid));
    CHECK(std::abs(fixed.A_est - 0.5) < 1e-6);
    CHECK(std::abs(fixed.B_est - 0.5) < 1e-6);

    CHECK_THROWS_AS(fit_free(exact_dataset(0.5, 0.5, 0.9, { 4, 8, 16 })), ValidationError);
}

TEST_CASE("fitters honor the low-m cutoff")
{
    DecayDataset ds = exact_dataset(0.5, 0.5, 0.9, { 1, 2, 4, 8, 16, 32, 64 });
    ds.rows[0].mean += 0.05; // corrupt m < 3 rows only
    ds.rows[1].mean -= 0.05;
    CHECK(std::abs(fit_fixed_spam(ds, 3).p_est - 0.9) < 1e-9);
    const FitResult free_fit = fit_free(ds, 3);
    CHECK(std::abs(free_fit.p_est - 0.9) < 1e-8);
}

TEST_CASE("confidence_interval on deterministic models")
{
    ExperimentSpec spec;
    spec.group = GroupKind::TPauli;
    spec.noise.model = NoiseModel::GateIndependent;
    spec.noise.r = 0.0;
    spec.m_list = { 4, 8, 16, 32 };
    spec.n_seq = 10;
    spec.seed = 5;

    const ConfidenceResult clean = confidence_interval(spec, 10);
    CHECK(clean.lo == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(clean.hi == doctest::Approx(1.0).epsilon(1e-9));

    spec.noise.r = 0.015; // E = D_{0.97}: every experiment is identical
    const ConfidenceResult depol = confidence_interval(spec, 12);
    CHECK(depol.hi - depol.lo < 1e-9);
    CHECK(std::abs(depol.lo - 0.97) < 0.1 * (1.0 - 0.97)); // fixed-SPAM model mismatch only
    for (const double p : depol.p_solved)
        CHECK(std::abs(p - 0.97) < 1e-10);

    CHECK_THROWS_AS(confidence_interval(spec, 5), ValidationError);
}

TEST_CASE("confidence_interval brackets the solved p for random unitary noise")
{
    ExperimentSpec spec;
    spec.noise.model = NoiseModel::RandomUnitary;
    spec.noise.r = 1e-2;
    spec.m_list = { 4, 8, 16, 32, 64, 128, 256 };
    spec.n_seq = 100;
    spec.seed = 11;
    const ConfidenceResult ci = confidence_interval(spec, 20);
    std::vector<double> solved = ci.p_solved;
    std::sort(solved.begin(), solved.end());
    const double p_ref = 0.5 * (solved[9] + solved[10]);
    CHECK(ci.lo <= p_ref);
    CHECK(p_ref <= ci.hi);
}

TEST_CASE("average_noise")
{
    const GateSet clean = gate_independent_gateset(t_pauli(), SuperOp::identity(2),
                                                   NoiseSide::Right);
    CHECK((average_noise(clean).mat - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-13);

    const double nu = 0.99, theta = 0.09;
    const SuperOp e = average_noise(depol_z_gateset(clifford(), nu, theta));
    CHECK(std::abs(infidelity(e) - 0.0056678) < 1e-7);
    CHECK(std::abs(infidelity(e) - (3.0 - 2.0 * nu - nu * std::cos(theta)) / 6.0) < 1e-12);
}

TEST_CASE("first_order_gamma")
{
    const GateSet flat = gate_independent_gateset(clifford(), depolarizing(0.95, 1, 2),
                                                  NoiseSide::Right);
    CHECK(first_order_gamma(flat).gamma <= 1e-9);

    const double nu = 0.99, theta = 0.09;
    const GammaReport rep = first_order_gamma(depol_z_gateset(clifford(), nu, theta));
    CHECK(std::abs(rep.gamma - nu * std::abs(std::sin(theta / 2.0))) < 1e-6);
    CHECK(std::abs(rep.gamma - 0.0445350) < 1e-6);
    CHECK(std::abs(rep.systematic_dr - rep.gamma) < 1e-12);

    // small grid against the closed form
    for (const double nv : { 0.9, 0.999 })
        for (const double th : { 0.05, 0.35 }) {
            const GammaReport g = first_order_gamma(depol_z_gateset(clifford(), nv, th));
            CHECK(std::abs(g.gamma - nv * std::abs(std::sin(th / 2.0))) < 1e-6);
        }

    CHECK(kth_order_bound(rep, 3, 0) == doctest::Approx(1.0));
    CHECK(kth_order_bound(rep, 3, 2)
          == doctest::Approx(6.0 * rep.gamma * rep.gamma).epsilon(1e-12));
    CHECK_THROWS_AS(kth_order_bound(rep, 3, 5), ValidationError);
}

TEST_CASE("counterexample analytics")
{
    const CounterexampleAnalytics tiny = counterexample_analytics(0.99, 1e-12);
    CHECK(tiny.gamma < 1e-12);
    CHECK(tiny.ratio < 1e-9);

    const CounterexampleAnalytics main_case = counterexample_analytics(0.99, 0.09);
    CHECK(std::abs(main_case.gamma - 0.04453497) < 1e-7);
    CHECK(std::abs(main_case.r_of_E - 0.00566776) < 1e-7);
    CHECK(main_case.ratio > 7.0);
    CHECK(main_case.ratio < 10.0);
    CHECK(std::abs(main_case.ratio - 7.857) < 0.01);

    // tiny gate-dependent share, still a large systematic ratio
    const CounterexampleAnalytics small = counterexample_analytics(0.999, 0.009);
    CHECK(small.ratio > 7.0);

    CHECK_THROWS_AS(counterexample_analytics(1.5, 0.09), ValidationError);
    CHECK_THROWS_AS(counterexample_analytics(0.99, 2.0), ValidationError);
}

TEST_CASE("systematic-uncertainty ratio dwarfs the true decay gap")
{
    // The first-order analysis over-reports: gamma / r(E) is an order of
    // magnitude while the decomposition's p stays within a few percent of
    // 1 - 2 r(E).
    const double nu = 0.99, theta = 0.3;
    const GateSet gs = depol_z_gateset(clifford(), nu, theta);
    const CounterexampleAnalytics an = counterexample_analytics(nu, theta);
    CHECK(an.ratio > 1.0);

    const Decomposition dec = solve_LR(gs);
    const double r_of_e = an.r_of_E;
    const double decay_gap = std::abs((1.0 - dec.p) / 2.0 - r_of_e) / r_of_e;
    CHECK(decay_gap < an.ratio);
    CHECK(std::abs(dec.p - (1.0 - 2.0 * r_of_e)) > 1e-5);
}
