#include <doctest.h>

#include <cmath>

#include "gdrb/decomp.hpp"
#include "gdrb/error.hpp"
#include "gdrb/experiment.hpp"
#include "gdrb/noise.hpp"
#include "gdrb/parallel.hpp"
#include "gdrb/rbsim.hpp"

using namespace gdrb;

namespace {

const GroupTable& t_pauli()
{
    static const GroupTable g = build_t_pauli_group();
    return g;
}

GateSet depol_set(double p0)
{
    return gate_independent_gateset(t_pauli(), depolarizing(p0, 1, 2), NoiseSide::Right);
}

GateSet noiseless_set()
{
    return gate_independent_gateset(t_pauli(), SuperOp::identity(2), NoiseSide::Right);
}

} // namespace

TEST_CASE("sample_sequence: inverse from the table, uniform marginal")
{
    PhiloxRng rng(3, 99);
    const SequenceSpec one = sample_sequence(t_pauli(), 1, rng);
    CHECK(one.inverse == t_pauli().inverse(one.gates[0]));
    CHECK_THROWS_AS(sample_sequence(t_pauli(), 0, rng), ValidationError);

    // marginal of the first gate over 1e5 draws, 5 sigma per bin
    std::vector<int> counts(12, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        PhiloxRng r2(4, std::uint64_t(i));
        ++counts[std::size_t(sample_sequence(t_pauli(), 3, r2).gates[0])];
    }
    const double expect = n / 12.0;
    const double sigma = std::sqrt(n * (1.0 / 12.0) * (11.0 / 12.0));
    for (const int c : counts)
        CHECK(std::abs(c - expect) < 5.0 * sigma);
}

TEST_CASE("sampled sequences invert to the identity")
{
    PhiloxRng rng(5, 0);
    for (const int m : { 1, 2, 5 }) {
        for (int trial = 0; trial < 20; ++trial) {
            const SequenceSpec seq = sample_sequence(t_pauli(), m, rng);
            Eigen::MatrixXd prod = t_pauli().ideal[std::size_t(seq.inverse)].mat;
            for (auto it = seq.gates.rbegin(); it != seq.gates.rend(); ++it)
                prod = prod * t_pauli().ideal[std::size_t(*it)].mat;
            CHECK((prod - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("survival_probability closed forms")
{
    PhiloxRng rng(7, 0);
    const StateVec rho = zero_state();
    const ObsVec obs = zero_observable();

    const GateSet clean = noiseless_set();
    const SequenceSpec seq = sample_sequence(t_pauli(), 6, rng);
    CHECK(std::abs(survival_probability(clean, seq, rho, obs) - 1.0) < 1e-13);

    const double p0 = 0.9;
    const GateSet gs = depol_set(p0);
    for (const int m : { 1, 4, 9 }) {
        for (int trial = 0; trial < 5; ++trial) {
            const SequenceSpec s = sample_sequence(t_pauli(), m, rng);
            const double expect = 0.5 * std::pow(p0, m + 1) + 0.5;
            CHECK(std::abs(survival_probability(gs, s, rho, obs) - expect) < 1e-12);
        }
    }

    const GateSet ru = random_unitary_gateset(t_pauli(), 1e-2, 7);
    for (int trial = 0; trial < 10; ++trial) {
        const SequenceSpec s = sample_sequence(t_pauli(), 8, rng);
        const double val = survival_probability(ru, s, rho, obs);
        CHECK(val >= -1e-12);
        CHECK(val <= 1.0 + 1e-12);
    }
}

TEST_CASE("run_experiment statistics")
{
    const StateVec rho = zero_state();
    const ObsVec obs = zero_observable();
    const std::vector<int> m_list = { 1, 4, 16 };

    const DecayDataset clean = run_experiment(noiseless_set(), m_list, 10, rho, obs, 1);
    for (const DecayRow& row : clean.rows) {
        CHECK(std::abs(row.mean - 1.0) < 1e-12);
        CHECK(row.variance < 1e-24);
        CHECK(row.num_sequences == 10);
    }

    const double p0 = 0.95;
    const DecayDataset depol = run_experiment(depol_set(p0), m_list, 25, rho, obs, 2);
    for (std::size_t i = 0; i < m_list.size(); ++i) {
        const double expect = 0.5 * std::pow(p0, m_list[i] + 1) + 0.5;
        CHECK(std::abs(depol.rows[i].mean - expect) < 1e-12);
    }

    CHECK_THROWS_AS(run_experiment(depol_set(p0), m_list, 1, rho, obs, 2), ValidationError);

    CHECK(default_m_list() == std::vector<int>{ 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048 });
}

TEST_CASE("run_experiment is schedule independent")
{
    const StateVec rho = zero_state();
    const ObsVec obs = zero_observable();
    const GateSet gs = random_unitary_gateset(t_pauli(), 1e-2, 31);
    const std::vector<int> m_list = { 2, 8, 32 };

    set_parallelism(1);
    const DecayDataset serial = run_experiment(gs, m_list, 40, rho, obs, 77);
    set_parallelism(4);
    const DecayDataset parallel = run_experiment(gs, m_list, 40, rho, obs, 77);
    set_parallelism(0);

    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].mean == parallel.rows[i].mean);
        CHECK(serial.rows[i].variance == parallel.rows[i].variance);
    }
}

TEST_CASE("pairwise mean/variance agrees with the two-pass formula")
{
    PhiloxRng rng(37, 0);
    std::vector<double> xs;
    for (int i = 0; i < 1000; ++i)
        xs.push_back(rng.next_gaussian() * 0.3 + 0.5);
    const auto [mean, var] = pairwise_mean_variance(xs);
    double m2 = 0.0, mu = 0.0;
    for (const double x : xs)
        mu += x;
    mu /= double(xs.size());
    for (const double x : xs)
        m2 += (x - mu) * (x - mu);
    m2 /= double(xs.size() - 1);
    CHECK(std::abs(mean - mu) < 1e-13);
    CHECK(std::abs(var - m2) < 1e-13);
}

TEST_CASE("brute_force_average closed forms and caps")
{
    const StateVec rho = zero_state();
    const ObsVec obs = zero_observable();

    CHECK(std::abs(brute_force_average(noiseless_set(), 1, rho, obs) - 1.0) < 1e-13);

    const double p0 = 0.9;
    const GateSet gs = depol_set(p0);
    for (const int m : { 1, 2, 3 })
        CHECK(std::abs(brute_force_average(gs, m, rho, obs) - (0.5 * std::pow(p0, m + 1) + 0.5))
              < 1e-12);

    CHECK_THROWS_AS(brute_force_average(gs, 7, rho, obs), ValidationError);

    // Monte Carlo consistency
    const GateSet ru = random_unitary_gateset(t_pauli(), 1e-2, 41);
    const double exact = brute_force_average(ru, 2, rho, obs);
    const DecayDataset mc = run_experiment(ru, { 2 }, 400, rho, obs, 9);
    const double sigma = std::sqrt(mc.rows[0].variance / mc.rows[0].num_sequences);
    CHECK(std::abs(mc.rows[0].mean - exact) < 5.0 * sigma + 1e-9);
}

TEST_CASE("theory_curve: exact for gate-independent noise, A and B near 1/2 for unital sets")
{
    const StateVec rho = zero_state();
    const ObsVec obs = zero_observable();
    const std::vector<int> m_list = { 1, 2, 3 };

    const double p0 = 0.93;
    const GateSet gs = depol_set(p0);
    const Decomposition dec = solve_LR(gs);
    const DeltaReport rep = deltas(gs, dec, rho, obs);
    const TheoryCurve curve = theory_curve(dec, rep, rho, obs, m_list);
    // A = 0.5 p0 and B = 0.5 reproduce the closed form 0.5 p0^{m+1} + 0.5
    CHECK(std::abs(curve.A - 0.5 * p0) < 1e-12);
    CHECK(std::abs(curve.B - 0.5) < 1e-12);
    for (const TheoryCurveRow& row : curve.rows) {
        const double bf = brute_force_average(gs, row.m, rho, obs);
        CHECK(std::abs(bf - row.value) < 1e-12);
        CHECK(row.bound <= 1e-10);
    }

    // unital trace-preserving noise: B = 1/2 exactly, A = 1/2 + O(r)
    const double r = 1e-3;
    const IdentityGaugeAnalysis a =
        analyze_identity_gauge(random_unitary_gateset(t_pauli(), r, 43), rho, obs);
    const TheoryCurve tc = theory_curve(a.dec_identity, a.report, a.rho_identity,
                                        a.obs_identity, m_list);
    CHECK(std::abs(tc.B - 0.5) < 1e-10);
    CHECK(std::abs(tc.A - 0.5) < 10.0 * r);
    // bound column decays monotonically when delta2 < 1
    for (std::size_t i = 1; i < tc.rows.size(); ++i)
        CHECK(tc.rows[i].bound <= tc.rows[i - 1].bound + 1e-15);
}

TEST_CASE("generator bookkeeping reproduces table sequences at small m")
{
    // Sequence construction via powers of T and Pauli relabeling:
    // G_j = T^{a_j} P_{b_j} P_{b_{j-1}} T^{-a_{j-1}}, a_0 = 0, b_0 = 0 (P_0 = I),
    // closed with G_{m+1} = T^{a_0} P_{b_0} P_{b_m} T^{-a_m}.
    const GroupTable& g = t_pauli();
    const Eigen::Matrix2cd t_mat = (Eigen::Matrix2cd() << 1.0, std::complex<double>(0, -1),
                                    1.0, std::complex<double>(0, 1))
                                       .finished()
                                   / std::sqrt(2.0);
    auto t_power = [&](int k) {
        Eigen::Matrix2cd acc = Eigen::Matrix2cd::Identity();
        for (int i = 0; i < ((k % 3) + 3) % 3; ++i)
            acc = t_mat * acc;
        return acc;
    };
    auto find_gate = [&](const Eigen::Matrix2cd& u) -> GateId {
        const SuperOp m = ptm_from_unitary(u);
        for (GateId i = 0; i < g.order; ++i)
            if ((g.ideal[std::size_t(i)].mat - m.mat).cwiseAbs().maxCoeff() < 1e-9)
                return i;
        throw NumericalError("generator sequence produced a matrix outside the group");
    };

    PhiloxRng rng(47, 0);
    for (const int m : { 1, 2, 3, 4 }) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<int> a{ 0 }, b{ 0 };
            for (int j = 1; j <= m; ++j) {
                a.push_back(int(rng.next_below(3)));
                b.push_back(int(rng.next_below(4)));
            }
            std::vector<GateId> gates;
            Eigen::Matrix2cd total = Eigen::Matrix2cd::Identity();
            for (int j = 1; j <= m; ++j) {
                const Eigen::Matrix2cd gj = t_power(a[std::size_t(j)]) * pauli(b[std::size_t(j)])
                                            * pauli(b[std::size_t(j - 1)])
                                            * t_power(3 - a[std::size_t(j - 1)]);
                gates.push_back(find_gate(gj));
                total = gj * total;
            }
            const Eigen::Matrix2cd closer = t_power(a[0]) * pauli(b[0]) * pauli(b[std::size_t(m)])
                                            * t_power(3 - a[std::size_t(m)]);
            total = closer * total;
            // the closing gate is the table inverse and the product is trivial
            CHECK(find_gate(closer) == g.sequence_inverse(gates));
            const SuperOp total_ptm = ptm_from_unitary(total);
            CHECK((total_ptm.mat - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("exact decay identity: brute force minus theory equals the delta average")
{
    const StateVec rho = zero_state();
    const ObsVec obs = zero_observable();
    const GateSet gs = random_unitary_gateset(t_pauli(), 1e-2, 53);
    const IdentityGaugeAnalysis a = analyze_identity_gauge(gs, rho, obs);
    const TheoryCurve tc = theory_curve(a.dec_identity, a.report, a.rho_identity,
                                        a.obs_identity, { 1, 2, 3 });
    for (const TheoryCurveRow& row : tc.rows) {
        const double bf = brute_force_average(a.gs_identity, row.m, a.rho_identity,
                                              a.obs_identity);
        const double eps = brute_force_delta_average(a.gs_identity, a.report.delta, row.m,
                                                     a.rho_identity, a.obs_identity);
        CHECK(std::abs(bf - row.value - eps) < 1e-10);
        CHECK(std::abs(bf - row.value) <= row.bound);
    }
}
