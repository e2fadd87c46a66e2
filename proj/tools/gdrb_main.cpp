// gdrb: simulate and analyze randomized benchmarking with gate-dependent noise.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gdrb/analysis.hpp"
#include "gdrb/decomp.hpp"
#include "gdrb/error.hpp"
#include "gdrb/io.hpp"
#include "gdrb/noise.hpp"
#include "gdrb/norms.hpp"
#include "gdrb/rbsim.hpp"

using namespace gdrb;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::int64_t seed_override = -1;
};

ExperimentSpec load_spec(const CommonArgs& args)
{
    if (args.config_path.empty())
        throw ValidationError("a --config file is required for this subcommand");
    ExperimentSpec spec = io::load_config(args.config_path);
    if (args.seed_override >= 0)
        spec.seed = std::uint64_t(args.seed_override);
    return spec;
}

void emit(const std::string& out_path, const std::string& text)
{
    if (out_path.empty())
        std::cout << text;
    else
        io::write_file(out_path, text);
}

std::vector<int> capped_m_list(double r)
{
    // keep m while the decaying term stays above 1e-3 under p ~ 1 - 2r
    const double p_pred = 1.0 - 2.0 * r;
    std::vector<int> out;
    for (const int m : default_m_list())
        if (0.5 * std::pow(p_pred, m) >= 1e-3)
            out.push_back(m);
    if (out.empty())
        out.push_back(4);
    return out;
}

int cmd_decompose(const CommonArgs& args)
{
    const ExperimentSpec spec = load_spec(args);
    const GroupTable group = build_group(spec.group);
    const GateSet gs = build_gateset(group, spec.noise);
    const IdentityGaugeAnalysis a = analyze_identity_gauge(gs, spec_state(spec),
                                                           spec_observable(spec));
    ordered_json j;
    j["version"] = kVersion;
    j["p"] = a.dec.p;
    j["t"] = a.dec.t;
    j["r_internoise"] = interpret(a.dec).r;
    j["residuals"] = { { "rL", a.dec.residual_L },
                       { "rR", a.dec.residual_R },
                       { "rScale", a.dec.residual_scale } };
    j["eigengaps"] = { { "p", a.dec.eigengap_p }, { "t", a.dec.eigengap_t } };
    j["delta1"] = a.report.delta1;
    j["delta2"] = a.report.delta2;
    j["thm2_bound"] = a.bound.value;
    j["L"] = io::superop_to_json(a.dec.L);
    j["R"] = io::superop_to_json(a.dec.R);
    emit(args.out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_simulate(const CommonArgs& args)
{
    const ExperimentSpec spec = load_spec(args);
    const GroupTable group = build_group(spec.group);
    const GateSet gs = build_gateset(group, spec.noise);
    const std::vector<int> m_list = spec.m_list.empty() ? default_m_list() : spec.m_list;
    const DecayDataset ds = run_experiment(gs, m_list, spec.n_seq, spec_state(spec),
                                           spec_observable(spec), spec.seed);
    emit(args.out_path, io::dataset_to_csv(ds));
    return 0;
}

int cmd_bruteforce(const CommonArgs& args)
{
    const ExperimentSpec spec = load_spec(args);
    const GroupTable group = build_group(spec.group);
    const GateSet gs = build_gateset(group, spec.noise);
    const std::vector<int> m_list = spec.m_list.empty() ? std::vector<int>{ 1, 2, 3 }
                                                        : spec.m_list;
    std::vector<std::pair<int, double>> rows;
    for (const int m : m_list)
        rows.emplace_back(m, brute_force_average(gs, m, spec_state(spec), spec_observable(spec)));
    emit(args.out_path, io::brute_force_to_csv(rows));
    return 0;
}

int cmd_fit(const std::string& in_path, const CommonArgs& args)
{
    const DecayDataset ds = io::dataset_from_csv(io::read_file(in_path));
    FitModel model = FitModel::FixedSpam;
    int min_m = 3;
    if (!args.config_path.empty()) {
        const ExperimentSpec spec = io::load_config(args.config_path);
        model = spec.fit_model;
        min_m = spec.min_m;
    }
    const FitResult fit = model == FitModel::FixedSpam ? fit_fixed_spam(ds, min_m)
                                                       : fit_free(ds, min_m);
    emit(args.out_path, io::fit_to_json(fit).dump(2) + "\n");
    return 0;
}

int cmd_theory(const CommonArgs& args)
{
    const ExperimentSpec spec = load_spec(args);
    const GroupTable group = build_group(spec.group);
    const GateSet gs = build_gateset(group, spec.noise);
    const IdentityGaugeAnalysis a = analyze_identity_gauge(gs, spec_state(spec),
                                                           spec_observable(spec));
    const std::vector<int> m_list = spec.m_list.empty() ? default_m_list() : spec.m_list;
    const TheoryCurve curve = theory_curve(a.dec_identity, a.report, a.rho_identity,
                                           a.obs_identity, m_list);
    emit(args.out_path, io::theory_to_csv(curve));
    return 0;
}

int cmd_counterexample(double nu, double theta, const CommonArgs& args)
{
    const CounterexampleAnalytics an = counterexample_analytics(nu, theta);
    ordered_json j;
    j["version"] = kVersion;
    j["nu"] = nu;
    j["theta"] = theta;
    j["gamma"] = an.gamma;
    j["r_of_E"] = an.r_of_E;
    j["systematic_dr"] = an.systematic_dr;
    j["ratio"] = an.ratio;
    emit(args.out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_reproduce_fig1(const std::string& out_dir, std::uint64_t seed, int experiments,
                       int n_seq)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory: " + out_dir);

    const std::vector<double> r_grid = { 1e-4, 1e-3, 1e-2 };
    std::ostringstream left, right;
    left << "r,ci_lo,ci_hi,p_predicted\n";
    right << "r,delta1,delta2\n";

    const GroupTable group = build_group(GroupKind::TPauli);
    const StateVec rho = zero_state();
    const ObsVec obs = zero_observable();
    for (std::size_t k = 0; k < r_grid.size(); ++k) {
        const double r = r_grid[k];
        ExperimentSpec spec;
        spec.noise.model = NoiseModel::RandomUnitary;
        spec.noise.r = r;
        spec.m_list = capped_m_list(r);
        spec.n_seq = n_seq;
        spec.seed = derive_seed(seed, 0xF1, std::uint64_t(k));
        const ConfidenceResult ci = confidence_interval(spec, experiments);
        std::vector<double> solved = ci.p_solved;
        std::sort(solved.begin(), solved.end());
        const double mid = solved.size() % 2 == 1
                               ? solved[solved.size() / 2]
                               : 0.5 * (solved[solved.size() / 2 - 1] + solved[solved.size() / 2]);
        left << io::format_double(r) << ',' << io::format_double(ci.lo) << ','
             << io::format_double(ci.hi) << ',' << io::format_double(mid) << '\n';

        const GateSet gs = random_unitary_gateset(group, r,
                                                  derive_seed(seed, 0xF2, std::uint64_t(k)));
        const IdentityGaugeAnalysis a = analyze_identity_gauge(gs, rho, obs);
        right << io::format_double(r) << ',' << io::format_double(a.report.delta1) << ','
              << io::format_double(a.report.delta2) << '\n';
    }
    io::write_file((fs::path(out_dir) / "left.csv").string(), left.str());
    io::write_file((fs::path(out_dir) / "right.csv").string(), right.str());
    return 0;
}

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

int cmd_verify()
{
    std::vector<VerifyCheck> checks;
    const GroupTable tp = build_t_pauli_group();
    const GroupTable cl = build_clifford_group();
    const StateVec rho = zero_state();
    const ObsVec obs = zero_observable();

    {
        const TwoDesignCheck a = verify_two_design(tp, 100, 1e-12);
        const TwoDesignCheck b = verify_two_design(cl, 100, 1e-12);
        checks.push_back({ "two-design twirl residual (T-Pauli)", a.pass,
                           "max residual " + io::format_double(a.max_residual) });
        checks.push_back({ "two-design twirl residual (Clifford)", b.pass,
                           "max residual " + io::format_double(b.max_residual) });
    }
    {
        const GateSet gs = gate_independent_gateset(tp, depolarizing(0.99, 1, 2),
                                                    NoiseSide::Right);
        const Decomposition dec = solve_LR(gs);
        const bool ok = std::abs(dec.p - 0.99) < 1e-12 && std::abs(dec.t - 1.0) < 1e-12;
        checks.push_back({ "gate-independent recovery p = 0.99", ok,
                           "p deviation " + io::format_double(std::abs(dec.p - 0.99)) });
    }
    {
        const GateSet gs = random_unitary_gateset(tp, 1e-3, 101);
        const Decomposition dec = solve_LR(gs);
        const DepolParams rl = decay_params(compose(dec.R, dec.L));
        const bool ok = std::abs(rl.p - dec.p) < 1e-12 && std::abs(rl.t - dec.t) < 1e-12
                        && dec.residual_L < 1e-10 && dec.residual_R < 1e-10;
        checks.push_back({ "normalization identities of (L, R)", ok,
                           "|p(RL) - p| = " + io::format_double(std::abs(rl.p - dec.p)) });
    }
    {
        const GateSet gs = random_unitary_gateset(tp, 1e-3, 103);
        const Decomposition dec = solve_LR(gs);
        PhiloxRng rng(105, 0);
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            Eigen::MatrixXd s = Eigen::MatrixXd::Identity(4, 4);
            for (Eigen::Index i = 0; i < 4; ++i)
                for (Eigen::Index j = 0; j < 4; ++j)
                    s(i, j) += 0.05 * (2.0 * rng.next_double() - 1.0);
            const Decomposition dec2 = solve_LR(gauge_transform(gs, SuperOp(2, s)));
            worst = std::max({ worst, std::abs(dec2.p - dec.p), std::abs(dec2.t - dec.t) });
        }
        checks.push_back({ "gauge invariance of (p, t)", worst < 1e-10,
                           "max drift " + io::format_double(worst) });
    }
    {
        const GateSet gs = random_unitary_gateset(tp, 1e-2, 107);
        const IdentityGaugeAnalysis a = analyze_identity_gauge(gs, rho, obs);
        const TheoryCurve tc = theory_curve(a.dec_identity, a.report, a.rho_identity,
                                            a.obs_identity, { 1, 2 });
        bool ok = true;
        std::string detail;
        for (const TheoryCurveRow& row : tc.rows) {
            const double bf = brute_force_average(a.gs_identity, row.m, a.rho_identity,
                                                  a.obs_identity);
            const double eps = brute_force_delta_average(a.gs_identity, a.report.delta, row.m,
                                                         a.rho_identity, a.obs_identity);
            ok = ok && std::abs(bf - row.value - eps) < 1e-10
                 && std::abs(bf - row.value) <= row.bound;
            if (row.m == 2)
                detail = "m=2 identity gap " + io::format_double(std::abs(bf - row.value - eps));
        }
        checks.push_back({ "exact decay identity (m = 1, 2)", ok, detail });
    }
    {
        const GateSet gs = random_unitary_gateset(tp, 1e-3, 109);
        const Decomposition dec = solve_LR(gs);
        const auto [gauged, re] = gauge_to_L_identity(gs, dec);
        const RightNoiseBound b = right_noise_bound(gauged, re);
        double lhs = 0.0;
        for (int i = 0; i < gauged.group.order; ++i)
            lhs = std::max(lhs, operator_norm(Eigen::MatrixXd(
                                    gauged.noisy[std::size_t(i)].mat
                                    - gauged.group.ideal[std::size_t(i)].mat * re.R.mat)));
        checks.push_back({ "right-noise distance bound", lhs < b.value,
                           io::format_double(lhs) + " <= " + io::format_double(b.value) });
    }
    {
        DecayDataset ds;
        for (const int m : default_m_list())
            ds.rows.push_back({ m, 0.5 * std::pow(0.35, 1) * std::pow(0.93, m) + 0.61, 0.0,
                                100 });
        for (DecayRow& row : ds.rows)
            row.mean = 0.35 * std::pow(0.93, row.m) + 0.61;
        const FitResult free_fit = fit_free(ds);
        const FitResult fixed_fit = fit_fixed_spam(
            [] {
                DecayDataset d;
                for (const int m : default_m_list())
                    d.rows.push_back({ m, 0.5 * std::pow(0.97, m) + 0.5, 0.0, 100 });
                return d;
            }());
        const bool ok = std::abs(free_fit.p_est - 0.93) < 1e-8
                        && std::abs(free_fit.A_est - 0.35) < 1e-8
                        && std::abs(free_fit.B_est - 0.61) < 1e-8
                        && std::abs(fixed_fit.p_est - 0.97) < 1e-9;
        checks.push_back({ "fitter oracle", ok,
                           "free p deviation "
                               + io::format_double(std::abs(free_fit.p_est - 0.93)) });
    }
    {
        bool ok = true;
        double worst = 0.0;
        for (const double nv : { 0.9, 0.99 })
            for (const double th : { 0.05, 0.25 }) {
                const GammaReport rep = first_order_gamma(depol_z_gateset(cl, nv, th));
                const double dev = std::abs(rep.gamma - nv * std::abs(std::sin(th / 2.0)));
                worst = std::max(worst, dev);
                ok = ok && dev < 1e-6;
            }
        checks.push_back({ "first-order gamma closed form", ok,
                           "max deviation " + io::format_double(worst) });
    }
    {
        const GateSet a = random_unitary_gateset(tp, 1e-3, 111);
        const GateSet b = random_unitary_gateset(tp, 1e-3, 111);
        bool ok = true;
        for (int i = 0; i < a.group.order; ++i)
            ok = ok && a.noisy[std::size_t(i)].mat == b.noisy[std::size_t(i)].mat;
        const DecayDataset d1 = run_experiment(a, { 4, 16 }, 30, rho, obs, 7);
        const DecayDataset d2 = run_experiment(b, { 4, 16 }, 30, rho, obs, 7);
        for (std::size_t i = 0; i < d1.rows.size(); ++i)
            ok = ok && d1.rows[i].mean == d2.rows[i].mean
                 && d1.rows[i].variance == d2.rows[i].variance;
        checks.push_back({ "determinism under fixed seeds", ok, "" });
    }

    bool all = true;
    for (const VerifyCheck& c : checks) {
        all = all && c.pass;
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
        if (!c.detail.empty())
            std::cout << "  (" << c.detail << ")";
        std::cout << "\n";
    }
    std::cout << (all ? "verify: all checks passed\n" : "verify: FAILURES present\n");
    return all ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{ "randomized benchmarking with gate-dependent noise" };
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonArgs common;
    std::string fit_in;
    double nu = 0.99, theta = 0.09;
    std::string fig_dir;
    std::int64_t fig_seed = 1;
    int fig_experiments = 20;
    int fig_n_seq = 100;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", common.config_path, "run configuration (JSON)");
        if (needs_config)
            opt->required();
        sub->add_option("--out", common.out_path, "output path (default: stdout)");
        sub->add_option("--seed", common.seed_override, "override config seed");
    };

    CLI::App* decompose = app.add_subcommand("decompose", "solve the (p, t, L, R) decomposition");
    add_common(decompose, true);
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo decay dataset (CSV)");
    add_common(simulate, true);
    CLI::App* bruteforce = app.add_subcommand("bruteforce", "exact sequence averages (CSV)");
    add_common(bruteforce, true);
    CLI::App* fit = app.add_subcommand("fit", "fit a decay dataset");
    fit->add_option("--in", fit_in, "simulate CSV to fit")->required();
    add_common(fit, false);
    CLI::App* theory = app.add_subcommand("theory", "exact decay prediction (CSV)");
    add_common(theory, true);
    CLI::App* counterexample = app.add_subcommand(
        "counterexample", "closed-form first-order analytics for the depol+Z model");
    counterexample->add_option("--nu", nu, "depolarizing parameter");
    counterexample->add_option("--theta", theta, "Z-rotation angle");
    counterexample->add_option("--out", common.out_path, "output path (default: stdout)");
    CLI::App* fig1 = app.add_subcommand("reproduce-fig1",
                                        "confidence intervals and delta sizes over r");
    fig1->add_option("--out", fig_dir, "output directory")->required();
    fig1->add_option("--seed", fig_seed, "base seed");
    fig1->add_option("--experiments", fig_experiments, "experiments per r value");
    fig1->add_option("--n-seq", fig_n_seq, "sequences per m");
    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (decompose->parsed())
            return cmd_decompose(common);
        if (simulate->parsed())
            return cmd_simulate(common);
        if (bruteforce->parsed())
            return cmd_bruteforce(common);
        if (fit->parsed())
            return cmd_fit(fit_in, common);
        if (theory->parsed())
            return cmd_theory(common);
        if (counterexample->parsed())
            return cmd_counterexample(nu, theta, common);
        if (fig1->parsed())
            return cmd_reproduce_fig1(fig_dir, std::uint64_t(fig_seed), fig_experiments,
                                      fig_n_seq);
        if (verify->parsed())
            return cmd_verify();
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
