#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gdrb/analysis.hpp"
#include "gdrb/decomp.hpp"
#include "gdrb/error.hpp"
#include "gdrb/io.hpp"
#include "gdrb/noise.hpp"
#include "gdrb/norms.hpp"
#include "gdrb/rbsim.hpp"

namespace py = pybind11;
using namespace gdrb;

namespace {

StateVec state_or_default(const std::optional<Eigen::VectorXd>& v)
{
    if (!v)
        return zero_state();
    StateVec s;
    s.dim = 2;
    s.v = *v;
    return s;
}

ObsVec obs_or_default(const std::optional<Eigen::VectorXd>& v)
{
    if (!v)
        return zero_observable();
    ObsVec q;
    q.dim = 2;
    q.v = *v;
    return q;
}

NoiseSide side_from_string(const std::string& side)
{
    if (side == "left")
        return NoiseSide::Left;
    if (side == "right")
        return NoiseSide::Right;
    throw ValidationError("side must be 'left' or 'right'");
}

} // namespace

PYBIND11_MODULE(gdrb, m)
{
    m.doc() = "Randomized benchmarking with gate-dependent noise";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ValidationError>(m, "GdrbValidationError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "GdrbNumericalError", PyExc_ArithmeticError);

    py::class_<SuperOp>(m, "SuperOp")
        .def(py::init<int, Eigen::MatrixXd>(), py::arg("dim"), py::arg("mat"))
        .def_static("identity", &SuperOp::identity, py::arg("dim"))
        .def_readonly("dim", &SuperOp::dim)
        .def_readonly("mat", &SuperOp::mat)
        .def("__repr__", [](const SuperOp& c) {
            return "SuperOp(dim=" + std::to_string(c.dim) + ")";
        });

    py::class_<DepolParams>(m, "DepolParams")
        .def_readonly("p", &DepolParams::p)
        .def_readonly("t", &DepolParams::t);

    m.def(
        "ptm_from_unitary",
        [](const Eigen::MatrixXcd& u) {
            if (u.rows() != 2 || u.cols() != 2)
                throw ValidationError("ptm_from_unitary: expected a 2 x 2 unitary");
            return ptm_from_unitary(Eigen::Matrix2cd(u));
        },
        py::arg("u"));
    m.def("ptm_z_theta", &ptm_z_theta, py::arg("theta"));
    m.def("compose",
          py::overload_cast<const SuperOp&, const SuperOp&>(&compose), py::arg("a"),
          py::arg("b"));
    m.def("adjoint", &adjoint, py::arg("a"));
    m.def("unital_part", &unital_part, py::arg("a"));
    m.def("depolarizing", &depolarizing, py::arg("p"), py::arg("t") = 1.0, py::arg("dim") = 2);
    m.def("decay_params", &decay_params, py::arg("c"));
    m.def("average_fidelity", &average_fidelity, py::arg("c"));
    m.def("infidelity", &infidelity, py::arg("c"));
    m.def("bowdrey_fidelity", &bowdrey_fidelity, py::arg("c"));
    m.def("operator_norm", py::overload_cast<const SuperOp&>(&operator_norm), py::arg("c"));
    m.def("trace_norm", &trace_norm, py::arg("m"));
    m.def(
        "induced_1to1_norm",
        [](const SuperOp& c, const std::optional<Eigen::MatrixXd>& frame) {
            return frame ? induced_1to1_norm(c, *frame) : induced_1to1_norm(c);
        },
        py::arg("c"), py::arg("frame") = std::nullopt);
    m.def("zero_state", [] { return zero_state().v; });
    m.def("zero_observable", [] { return zero_observable().v; });

    py::class_<GroupTable>(m, "GroupTable")
        .def_readonly("kind", &GroupTable::kind)
        .def_readonly("order", &GroupTable::order)
        .def_readonly("identity", &GroupTable::identity)
        .def_readonly("labels", &GroupTable::labels)
        .def("ideal", [](const GroupTable& g, int i) { return g.ideal.at(std::size_t(i)); },
             py::arg("index"))
        .def("multiply", &GroupTable::multiply, py::arg("a"), py::arg("b"))
        .def("inverse", &GroupTable::inverse, py::arg("g"))
        .def("sequence_inverse",
             [](const GroupTable& g, const std::vector<GateId>& gates) {
                 return g.sequence_inverse(gates);
             },
             py::arg("gates"));

    m.def("build_t_pauli_group", &build_t_pauli_group);
    m.def("build_clifford_group", &build_clifford_group);
    m.def("twirl", &twirl, py::arg("c"), py::arg("group"));
    m.def(
        "verify_two_design",
        [](const GroupTable& g, int trials, double tol, std::uint64_t seed) {
            const TwoDesignCheck c = verify_two_design(g, trials, tol, seed);
            return py::make_tuple(c.max_residual, c.pass);
        },
        py::arg("group"), py::arg("trials") = 100, py::arg("tol") = 1e-12, py::arg("seed") = 0);

    py::class_<GateSet>(m, "GateSet")
        .def_readonly("group", &GateSet::group)
        .def_readonly("descriptor", &GateSet::descriptor)
        .def("noisy", [](const GateSet& gs, int i) { return gs.noisy.at(std::size_t(i)); },
             py::arg("index"));

    m.def("random_unitary_gateset", &random_unitary_gateset, py::arg("group"), py::arg("r"),
          py::arg("seed"));
    m.def(
        "depol_z_gateset",
        [](const GroupTable& g, double nu, double theta,
           const std::optional<std::vector<int>>& partition) {
            return depol_z_gateset(g, nu, theta, partition);
        },
        py::arg("group"), py::arg("nu"), py::arg("theta"), py::arg("partition") = std::nullopt);
    m.def(
        "gate_independent_gateset",
        [](const GroupTable& g, const SuperOp& e, const std::string& side) {
            return gate_independent_gateset(g, e, side_from_string(side));
        },
        py::arg("group"), py::arg("e"), py::arg("side") = "right");
    m.def(
        "gate_independent_gateset_lr",
        [](const GroupTable& g, const SuperOp& l, const SuperOp& r) {
            return gate_independent_gateset(g, l, r);
        },
        py::arg("group"), py::arg("l"), py::arg("r"));

    py::class_<Decomposition>(m, "Decomposition")
        .def_readonly("p", &Decomposition::p)
        .def_readonly("t", &Decomposition::t)
        .def_readonly("L", &Decomposition::L)
        .def_readonly("R", &Decomposition::R)
        .def_readonly("residual_L", &Decomposition::residual_L)
        .def_readonly("residual_R", &Decomposition::residual_R)
        .def_readonly("residual_scale", &Decomposition::residual_scale)
        .def_readonly("eigengap_p", &Decomposition::eigengap_p)
        .def_readonly("eigengap_t", &Decomposition::eigengap_t)
        .def_readonly("dominant_complex", &Decomposition::dominant_complex);

    py::class_<DeltaReport>(m, "DeltaReport")
        .def_readonly("delta1", &DeltaReport::delta1)
        .def_readonly("delta2", &DeltaReport::delta2)
        .def_readonly("op_norms", &DeltaReport::op_norms);

    py::class_<RightNoiseBound>(m, "RightNoiseBound")
        .def_readonly("value", &RightNoiseBound::value)
        .def_readonly("max_depol_dev", &RightNoiseBound::max_depol_dev)
        .def_readonly("twirl_dev", &RightNoiseBound::twirl_dev)
        .def_readonly("denominator", &RightNoiseBound::denominator);

    py::class_<NoiseInterpretation>(m, "NoiseInterpretation")
        .def_readonly("p", &NoiseInterpretation::p)
        .def_readonly("t", &NoiseInterpretation::t)
        .def_readonly("f_avg", &NoiseInterpretation::f_avg)
        .def_readonly("r", &NoiseInterpretation::r);

    py::class_<IdentityGaugeAnalysis>(m, "IdentityGaugeAnalysis")
        .def_readonly("dec", &IdentityGaugeAnalysis::dec)
        .def_readonly("dec_identity", &IdentityGaugeAnalysis::dec_identity)
        .def_readonly("report", &IdentityGaugeAnalysis::report)
        .def_readonly("bound", &IdentityGaugeAnalysis::bound);

    m.def("solve_LR", &solve_LR, py::arg("gateset"));
    m.def("gauge_transform", &gauge_transform, py::arg("gateset"), py::arg("s"));
    m.def("interpret", &interpret, py::arg("dec"), py::arg("dim") = 2);
    m.def(
        "analyze_identity_gauge",
        [](const GateSet& gs, const std::optional<Eigen::VectorXd>& rho,
           const std::optional<Eigen::VectorXd>& obs) {
            return analyze_identity_gauge(gs, state_or_default(rho), obs_or_default(obs));
        },
        py::arg("gateset"), py::arg("rho") = std::nullopt, py::arg("obs") = std::nullopt);

    py::class_<DecayRow>(m, "DecayRow")
        .def_readonly("m", &DecayRow::m)
        .def_readonly("mean", &DecayRow::mean)
        .def_readonly("variance", &DecayRow::variance)
        .def_readonly("num_sequences", &DecayRow::num_sequences);

    py::class_<DecayDataset>(m, "DecayDataset")
        .def(py::init([](const std::vector<std::tuple<int, double, double, int>>& rows) {
                 DecayDataset ds;
                 for (const auto& [m_val, mean, var, n] : rows)
                     ds.rows.push_back({ m_val, mean, var, n });
                 return ds;
             }),
             py::arg("rows"))
        .def_readonly("rows", &DecayDataset::rows)
        .def("to_csv", [](const DecayDataset& ds) { return io::dataset_to_csv(ds); });

    m.def(
        "run_experiment",
        [](const GateSet& gs, const std::vector<int>& m_list, int n_seq, std::uint64_t seed,
           const std::optional<Eigen::VectorXd>& rho, const std::optional<Eigen::VectorXd>& obs) {
            return run_experiment(gs, m_list, n_seq, state_or_default(rho), obs_or_default(obs),
                                  seed);
        },
        py::arg("gateset"), py::arg("m_list"), py::arg("n_seq"), py::arg("seed"),
        py::arg("rho") = std::nullopt, py::arg("obs") = std::nullopt);
    m.def(
        "brute_force_average",
        [](const GateSet& gs, int m_val, const std::optional<Eigen::VectorXd>& rho,
           const std::optional<Eigen::VectorXd>& obs) {
            return brute_force_average(gs, m_val, state_or_default(rho), obs_or_default(obs));
        },
        py::arg("gateset"), py::arg("m"), py::arg("rho") = std::nullopt,
        py::arg("obs") = std::nullopt);

    py::class_<TheoryCurveRow>(m, "TheoryCurveRow")
        .def_readonly("m", &TheoryCurveRow::m)
        .def_readonly("value", &TheoryCurveRow::value)
        .def_readonly("bound", &TheoryCurveRow::bound);

    py::class_<TheoryCurve>(m, "TheoryCurve")
        .def_readonly("A", &TheoryCurve::A)
        .def_readonly("B", &TheoryCurve::B)
        .def_readonly("p", &TheoryCurve::p)
        .def_readonly("t", &TheoryCurve::t)
        .def_readonly("rows", &TheoryCurve::rows);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("model", &FitResult::model)
        .def_readonly("p_est", &FitResult::p_est)
        .def_readonly("A_est", &FitResult::A_est)
        .def_readonly("B_est", &FitResult::B_est)
        .def_readonly("weighted_sse", &FitResult::weighted_sse)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("flat_likelihood", &FitResult::flat_likelihood);

    m.def("fit_fixed_spam", &fit_fixed_spam, py::arg("dataset"), py::arg("min_m") = 3);
    m.def("fit_free", &fit_free, py::arg("dataset"), py::arg("min_m") = 3);

    py::class_<GammaReport>(m, "GammaReport")
        .def_readonly("gamma", &GammaReport::gamma)
        .def_readonly("r_of_E", &GammaReport::r_of_E)
        .def_readonly("systematic_dr", &GammaReport::systematic_dr);

    py::class_<CounterexampleAnalytics>(m, "CounterexampleAnalytics")
        .def_readonly("gamma", &CounterexampleAnalytics::gamma)
        .def_readonly("r_of_E", &CounterexampleAnalytics::r_of_E)
        .def_readonly("ratio", &CounterexampleAnalytics::ratio)
        .def_readonly("systematic_dr", &CounterexampleAnalytics::systematic_dr);

    m.def("average_noise", &average_noise, py::arg("gateset"));
    m.def("first_order_gamma", &first_order_gamma, py::arg("gateset"),
          py::arg("f_m_minus_B") = 0.5);
    m.def("kth_order_bound", &kth_order_bound, py::arg("report"), py::arg("m"), py::arg("k"));
    m.def("counterexample_analytics", &counterexample_analytics, py::arg("nu"),
          py::arg("theta"));
}
