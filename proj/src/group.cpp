#include "gdrb/group.hpp"

#include <cmath>

#include "gdrb/error.hpp"
#include "gdrb/norms.hpp"
#include "gdrb/rng.hpp"

namespace gdrb {

namespace {

constexpr double kMatchTol = 1e-9;

int find_element(const std::vector<SuperOp>& els, const Eigen::MatrixXd& m)
{
    for (std::size_t i = 0; i < els.size(); ++i)
        if ((els[i].mat - m).cwiseAbs().maxCoeff() < kMatchTol)
            return int(i);
    return -1;
}

// Fills mult/inv/identity from the cached transfer matrices and verifies
// closure and table consistency.
void close_table(GroupTable& g)
{
    g.order = int(g.ideal.size());
    g.mult.assign(std::size_t(g.order) * g.order, -1);
    for (int a = 0; a < g.order; ++a) {
        for (int b = 0; b < g.order; ++b) {
            const Eigen::MatrixXd prod = g.ideal[a].mat * g.ideal[b].mat;
            const int c = find_element(g.ideal, prod);
            if (c < 0)
                throw NumericalError("group: not closed under multiplication ("
                                     + g.labels[a] + " * " + g.labels[b] + ")");
            g.mult[std::size_t(a) * g.order + b] = c;
        }
    }
    const int id = find_element(g.ideal, Eigen::MatrixXd::Identity(4, 4));
    if (id < 0)
        throw NumericalError("group: identity element missing");
    g.identity = id;
    g.inv.assign(g.order, -1);
    for (int a = 0; a < g.order; ++a) {
        for (int b = 0; b < g.order; ++b) {
            if (g.multiply(a, b) == g.identity) {
                g.inv[a] = b;
                break;
            }
        }
        if (g.inv[a] < 0)
            throw NumericalError("group: element without inverse: " + g.labels[a]);
    }
    for (int a = 0; a < g.order; ++a)
        if (g.multiply(g.inv[a], a) != g.identity)
            throw NumericalError("group: inverse table inconsistent at " + g.labels[a]);
}

} // namespace

GateId GroupTable::sequence_inverse(std::span<const GateId> gates) const
{
    GateId acc = identity;
    for (const GateId g : gates)
        acc = multiply(g, acc);
    return inverse(acc);
}

GroupTable build_t_pauli_group()
{
    const Eigen::Matrix2cd t_mat = (Eigen::Matrix2cd() << 1.0, std::complex<double>(0, -1),
                                    1.0, std::complex<double>(0, 1))
                                       .finished()
                                   / std::sqrt(2.0);
    GroupTable g;
    g.kind = "t_pauli";
    for (int t = 0; t < 3; ++t) {
        Eigen::Matrix2cd tp = Eigen::Matrix2cd::Identity();
        for (int k = 0; k < t; ++k)
            tp = t_mat * tp;
        for (int p = 0; p < 4; ++p) {
            g.ideal.push_back(ptm_from_unitary(tp * pauli(p)));
            static const char* names[4] = { "I", "X", "Y", "Z" };
            g.labels.push_back("T^" + std::to_string(t) + " " + names[p]);
            g.tp_labels.push_back({ t, p });
        }
    }
    close_table(g);
    return g;
}

GroupTable build_clifford_group()
{
    const Eigen::Matrix2cd h = (Eigen::Matrix2cd() << 1, 1, 1, -1).finished() / std::sqrt(2.0);
    const Eigen::Matrix2cd s =
        (Eigen::Matrix2cd() << 1.0, 0.0, 0.0, std::complex<double>(0, 1)).finished();
    const SuperOp gens[2] = { ptm_from_unitary(h), ptm_from_unitary(s) };
    const char* gen_names[2] = { "H", "S" };

    GroupTable g;
    g.kind = "clifford";
    g.ideal.push_back(SuperOp::identity(2));
    g.labels.push_back("I");
    for (std::size_t head = 0; head < g.ideal.size(); ++head) {
        for (int k = 0; k < 2; ++k) {
            const Eigen::MatrixXd cand = gens[k].mat * g.ideal[head].mat;
            if (find_element(g.ideal, cand) < 0) {
                g.ideal.emplace_back(2, cand);
                g.labels.push_back(std::string(gen_names[k]) + "*" + g.labels[head]);
            }
        }
        if (g.ideal.size() > 24)
            throw NumericalError("clifford group: enumeration exceeded 24 elements");
    }
    if (g.ideal.size() != 24)
        throw NumericalError("clifford group: expected 24 elements, got "
                             + std::to_string(g.ideal.size()));
    close_table(g);
    return g;
}

SuperOp twirl(const SuperOp& c, const GroupTable& g)
{
    if (c.dim != g.ideal.front().dim)
        throw ValidationError("twirl: dimension mismatch");
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(c.mat.rows(), c.mat.cols());
    for (const SuperOp& u : g.ideal)
        acc += u.mat.transpose() * c.mat * u.mat;
    return SuperOp(c.dim, acc / double(g.order));
}

TwoDesignCheck verify_two_design(const GroupTable& g, int trials, double tol, std::uint64_t seed)
{
    if (trials < 1)
        throw ValidationError("verify_two_design: trials must be >= 1");
    TwoDesignCheck out;
    PhiloxRng rng(seed, make_stream(0x2D, 0, 0));
    for (int trial = 0; trial < trials; ++trial) {
        // convex mixture of Haar-random unitary channels
        double w[3];
        double wsum = 0.0;
        for (double& x : w) {
            x = rng.next_double_open_low();
            wsum += x;
        }
        Eigen::MatrixXd c = Eigen::MatrixXd::Zero(4, 4);
        for (const double x : w)
            c += (x / wsum) * ptm_from_unitary(haar_su2(rng)).mat;
        const SuperOp chan(2, std::move(c));
        const auto [p, t] = decay_params(chan);
        const double resid = operator_norm(twirl(chan, g).mat - depolarizing(p, t, 2).mat);
        out.max_residual = std::max(out.max_residual, resid);
    }
    out.pass = out.max_residual <= tol;
    return out;
}

} // namespace gdrb
