#include "gdrb/decomp.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "gdrb/error.hpp"
#include "gdrb/linalg.hpp"
#include "gdrb/norms.hpp"

namespace gdrb {

namespace {

Eigen::MatrixXd average_noisy(const GateSet& gs)
{
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(gs.noisy[0].mat.rows(), gs.noisy[0].mat.cols());
    for (const SuperOp& n : gs.noisy)
        acc += n.mat;
    return acc / double(gs.group.order);
}

} // namespace

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> average_maps(const GateSet& gs)
{
    const Eigen::Index n2 = gs.noisy[0].mat.rows();
    Eigen::MatrixXd m_t = average_noisy(gs);
    Eigen::MatrixXd m_p = Eigen::MatrixXd::Zero(n2 * n2, n2 * n2);
    for (int i = 0; i < gs.group.order; ++i)
        m_p += kron(unital_part(gs.group.ideal[std::size_t(i)]).mat, gs.noisy[std::size_t(i)].mat);
    m_p /= double(gs.group.order);
    return { std::move(m_t), std::move(m_p) };
}

Decomposition solve_LR(const GateSet& gs)
{
    const int d = gs.group.ideal.front().dim;
    const Eigen::Index n2 = Eigen::Index(d) * d;
    const auto [m_t, m_p] = average_maps(gs);

    const DominantEigen et = dominant_real_eigen(m_t);
    const DominantEigen ep = dominant_real_eigen(m_p);

    Decomposition dec;
    dec.t = et.value;
    dec.p = ep.value;
    dec.eigengap_t = et.gap;
    dec.eigengap_p = ep.gap;
    dec.dominant_complex = et.neighbor_complex || ep.neighbor_complex;

    // |L>> and <<R| from the t-eigenvectors; L' and R' from the p-eigenvectors
    // of E(G_u (x) noisy): L' = unvec(right), R' = unvec(left)^T.
    Eigen::VectorXd l_vec = et.right;
    Eigen::VectorXd r_vec = et.left;
    Eigen::MatrixXd l_prime = unvec(ep.right);
    Eigen::MatrixXd r_prime = unvec(ep.left).transpose();

    // Eigenvector structure guarantees L'|I>> = 0 and <<I|R' = 0.
    const double l_constraint = l_prime.col(0).norm();
    const double r_constraint = r_prime.row(0).norm();
    if (l_constraint > 1e-12 || r_constraint > 1e-12)
        throw NumericalError("solve_LR: eigenvector orthogonality constraint violated ("
                             + std::to_string(std::max(l_constraint, r_constraint)) + ")");

    // Deterministic signs: leading component of |L>> positive, tr(L') >= 0.
    int lead = 0;
    for (Eigen::Index i = 0; i < l_vec.size(); ++i)
        if (std::abs(l_vec(i)) > 1e-12) {
            lead = int(i);
            break;
        }
    if (l_vec(lead) < 0.0)
        l_vec = -l_vec;
    if (l_prime.trace() < 0.0) {
        l_prime = -l_prime;
        r_prime = -r_prime;
    }

    // All rescaling lands on R: unit-norm L components, then <<R|L>> = t and
    // tr(R' L') = p (d^2 - 1), making the twirl of R L exactly D_{p,t}.
    l_vec.normalize();
    l_prime /= operator_norm(l_prime);
    const double inner = r_vec.dot(l_vec);
    if (std::abs(inner) < 1e-14)
        throw NumericalError("solve_LR: normalization failure, <<R|L>> ~ 0");
    r_vec *= dec.t / inner;
    const double cross = (r_prime * l_prime).trace();
    if (std::abs(cross) < 1e-14)
        throw NumericalError("solve_LR: normalization failure, tr(R'L') ~ 0");
    r_prime *= dec.p * double(n2 - 1) / cross;

    Eigen::MatrixXd l_full = l_prime;
    l_full.col(0) += l_vec;
    Eigen::MatrixXd r_full = r_prime;
    r_full.row(0) += r_vec.transpose();
    dec.L = SuperOp(d, std::move(l_full));
    dec.R = SuperOp(d, std::move(r_full));

    // Residuals of the three defining conditions.
    const SuperOp depol = depolarizing(dec.p, dec.t, d);
    Eigen::MatrixXd acc_l = Eigen::MatrixXd::Zero(n2, n2);
    Eigen::MatrixXd acc_r = Eigen::MatrixXd::Zero(n2, n2);
    Eigen::MatrixXd acc_s = Eigen::MatrixXd::Zero(n2, n2);
    for (int i = 0; i < gs.group.order; ++i) {
        const Eigen::MatrixXd& gi = gs.group.ideal[std::size_t(i)].mat;
        const Eigen::MatrixXd& ni = gs.noisy[std::size_t(i)].mat;
        acc_l += ni * dec.L.mat * gi.transpose();
        acc_r += gi.transpose() * dec.R.mat * ni;
        acc_s += gi * dec.R.mat * dec.L.mat * gi.transpose();
    }
    const double norm = double(gs.group.order);
    dec.residual_L = operator_norm(Eigen::MatrixXd(acc_l / norm - dec.L.mat * depol.mat));
    dec.residual_R = operator_norm(Eigen::MatrixXd(acc_r / norm - depol.mat * dec.R.mat));
    dec.residual_scale = operator_norm(Eigen::MatrixXd(acc_s / norm - depol.mat));
    return dec;
}

GateSet gauge_transform(const GateSet& gs, const SuperOp& s)
{
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(s.mat);
    const double cond = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
    if (!std::isfinite(cond) || cond > 1e8)
        throw NumericalError("gauge_transform: gauge map ill-conditioned (cond = "
                             + std::to_string(cond) + ")");
    const Eigen::MatrixXd s_inv = s.mat.inverse();
    GateSet out;
    out.group = gs.group;
    out.noisy.reserve(gs.noisy.size());
    for (const SuperOp& n : gs.noisy)
        out.noisy.emplace_back(n.dim, Eigen::MatrixXd(s_inv * n.mat * s.mat));
    out.descriptor = gs.descriptor + " [gauged]";
    return out;
}

StateVec gauge_state(const SuperOp& s, const StateVec& rho)
{
    StateVec out;
    out.dim = rho.dim;
    out.v = s.mat.partialPivLu().solve(rho.v);
    return out;
}

ObsVec gauge_observable(const SuperOp& s, const ObsVec& q)
{
    ObsVec out;
    out.dim = q.dim;
    out.v = s.mat.transpose() * q.v;
    return out;
}

std::pair<GateSet, Decomposition> gauge_to_L_identity(const GateSet& gs, const Decomposition& dec)
{
    GateSet gauged = gauge_transform(gs, dec.L);
    Decomposition re = solve_LR(gauged);
    const double l_dev = (re.L.mat - Eigen::MatrixXd::Identity(re.L.mat.rows(), re.L.mat.cols()))
                             .cwiseAbs()
                             .maxCoeff();
    if (l_dev > 1e-8)
        throw NumericalError("gauge_to_L_identity: re-solved L deviates from identity by "
                             + std::to_string(l_dev));
    return { std::move(gauged), std::move(re) };
}

DeltaReport deltas(const GateSet& gs, const Decomposition& dec, const StateVec& rho,
                   const ObsVec& obs, const Eigen::MatrixXd& frame)
{
    DeltaReport rep;
    rep.delta.reserve(gs.noisy.size());
    double sum = 0.0;
    double max_induced = 0.0;
    for (int i = 0; i < gs.group.order; ++i) {
        SuperOp d(gs.noisy[std::size_t(i)].dim,
                  Eigen::MatrixXd(gs.noisy[std::size_t(i)].mat
                                  - dec.L.mat * gs.group.ideal[std::size_t(i)].mat * dec.R.mat));
        const double onorm = operator_norm(d);
        rep.op_norms.push_back(onorm);
        sum += onorm;
        max_induced = std::max(max_induced, induced_1to1_norm(d, frame));
        rep.delta.push_back(std::move(d));
    }
    rep.delta2 = sum / double(gs.group.order);
    rep.rho_trace_norm = trace_norm_from_pauli_vec(rho.v);
    rep.obs_trace_norm = trace_norm_from_pauli_vec(obs.v);
    rep.delta1 = max_induced * rep.rho_trace_norm * rep.obs_trace_norm;
    return rep;
}

DeltaReport deltas(const GateSet& gs, const Decomposition& dec, const StateVec& rho,
                   const ObsVec& obs)
{
    return deltas(gs, dec, rho, obs,
                  Eigen::MatrixXd::Identity(gs.noisy[0].mat.rows(), gs.noisy[0].mat.cols()));
}

RightNoiseBound right_noise_bound(const GateSet& gs_identity_gauge, const Decomposition& dec)
{
    const GateSet& gs = gs_identity_gauge;
    const int d = gs.group.ideal.front().dim;
    const SuperOp depol = depolarizing(dec.p, dec.t, d);

    RightNoiseBound b;
    if (dec.p == 0.0 || dec.t == 0.0)
        throw NumericalError("right_noise_bound: D_{1/p,1/t} undefined for p or t = 0");
    b.dinv_norm = std::max(std::abs(1.0 / dec.p), std::abs(1.0 / dec.t));

    Eigen::MatrixXd twirl_acc =
        Eigen::MatrixXd::Zero(gs.noisy[0].mat.rows(), gs.noisy[0].mat.cols());
    double sum_dev = 0.0;
    for (int i = 0; i < gs.group.order; ++i) {
        const Eigen::MatrixXd dev = gs.noisy[std::size_t(i)].mat
                                    - gs.group.ideal[std::size_t(i)].mat * depol.mat;
        const double n = operator_norm(dev);
        b.max_depol_dev = std::max(b.max_depol_dev, n);
        sum_dev += n;
        twirl_acc += gs.group.ideal[std::size_t(i)].mat.transpose() * gs.noisy[std::size_t(i)].mat;
    }
    b.mean_depol_dev = sum_dev / double(gs.group.order);
    b.twirl_dev = operator_norm(Eigen::MatrixXd(twirl_acc / double(gs.group.order) - depol.mat));
    b.denominator = 1.0 - b.mean_depol_dev * b.dinv_norm;
    if (b.denominator <= 0.0)
        throw NumericalError("right_noise_bound: bound vacuous, denominator = "
                             + std::to_string(b.denominator));
    b.value = b.max_depol_dev + b.twirl_dev / b.denominator;
    return b;
}

NoiseInterpretation interpret(const Decomposition& dec, int dim)
{
    NoiseInterpretation out;
    out.p = dec.p;
    out.t = dec.t;
    out.f_avg = (dec.p * (dim - 1) + dec.t) / dim;
    out.r = 1.0 - out.f_avg;
    return out;
}

IdentityGaugeAnalysis analyze_identity_gauge(const GateSet& gs, const StateVec& rho,
                                             const ObsVec& obs)
{
    IdentityGaugeAnalysis a;
    a.dec = solve_LR(gs);
    auto [gauged, re] = gauge_to_L_identity(gs, a.dec);
    a.gs_identity = std::move(gauged);
    a.dec_identity = std::move(re);
    a.rho_identity = gauge_state(a.dec.L, rho);
    a.obs_identity = gauge_observable(a.dec.L, obs);
    a.report = deltas(a.gs_identity, a.dec_identity, a.rho_identity, a.obs_identity, a.dec.L.mat);
    a.bound = right_noise_bound(a.gs_identity, a.dec_identity);
    return a;
}

} // namespace gdrb
