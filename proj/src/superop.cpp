#include "gdrb/superop.hpp"

#include <cmath>

#include "gdrb/error.hpp"

namespace gdrb {

SuperOp::SuperOp(int d, Eigen::MatrixXd m) : dim(d), mat(std::move(m))
{
    if (dim <= 0)
        throw ValidationError("SuperOp: dimension must be positive");
    const Eigen::Index n = Eigen::Index(dim) * dim;
    if (mat.rows() != n || mat.cols() != n)
        throw ValidationError("SuperOp: matrix must be d^2 x d^2");
}

SuperOp SuperOp::identity(int d)
{
    return SuperOp(d, Eigen::MatrixXd::Identity(Eigen::Index(d) * d, Eigen::Index(d) * d));
}

const Eigen::Matrix2cd& pauli(int k)
{
    using namespace std::complex_literals;
    static const Eigen::Matrix2cd paulis[4] = {
        (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
        (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
        (Eigen::Matrix2cd() << 0, -1i, 1i, 0).finished(),
        (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
    };
    if (k < 0 || k > 3)
        throw ValidationError("pauli: index out of range");
    return paulis[k];
}

SuperOp ptm_from_unitary(const Eigen::Matrix2cd& u)
{
    const double dev = (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (dev > 1e-12)
        throw ValidationError("ptm_from_unitary: input is not unitary (deviation "
                              + std::to_string(dev) + ")");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXd m(4, 4);
    for (int j = 0; j < 4; ++j) {
        const Eigen::Matrix2cd out = u * (inv_sqrt2 * pauli(j)) * u.adjoint();
        for (int i = 0; i < 4; ++i)
            m(i, j) = ((inv_sqrt2 * pauli(i)) * out).trace().real();
    }
    return SuperOp(2, std::move(m));
}

SuperOp compose(const SuperOp& a, const SuperOp& b)
{
    if (a.dim != b.dim)
        throw ValidationError("compose: dimension mismatch");
    return SuperOp(a.dim, a.mat * b.mat);
}

SuperOp compose(const SuperOp& a, const SuperOp& b, const SuperOp& c)
{
    return compose(compose(a, b), c);
}

SuperOp adjoint(const SuperOp& a)
{
    return SuperOp(a.dim, a.mat.transpose());
}

SuperOp unital_part(const SuperOp& a)
{
    Eigen::MatrixXd m = a.mat;
    m.col(0).setZero();
    return SuperOp(a.dim, std::move(m));
}

SuperOp depolarizing(double p, double t, int d)
{
    const Eigen::Index n = Eigen::Index(d) * d;
    Eigen::MatrixXd m = p * Eigen::MatrixXd::Identity(n, n);
    m(0, 0) = t;
    return SuperOp(d, std::move(m));
}

DepolParams decay_params(const SuperOp& c)
{
    DepolParams out;
    out.t = c.mat(0, 0);
    const double d2 = double(c.dim) * c.dim;
    out.p = (c.mat.trace() - out.t) / (d2 - 1.0);
    return out;
}

double average_fidelity(const SuperOp& c)
{
    const auto [p, t] = decay_params(c);
    return (p * (c.dim - 1) + t) / c.dim;
}

double infidelity(const SuperOp& c)
{
    return 1.0 - average_fidelity(c);
}

double bowdrey_fidelity(const SuperOp& c)
{
    if (c.dim != 2)
        throw ValidationError("bowdrey_fidelity: implemented for d = 2 only");
    // tr[s C(s)] = 2 C[s,s] in the normalized Pauli basis
    return 0.5 + (c.mat(1, 1) + c.mat(2, 2) + c.mat(3, 3)) / 6.0;
}

StateVec zero_state()
{
    StateVec s;
    s.dim = 2;
    s.v = Eigen::Vector4d(1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0));
    return s;
}

ObsVec zero_observable()
{
    ObsVec q;
    q.dim = 2;
    q.v = Eigen::Vector4d(1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0));
    return q;
}

double expectation(const ObsVec& q, const SuperOp& c, const StateVec& rho)
{
    if (q.dim != c.dim || rho.dim != c.dim)
        throw ValidationError("expectation: dimension mismatch");
    return q.v.dot(c.mat * rho.v);
}

Eigen::Vector4d bloch_state_vec(double polar, double azimuth)
{
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return { inv_sqrt2,
             inv_sqrt2 * std::sin(polar) * std::cos(azimuth),
             inv_sqrt2 * std::sin(polar) * std::sin(azimuth),
             inv_sqrt2 * std::cos(polar) };
}

double trace_norm_from_pauli_vec(const Eigen::Vector4d& y)
{
    const double b = y.tail<3>().norm();
    return (std::abs(y(0) + b) + std::abs(y(0) - b)) / std::sqrt(2.0);
}

} // namespace gdrb
