#include "gdrb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gdrb/error.hpp"

namespace gdrb {

Eigen::VectorXd vec(const Eigen::MatrixXd& m)
{
    return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

Eigen::MatrixXd unvec(const Eigen::VectorXd& v)
{
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
    if (n * n != v.size())
        throw ValidationError("unvec: length is not a perfect square");
    return Eigen::Map<const Eigen::MatrixXd>(v.data(), n, n);
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {

std::vector<std::complex<double>> schur_eigenvalues(const Eigen::MatrixXd& t)
{
    std::vector<std::complex<double>> eigs;
    const Eigen::Index n = t.rows();
    Eigen::Index i = 0;
    while (i < n) {
        if (i + 1 < n && std::abs(t(i + 1, i)) > 0.0) {
            // 2x2 block: complex conjugate pair
            const double a = t(i, i), b = t(i, i + 1);
            const double c = t(i + 1, i), d = t(i + 1, i + 1);
            const double re = 0.5 * (a + d);
            const double disc = 0.25 * (a - d) * (a - d) + b * c;
            if (disc < 0.0) {
                const double im = std::sqrt(-disc);
                eigs.emplace_back(re, im);
                eigs.emplace_back(re, -im);
            } else {
                const double s = std::sqrt(disc);
                eigs.emplace_back(re + s, 0.0);
                eigs.emplace_back(re - s, 0.0);
            }
            i += 2;
        } else {
            eigs.emplace_back(t(i, i), 0.0);
            ++i;
        }
    }
    return eigs;
}

// Inverse iteration at a known eigenvalue. The shift keeps the factored
// matrix nonsingular; a couple of iterations suffice for simple eigenvalues.
Eigen::VectorXd inverse_iteration(const Eigen::MatrixXd& m, double lambda)
{
    const Eigen::Index n = m.rows();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double shift = lambda + scale * 1e-13;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m - shift * Eigen::MatrixXd::Identity(n, n));

    const double tol = 1e-12 * scale;
    Eigen::VectorXd best;
    double best_resid = std::numeric_limits<double>::infinity();
    for (Eigen::Index start = 0; start <= n; ++start) {
        Eigen::VectorXd v;
        if (start == 0)
            v = Eigen::VectorXd::Ones(n);
        else
            v = Eigen::VectorXd::Unit(n, start - 1);
        v.normalize();
        for (int it = 0; it < 16; ++it) {
            Eigen::VectorXd w = lu.solve(v);
            const double nw = w.norm();
            if (!(nw > 0.0) || !std::isfinite(nw))
                break;
            v = w / nw;
            const double resid = (m * v - lambda * v).norm();
            if (resid < best_resid) {
                best_resid = resid;
                best = v;
            }
            if (resid <= tol)
                return v;
        }
    }
    if (best_resid <= 1e-8 * scale)
        return best;
    throw NumericalError("dominant_real_eigen: inverse iteration failed to converge (residual "
                         + std::to_string(best_resid) + ")");
}

} // namespace

DominantEigen dominant_real_eigen(const Eigen::MatrixXd& m)
{
    if (m.rows() != m.cols())
        throw ValidationError("dominant_real_eigen: matrix must be square");

    Eigen::RealSchur<Eigen::MatrixXd> schur(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw NumericalError("dominant_real_eigen: Schur decomposition failed");
    const auto eigs = schur_eigenvalues(schur.matrixT());

    double max_abs = 0.0;
    for (const auto& e : eigs)
        max_abs = std::max(max_abs, std::abs(e));
    const double tie_tol = 1e-12 * std::max(1.0, max_abs);

    std::vector<std::complex<double>> top;
    for (const auto& e : eigs)
        if (std::abs(e) >= max_abs - tie_tol)
            top.push_back(e);

    for (const auto& e : top)
        if (std::abs(e.imag()) > 1e-9 * std::abs(e))
            throw NumericalError("dominant_real_eigen: dominant eigenvalue is part of a complex "
                                 "conjugate pair (degenerate spectrum)");

    double chosen;
    if (top.size() == 1) {
        chosen = top[0].real();
    } else {
        std::size_t positive = 0;
        for (const auto& e : top)
            if (e.real() > 0.0)
                ++positive;
        if (positive >= 2)
            throw NumericalError("dominant_real_eigen: two positive eigenvalues tie in magnitude "
                                 "(ambiguous decomposition)");
        if (positive == 0)
            throw NumericalError("dominant_real_eigen: dominant magnitude attained only by "
                                 "nonpositive eigenvalues tied in magnitude");
        chosen = max_abs;
    }

    DominantEigen out;
    out.value = chosen;

    // Gap to the nearest other eigenvalue: drop exactly one copy of the
    // chosen value from the multiset.
    double gap = std::numeric_limits<double>::infinity();
    bool neighbor_complex = false;
    std::size_t skip = eigs.size();
    double skip_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        const double d = std::abs(eigs[i] - std::complex<double>(chosen, 0.0));
        if (d < skip_dist && std::abs(eigs[i].imag()) <= 1e-9 * std::max(1.0, std::abs(eigs[i]))) {
            skip_dist = d;
            skip = i;
        }
    }
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        if (i == skip)
            continue;
        const double d = std::abs(eigs[i] - std::complex<double>(chosen, 0.0));
        if (d < gap) {
            gap = d;
            neighbor_complex = std::abs(eigs[i].imag()) > 1e-9 * std::max(1.0, std::abs(eigs[i]));
        }
    }
    out.gap = gap;
    out.neighbor_complex = neighbor_complex;

    out.right = inverse_iteration(m, chosen);
    out.left = inverse_iteration(m.transpose(), chosen);
    return out;
}

} // namespace gdrb
