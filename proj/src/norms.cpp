#include "gdrb/norms.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "gdrb/error.hpp"

namespace gdrb {

double operator_norm(const Eigen::MatrixXd& m)
{
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

double operator_norm(const SuperOp& c)
{
    return operator_norm(c.mat);
}

double trace_norm(const Eigen::MatrixXd& m)
{
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues().sum();
}

namespace {

constexpr int kGridAzimuth = 96;
constexpr int kGridPolar = 48;
constexpr int kDescentIters = 30;

double objective(const Eigen::Matrix4d& m, double polar, double azimuth)
{
    return trace_norm_from_pauli_vec(m * bloch_state_vec(polar, azimuth));
}

} // namespace

double induced_1to1_norm(const SuperOp& c, const Eigen::MatrixXd& frame)
{
    if (c.dim != 2)
        throw ValidationError("induced_1to1_norm: implemented for d = 2 only");
    if (frame.rows() != 4 || frame.cols() != 4)
        throw ValidationError("induced_1to1_norm: frame must be 4 x 4");

    const Eigen::Matrix4d m = c.mat * frame;
    constexpr double pi = std::numbers::pi;

    double best = -1.0, best_th = 0.0, best_ph = 0.0;
    for (int j = 0; j < kGridPolar; ++j) {
        const double th = pi * j / (kGridPolar - 1);
        for (int i = 0; i < kGridAzimuth; ++i) {
            const double ph = 2.0 * pi * i / kGridAzimuth;
            const double val = objective(m, th, ph);
            if (val > best) {
                best = val;
                best_th = th;
                best_ph = ph;
            }
        }
    }

    double dth = pi / (kGridPolar - 1);
    double dph = 2.0 * pi / kGridAzimuth;
    for (int it = 0; it < kDescentIters; ++it) {
        bool improved = false;
        const double cand[4][2] = { { best_th + dth, best_ph },
                                    { best_th - dth, best_ph },
                                    { best_th, best_ph + dph },
                                    { best_th, best_ph - dph } };
        for (const auto& s : cand) {
            const double val = objective(m, s[0], s[1]);
            if (val > best) {
                best = val;
                best_th = s[0];
                best_ph = s[1];
                improved = true;
            }
        }
        if (!improved) {
            dth *= 0.5;
            dph *= 0.5;
        }
    }
    return best;
}

double induced_1to1_norm(const SuperOp& c)
{
    return induced_1to1_norm(c, Eigen::Matrix4d::Identity());
}

} // namespace gdrb
