#pragma once

#include <Eigen/Dense>

#include "gdrb/superop.hpp"

namespace gdrb {

/// Largest singular value of the transfer matrix.
double operator_norm(const SuperOp& c);
double operator_norm(const Eigen::MatrixXd& m);

/// Sum of singular values, tr sqrt(M^dagger M).
double trace_norm(const Eigen::MatrixXd& m);

/// Induced trace norm sup ||C(psi)||_1 over pure qubit states psi, computed
/// by a Bloch-sphere grid search (96 x 48) followed by local coordinate
/// descent; accurate to about 1e-8 for smooth maps. d = 2 only.
///
/// This is the positive-semidefinite-restricted induced norm: the feasible
/// set is unit-trace PSD inputs, whose extreme points are the pure states
/// (the unrestricted 1->1 norm over all trace-norm-1 matrices can be larger).
///
/// `frame` replaces the feasible set by the images F|psi>> of pure states,
/// which is how the gauge-transformed delta_1 is evaluated. Defaults to the
/// identity (plain pure states).
double induced_1to1_norm(const SuperOp& c);
double induced_1to1_norm(const SuperOp& c, const Eigen::MatrixXd& frame);

} // namespace gdrb
