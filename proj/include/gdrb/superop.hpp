#pragma once

#include <complex>

#include <Eigen/Dense>

namespace gdrb {

/// Quantum channel as a real transfer matrix in a Hermitian, trace-orthonormal
/// operator basis with B1 = I/sqrt(d). Index 0 of the matrix corresponds to B1,
/// so a unitary channel has first row and column equal to e1.
///
/// Values are immutable by convention: every operation returns a new SuperOp.
struct SuperOp {
    int dim = 0;            ///< Hilbert-space dimension d
    Eigen::MatrixXd mat;    ///< d^2 x d^2 real transfer matrix

    SuperOp() = default;
    SuperOp(int d, Eigen::MatrixXd m);

    static SuperOp identity(int d);
};

/// Vectorized density operator |rho>>.
struct StateVec {
    int dim = 0;
    Eigen::VectorXd v;
};

/// Vectorized observable <<Q| (stored as a column; pair with dot products).
struct ObsVec {
    int dim = 0;
    Eigen::VectorXd v;
};

/// Decay pair (p, t) of a twirled channel: D_{p,t} = diag(t, p, ..., p).
struct DepolParams {
    double p = 1.0;
    double t = 1.0;
};

/// Normalized Pauli basis {I, X, Y, Z}/sqrt(2) used for d = 2.
const Eigen::Matrix2cd& pauli(int k);

/// Transfer matrix of the unitary channel rho -> U rho U^dagger (d = 2).
/// Throws ValidationError unless U is unitary to 1e-12.
SuperOp ptm_from_unitary(const Eigen::Matrix2cd& u);

/// Matrix product C = A B, i.e. apply B first.
SuperOp compose(const SuperOp& a, const SuperOp& b);
SuperOp compose(const SuperOp& a, const SuperOp& b, const SuperOp& c);

/// Adjoint map; the transpose in a Hermitian basis.
SuperOp adjoint(const SuperOp& a);

/// G_u(A) = G(A - tr(A)/d): zeroes the first column of the transfer matrix.
SuperOp unital_part(const SuperOp& a);

/// D_{p,t}(rho) = (t/d) I_d + p (rho - I_d/d); transfer matrix diag(t, p, ..., p).
SuperOp depolarizing(double p, double t, int d);

/// t = C[0,0], p = (tr C - t)/(d^2 - 1); the twirl of C equals D_{p,t}.
DepolParams decay_params(const SuperOp& c);

/// Average fidelity f = (p (d-1) + t)/d.
double average_fidelity(const SuperOp& c);

/// Infidelity r = 1 - f.
double infidelity(const SuperOp& c);

/// d = 2 cross-check: f = 1/2 + sum_{s=X,Y,Z} tr[s C(s)]/12.
double bowdrey_fidelity(const SuperOp& c);

/// |rho>> and <<Q| for rho = Q = |0><0| in the d = 2 Pauli basis.
StateVec zero_state();
ObsVec zero_observable();

/// Survival value <<Q|C|rho>>.
double expectation(const ObsVec& q, const SuperOp& c, const StateVec& rho);

/// Vectorize a d = 2 Hermitian operator given by Bloch components.
Eigen::Vector4d bloch_state_vec(double polar, double azimuth);

/// Trace norm of the d = 2 operator with coefficient vector y in the
/// normalized Pauli basis: (|y0 + |y_vec|| + |y0 - |y_vec||)/sqrt(2).
double trace_norm_from_pauli_vec(const Eigen::Vector4d& y);

} // namespace gdrb
