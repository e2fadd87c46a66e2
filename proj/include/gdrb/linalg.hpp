#pragma once

#include <Eigen/Dense>

namespace gdrb {

/// Column-stacking vectorization: opv(sum_j v_j e_j^T) = sum_j e_j (x) v_j.
Eigen::VectorXd vec(const Eigen::MatrixXd& m);

/// Inverse of vec for a square matrix.
Eigen::MatrixXd unvec(const Eigen::VectorXd& v);

/// Kronecker product a (x) b.
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Result of selecting the largest-magnitude eigenvalue of a real matrix.
struct DominantEigen {
    double value = 0.0;        ///< chosen eigenvalue
    Eigen::VectorXd right;     ///< unit right eigenvector
    Eigen::VectorXd left;      ///< unit left eigenvector
    double gap = 0.0;          ///< |value - nearest other eigenvalue|
    bool neighbor_complex = false; ///< nearest other eigenvalue is complex
};

/// Largest-|.| eigenvalue of a real square matrix with matching real left and
/// right eigenvectors, via real Schur form plus inverse iteration.
///
/// Throws NumericalError when the dominant eigenvalue belongs to a complex
/// conjugate pair (degenerate spectrum) or when two positive real eigenvalues
/// tie in magnitude (ambiguous choice). A +/- tie resolves to the positive one.
DominantEigen dominant_real_eigen(const Eigen::MatrixXd& m);

} // namespace gdrb
