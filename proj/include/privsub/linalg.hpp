#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace privsub {

using Complex = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;

/// Relative singular-value threshold used for every rank/kernel decision.
inline constexpr double kRankRelTol = 1e-9;

DenseOperator kron(const DenseOperator& a, const DenseOperator& b);
DenseOperator kron_all(std::span<const DenseOperator> factors);

/// Largest entrywise modulus.
double max_abs(const DenseOperator& m);

bool is_unitary(const DenseOperator& u, double tol = 1e-10);
bool is_diagonal(const DenseOperator& m, double tol);

/// Column-major vectorization, vec(A X B) = (B^T (x) A) vec(X).
Eigen::VectorXcd vec(const DenseOperator& m);
DenseOperator unvec(const Eigen::VectorXcd& v, Eigen::Index n);

/// Outcome of thresholding a singular-value spectrum.
struct RankDecision {
  Eigen::Index rank = 0;
  double threshold = 0.0;
  // Some singular value lies within a factor 10 of the threshold.
  bool ambiguous = false;
};

/// The threshold is rel_tol * max(largest singular value, scale); pass the
/// norm of an unprojected operator as `scale` so that a product which is
/// zero up to rounding is not treated as full rank.
RankDecision decide_rank(const Eigen::VectorXd& singular_values,
                         double rel_tol = kRankRelTol, double scale = 0.0);

/// Orthonormal basis (columns) of the kernel of m. Throws NumericalAmbiguity
/// when the rank decision is ambiguous.
Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& m,
                            double rel_tol = kRankRelTol, double scale = 0.0);

/// Orthonormal basis (columns) of the column span of m.
Eigen::MatrixXcd column_space(const Eigen::MatrixXcd& m,
                              double rel_tol = kRankRelTol);

/// Eigenvalue clusters of a Hermitian matrix: each entry lists the column
/// indices (into the ascending eigenvector matrix) of one cluster.
struct HermitianClusters {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
  std::vector<std::vector<Eigen::Index>> clusters;
  bool ambiguous = false;
};

HermitianClusters cluster_eigenvalues(const DenseOperator& hermitian,
                                      double gap_tol);

/// Positive semidefinite up to tol (smallest eigenvalue of the Hermitian
/// part >= -tol) and Hermitian within tol.
bool is_psd(const DenseOperator& m, double tol);

}  // namespace privsub
