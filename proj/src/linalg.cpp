#include "privsub/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "privsub/errors.hpp"

namespace privsub {

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DenseOperator kron_all(std::span<const DenseOperator> factors) {
  DenseOperator out = DenseOperator::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

double max_abs(const DenseOperator& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_unitary(const DenseOperator& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u * u.adjoint() - DenseOperator::Identity(u.rows(), u.cols())) <= tol;
}

bool is_diagonal(const DenseOperator& m, double tol) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && std::abs(m(i, j)) > tol) return false;
  return true;
}

Eigen::VectorXcd vec(const DenseOperator& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

DenseOperator unvec(const Eigen::VectorXcd& v, Eigen::Index n) {
  return Eigen::Map<const DenseOperator>(v.data(), n, n);
}

RankDecision decide_rank(const Eigen::VectorXd& singular_values, double rel_tol,
                         double scale) {
  RankDecision out;
  if (singular_values.size() == 0) return out;
  const double largest = std::max(singular_values.maxCoeff(), scale);
  if (largest == 0.0) return out;
  out.threshold = rel_tol * largest;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    const double s = singular_values[i];
    if (s > out.threshold) ++out.rank;
    if (s > out.threshold / 10.0 && s < out.threshold * 10.0) out.ambiguous = true;
  }
  return out;
}

namespace {

// Right singular vectors of m together with the rank decision. Wide inputs are
// padded so every right singular vector is returned. JacobiSVD throughout:
// Eigen 3.4.0's BDCSVD returned non-kernel vectors for some rank-deficient
// complex inputs in optimized builds.
std::pair<Eigen::MatrixXcd, RankDecision> right_svd(const Eigen::MatrixXcd& m,
                                                    double rel_tol, double scale) {
  Eigen::MatrixXcd a = m;
  if (a.rows() < a.cols()) {
    a.conservativeResize(a.cols(), Eigen::NoChange);
    a.bottomRows(a.cols() - m.rows()).setZero();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinV);
  return {svd.matrixV(), decide_rank(svd.singularValues(), rel_tol, scale)};
}

}  // namespace

Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& m, double rel_tol, double scale) {
  if (m.rows() == 0) return Eigen::MatrixXcd::Identity(m.cols(), m.cols());
  auto [v, rank] = right_svd(m, rel_tol, scale);
  if (rank.ambiguous)
    throw NumericalAmbiguity("kernel rank decision within a factor 10 of threshold");
  return v.rightCols(m.cols() - rank.rank);
}

Eigen::MatrixXcd column_space(const Eigen::MatrixXcd& m, double rel_tol) {
  if (m.cols() == 0) return Eigen::MatrixXcd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
  const RankDecision rank = decide_rank(svd.singularValues(), rel_tol);
  if (rank.ambiguous)
    throw NumericalAmbiguity("span rank decision within a factor 10 of threshold");
  return svd.matrixU().leftCols(rank.rank);
}

HermitianClusters cluster_eigenvalues(const DenseOperator& hermitian, double gap_tol) {
  Eigen::SelfAdjointEigenSolver<DenseOperator> eig(hermitian);
  HermitianClusters out;
  out.values = eig.eigenvalues();
  out.vectors = eig.eigenvectors();
  for (Eigen::Index i = 0; i < out.values.size(); ++i) {
    const double gap = i == 0 ? 0.0 : out.values[i] - out.values[i - 1];
    if (i == 0 || gap > gap_tol) {
      out.clusters.emplace_back();
    }
    if (i > 0 && gap > gap_tol / 10.0 && gap < gap_tol * 10.0) out.ambiguous = true;
    out.clusters.back().push_back(i);
  }
  return out;
}

bool is_psd(const DenseOperator& m, double tol) {
  if (max_abs(m - m.adjoint()) > tol) return false;
  const DenseOperator h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<DenseOperator> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().size() == 0 || eig.eigenvalues().minCoeff() >= -tol;
}

}  // namespace privsub
