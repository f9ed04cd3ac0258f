#include "privsub/privacy.hpp"

#include <algorithm>
#include <cmath>

#include "privsub/errors.hpp"

namespace privsub {

namespace {

void require_same_size(const OperatorAlgebra& a, const OperatorAlgebra& b) {
  if (a.size() != b.size()) throw PreconditionError("algebras act on spaces of different size");
}

double trace_factorization_defect(const OperatorAlgebra& a, const OperatorAlgebra& b,
                                  bool centered) {
  const double n = static_cast<double>(a.size());
  double worst = 0.0;
  for (const auto& x : a.basis()) {
    const Complex tx = x.trace();
    for (const auto& y : b.basis()) {
      const Complex ty = y.trace();
      const Complex txy = (x * y).trace();
      // (1) expands to tr(xy) - tr(x) tr(y) / N, which is N times (2).
      const Complex dev = centered ? txy - tx * ty / n : txy / n - tx * ty / (n * n);
      worst = std::max(worst, std::abs(dev));
    }
  }
  return worst;
}

double scalar_image_defect(const Channel& phi, const OperatorAlgebra& b) {
  const Eigen::Index n = b.size();
  const DenseOperator id = DenseOperator::Identity(n, n);
  double worst = 0.0;
  for (const auto& y : b.basis())
    worst = std::max(worst, max_abs(apply_channel(phi, y) -
                                    y.trace() / static_cast<double>(n) * id));
  return worst;
}

}  // namespace

bool is_quasiorthogonal(const OperatorAlgebra& a, const OperatorAlgebra& b, double tol) {
  require_same_size(a, b);
  return trace_factorization_defect(a, b, false) <= tol;
}

QuasiorthReport quasiorth_condition_suite(const OperatorAlgebra& a, const OperatorAlgebra& b,
                                          double tol) {
  require_same_size(a, b);
  QuasiorthReport report;
  report.tolerance = tol;
  report.deviation[0] = trace_factorization_defect(a, b, true);
  report.deviation[1] = trace_factorization_defect(a, b, false);

  const Channel phi_a = conditional_expectation(a);
  const Channel phi_b = conditional_expectation(b);
  report.deviation[2] = std::max(scalar_image_defect(phi_a, b), scalar_image_defect(phi_b, a));

  const Eigen::Index n = a.size();
  const Eigen::VectorXcd vid = vec(DenseOperator::Identity(n, n));
  const DenseOperator depolarize = vid * vid.adjoint() / static_cast<double>(n);
  const DenseOperator sa = superoperator(phi_a);
  const DenseOperator sb = superoperator(phi_b);
  report.deviation[3] = std::max(max_abs(sa * sb - depolarize), max_abs(sb * sa - depolarize));

  for (std::size_t i = 0; i < 4; ++i) report.passed[i] = report.deviation[i] <= tol;
  report.consistent = std::all_of(report.passed.begin(), report.passed.end(),
                                  [&](bool p) { return p == report.passed[0]; });
  return report;
}

PrivacyCertificate check_privatized_algebra(const Channel& phi, const OperatorAlgebra& b,
                                            double tol) {
  if (phi.size() != b.size()) throw PreconditionError("channel and algebra sizes differ");
  const Eigen::Index n = b.size();
  PrivacyCertificate cert;
  cert.tolerance = tol;
  cert.rho0 = apply_channel(phi, DenseOperator::Identity(n, n)) / static_cast<double>(n);
  for (const auto& y : b.basis()) {
    const double dev = max_abs(apply_channel(phi, y) - y.trace() * cert.rho0);
    cert.deviations.push_back(dev);
    cert.max_deviation = std::max(cert.max_deviation, dev);
  }
  cert.verdict = cert.max_deviation <= tol;
  return cert;
}

PrivacyCertificate check_private_subsystem(const Channel& phi, const DenseOperator& embedding,
                                           int dim_a, int dim_b, const DenseOperator& sigma_a,
                                           double tol) {
  const Eigen::Index inner = static_cast<Eigen::Index>(dim_a) * dim_b;
  if (dim_a < 1 || dim_b < 1 || embedding.rows() != phi.size() || embedding.cols() != inner)
    throw InputError("embedding must be N x (dimA * dimB)");
  if (max_abs(embedding.adjoint() * embedding - DenseOperator::Identity(inner, inner)) > 1e-9)
    throw PreconditionError("embedding is not an isometry");
  if (sigma_a.rows() != dim_a || sigma_a.cols() != dim_a || !is_psd(sigma_a, 1e-9) ||
      std::abs(sigma_a.trace() - Complex(1.0, 0.0)) > 1e-9)
    throw PreconditionError("sigma_A is not a density operator");

  auto image = [&](int j, int k) {
    DenseOperator unit = DenseOperator::Zero(dim_b, dim_b);
    unit(j, k) = 1.0;
    return apply_channel(phi, embedding * kron(sigma_a, unit) * embedding.adjoint());
  };
  PrivacyCertificate cert;
  cert.tolerance = tol;
  cert.rho0 = image(0, 0);
  for (int j = 0; j < dim_b; ++j) {
    for (int k = 0; k < dim_b; ++k) {
      DenseOperator expected = DenseOperator::Zero(phi.size(), phi.size());
      if (j == k) expected = cert.rho0;
      const double dev = max_abs(image(j, k) - expected);
      cert.deviations.push_back(dev);
      cert.max_deviation = std::max(cert.max_deviation, dev);
    }
  }
  cert.verdict = cert.max_deviation <= tol;
  return cert;
}

bool kraus_mutually_commuting(const Channel& phi, double tol) {
  const auto& ks = phi.kraus();
  for (std::size_t i = 0; i < ks.size(); ++i)
    for (std::size_t j = i + 1; j < ks.size(); ++j)
      if (max_abs(ks[i] * ks[j] - ks[j] * ks[i]) > tol) return false;
  return true;
}

}  // namespace privsub
