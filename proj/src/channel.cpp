#include "privsub/channel.hpp"

#include <cmath>

#include "privsub/errors.hpp"

namespace privsub {

Channel::Channel(std::vector<DenseOperator> kraus, double tp_tol) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw InputError("channel needs at least one Kraus operator");
  const Eigen::Index n = kraus_.front().rows();
  DenseOperator sum = DenseOperator::Zero(n, n);
  for (const auto& k : kraus_) {
    if (k.rows() != n || k.cols() != n)
      throw InputError("Kraus operators must be square and of equal size");
    sum += k.adjoint() * k;
  }
  if (max_abs(sum - DenseOperator::Identity(n, n)) > tp_tol)
    throw InputError("Kraus operators are not trace preserving");
}

Channel Channel::identity(Eigen::Index n) {
  return Channel({DenseOperator::Identity(n, n)});
}

DenseOperator Channel::choi() const {
  const Eigen::Index n2 = size() * size();
  DenseOperator j = DenseOperator::Zero(n2, n2);
  for (const auto& k : kraus_) {
    const Eigen::VectorXcd v = vec(k);
    j.noalias() += v * v.adjoint();
  }
  return j;
}

DenseOperator apply_channel(const Channel& phi, const DenseOperator& rho) {
  if (rho.rows() != phi.size() || rho.cols() != phi.size())
    throw PreconditionError("state size " + std::to_string(rho.rows()) + " does not match channel size " +
                             std::to_string(phi.size()));
  DenseOperator out = DenseOperator::Zero(rho.rows(), rho.cols());
  for (const auto& k : phi.kraus()) out.noalias() += k * rho * k.adjoint();
  return out;
}

Channel compose(const Channel& second, const Channel& first) {
  if (second.size() != first.size()) throw InputError("cannot compose channels of different size");
  std::vector<DenseOperator> kraus;
  kraus.reserve(second.kraus().size() * first.kraus().size());
  for (const auto& a : second.kraus())
    for (const auto& b : first.kraus()) kraus.push_back(a * b);
  return Channel(std::move(kraus), 1e-8);
}

double choi_distance(const Channel& a, const Channel& b) {
  if (a.size() != b.size()) return INFINITY;
  return max_abs(a.choi() - b.choi());
}

bool choi_equal(const Channel& a, const Channel& b, double tol) {
  return choi_distance(a, b) <= tol;
}

DenseOperator superoperator(const Channel& phi) {
  const Eigen::Index n2 = phi.size() * phi.size();
  DenseOperator s = DenseOperator::Zero(n2, n2);
  for (const auto& k : phi.kraus()) s += kron(k.conjugate(), k);
  return s;
}

DenseOperator choi_from_superoperator(const DenseOperator& s) {
  const auto n = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(s.rows()))));
  if (n * n != s.rows() || s.rows() != s.cols())
    throw InputError("superoperator must be N^2 x N^2");
  // J[a + n c, b + n d] = S[n b + a, n d + c]
  DenseOperator j(s.rows(), s.cols());
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index d = 0; d < n; ++d) j(a + n * c, b + n * d) = s(n * b + a, n * d + c);
  return j;
}

double idempotence_defect(const Channel& phi) {
  const DenseOperator s = superoperator(phi);
  return max_abs(choi_from_superoperator(s * s) - phi.choi());
}

Channel random_unitary_channel(const std::vector<DenseOperator>& unitaries) {
  std::vector<DenseOperator> kraus;
  const double w = 1.0 / std::sqrt(static_cast<double>(unitaries.size()));
  for (const auto& u : unitaries) kraus.push_back(w * u);
  return Channel(std::move(kraus));
}

}  // namespace privsub
