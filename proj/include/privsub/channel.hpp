#pragma once

#include <vector>

#include "privsub/linalg.hpp"

namespace privsub {

/// A completely positive trace-preserving map in Kraus form.
class Channel {
 public:
  /// Throws InputError on an empty list, mixed or non-square shapes, or
  /// sum K^dagger K != I beyond tp_tol.
  explicit Channel(std::vector<DenseOperator> kraus, double tp_tol = 1e-9);

  static Channel identity(Eigen::Index n);

  Eigen::Index size() const { return kraus_.front().rows(); }
  const std::vector<DenseOperator>& kraus() const { return kraus_; }

  /// Choi matrix sum_K vec(K) vec(K)^dagger (column-major vec).
  DenseOperator choi() const;

 private:
  std::vector<DenseOperator> kraus_;
};

/// sum_i K_i rho K_i^dagger. Throws PreconditionError on a size mismatch.
DenseOperator apply_channel(const Channel& phi, const DenseOperator& rho);

/// second o first, as a Kraus list of pairwise products.
Channel compose(const Channel& second, const Channel& first);

/// Entrywise comparison of Choi matrices.
bool choi_equal(const Channel& a, const Channel& b, double tol = 1e-8);
double choi_distance(const Channel& a, const Channel& b);

/// Matrix of the map on column-major vectorized operators:
/// vec(phi(x)) = S vec(x), S = sum_K conj(K) (x) K.
DenseOperator superoperator(const Channel& phi);

/// Choi matrix of the map with superoperator s (a reshuffle of entries).
DenseOperator choi_from_superoperator(const DenseOperator& s);

/// Largest Choi-matrix entry of phi o phi - phi, via superoperator products
/// (avoids the |K|^2 Kraus list of compose()).
double idempotence_defect(const Channel& phi);

/// Equally weighted Kraus operators sqrt(1/m) U_i from a list of unitaries.
Channel random_unitary_channel(const std::vector<DenseOperator>& unitaries);

}  // namespace privsub
