#pragma once

// Finite-dimensional unital *-subalgebras of M_N(C), handled densely.

#include <cstdint>
#include <string>
#include <vector>

#include "privsub/channel.hpp"
#include "privsub/linalg.hpp"

namespace privsub {

/// A unital *-subalgebra given by a Hilbert-Schmidt orthonormal basis.
class OperatorAlgebra {
 public:
  /// Orthonormalizes `spanning` (after adjoining the identity). The span is
  /// taken as given; use span_closure() to close under products.
  static OperatorAlgebra from_spanning_set(const std::vector<DenseOperator>& spanning,
                                           Eigen::Index n);

  static OperatorAlgebra scalars(Eigen::Index n);
  static OperatorAlgebra full(Eigen::Index n);
  static OperatorAlgebra diagonal(Eigen::Index n);

  Eigen::Index size() const { return n_; }
  Eigen::Index dimension() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<DenseOperator>& basis() const { return basis_; }

  /// Orthogonal projection onto the span (Hilbert-Schmidt).
  DenseOperator project(const DenseOperator& x) const;
  /// Frobenius norm of x - project(x).
  double residual(const DenseOperator& x) const;
  bool contains(const DenseOperator& x, double tol = 1e-9) const;

  bool is_unital(double tol = 1e-9) const;
  /// Largest residual of products and adjoints of basis elements.
  double closure_defect() const;

  /// The algebra u A u^dagger.
  OperatorAlgebra conjugated(const DenseOperator& u) const;
  /// I_m (x) A on C^m (x) C^N.
  OperatorAlgebra ampliated(Eigen::Index m) const;

 private:
  friend OperatorAlgebra span_closure(const std::vector<DenseOperator>&, Eigen::Index);
  friend OperatorAlgebra commutant(const OperatorAlgebra&);
  OperatorAlgebra(Eigen::Index n, Eigen::MatrixXcd columns);

  Eigen::Index n_;
  Eigen::MatrixXcd columns_;  // N^2 x dim, orthonormal vec(b_i)
  std::vector<DenseOperator> basis_;
};

/// Smallest unital *-algebra containing `ops`, by repeated enrichment with
/// products against the generators and their adjoints.
OperatorAlgebra span_closure(const std::vector<DenseOperator>& ops, Eigen::Index n);

/// {x : x a = a x for all a in A}.
OperatorAlgebra commutant(const OperatorAlgebra& a);

/// Z(A) = A intersect A'.
OperatorAlgebra center(const OperatorAlgebra& a);

/// One summand I_k (x) M_q of the block decomposition.
struct StructureBlock {
  int multiplicity = 1;  // k
  int block_size = 1;    // q
  friend bool operator==(const StructureBlock&, const StructureBlock&) = default;
};

/// Blocks sorted by (q, k); sum k*q = N.
using StructureType = std::vector<StructureBlock>;

std::string format_structure(const StructureType& type);

inline constexpr std::uint64_t kDefaultStructureSeed = 1729;

struct StructureDecomposition {
  StructureType type;
  /// U with U a U^dagger = block_diag_i (I_{k_i} (x) M_{q_i}) for every a in A.
  DenseOperator unitary;
  /// Seed actually used for the random self-adjoint elements.
  std::uint64_t seed = kDefaultStructureSeed;
  /// Largest deviation from block form over the basis.
  double block_defect = 0.0;
};

/// Wedderburn decomposition. Throws NumericalAmbiguity when eigenvalue
/// clusters cannot be separated reliably.
StructureDecomposition structure_type(const OperatorAlgebra& a,
                                      std::uint64_t seed = kDefaultStructureSeed);

/// U with U op U^dagger diagonal for every op. Inputs must be normal and
/// pairwise commuting within 1e-9 (PreconditionError otherwise). Inputs that
/// are all diagonal already yield the identity.
DenseOperator simultaneous_diagonalize(const std::vector<DenseOperator>& ops,
                                       std::uint64_t seed = kDefaultStructureSeed);

/// tr(L_a) for the left multiplication L_a(x) = a x on M_N. Requires a in A.
Complex left_regular_trace(const OperatorAlgebra& a, const DenseOperator& element);

/// Trace-preserving conditional expectation onto A, built from the block
/// decomposition as a normalized partial trace over each I_k factor.
Channel conditional_expectation(const OperatorAlgebra& a,
                                std::uint64_t seed = kDefaultStructureSeed);
Channel conditional_expectation(const StructureDecomposition& decomposition);

}  // namespace privsub
