#pragma once

// Private subsystem constructions for channels built from Abelian Pauli
// subgroups, and the two-qutrit worked example.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "privsub/algebra.hpp"
#include "privsub/group.hpp"
#include "privsub/privacy.hpp"

namespace privsub {

/// Encoded-qubit generators on n qubits: for i = 1..floor(n/2), the X-type
/// generator has X on site 2i, the Y-type generator has Y on sites 2i-1, 2i.
/// No non-identity product of them is diagonal.
struct EncodedQubitAlgebra {
  int sites = 0;
  std::vector<std::pair<PauliElement, PauliElement>> generators;
  /// Set when the algebra below has been conjugated into another frame:
  /// algebra = U^dagger span_closure(generators) U.
  std::optional<DenseOperator> conjugation;
  OperatorAlgebra algebra;
};

/// Throws InputError for n < 2.
EncodedQubitAlgebra xy_hat_generators(int n);

/// floor(n/2).
int max_private_qubits(int n);

/// Equally weighted Kraus operators 1/sqrt|G| * g over the phase-0
/// representatives of G. Throws PreconditionError for non-Abelian G.
Channel channel_from_subgroup(const PauliSubgroup& g);

/// The dense algebra spanned by a subgroup's representatives.
OperatorAlgebra subgroup_algebra(const PauliSubgroup& g);

struct PrivateAlgebra {
  OperatorAlgebra algebra;
  PrivacyCertificate certificate;
  StructureType structure;
  int encoded_qubits = 0;
  /// Frame change W with W Alg(G) W^dagger = I (x) Delta.
  DenseOperator frame;
};

/// Maximal Abelian G <= P_n (qubits, |G| = 2^n): diagonalize Alg(G) by U and
/// return U^dagger B U for the encoded-qubit algebra B, certified against
/// channel_from_subgroup(G).
PrivateAlgebra private_algebra_for_max_abelian(const PauliSubgroup& g,
                                               std::uint64_t seed = kDefaultStructureSeed);

/// Abelian K with |K| = 2^k: floor(k/2) encoded qubits on the last k qubits
/// of the frame in which Alg(K) = I_{2^{n-k}} (x) Delta_{2^k}.
PrivateAlgebra private_algebra_for_abelian(const PauliSubgroup& k,
                                           std::uint64_t seed = kDefaultStructureSeed);

struct DiagonalQuasiorthReport {
  /// Trace test against the diagonal algebra in the given embedding.
  bool direct = false;
  /// Block-type test k_i >= q_i for every summand (true iff some unitary
  /// conjugate of A is quasiorthogonal to the diagonal algebra).
  bool by_type = false;
  StructureType type;
  bool agree() const { return direct == by_type; }
};

/// Throws NumericalAmbiguity if the direct test passes while the type test
/// fails (the former implies the latter).
DiagonalQuasiorthReport quasiorth_to_diagonal(const OperatorAlgebra& a);

struct DemoCheck {
  std::string name;
  bool passed = false;
  double deviation = 0.0;
  std::string detail;
};

struct QutritDemoReport {
  std::vector<DemoCheck> checks;
  /// Which scaling of the block matrix (if any) produced a unitary.
  std::string normalization;
  DenseOperator rho0;
  StructureType structure;
  /// A unitary satisfying both conjugation identities, found by solving the
  /// intertwining equations directly; reported, never substituted.
  bool intertwiner_found = false;
  double intertwiner_defect = 0.0;

  bool passed() const;
  std::optional<std::string> first_failure() const;
};

/// Two-qutrit example: Kraus operators X^{2i}Z^i (x) X^jZ^j, privatized
/// algebra generated by X^2 (x) X and X Z^2 (x) Z, and the block matrix
/// identities. With `perturb` the first identity's w^2 becomes w.
QutritDemoReport qutrit_demo(bool perturb = false);

/// The 9-element Kraus subgroup of the demo.
PauliSubgroup qutrit_kraus_subgroup();

/// The block matrix [[I, X^2Z^2, XZ], [XZ^2, Z, X^2], [X^2Z, X, Z]] times `scale`.
DenseOperator qutrit_block_matrix(double scale);

}  // namespace privsub
