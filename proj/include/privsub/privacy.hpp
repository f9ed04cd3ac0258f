#pragma once

// Quasiorthogonality tests and privacy certificates.

#include <array>
#include <string>
#include <vector>

#include "privsub/algebra.hpp"
#include "privsub/channel.hpp"

namespace privsub {

inline constexpr double kPrivacyTol = 1e-8;
inline constexpr double kQuasiorthTol = 1e-9;

struct PrivacyCertificate {
  std::string channel_description;
  std::string target_description;
  /// The fixed output state.
  DenseOperator rho0;
  double max_deviation = 0.0;
  double tolerance = kPrivacyTol;
  bool verdict = false;
  /// One entry per algebra basis element, or per matrix unit E_jk of L(B)
  /// (row-major in j, k) for subsystem checks.
  std::vector<double> deviations;
};

/// Condition tr(ab)/N = tr(a)/N tr(b)/N over all basis pairs.
bool is_quasiorthogonal(const OperatorAlgebra& a, const OperatorAlgebra& b,
                        double tol = kQuasiorthTol);

/// Per-condition evaluation of the four equivalent quasiorthogonality
/// conditions: (1) centered trace pairing, (2) trace factorization,
/// (3) each conditional expectation sends the other algebra to scalars,
/// (4) the composed conditional expectations equal the complete depolarizer.
struct QuasiorthReport {
  std::array<double, 4> deviation{};
  std::array<bool, 4> passed{};
  double tolerance = kQuasiorthTol;
  /// All four verdicts agree.
  bool consistent = false;
  bool verdict() const { return passed[1]; }
};

QuasiorthReport quasiorth_condition_suite(const OperatorAlgebra& a, const OperatorAlgebra& b,
                                          double tol = kQuasiorthTol);

/// Checks phi(b) = tr(b) rho0 for every basis element b of B, with
/// rho0 = phi(I)/N. By linearity a passing certificate covers every
/// unit-trace element of B.
PrivacyCertificate check_privatized_algebra(const Channel& phi, const OperatorAlgebra& b,
                                            double tol = kPrivacyTol);

/// Checks phi(V (sigma_A (x) E_jk) V^dagger) = delta_jk rho0 for all matrix
/// units of L(B), where V embeds A (x) B (A the leading factor) isometrically
/// and rho0 is the image of sigma_A (x) E_00. Throws PreconditionError when V
/// is not an isometry or sigma_A is not a density operator.
PrivacyCertificate check_private_subsystem(const Channel& phi, const DenseOperator& embedding,
                                           int dim_a, int dim_b, const DenseOperator& sigma_a,
                                           double tol = kPrivacyTol);

bool kraus_mutually_commuting(const Channel& phi, double tol = 1e-9);

}  // namespace privsub
