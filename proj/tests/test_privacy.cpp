#include <gtest/gtest.h>

#include <random>

#include "privsub/algebra.hpp"
#include "privsub/constructions.hpp"
#include "privsub/errors.hpp"
#include "privsub/privacy.hpp"
#include "test_support.hpp"

namespace privsub {
namespace {

using testing::dense_list;
using testing::dense_of;

OperatorAlgebra motivating_algebra() { return span_closure(dense_list({"II", "IX", "YY", "YZ"}), 4); }
OperatorAlgebra first_qubit_algebra() { return span_closure(dense_list({"II", "XI", "YI", "ZI"}), 4); }

Channel phase_flip_channel() {
  std::vector<DenseOperator> kraus;
  for (auto t : {"II", "ZI", "IZ", "ZZ"}) kraus.push_back(0.5 * dense_of(t));
  return Channel(kraus);
}

TEST(Quasiorthogonal, Examples) {
  EXPECT_TRUE(is_quasiorthogonal(OperatorAlgebra::full(4), OperatorAlgebra::scalars(4)));
  EXPECT_TRUE(is_quasiorthogonal(OperatorAlgebra::diagonal(4), motivating_algebra()));
  EXPECT_FALSE(is_quasiorthogonal(OperatorAlgebra::diagonal(4), OperatorAlgebra::diagonal(4)));
}

TEST(Quasiorthogonal, DiagonalViolationByArithmetic) {
  // a = b = e_11: tr(ab)/N = 1/4 but (tr a / N)(tr b / N) = 1/16.
  DenseOperator e = DenseOperator::Zero(4, 4);
  e(0, 0) = 1.0;
  EXPECT_NEAR((e * e).trace().real() / 4.0 - (e.trace().real() / 4.0) * (e.trace().real() / 4.0),
              0.1875, 1e-15);
}

TEST(QuasiorthSuite, Examples) {
  const auto r1 = quasiorth_condition_suite(OperatorAlgebra::full(4), OperatorAlgebra::scalars(4));
  const auto r2 = quasiorth_condition_suite(OperatorAlgebra::diagonal(4), motivating_algebra());
  const auto r3 = quasiorth_condition_suite(first_qubit_algebra(), first_qubit_algebra());
  for (int c = 0; c < 4; ++c) {
    EXPECT_TRUE(r1.passed[c]) << c;
    EXPECT_TRUE(r2.passed[c]) << c;
    EXPECT_LE(r2.deviation[c], 1e-9) << c;
    EXPECT_FALSE(r3.passed[c]) << c;
  }
  EXPECT_TRUE(r1.consistent && r2.consistent && r3.consistent);
  EXPECT_TRUE(r2.verdict());
  EXPECT_FALSE(r3.verdict());
}

TEST(QuasiorthSuite, ConditionsAgreeOnRandomPairs) {
  std::mt19937_64 rng(53);
  int positives = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 2;
    const auto a = testing::random_pauli_algebra(rng, n, 1 + trial % 2);
    const auto b = testing::random_pauli_algebra(rng, n, 1 + (trial / 2) % 2);
    const auto report = quasiorth_condition_suite(a, b);
    ASSERT_TRUE(report.consistent) << trial;
    EXPECT_EQ(is_quasiorthogonal(a, b), is_quasiorthogonal(b, a));
    EXPECT_EQ(report.verdict(), is_quasiorthogonal(a, b));

    const auto cert = check_privatized_algebra(conditional_expectation(a), b);
    const DenseOperator mixed = DenseOperator::Identity(a.size(), a.size()) / double(a.size());
    const bool private_with_mixed = cert.verdict && max_abs(cert.rho0 - mixed) <= 1e-8;
    EXPECT_EQ(private_with_mixed, is_quasiorthogonal(a, b)) << trial;
    positives += report.verdict();
  }
  // The corpus exercises both outcomes.
  EXPECT_GT(positives, 0);
  EXPECT_LT(positives, 50);
}

TEST(CheckPrivatizedAlgebra, PhaseFlip) {
  const auto cert = check_privatized_algebra(conditional_expectation(OperatorAlgebra::diagonal(4)),
                                             motivating_algebra());
  EXPECT_TRUE(cert.verdict);
  EXPECT_LE(max_abs(cert.rho0 - 0.25 * DenseOperator::Identity(4, 4)), 1e-12);
  EXPECT_EQ(cert.deviations.size(), 4u);
  EXPECT_EQ(cert.tolerance, kPrivacyTol);
}

TEST(CheckPrivatizedAlgebra, IdentityChannelFails) {
  EXPECT_FALSE(check_privatized_algebra(Channel::identity(4), motivating_algebra()).verdict);
  EXPECT_TRUE(check_privatized_algebra(Channel::identity(4), OperatorAlgebra::scalars(4)).verdict);
}

TEST(CheckPrivatizedAlgebra, QutritExample) {
  const auto phi = channel_from_subgroup(qutrit_kraus_subgroup());
  const auto b = span_closure(dense_list({"X2Z0:X1Z0", "X1Z2:X0Z1"}, 3), 9);
  const auto cert = check_privatized_algebra(phi, b);
  EXPECT_TRUE(cert.verdict);
  EXPECT_LE(max_abs(cert.rho0 - DenseOperator::Identity(9, 9) / 9.0), 1e-12);
}

TEST(CheckPrivatizedAlgebra, SoundOnRandomStates) {
  const auto phi = phase_flip_channel();
  const auto b = motivating_algebra();
  const auto cert = check_privatized_algebra(phi, b);
  ASSERT_TRUE(cert.verdict);
  std::mt19937_64 rng(59);
  for (int i = 0; i < 100; ++i) {
    const DenseOperator a = testing::random_element_of(rng, b);
    DenseOperator rho = a * a.adjoint();
    rho /= rho.trace();
    ASSERT_LE(max_abs(apply_channel(phi, rho) - cert.rho0), 10 * cert.tolerance);
  }
}

TEST(CheckPrivateSubsystem, TrivialB) {
  std::mt19937_64 rng(61);
  const auto sigma = testing::random_density(rng, 4);
  const DenseOperator v = DenseOperator::Identity(4, 4);
  const auto phi = phase_flip_channel();
  const auto cert = check_private_subsystem(phi, v, 4, 1, sigma);
  EXPECT_TRUE(cert.verdict);
  EXPECT_LE(max_abs(cert.rho0 - apply_channel(phi, sigma)), 1e-12);
}

TEST(CheckPrivateSubsystem, PhaseFlipQubit) {
  const auto s = structure_type(motivating_algebra());
  ASSERT_EQ(s.type, (StructureType{{2, 2}}));
  const DenseOperator v = s.unitary.adjoint();
  const auto phi = phase_flip_channel();
  const auto cert = check_private_subsystem(phi, v, 2, 2, 0.5 * DenseOperator::Identity(2, 2));
  EXPECT_TRUE(cert.verdict);
  EXPECT_EQ(cert.deviations.size(), 4u);
  EXPECT_LE(max_abs(cert.rho0 - 0.25 * DenseOperator::Identity(4, 4)), 1e-9);

  // A pure sigma_A: only the deviation is recorded.
  DenseOperator pure = DenseOperator::Zero(2, 2);
  pure(1, 1) = 1.0;
  const auto other = check_private_subsystem(phi, v, 2, 2, pure);
  EXPECT_EQ(other.verdict, other.max_deviation <= other.tolerance);
  EXPECT_GE(other.max_deviation, 0.0);
}

TEST(CheckPrivateSubsystem, Preconditions) {
  const auto phi = phase_flip_channel();
  const DenseOperator half = 0.5 * DenseOperator::Identity(2, 2);
  EXPECT_THROW(check_private_subsystem(phi, 2.0 * DenseOperator::Identity(4, 4), 2, 2, half),
               PreconditionError);
  EXPECT_THROW(check_private_subsystem(phi, DenseOperator::Identity(4, 4), 2, 2, dense_of("Z")),
               PreconditionError);
  EXPECT_THROW(check_private_subsystem(phi, DenseOperator::Identity(4, 4), 3, 2, half), InputError);
}

TEST(KrausCommuting, Examples) {
  EXPECT_TRUE(kraus_mutually_commuting(phase_flip_channel()));
  EXPECT_FALSE(kraus_mutually_commuting(random_unitary_channel(dense_list({"I", "X", "Y", "Z"}))));
  EXPECT_TRUE(kraus_mutually_commuting(channel_from_subgroup(qutrit_kraus_subgroup())));
}

}  // namespace
}  // namespace privsub
