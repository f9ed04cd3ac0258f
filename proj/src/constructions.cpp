#include "privsub/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "privsub/errors.hpp"

namespace privsub {

namespace {

PauliElement qubit_string(int n, const std::vector<std::pair<int, char>>& sites) {
  std::string text(n, 'I');
  for (auto [site, letter] : sites) text[site - 1] = letter;
  return parse_pauli(text, 2);
}

int log2_exact(std::size_t value) {
  int bits = 0;
  while ((std::size_t{1} << bits) < value) ++bits;
  if ((std::size_t{1} << bits) != value) throw PreconditionError("size is not a power of two");
  return bits;
}

void require_abelian_qubit_group(const PauliSubgroup& g) {
  if (g.dim() != 2) throw PreconditionError("construction is defined for qubits (d = 2)");
  if (!is_abelian(g)) throw PreconditionError("construction requires an Abelian subgroup");
}

int encoded_qubits_of(const StructureType& type) {
  if (type.size() != 1) throw NumericalAmbiguity("encoded algebra is not a single block");
  return log2_exact(static_cast<std::size_t>(type.front().block_size));
}

// Encoded-qubit algebra on m qubits, or the scalars when m < 2.
OperatorAlgebra encoded_algebra(int m) {
  if (m < 2) return OperatorAlgebra::scalars(Eigen::Index{1} << m);
  return xy_hat_generators(m).algebra;
}

}  // namespace

EncodedQubitAlgebra xy_hat_generators(int n) {
  if (n < 2) throw InputError("encoded-qubit generators need n >= 2");
  EncodedQubitAlgebra out{n, {}, std::nullopt, OperatorAlgebra::scalars(Eigen::Index{1} << n)};
  std::vector<DenseOperator> dense;
  for (int i = 1; i <= n / 2; ++i) {
    PauliElement x_hat = qubit_string(n, {{2 * i, 'X'}});
    PauliElement y_hat = qubit_string(n, {{2 * i - 1, 'Y'}, {2 * i, 'Y'}});
    dense.push_back(to_dense(x_hat));
    dense.push_back(to_dense(y_hat));
    out.generators.emplace_back(std::move(x_hat), std::move(y_hat));
  }
  out.algebra = span_closure(dense, Eigen::Index{1} << n);
  return out;
}

int max_private_qubits(int n) {
  if (n < 1) throw InputError("n must be at least 1");
  return n / 2;
}

Channel channel_from_subgroup(const PauliSubgroup& g) {
  if (!is_abelian(g))
    throw PreconditionError("channel_from_subgroup: subgroup is not Abelian; its Kraus "
                            "operators would not commute");
  std::vector<DenseOperator> unitaries;
  unitaries.reserve(g.size());
  for (const auto& c : g.elements()) unitaries.push_back(to_dense(c));
  return random_unitary_channel(unitaries);
}

OperatorAlgebra subgroup_algebra(const PauliSubgroup& g) {
  std::vector<DenseOperator> span;
  for (const auto& c : g.elements()) span.push_back(to_dense(c));
  const Eigen::Index n = span.front().rows();
  return OperatorAlgebra::from_spanning_set(span, n);
}

PrivateAlgebra private_algebra_for_max_abelian(const PauliSubgroup& g, std::uint64_t seed) {
  require_abelian_qubit_group(g);
  const int n = g.sites();
  if (g.size() != (std::size_t{1} << n))
    throw PreconditionError("subgroup is not maximal Abelian (size " + std::to_string(g.size()) +
                            ", expected 2^" + std::to_string(n) + ")");
  std::vector<DenseOperator> reps;
  for (const auto& c : g.elements()) reps.push_back(to_dense(c));
  const DenseOperator u = simultaneous_diagonalize(reps, seed);

  OperatorAlgebra algebra = encoded_algebra(n).conjugated(u.adjoint());
  const StructureType type = structure_type(algebra, seed).type;
  PrivacyCertificate cert = check_privatized_algebra(channel_from_subgroup(g), algebra);
  return {std::move(algebra), std::move(cert), type, encoded_qubits_of(type), u};
}

PrivateAlgebra private_algebra_for_abelian(const PauliSubgroup& k, std::uint64_t seed) {
  require_abelian_qubit_group(k);
  const int n = k.sites();
  const int bits = log2_exact(k.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index classes = Eigen::Index{1} << bits;
  const Eigen::Index copies = dim / classes;

  const auto gens = k.generators();
  DenseOperator u = DenseOperator::Identity(dim, dim);
  std::vector<DenseOperator> dense;
  for (const auto& c : gens) dense.push_back(to_dense(c));
  if (!dense.empty()) u = simultaneous_diagonalize(dense, seed);

  // Group the joint eigenvectors by their eigenvalue signature; each of the
  // 2^k characters appears 2^{n-k} times.
  std::map<std::vector<int>, std::vector<Eigen::Index>> by_signature;
  for (Eigen::Index i = 0; i < dim; ++i) {
    std::vector<int> signature;
    for (const auto& a : dense) {
      const Complex lambda = (u * a * u.adjoint())(i, i);
      // Phase-0 qubit representatives have eigenvalues in {1, i, -1, -i}.
      signature.push_back(static_cast<int>(std::lround(std::arg(lambda) / (M_PI / 2))) & 3);
    }
    by_signature[signature].push_back(i);
  }
  if (static_cast<Eigen::Index>(by_signature.size()) != classes)
    throw NumericalAmbiguity("joint eigenvalue signatures do not match the subgroup order");
  DenseOperator frame(dim, dim);
  Eigen::Index c = 0;
  for (const auto& [signature, rows] : by_signature) {
    if (static_cast<Eigen::Index>(rows.size()) != copies)
      throw NumericalAmbiguity("unequal joint eigenspace multiplicities");
    for (Eigen::Index l = 0; l < copies; ++l) frame.row(l * classes + c) = u.row(rows[l]);
    ++c;
  }

  OperatorAlgebra algebra = encoded_algebra(bits).ampliated(copies).conjugated(frame.adjoint());
  const StructureType type = structure_type(algebra, seed).type;
  PrivacyCertificate cert = check_privatized_algebra(channel_from_subgroup(k), algebra);
  return {std::move(algebra), std::move(cert), type, encoded_qubits_of(type), frame};
}

DiagonalQuasiorthReport quasiorth_to_diagonal(const OperatorAlgebra& a) {
  DiagonalQuasiorthReport report;
  report.direct = is_quasiorthogonal(a, OperatorAlgebra::diagonal(a.size()));
  report.type = structure_type(a).type;
  report.by_type = std::all_of(report.type.begin(), report.type.end(), [](const StructureBlock& b) {
    return b.multiplicity >= b.block_size;
  });
  if (report.direct && !report.by_type)
    throw NumericalAmbiguity("algebra passes the diagonal trace test but its block type forbids it");
  return report;
}

bool QutritDemoReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const DemoCheck& c) { return c.passed; });
}

std::optional<std::string> QutritDemoReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return c.name;
  return std::nullopt;
}

namespace {

DenseOperator qutrit_power(int x, int z) {
  return to_dense(PauliElement(3, {x}, {z}));
}

DenseOperator qutrit_pair(int x1, int z1, int x2, int z2) {
  return to_dense(PauliElement(3, {x1, x2}, {z1, z2}));
}

// Unitary U with U a_i U^dagger = b_i: a random element T of the solution
// space of T a_i = b_i T, polar-corrected by (T^dagger T)^{-1/2}, which
// commutes with the a_i.
std::optional<DenseOperator> find_intertwiner(const std::vector<DenseOperator>& from,
                                              const std::vector<DenseOperator>& to) {
  const Eigen::Index n = from.front().rows();
  const DenseOperator id = DenseOperator::Identity(n, n);
  Eigen::MatrixXcd system(static_cast<Eigen::Index>(from.size()) * n * n, n * n);
  for (std::size_t i = 0; i < from.size(); ++i)
    system.middleRows(static_cast<Eigen::Index>(i) * n * n, n * n) =
        kron(from[i].transpose(), id) - kron(id, to[i]);
  const Eigen::MatrixXcd kernel = null_space(system);
  if (kernel.cols() == 0) return std::nullopt;
  std::mt19937_64 rng(kDefaultStructureSeed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd mix(kernel.cols());
  for (auto& v : mix) v = Complex(gauss(rng), gauss(rng));
  const DenseOperator t = unvec(kernel * mix, n);
  Eigen::SelfAdjointEigenSolver<DenseOperator> eig(t.adjoint() * t);
  if (eig.eigenvalues().minCoeff() <= 1e-12) return std::nullopt;
  const DenseOperator inv_sqrt = eig.eigenvectors() *
                                 eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                 eig.eigenvectors().adjoint();
  return DenseOperator(t * inv_sqrt);
}

}  // namespace

PauliSubgroup qutrit_kraus_subgroup() {
  const std::vector<PauliClass> gens{PauliClass(PauliElement(3, {2, 0}, {1, 0})),
                                     PauliClass(PauliElement(3, {0, 1}, {0, 1}))};
  return close(3, 2, gens);
}

DenseOperator qutrit_block_matrix(double scale) {
  // (X exponent, Z exponent) of each 3x3 block.
  static constexpr int kBlocks[3][3][2] = {{{0, 0}, {2, 2}, {1, 1}},
                                           {{1, 2}, {0, 1}, {2, 0}},
                                           {{2, 1}, {1, 0}, {0, 1}}};
  DenseOperator u(9, 9);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      u.block(3 * r, 3 * c, 3, 3) = scale * qutrit_power(kBlocks[r][c][0], kBlocks[r][c][1]);
  return u;
}

QutritDemoReport qutrit_demo(bool perturb) {
  constexpr double kIdentityTol = 1e-9;
  QutritDemoReport report;
  const PauliSubgroup group = qutrit_kraus_subgroup();
  const Channel phi = channel_from_subgroup(group);
  const OperatorAlgebra privatized =
      span_closure({qutrit_pair(2, 0, 1, 0), qutrit_pair(1, 2, 0, 1)}, 9);

  report.checks.push_back({"(a) Kraus operators mutually commute", kraus_mutually_commuting(phi),
                           0.0, std::to_string(phi.kraus().size()) + " Kraus operators"});

  const PrivacyCertificate cert = check_privatized_algebra(phi, privatized);
  report.rho0 = cert.rho0;
  const double rho0_defect = max_abs(cert.rho0 - DenseOperator::Identity(9, 9) / 9.0);
  report.checks.push_back({"(b) algebra privatized with rho0 = I/9",
                           cert.verdict && rho0_defect <= cert.tolerance,
                           std::max(cert.max_deviation, rho0_defect), ""});

  report.structure = structure_type(privatized).type;
  report.checks.push_back({"(c) structure type [(3,3)]",
                           report.structure == StructureType{{3, 3}}, 0.0,
                           format_structure(report.structure)});

  const Complex omega = PhaseExponent(2, 3).to_complex();
  const DenseOperator x_target =
      (perturb ? omega : omega * omega) * qutrit_pair(1, 2, 0, 1);
  const DenseOperator z_target = qutrit_pair(2, 0, 1, 0);
  const DenseOperator ix = qutrit_pair(0, 0, 1, 0);
  const DenseOperator iz = qutrit_pair(0, 0, 0, 1);

  DenseOperator u = qutrit_block_matrix(1.0 / std::sqrt(3.0));
  report.normalization = "none";
  for (double scale : {1.0, 1.0 / std::sqrt(3.0)}) {
    const DenseOperator candidate = qutrit_block_matrix(scale);
    if (is_unitary(candidate, kIdentityTol)) {
      u = candidate;
      report.normalization = scale == 1.0 ? "1" : "1/sqrt(3)";
      break;
    }
  }
  const double unitary_defect = max_abs(u * u.adjoint() - DenseOperator::Identity(9, 9));
  const double x_defect = max_abs(u * ix * u.adjoint() - x_target);
  const double z_defect = max_abs(u * iz * u.adjoint() - z_target);
  report.checks.push_back({"(d) block matrix U is unitary", unitary_defect <= kIdentityTol,
                           unitary_defect, "normalization: " + report.normalization});
  report.checks.push_back({std::string("(d) U (I(x)X) U* = ") + (perturb ? "w" : "w^2") +
                               " XZ^2(x)Z",
                           x_defect <= kIdentityTol, x_defect, ""});
  report.checks.push_back({"(d) U (I(x)Z) U* = X^2(x)X", z_defect <= kIdentityTol, z_defect, ""});

  const bool quasi = is_quasiorthogonal(subgroup_algebra(group), privatized);
  report.checks.push_back({"(e) Kraus algebra and privatized algebra are quasiorthogonal", quasi,
                           0.0, ""});

  if (auto w = find_intertwiner({ix, iz}, {x_target, z_target})) {
    report.intertwiner_found = true;
    report.intertwiner_defect = std::max(
        {max_abs(*w * w->adjoint() - DenseOperator::Identity(9, 9)),
         max_abs(*w * ix * w->adjoint() - x_target), max_abs(*w * iz * w->adjoint() - z_target)});
  }
  return report;
}

}  // namespace privsub
