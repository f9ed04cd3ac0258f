#include "privsub/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "privsub/errors.hpp"

namespace privsub {

namespace {

constexpr double kClusterGap = 1e-7;
constexpr double kBlockTol = 1e-8;
constexpr int kMaxAttempts = 8;

// Incremental Gram-Schmidt with the relative threshold and ambiguity band of
// decide_rank(). Returns true when the candidate extended the basis.
bool extend_basis(Eigen::MatrixXcd& q, const Eigen::VectorXcd& candidate) {
  const double norm = candidate.norm();
  if (norm == 0.0) return false;
  Eigen::VectorXcd r = candidate;
  for (int pass = 0; pass < 2 && q.cols() > 0; ++pass) r -= q * (q.adjoint() * r);
  const double rel = r.norm() / norm;
  if (rel > kRankRelTol * 10.0) {
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = r / r.norm();
    return true;
  }
  if (rel > kRankRelTol / 10.0)
    throw NumericalAmbiguity("span membership decision within a factor 10 of threshold");
  return false;
}

void require_square(const DenseOperator& m, Eigen::Index n) {
  if (m.rows() != n || m.cols() != n)
    throw InputError("operator is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                     ", expected " + std::to_string(n) + "x" + std::to_string(n));
}

// Random self-adjoint combination of the given operators, normalized to unit
// Frobenius norm.
DenseOperator random_self_adjoint(const std::vector<DenseOperator>& ops, std::mt19937_64& rng,
                                  Eigen::Index n) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  DenseOperator h = DenseOperator::Zero(n, n);
  const Complex i{0.0, 1.0};
  for (const auto& op : ops) {
    h += coeff(rng) * (op + op.adjoint());
    h += coeff(rng) * i * (op - op.adjoint());
  }
  const double norm = h.norm();
  return norm > 0.0 ? DenseOperator(h / norm) : h;
}

// Puts the largest-modulus entry of each column on the positive real axis.
void fix_column_phases(Eigen::MatrixXcd& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index arg = 0;
    v.col(c).cwiseAbs().maxCoeff(&arg);
    const Complex lead = v(arg, c);
    if (std::abs(lead) > 0.0) v.col(c) *= std::conj(lead) / std::abs(lead);
  }
}

}  // namespace

OperatorAlgebra::OperatorAlgebra(Eigen::Index n, Eigen::MatrixXcd columns)
    : n_(n), columns_(std::move(columns)) {
  basis_.reserve(columns_.cols());
  for (Eigen::Index c = 0; c < columns_.cols(); ++c) basis_.push_back(unvec(columns_.col(c), n_));
}

OperatorAlgebra OperatorAlgebra::from_spanning_set(const std::vector<DenseOperator>& spanning,
                                                   Eigen::Index n) {
  if (n < 1) throw InputError("algebra size must be positive");
  Eigen::MatrixXcd q(n * n, 0);
  extend_basis(q, vec(DenseOperator::Identity(n, n)));
  for (const auto& s : spanning) {
    require_square(s, n);
    extend_basis(q, vec(s));
  }
  return OperatorAlgebra(n, std::move(q));
}

OperatorAlgebra OperatorAlgebra::scalars(Eigen::Index n) { return from_spanning_set({}, n); }

OperatorAlgebra OperatorAlgebra::full(Eigen::Index n) {
  return OperatorAlgebra(n, Eigen::MatrixXcd::Identity(n * n, n * n));
}

OperatorAlgebra OperatorAlgebra::diagonal(Eigen::Index n) {
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n * n, n);
  for (Eigen::Index i = 0; i < n; ++i) q(i + n * i, i) = 1.0;
  return OperatorAlgebra(n, std::move(q));
}

DenseOperator OperatorAlgebra::project(const DenseOperator& x) const {
  require_square(x, n_);
  const Eigen::VectorXcd v = vec(x);
  return unvec(columns_ * (columns_.adjoint() * v), n_);
}

double OperatorAlgebra::residual(const DenseOperator& x) const {
  return (x - project(x)).norm();
}

bool OperatorAlgebra::contains(const DenseOperator& x, double tol) const {
  return residual(x) <= tol * std::max(1.0, x.norm());
}

bool OperatorAlgebra::is_unital(double tol) const {
  return contains(DenseOperator::Identity(n_, n_), tol);
}

double OperatorAlgebra::closure_defect() const {
  double worst = 0.0;
  for (const auto& a : basis_) {
    worst = std::max(worst, residual(a.adjoint()));
    for (const auto& b : basis_) worst = std::max(worst, residual(a * b));
  }
  return worst;
}

OperatorAlgebra OperatorAlgebra::conjugated(const DenseOperator& u) const {
  require_square(u, n_);
  Eigen::MatrixXcd q(n_ * n_, columns_.cols());
  for (std::size_t i = 0; i < basis_.size(); ++i)
    q.col(static_cast<Eigen::Index>(i)) = vec(u * basis_[i] * u.adjoint());
  return OperatorAlgebra(n_, std::move(q));
}

OperatorAlgebra OperatorAlgebra::ampliated(Eigen::Index m) const {
  const Eigen::Index big = m * n_;
  const DenseOperator id = DenseOperator::Identity(m, m) / std::sqrt(static_cast<double>(m));
  Eigen::MatrixXcd q(big * big, columns_.cols());
  for (std::size_t i = 0; i < basis_.size(); ++i)
    q.col(static_cast<Eigen::Index>(i)) = vec(kron(id, basis_[i]));
  return OperatorAlgebra(big, std::move(q));
}

OperatorAlgebra span_closure(const std::vector<DenseOperator>& ops, Eigen::Index n) {
  if (n < 1) throw InputError("algebra size must be positive");
  std::vector<DenseOperator> gens;
  for (const auto& op : ops) {
    require_square(op, n);
    if (op.norm() == 0.0) continue;
    gens.push_back(op);
    if (max_abs(op - op.adjoint()) > 0.0) gens.push_back(op.adjoint());
  }
  Eigen::MatrixXcd q(n * n, 0);
  extend_basis(q, vec(DenseOperator::Identity(n, n)));
  Eigen::Index frontier_begin = 0;
  while (frontier_begin < q.cols()) {
    const Eigen::Index frontier_end = q.cols();
    for (Eigen::Index c = frontier_begin; c < frontier_end; ++c) {
      const DenseOperator b = unvec(q.col(c), n);
      for (const auto& g : gens) extend_basis(q, vec(g * b));
      if (q.cols() > n * n)
        throw NumericalAmbiguity("span closure exceeded N^2 dimensions");
    }
    frontier_begin = frontier_end;
  }
  return OperatorAlgebra(n, std::move(q));
}

OperatorAlgebra commutant(const OperatorAlgebra& a) {
  const Eigen::Index n = a.size();
  const Eigen::Index n2 = n * n;
  const DenseOperator id = DenseOperator::Identity(n, n);
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n2, n2);
  for (const auto& b : a.basis()) {
    // vec(b X - X b) = (I (x) b - b^T (x) I) vec(X)
    const DenseOperator c = kron(id, b) - kron(b.transpose(), id);
    const Eigen::MatrixXcd m = c * v;
    if (max_abs(m) == 0.0) continue;
    v = v * null_space(m, kRankRelTol, c.norm());
  }
  return OperatorAlgebra(n, std::move(v));
}

OperatorAlgebra center(const OperatorAlgebra& a) {
  const Eigen::Index n = a.size();
  const auto& basis = a.basis();
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd coeffs = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& b : basis) {
    Eigen::MatrixXcd structure(n * n, dim);
    for (Eigen::Index l = 0; l < dim; ++l) structure.col(l) = vec(basis[l] * b - b * basis[l]);
    const Eigen::MatrixXcd m = structure * coeffs;
    if (max_abs(m) == 0.0) continue;
    coeffs = coeffs * null_space(m, kRankRelTol, structure.norm());
  }
  std::vector<DenseOperator> central;
  for (Eigen::Index c = 0; c < coeffs.cols(); ++c) {
    DenseOperator z = DenseOperator::Zero(n, n);
    for (Eigen::Index l = 0; l < dim; ++l) z += coeffs(l, c) * basis[l];
    central.push_back(std::move(z));
  }
  return OperatorAlgebra::from_spanning_set(central, n);
}

std::string format_structure(const StructureType& type) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < type.size(); ++i) {
    if (i) os << ',';
    os << '(' << type[i].multiplicity << ',' << type[i].block_size << ')';
  }
  os << ']';
  return os.str();
}

namespace {

struct Block {
  StructureBlock shape;
  Eigen::MatrixXcd vectors;  // N x (k q), ordered so A acts as I_k (x) M_q
};

// Basis of one central summand (range of `w`) in which the compressed algebra
// acts as I_k (x) M_q. Returns nullopt when the random element was degenerate.
std::optional<Block> split_summand(const OperatorAlgebra& a, const Eigen::MatrixXcd& w,
                                   std::mt19937_64& rng) {
  const Eigen::Index r = w.cols();
  std::vector<DenseOperator> compressed;
  Eigen::MatrixXcd stacked(r * r, a.dimension());
  for (Eigen::Index j = 0; j < a.dimension(); ++j) {
    compressed.push_back(w.adjoint() * a.basis()[j] * w);
    stacked.col(j) = vec(compressed.back());
  }
  const Eigen::Index block_dim = column_space(stacked).cols();
  const auto q = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(block_dim))));
  if (q * q != block_dim || r % q != 0) return std::nullopt;
  const Eigen::Index k = r / q;
  Block out{{static_cast<int>(k), static_cast<int>(q)}, Eigen::MatrixXcd(w.rows(), r)};
  if (q == 1) {
    out.vectors = w;
    return out;
  }
  const HermitianClusters split = cluster_eigenvalues(random_self_adjoint(compressed, rng, r),
                                                      kClusterGap);
  if (split.ambiguous || static_cast<Eigen::Index>(split.clusters.size()) != q) return std::nullopt;
  std::vector<Eigen::MatrixXcd> ranges;
  for (const auto& cluster : split.clusters) {
    if (static_cast<Eigen::Index>(cluster.size()) != k) return std::nullopt;
    Eigen::MatrixXcd f(r, k);
    for (Eigen::Index c = 0; c < k; ++c) f.col(c) = split.vectors.col(cluster[c]);
    ranges.push_back(std::move(f));
  }
  // Matrix units e_{j1}: compress the basis element with the largest
  // e_j b e_1 and rescale it to a partial isometry.
  std::vector<Eigen::MatrixXcd> slots{ranges[0]};
  for (Eigen::Index j = 1; j < q; ++j) {
    Eigen::MatrixXcd best;
    double best_norm = -1.0;
    for (const auto& b : compressed) {
      Eigen::MatrixXcd t = ranges[j].adjoint() * b * ranges[0];
      if (t.norm() > best_norm) {
        best_norm = t.norm();
        best = std::move(t);
      }
    }
    if (best_norm <= kBlockTol) return std::nullopt;
    const Eigen::MatrixXcd s = best / (best_norm / std::sqrt(static_cast<double>(k)));
    if (!is_unitary(s, kBlockTol)) return std::nullopt;
    slots.push_back(ranges[j] * s);
  }
  Eigen::MatrixXcd local(r, r);
  for (Eigen::Index l = 0; l < k; ++l)
    for (Eigen::Index j = 0; j < q; ++j) local.col(l * q + j) = slots[j].col(l);
  out.vectors = w * local;
  return out;
}

double block_defect(const OperatorAlgebra& a, const StructureDecomposition& d) {
  double worst = 0.0;
  const Eigen::Index n = a.size();
  for (const auto& b : a.basis()) {
    const DenseOperator x = d.unitary * b * d.unitary.adjoint();
    DenseOperator expected = DenseOperator::Zero(n, n);
    Eigen::Index offset = 0;
    for (const auto& blk : d.type) {
      const Eigen::Index k = blk.multiplicity, q = blk.block_size;
      const DenseOperator m = x.block(offset, offset, q, q);
      for (Eigen::Index l = 0; l < k; ++l) expected.block(offset + l * q, offset + l * q, q, q) = m;
      offset += k * q;
    }
    worst = std::max(worst, max_abs(x - expected));
  }
  return worst;
}

}  // namespace

StructureDecomposition structure_type(const OperatorAlgebra& a, std::uint64_t seed) {
  const Eigen::Index n = a.size();
  const OperatorAlgebra z = center(a);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    const HermitianClusters central =
        cluster_eigenvalues(random_self_adjoint(z.basis(), rng, n), kClusterGap);
    if (central.ambiguous ||
        static_cast<Eigen::Index>(central.clusters.size()) != z.dimension())
      continue;
    std::vector<Block> blocks;
    bool ok = true;
    for (const auto& cluster : central.clusters) {
      Eigen::MatrixXcd w(n, static_cast<Eigen::Index>(cluster.size()));
      for (std::size_t c = 0; c < cluster.size(); ++c)
        w.col(static_cast<Eigen::Index>(c)) = central.vectors.col(cluster[c]);
      auto block = split_summand(a, w, rng);
      if (!block) {
        ok = false;
        break;
      }
      blocks.push_back(std::move(*block));
    }
    if (!ok) continue;
    std::stable_sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) {
      return std::pair(x.shape.block_size, x.shape.multiplicity) <
             std::pair(y.shape.block_size, y.shape.multiplicity);
    });
    StructureDecomposition out;
    out.seed = seed + static_cast<std::uint64_t>(attempt);
    Eigen::MatrixXcd v(n, n);
    Eigen::Index offset = 0;
    for (const auto& blk : blocks) {
      out.type.push_back(blk.shape);
      v.middleCols(offset, blk.vectors.cols()) = blk.vectors;
      offset += blk.vectors.cols();
    }
    out.unitary = v.adjoint();
    out.block_defect = block_defect(a, out);
    if (out.block_defect <= kBlockTol && is_unitary(out.unitary, 1e-10)) return out;
  }
  throw NumericalAmbiguity("could not separate the block structure after " +
                           std::to_string(kMaxAttempts) + " random elements");
}

DenseOperator simultaneous_diagonalize(const std::vector<DenseOperator>& ops, std::uint64_t seed) {
  if (ops.empty()) throw InputError("nothing to diagonalize");
  const Eigen::Index n = ops.front().rows();
  for (const auto& a : ops) {
    require_square(a, n);
    if (max_abs(a * a.adjoint() - a.adjoint() * a) > 1e-9)
      throw PreconditionError("simultaneous diagonalization needs normal operators");
  }
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (max_abs(ops[i] * ops[j] - ops[j] * ops[i]) > 1e-9)
        throw PreconditionError("simultaneous diagonalization needs commuting operators");
  if (std::all_of(ops.begin(), ops.end(), [](const DenseOperator& a) { return is_diagonal(a, 1e-12); }))
    return DenseOperator::Identity(n, n);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    Eigen::SelfAdjointEigenSolver<DenseOperator> eig(random_self_adjoint(ops, rng, n));
    Eigen::MatrixXcd v = eig.eigenvectors();
    fix_column_phases(v);
    const DenseOperator u = v.adjoint();
    if (std::all_of(ops.begin(), ops.end(), [&](const DenseOperator& a) {
          return is_diagonal(u * a * u.adjoint(), kBlockTol);
        }))
      return u;
  }
  throw NumericalAmbiguity("random element failed to separate the joint eigenspaces");
}

Complex left_regular_trace(const OperatorAlgebra& a, const DenseOperator& element) {
  if (!a.contains(element))
    throw PreconditionError("element does not lie in the algebra");
  const Eigen::Index n = a.size();
  const DenseOperator left = kron(DenseOperator::Identity(n, n), element);
  return left.trace();
}

Channel conditional_expectation(const StructureDecomposition& d) {
  const DenseOperator v = d.unitary.adjoint();
  std::vector<DenseOperator> kraus;
  Eigen::Index offset = 0;
  for (const auto& blk : d.type) {
    const Eigen::Index k = blk.multiplicity, q = blk.block_size;
    const double w = 1.0 / std::sqrt(static_cast<double>(k));
    for (Eigen::Index l = 0; l < k; ++l)
      for (Eigen::Index m = 0; m < k; ++m)
        kraus.push_back(w * v.middleCols(offset + l * q, q) *
                        v.middleCols(offset + m * q, q).adjoint());
    offset += k * q;
  }
  return Channel(std::move(kraus), 1e-8);
}

Channel conditional_expectation(const OperatorAlgebra& a, std::uint64_t seed) {
  return conditional_expectation(structure_type(a, seed));
}

}  // namespace privsub
