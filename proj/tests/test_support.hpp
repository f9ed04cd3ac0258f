#pragma once

// Independent dense oracles and random generators shared by the test suites.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "privsub/algebra.hpp"
#include "privsub/group.hpp"
#include "privsub/pauli.hpp"

namespace privsub::testing {

// Written out from the textbook matrices; does not use the library's
// site-matrix builders.
inline DenseOperator oracle_site(int d, int x, int z) {
  const std::complex<double> w = std::polar(1.0, 2.0 * M_PI / d);
  DenseOperator shift = DenseOperator::Zero(d, d);
  DenseOperator clock = DenseOperator::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    shift((j + d - 1) % d, j) = 1.0;
    clock(j, j) = std::pow(w, j);
  }
  DenseOperator out = DenseOperator::Identity(d, d);
  for (int i = 0; i < x; ++i) out = out * shift;
  for (int i = 0; i < z; ++i) out = out * clock;
  return out;
}

inline DenseOperator oracle_dense(const PauliElement& p) {
  DenseOperator out = DenseOperator::Identity(1, 1);
  for (int k = 0; k < p.sites(); ++k) {
    const DenseOperator site = oracle_site(p.dim(), p.x()[k], p.z()[k]);
    DenseOperator next(out.rows() * site.rows(), out.cols() * site.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        next.block(i * site.rows(), j * site.cols(), site.rows(), site.cols()) = out(i, j) * site;
    out = next;
  }
  return std::polar(1.0, M_PI * p.phase().value() / p.dim()) * out;
}

inline PauliElement random_element(std::mt19937_64& rng, int d, int n) {
  std::uniform_int_distribution<int> digit(0, d - 1);
  std::uniform_int_distribution<int> ph(0, 2 * d - 1);
  std::vector<int> x(n), z(n);
  for (int k = 0; k < n; ++k) {
    x[k] = digit(rng);
    z[k] = digit(rng);
  }
  int phase = ph(rng);
  if (d > 2) phase &= ~1;
  return {d, x, z, phase};
}

inline PauliClass random_class(std::mt19937_64& rng, int d, int n) {
  return PauliClass(random_element(rng, d, n));
}

/// Random Abelian subgroup: greedily accept random classes commuting with
/// everything accepted so far, up to `count` attempts.
inline PauliSubgroup random_abelian(std::mt19937_64& rng, int d, int n, int count) {
  std::vector<PauliClass> gens;
  for (int i = 0; i < count; ++i) {
    PauliClass c = random_class(rng, d, n);
    bool ok = true;
    for (const auto& g : gens) ok = ok && commutes(c, g);
    if (ok) gens.push_back(c);
  }
  return close(d, n, gens);
}

/// Random maximal Abelian subgroup of the n-qubit quotient: a random Abelian
/// seed extended to size 2^n.
inline PauliSubgroup random_maximal_abelian(std::mt19937_64& rng, int n) {
  return extend_to_maximal(random_abelian(rng, 2, n, 2 * n));
}

inline OperatorAlgebra random_pauli_algebra(std::mt19937_64& rng, int n, int gens) {
  std::vector<DenseOperator> ops;
  for (int i = 0; i < gens; ++i) ops.push_back(to_dense(random_class(rng, 2, n)));
  return span_closure(ops, Eigen::Index{1} << n);
}

inline DenseOperator random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  DenseOperator m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

inline DenseOperator random_density(std::mt19937_64& rng, Eigen::Index n) {
  const DenseOperator a = random_matrix(rng, n);
  DenseOperator rho = a * a.adjoint();
  return rho / rho.trace();
}

inline DenseOperator random_element_of(std::mt19937_64& rng, const OperatorAlgebra& a) {
  std::normal_distribution<double> g;
  DenseOperator out = DenseOperator::Zero(a.size(), a.size());
  for (const auto& b : a.basis()) out += std::complex<double>(g(rng), g(rng)) * b;
  return out;
}

inline DenseOperator dense_of(std::string_view text, int d = 2) {
  return to_dense(parse_pauli(text, d));
}

inline std::vector<DenseOperator> dense_list(std::initializer_list<std::string_view> texts,
                                             int d = 2) {
  std::vector<DenseOperator> out;
  for (auto t : texts) out.push_back(dense_of(t, d));
  return out;
}

}  // namespace privsub::testing
