#pragma once

// Exact arithmetic for generalized Pauli operators on n qudits of dimension d.
//
// An element is stored as phase * (x)_k X^{x_k} Z^{z_k}, where the phase is
// e^{i pi p / d} with p taken modulo 2d. The single-site matrices are
//
//   X |j> = |j - 1 mod d>,   Z |j> = w^j |j>,   w = e^{2 pi i / d},
//
// so that X Z = w Z X. For d = 2 this reproduces the usual Pauli matrices and
// Y = i X Z.

#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "privsub/linalg.hpp"

namespace privsub {

/// Exponent of e^{i pi / d}, reduced modulo 2d.
class PhaseExponent {
 public:
  PhaseExponent(int value, int d);

  int value() const { return value_; }
  int dim() const { return d_; }

  /// True when the phase is an integer power of w = e^{2 pi i / d}.
  bool is_omega_power() const { return value_ % 2 == 0; }
  /// k with phase = w^k; requires is_omega_power().
  int omega_exponent() const;

  bool is_one() const { return value_ == 0; }
  PhaseExponent inverse() const { return {-value_, d_}; }
  Complex to_complex() const;

  friend PhaseExponent operator*(const PhaseExponent& a, const PhaseExponent& b);
  friend bool operator==(const PhaseExponent&, const PhaseExponent&) = default;

 private:
  int value_;
  int d_;
};

class PauliClass;

/// phase * (x)_k X^{x_k} Z^{z_k}.
class PauliElement {
 public:
  /// Throws InputError on d < 2, empty or unequal x/z, entries outside [0, d),
  /// or an odd phase exponent when d > 2 (no such phases arise for d > 2).
  PauliElement(int d, std::vector<int> x, std::vector<int> z, int phase = 0);

  static PauliElement identity(int d, int n);

  int dim() const { return d_; }
  int sites() const { return static_cast<int>(x_.size()); }
  PhaseExponent phase() const { return {phase_, d_}; }
  std::span<const int> x() const { return x_; }
  std::span<const int> z() const { return z_; }

  bool is_identity_up_to_phase() const;
  PauliElement with_phase(int phase) const;

  friend bool operator==(const PauliElement&, const PauliElement&) = default;

 private:
  int d_;
  int phase_;
  std::vector<int> x_;
  std::vector<int> z_;
};

/// An element of the central quotient: a PauliElement with phase 0.
class PauliClass {
 public:
  explicit PauliClass(const PauliElement& element);
  static PauliClass identity(int d, int n);

  /// Class with the given canonical index (see index()).
  static PauliClass from_index(int d, int n, std::uint64_t index);

  int dim() const { return rep_.dim(); }
  int sites() const { return rep_.sites(); }
  const PauliElement& representative() const { return rep_; }
  bool is_identity() const { return rep_.is_identity_up_to_phase(); }

  /// Position in the canonical enumeration: the base-d^2 number whose k-th
  /// digit (most significant first) is z_k * d + x_k. For n = 1 this orders
  /// classes by (z, x); for n sites it is the row order of the n-fold tensor
  /// power of the single-site character matrix.
  std::uint64_t index() const;

  friend bool operator==(const PauliClass& a, const PauliClass& b) {
    return a.rep_ == b.rep_;
  }
  friend std::strong_ordering operator<=>(const PauliClass& a, const PauliClass& b);

 private:
  PauliElement rep_;
};

/// Number of classes d^{2n}; throws InputError when it does not fit in 63 bits.
std::uint64_t class_count(int d, int n);

/// All classes in canonical order.
std::vector<PauliClass> all_classes(int d, int n);

PauliElement mul(const PauliElement& a, const PauliElement& b);
PauliClass mul(const PauliClass& a, const PauliClass& b);
inline PauliElement operator*(const PauliElement& a, const PauliElement& b) { return mul(a, b); }
inline PauliClass operator*(const PauliClass& a, const PauliClass& b) { return mul(a, b); }

/// Integer power of an element (negative powers give inverses).
PauliElement power(const PauliElement& a, int k);

/// Commutation bicharacter: to_dense(a) to_dense(b) = chi(a,b) to_dense(b) to_dense(a).
PhaseExponent chi(const PauliClass& a, const PauliClass& b);
bool commutes(const PauliClass& a, const PauliClass& b);

/// Single-site matrices in the convention above.
DenseOperator shift_matrix(int d);
DenseOperator clock_matrix(int d);

/// Dense d^n x d^n realization; site 1 is the most significant tensor factor.
DenseOperator to_dense(const PauliElement& p);
inline DenseOperator to_dense(const PauliClass& c) { return to_dense(c.representative()); }

/// Parses the textual form (see README). When `sites` is given the parsed
/// site count must match. Throws InputError.
PauliElement parse_pauli(std::string_view text, int d, std::optional<int> sites = std::nullopt);
std::string format_pauli(const PauliElement& p);
std::string format_pauli(const PauliClass& c);

/// Comma-separated list; surrounding whitespace is ignored and an empty string
/// yields an empty list. All elements must share one site count.
std::vector<PauliElement> parse_pauli_list(std::string_view text, int d,
                                           std::optional<int> sites = std::nullopt);

}  // namespace privsub
