#pragma once

// Subgroups of the central quotient P_n and the commutation character table.

#include <cstdint>
#include <span>
#include <vector>

#include "privsub/pauli.hpp"

namespace privsub {

/// A multiplicatively closed set of Pauli classes, stored in canonical order.
class PauliSubgroup {
 public:
  /// Trivial subgroup {[I]}.
  PauliSubgroup(int d, int n);

  int dim() const { return d_; }
  int sites() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<PauliClass>& elements() const { return elements_; }
  bool contains(const PauliClass& c) const;

  /// Wraps a set the caller knows to be a subgroup (sorted and deduplicated
  /// here, closure not re-checked).
  static PauliSubgroup from_closed_members(int d, int n, std::vector<PauliClass> members);

  /// A minimal generating set, picked greedily in canonical order.
  std::vector<PauliClass> generators() const;

  friend bool operator==(const PauliSubgroup&, const PauliSubgroup&) = default;

 private:
  friend PauliSubgroup close(int, int, std::span<const PauliClass>, std::size_t);
  PauliSubgroup(int d, int n, std::vector<PauliClass> sorted);

  int d_;
  int n_;
  std::vector<PauliClass> elements_;
};

inline constexpr std::size_t kMaxClosureSize = 1'000'000;

/// Smallest subgroup containing the generators. Throws PreconditionError when
/// the closure would exceed max_size, InputError on mixed d or n.
PauliSubgroup close(int d, int n, std::span<const PauliClass> generators,
                    std::size_t max_size = kMaxClosureSize);
PauliSubgroup close(std::span<const PauliClass> generators);  // needs >= 1 generator
PauliSubgroup close_elements(int d, int n, std::span<const PauliElement> generators);

/// The whole quotient P_n.
PauliSubgroup whole_group(int d, int n);

bool is_abelian(const PauliSubgroup& k);

/// Table of chi over all classes in canonical order.
class CharacterMatrix {
 public:
  int dim() const { return d_; }
  int sites() const { return n_; }
  std::size_t size() const { return classes_.size(); }
  const std::vector<PauliClass>& classes() const { return classes_; }
  /// Exponent k with entry = w^k, w = e^{2 pi i / d}.
  int omega_exponent(std::size_t row, std::size_t col) const {
    return table_[row * classes_.size() + col];
  }
  Complex value(std::size_t row, std::size_t col) const;

 private:
  friend CharacterMatrix character_matrix(int, int, std::size_t);
  int d_ = 2;
  int n_ = 1;
  std::vector<PauliClass> classes_;
  std::vector<int> table_;
};

inline constexpr std::size_t kMaxCharacterMatrixSide = 10'000;

CharacterMatrix character_matrix(int d, int n,
                                 std::size_t max_side = kMaxCharacterMatrixSide);

enum class AnnihilatorMethod { kAuto, kScan, kLinearAlgebra };

/// Classes commuting with every element of K. kAuto scans all d^{2n} classes
/// when d^{2n} <= 4^6 and otherwise solves the symplectic system over Z_d
/// (prime d only).
PauliSubgroup annihilator(const PauliSubgroup& k,
                          AnnihilatorMethod method = AnnihilatorMethod::kAuto);

/// Abelian supergroup of size d^n, adding the smallest commuting class not yet
/// present at each step. Requires prime d and an Abelian input.
PauliSubgroup extend_to_maximal(const PauliSubgroup& k);

bool is_prime(int d);

}  // namespace privsub
