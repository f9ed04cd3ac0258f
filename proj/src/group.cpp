#include "privsub/group.hpp"

#include <algorithm>
#include <unordered_set>

#include "privsub/errors.hpp"

namespace privsub {

namespace {

int mod(int a, int m) {
  const int r = a % m;
  return r < 0 ? r + m : r;
}

int inverse_mod(int a, int p) {
  for (int b = 1; b < p; ++b)
    if (a * b % p == 1) return b;
  throw PreconditionError("no modular inverse");
}

}  // namespace

bool is_prime(int d) {
  if (d < 2) return false;
  for (int f = 2; f * f <= d; ++f)
    if (d % f == 0) return false;
  return true;
}

PauliSubgroup::PauliSubgroup(int d, int n)
    : d_(d), n_(n), elements_{PauliClass::identity(d, n)} {}

PauliSubgroup::PauliSubgroup(int d, int n, std::vector<PauliClass> sorted)
    : d_(d), n_(n), elements_(std::move(sorted)) {}

PauliSubgroup PauliSubgroup::from_closed_members(int d, int n,
                                                 std::vector<PauliClass> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty() || !members.front().is_identity())
    throw InputError("subgroup must contain the identity class");
  return PauliSubgroup(d, n, std::move(members));
}

bool PauliSubgroup::contains(const PauliClass& c) const {
  return std::binary_search(elements_.begin(), elements_.end(), c);
}

std::vector<PauliClass> PauliSubgroup::generators() const {
  std::vector<PauliClass> gens;
  PauliSubgroup span(d_, n_);
  for (const auto& c : elements_) {
    if (span.size() == size()) break;
    if (span.contains(c)) continue;
    gens.push_back(c);
    span = close(d_, n_, gens);
  }
  return gens;
}

PauliSubgroup close(int d, int n, std::span<const PauliClass> generators,
                    std::size_t max_size) {
  for (const auto& g : generators)
    if (g.dim() != d || g.sites() != n)
      throw InputError("generator does not match d=" + std::to_string(d) +
                       " n=" + std::to_string(n));
  std::vector<PauliClass> found{PauliClass::identity(d, n)};
  std::unordered_set<std::uint64_t> seen{found.front().index()};
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (const auto& g : generators) {
      PauliClass next = mul(found[head], g);
      if (seen.insert(next.index()).second) {
        if (found.size() >= max_size)
          throw PreconditionError("subgroup closure exceeds " + std::to_string(max_size) +
                                  " elements");
        found.push_back(std::move(next));
      }
    }
  }
  std::sort(found.begin(), found.end());
  return PauliSubgroup(d, n, std::move(found));
}

PauliSubgroup close(std::span<const PauliClass> generators) {
  if (generators.empty()) throw InputError("cannot infer d and n from an empty generator list");
  return close(generators.front().dim(), generators.front().sites(), generators);
}

PauliSubgroup close_elements(int d, int n, std::span<const PauliElement> generators) {
  std::vector<PauliClass> classes;
  classes.reserve(generators.size());
  for (const auto& g : generators) classes.emplace_back(g);
  return close(d, n, classes);
}

PauliSubgroup whole_group(int d, int n) {
  std::vector<PauliClass> gens;
  for (int k = 0; k < n; ++k) {
    std::vector<int> x(n, 0), z(n, 0);
    x[k] = 1;
    gens.emplace_back(PauliElement(d, x, z));
    x[k] = 0;
    z[k] = 1;
    gens.emplace_back(PauliElement(d, x, z));
  }
  return close(d, n, gens, class_count(d, n));
}

bool is_abelian(const PauliSubgroup& k) {
  const auto gens = k.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!commutes(gens[i], gens[j])) return false;
  return true;
}

Complex CharacterMatrix::value(std::size_t row, std::size_t col) const {
  return PhaseExponent(2 * omega_exponent(row, col), d_).to_complex();
}

CharacterMatrix character_matrix(int d, int n, std::size_t max_side) {
  const std::uint64_t side = class_count(d, n);
  if (side > max_side)
    throw PreconditionError("character matrix side " + std::to_string(side) +
                            " exceeds the cap of " + std::to_string(max_side));
  CharacterMatrix out;
  out.d_ = d;
  out.n_ = n;
  out.classes_ = all_classes(d, n);
  out.table_.resize(side * side);
  for (std::size_t r = 0; r < side; ++r)
    for (std::size_t c = 0; c < side; ++c)
      out.table_[r * side + c] = chi(out.classes_[r], out.classes_[c]).omega_exponent();
  return out;
}

namespace {

PauliSubgroup annihilator_scan(const PauliSubgroup& k) {
  const auto gens = k.generators();
  std::vector<PauliClass> members;
  const std::uint64_t total = class_count(k.dim(), k.sites());
  for (std::uint64_t i = 0; i < total; ++i) {
    PauliClass c = PauliClass::from_index(k.dim(), k.sites(), i);
    if (std::all_of(gens.begin(), gens.end(),
                    [&](const PauliClass& g) { return commutes(c, g); }))
      members.push_back(std::move(c));
  }
  return PauliSubgroup::from_closed_members(k.dim(), k.sites(), std::move(members));
}

// Kernel of the symplectic constraints x.g_z - z.g_x = 0 (mod p), one row per
// generator, by Gaussian elimination over Z_p.
PauliSubgroup annihilator_linear(const PauliSubgroup& k) {
  const int p = k.dim();
  const int n = k.sites();
  if (!is_prime(p))
    throw PreconditionError("linear-algebra annihilator requires prime d");
  const int width = 2 * n;
  std::vector<std::vector<int>> rows;
  for (const auto& g : k.generators()) {
    std::vector<int> row(width);
    const auto& rep = g.representative();
    for (int s = 0; s < n; ++s) {
      row[s] = rep.z()[s];
      row[n + s] = mod(-rep.x()[s], p);
    }
    rows.push_back(std::move(row));
  }
  // Reduced row echelon form.
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (int c = 0; c < width && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const int inv = inverse_mod(rows[r][c], p);
    for (auto& v : rows[r]) v = v * inv % p;
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][c] == 0) continue;
      const int f = rows[o][c];
      for (int j = 0; j < width; ++j) rows[o][j] = mod(rows[o][j] - f * rows[r][j], p);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(width, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<PauliClass> basis;
  for (int free = 0; free < width; ++free) {
    if (is_pivot[free]) continue;
    std::vector<int> v(width, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = mod(-rows[i][free], p);
    basis.emplace_back(PauliElement(p, std::vector<int>(v.begin(), v.begin() + n),
                                    std::vector<int>(v.begin() + n, v.end())));
  }
  return close(p, n, basis);
}

}  // namespace

PauliSubgroup annihilator(const PauliSubgroup& k, AnnihilatorMethod method) {
  if (method == AnnihilatorMethod::kAuto) {
    const bool small = class_count(k.dim(), k.sites()) <= 4096;
    method = small || !is_prime(k.dim()) ? AnnihilatorMethod::kScan
                                         : AnnihilatorMethod::kLinearAlgebra;
  }
  return method == AnnihilatorMethod::kScan ? annihilator_scan(k) : annihilator_linear(k);
}

PauliSubgroup extend_to_maximal(const PauliSubgroup& k) {
  const int d = k.dim();
  const int n = k.sites();
  if (!is_prime(d)) throw PreconditionError("maximal extension requires prime d");
  if (!is_abelian(k)) throw PreconditionError("maximal extension requires an Abelian subgroup");
  std::uint64_t target = 1;
  for (int i = 0; i < n; ++i) target *= d;
  const std::uint64_t total = class_count(d, n);

  PauliSubgroup current = k;
  auto gens = current.generators();
  while (current.size() < target) {
    bool grown = false;
    for (std::uint64_t i = 0; i < total && !grown; ++i) {
      PauliClass c = PauliClass::from_index(d, n, i);
      if (current.contains(c)) continue;
      if (!std::all_of(gens.begin(), gens.end(),
                       [&](const PauliClass& g) { return commutes(c, g); }))
        continue;
      gens.push_back(std::move(c));
      current = close(d, n, gens);
      grown = true;
    }
    if (!grown) throw PreconditionError("no commuting class left to extend with");
  }
  return current;
}

}  // namespace privsub
