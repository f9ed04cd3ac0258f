#include "privsub/pauli.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "privsub/errors.hpp"

namespace privsub {

namespace {

int mod(int a, int m) {
  const int r = a % m;
  return r < 0 ? r + m : r;
}

void require_compatible(const PauliElement& a, const PauliElement& b) {
  if (a.dim() != b.dim() || a.sites() != b.sites())
    throw InputError("Pauli operands differ in qudit dimension or site count");
}

}  // namespace

PhaseExponent::PhaseExponent(int value, int d) : value_(0), d_(d) {
  if (d < 2) throw InputError("qudit dimension must be at least 2");
  value_ = mod(value, 2 * d);
}

int PhaseExponent::omega_exponent() const {
  if (!is_omega_power()) throw PreconditionError("phase is not a power of omega");
  return value_ / 2;
}

Complex PhaseExponent::to_complex() const {
  // Exact values at the quarter turns keep d = 2 realizations free of 1e-17 noise.
  const int m = 2 * d_;
  if (value_ * 4 % m == 0) {
    switch (value_ * 4 / m) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, std::numbers::pi * value_ / d_);
}

PhaseExponent operator*(const PhaseExponent& a, const PhaseExponent& b) {
  if (a.d_ != b.d_) throw InputError("phase exponents of different dimensions");
  return {a.value_ + b.value_, a.d_};
}

PauliElement::PauliElement(int d, std::vector<int> x, std::vector<int> z, int phase)
    : d_(d), phase_(0), x_(std::move(x)), z_(std::move(z)) {
  if (d < 2) throw InputError("qudit dimension must be at least 2");
  if (x_.empty() || x_.size() != z_.size())
    throw InputError("Pauli element needs equal, non-empty x and z vectors");
  for (std::size_t k = 0; k < x_.size(); ++k) {
    if (x_[k] < 0 || x_[k] >= d || z_[k] < 0 || z_[k] >= d)
      throw InputError("Pauli exponent outside [0, d)");
  }
  phase_ = mod(phase, 2 * d);
  if (d > 2 && phase_ % 2 != 0)
    throw InputError("phase must be a power of omega for d > 2");
}

PauliElement PauliElement::identity(int d, int n) {
  return {d, std::vector<int>(n, 0), std::vector<int>(n, 0), 0};
}

bool PauliElement::is_identity_up_to_phase() const {
  for (std::size_t k = 0; k < x_.size(); ++k)
    if (x_[k] != 0 || z_[k] != 0) return false;
  return true;
}

PauliElement PauliElement::with_phase(int phase) const {
  return {d_, x_, z_, phase};
}

PauliClass::PauliClass(const PauliElement& element) : rep_(element.with_phase(0)) {}

PauliClass PauliClass::identity(int d, int n) {
  return PauliClass(PauliElement::identity(d, n));
}

std::uint64_t class_count(int d, int n) {
  if (d < 2 || n < 1) throw InputError("need d >= 2 and n >= 1");
  std::uint64_t total = 1;
  const std::uint64_t base = static_cast<std::uint64_t>(d) * d;
  for (int k = 0; k < n; ++k) {
    if (total > (std::uint64_t{1} << 62) / base)
      throw InputError("Pauli group too large to enumerate");
    total *= base;
  }
  return total;
}

PauliClass PauliClass::from_index(int d, int n, std::uint64_t index) {
  if (index >= class_count(d, n)) throw InputError("class index out of range");
  std::vector<int> x(n), z(n);
  const std::uint64_t base = static_cast<std::uint64_t>(d) * d;
  for (int k = n - 1; k >= 0; --k) {
    const auto digit = static_cast<int>(index % base);
    index /= base;
    z[k] = digit / d;
    x[k] = digit % d;
  }
  return PauliClass(PauliElement(d, std::move(x), std::move(z)));
}

std::uint64_t PauliClass::index() const {
  const int d = rep_.dim();
  const std::uint64_t base = static_cast<std::uint64_t>(d) * d;
  std::uint64_t out = 0;
  for (int k = 0; k < rep_.sites(); ++k)
    out = out * base + static_cast<std::uint64_t>(rep_.z()[k] * d + rep_.x()[k]);
  return out;
}

std::strong_ordering operator<=>(const PauliClass& a, const PauliClass& b) {
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  if (auto c = a.sites() <=> b.sites(); c != 0) return c;
  return a.index() <=> b.index();
}

std::vector<PauliClass> all_classes(int d, int n) {
  const std::uint64_t total = class_count(d, n);
  std::vector<PauliClass> out;
  out.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) out.push_back(PauliClass::from_index(d, n, i));
  return out;
}

PauliElement mul(const PauliElement& a, const PauliElement& b) {
  require_compatible(a, b);
  const int d = a.dim();
  const int n = a.sites();
  std::vector<int> x(n), z(n);
  // Moving Z^{z_a} past X^{x_b} costs w^{-z_a x_b}.
  int twist = 0;
  for (int k = 0; k < n; ++k) {
    twist += a.z()[k] * b.x()[k];
    x[k] = (a.x()[k] + b.x()[k]) % d;
    z[k] = (a.z()[k] + b.z()[k]) % d;
  }
  const int phase = a.phase().value() + b.phase().value() - 2 * (twist % d);
  return {d, std::move(x), std::move(z), phase};
}

PauliClass mul(const PauliClass& a, const PauliClass& b) {
  return PauliClass(mul(a.representative(), b.representative()));
}

PauliElement power(const PauliElement& a, int k) {
  PauliElement out = PauliElement::identity(a.dim(), a.sites());
  if (k >= 0) {
    for (int i = 0; i < k; ++i) out = mul(out, a);
    return out;
  }
  // a^d is a pure phase, so a^{-1} = a^{d-1} / (a^d).
  const PauliElement top = power(a, a.dim());
  PauliElement inv = power(a, a.dim() - 1);
  inv = inv.with_phase(inv.phase().value() - top.phase().value());
  return power(inv, -k);
}

PhaseExponent chi(const PauliClass& a, const PauliClass& b) {
  require_compatible(a.representative(), b.representative());
  const int d = a.dim();
  const auto& p = a.representative();
  const auto& q = b.representative();
  int form = 0;
  for (int k = 0; k < p.sites(); ++k) form += p.x()[k] * q.z()[k] - p.z()[k] * q.x()[k];
  return {2 * mod(form, d), d};
}

bool commutes(const PauliClass& a, const PauliClass& b) { return chi(a, b).is_one(); }

DenseOperator shift_matrix(int d) {
  DenseOperator x = DenseOperator::Zero(d, d);
  for (int j = 0; j < d; ++j) x(mod(j - 1, d), j) = 1.0;
  return x;
}

DenseOperator clock_matrix(int d) {
  DenseOperator z = DenseOperator::Zero(d, d);
  for (int j = 0; j < d; ++j) z(j, j) = PhaseExponent(2 * j, d).to_complex();
  return z;
}

DenseOperator to_dense(const PauliElement& p) {
  const int d = p.dim();
  const DenseOperator x = shift_matrix(d);
  const DenseOperator z = clock_matrix(d);
  std::vector<DenseOperator> factors;
  factors.reserve(p.sites());
  for (int k = 0; k < p.sites(); ++k) {
    DenseOperator site = DenseOperator::Identity(d, d);
    for (int i = 0; i < p.x()[k]; ++i) site = site * x;
    for (int i = 0; i < p.z()[k]; ++i) site = site * z;
    factors.push_back(std::move(site));
  }
  return p.phase().to_complex() * kron_all(factors);
}

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw InputError("malformed " + std::string(what) + " in Pauli string");
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Strips a "w<k>." prefix; returns the phase exponent (units of pi/d).
std::optional<int> take_omega_prefix(std::string_view& text, int d) {
  if (text.empty() || text.front() != 'w') return std::nullopt;
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) throw InputError("phase prefix 'w<k>' missing '.'");
  const int k = parse_int(text.substr(1, dot - 1), "phase exponent");
  if (k < 0 || k >= d) throw InputError("phase exponent out of range");
  text.remove_prefix(dot + 1);
  return 2 * k;
}

PauliElement parse_qubit(std::string_view text) {
  int phase = 0;
  if (auto w = take_omega_prefix(text, 2)) {
    phase = *w;
  } else if (text.starts_with("+i")) {
    phase = 1;
    text.remove_prefix(2);
  } else if (text.starts_with("-i")) {
    phase = 3;
    text.remove_prefix(2);
  } else if (text.starts_with("+")) {
    text.remove_prefix(1);
  } else if (text.starts_with("-")) {
    phase = 2;
    text.remove_prefix(1);
  }
  if (text.empty()) throw InputError("Pauli string has no sites");
  std::vector<int> x, z;
  for (char c : text) {
    switch (c) {
      case 'I': x.push_back(0); z.push_back(0); break;
      case 'X': x.push_back(1); z.push_back(0); break;
      case 'Z': x.push_back(0); z.push_back(1); break;
      // Y = i X Z
      case 'Y': x.push_back(1); z.push_back(1); phase += 1; break;
      default:
        throw InputError(std::string("unexpected character '") + c + "' in Pauli string");
    }
  }
  return {2, std::move(x), std::move(z), phase};
}

PauliElement parse_qudit(std::string_view text, int d) {
  int phase = 0;
  if (auto w = take_omega_prefix(text, d)) {
    phase = *w;
  } else if (text.starts_with("+")) {
    text.remove_prefix(1);
  }
  if (text.empty()) throw InputError("Pauli string has no sites");
  std::vector<int> x, z;
  while (true) {
    const auto colon = text.find(':');
    const std::string_view token = text.substr(0, colon);
    if (token == "I") {
      x.push_back(0);
      z.push_back(0);
    } else {
      const auto zpos = token.find('Z');
      if (token.empty() || token.front() != 'X' || zpos == std::string_view::npos)
        throw InputError("site token must be 'X<a>Z<b>' or 'I'");
      const int a = parse_int(token.substr(1, zpos - 1), "X exponent");
      const int b = parse_int(token.substr(zpos + 1), "Z exponent");
      if (a < 0 || a >= d || b < 0 || b >= d) throw InputError("site exponent out of range");
      x.push_back(a);
      z.push_back(b);
    }
    if (colon == std::string_view::npos) break;
    text.remove_prefix(colon + 1);
  }
  return {d, std::move(x), std::move(z), phase};
}

}  // namespace

PauliElement parse_pauli(std::string_view text, int d, std::optional<int> sites) {
  if (d < 2) throw InputError("qudit dimension must be at least 2");
  text = trim(text);
  PauliElement p = d == 2 ? parse_qubit(text) : parse_qudit(text, d);
  if (sites && p.sites() != *sites)
    throw InputError("Pauli string '" + std::string(text) + "' has " +
                     std::to_string(p.sites()) + " sites, expected " + std::to_string(*sites));
  return p;
}

std::string format_pauli(const PauliElement& p) {
  std::string body;
  if (p.dim() == 2) {
    int ys = 0;
    for (int k = 0; k < p.sites(); ++k) {
      const int code = p.x()[k] + 2 * p.z()[k];
      body += "IXZY"[code];
      ys += code == 3;
    }
    static constexpr const char* kPrefix[] = {"", "+i", "-", "-i"};
    return kPrefix[mod(p.phase().value() - ys, 4)] + body;
  }
  for (int k = 0; k < p.sites(); ++k) {
    if (k) body += ':';
    body += "X" + std::to_string(p.x()[k]) + "Z" + std::to_string(p.z()[k]);
  }
  if (p.phase().is_one()) return body;
  return "w" + std::to_string(p.phase().omega_exponent()) + "." + body;
}

std::string format_pauli(const PauliClass& c) { return format_pauli(c.representative()); }

std::vector<PauliElement> parse_pauli_list(std::string_view text, int d,
                                           std::optional<int> sites) {
  std::vector<PauliElement> out;
  text = trim(text);
  if (text.empty()) return out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_pauli(text.substr(0, comma), d, sites));
    if (!sites) sites = out.back().sites();
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace privsub
