#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace intdep {

using Exponent = std::uint16_t;

/// Dense exponent vector with cached total degree and a divisibility mask.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}

  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) { refresh(); }

  static Monomial from_exponents(std::span<const long long> exps) {
    std::vector<Exponent> e;
    e.reserve(exps.size());
    for (long long x : exps) e.push_back(checked(x));
    return Monomial(std::move(e));
  }

  static Monomial variable(std::size_t nvars, std::size_t index, long long power = 1) {
    Monomial m(nvars);
    m.exps_.at(index) = checked(power);
    m.refresh();
    return m;
  }

  std::size_t nvars() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<Exponent>& exponents() const { return exps_; }
  std::uint32_t degree() const { return degree_; }
  std::uint64_t mask() const { return mask_; }
  bool is_one() const { return degree_ == 0; }

  /// Weighted degree; `weights` empty means every variable has weight one.
  std::int64_t weighted_degree(std::span<const int> weights) const {
    if (weights.empty()) return degree_;
    std::int64_t d = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) d += static_cast<std::int64_t>(weights[i]) * exps_[i];
    return d;
  }

  bool divides(const Monomial& other) const {
    if ((mask_ & ~other.mask_) != 0 || degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] > other.exps_[i]) return false;
    }
    return true;
  }

  Monomial operator*(const Monomial& other) const {
    check_same(other);
    Monomial r(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      r.exps_[i] = checked(static_cast<long long>(exps_[i]) + other.exps_[i]);
    }
    r.refresh();
    return r;
  }

  /// Exact quotient; requires `other.divides(*this)`.
  Monomial operator/(const Monomial& other) const {
    check_same(other);
    Monomial r(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (other.exps_[i] > exps_[i]) throw std::domain_error("monomial quotient is not exact");
      r.exps_[i] = static_cast<Exponent>(exps_[i] - other.exps_[i]);
    }
    r.refresh();
    return r;
  }

  Monomial lcm(const Monomial& other) const {
    check_same(other);
    Monomial r(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], other.exps_[i]);
    r.refresh();
    return r;
  }

  Monomial gcd(const Monomial& other) const {
    check_same(other);
    Monomial r(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::min(exps_[i], other.exps_[i]);
    r.refresh();
    return r;
  }

  bool coprime(const Monomial& other) const {
    if ((mask_ & other.mask_) == 0) return true;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    }
    return true;
  }

  Monomial pow(long long n) const {
    Monomial r(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = checked(static_cast<long long>(exps_[i]) * n);
    r.refresh();
    return r;
  }

  /// Exponent vector padded (or shifted) into a ring with `nvars` variables,
  /// this monomial's variables landing at positions `offset..offset+nvars()`.
  Monomial embed(std::size_t nvars, std::size_t offset = 0) const {
    if (offset + exps_.size() > nvars) throw std::invalid_argument("monomial does not fit target ring");
    Monomial r(nvars);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[offset + i] = exps_[i];
    r.refresh();
    return r;
  }

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (Exponent e : exps_) h = (h ^ e) * 1099511628211ull;
    return h;
  }

  std::string to_string(std::span<const std::string> names) const {
    if (degree_ == 0) return "1";
    std::string s;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += i < names.size() ? names[i] : "x" + std::to_string(i);
      if (exps_[i] > 1) s += '^' + std::to_string(exps_[i]);
    }
    return s;
  }

 private:
  static Exponent checked(long long e) {
    if (e < 0 || e > std::numeric_limits<Exponent>::max()) {
      throw std::overflow_error("exponent " + std::to_string(e) + " out of range");
    }
    return static_cast<Exponent>(e);
  }

  void check_same(const Monomial& other) const {
    if (other.exps_.size() != exps_.size()) throw std::invalid_argument("monomial variable count mismatch");
  }

  void refresh() {
    degree_ = 0;
    mask_ = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      degree_ += exps_[i];
      if (exps_[i] != 0) mask_ |= std::uint64_t{1} << (i % 64);
    }
  }

  std::vector<Exponent> exps_;
  std::uint32_t degree_ = 0;
  std::uint64_t mask_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Monomial orders. `block(k)` is an elimination order: the first k variables
/// are compared first (degree, then reverse lexicographic within the block),
/// ties are broken by grevlex on the remaining variables.
struct MonomialOrder {
  enum class Kind { grevlex, lex, block };

  Kind kind = Kind::grevlex;
  std::size_t elim_count = 0;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {Kind::lex, 0}; }
  static MonomialOrder block(std::size_t k) { return {Kind::block, k}; }

  bool operator==(const MonomialOrder&) const = default;

  std::string to_string() const {
    switch (kind) {
      case Kind::grevlex: return "grevlex";
      case Kind::lex: return "lex";
      case Kind::block: return "block(" + std::to_string(elim_count) + ")";
    }
    return "?";
  }
};

namespace detail {

// grevlex restricted to variables [lo, hi).
inline std::strong_ordering grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  long long da = 0;
  long long db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da <=> db;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

}  // namespace detail

inline std::strong_ordering mono_compare(const Monomial& a, const Monomial& b, const MonomialOrder& ord) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("mono_compare: variable count mismatch");
  const std::size_t n = a.nvars();
  switch (ord.kind) {
    case MonomialOrder::Kind::grevlex:
      if (a.degree() != b.degree()) return a.degree() <=> b.degree();
      return detail::grevlex_range(a, b, 0, n);
    case MonomialOrder::Kind::lex:
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] <=> b[i];
      }
      return std::strong_ordering::equal;
    case MonomialOrder::Kind::block: {
      const std::size_t k = std::min(ord.elim_count, n);
      if (auto c = detail::grevlex_range(a, b, 0, k); c != 0) return c;
      return detail::grevlex_range(a, b, k, n);
    }
  }
  return std::strong_ordering::equal;
}

/// All monomials of total degree `deg` in `nvars` variables, in lex-descending
/// enumeration order.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t deg) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (deg == 0) out.emplace_back(0);
    return out;
  }
  std::vector<long long> e(nvars, 0);
  std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long left) {
    if (i + 1 == nvars) {
      e[i] = left;
      out.push_back(Monomial::from_exponents(e));
      return;
    }
    for (long long x = left; x >= 0; --x) {
      e[i] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, deg);
  return out;
}

}  // namespace intdep
