#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "intdep/polynomial.hpp"

namespace intdep {

/// Incremental echelon form of a k-span of polynomials. Rows are monic with
/// pairwise distinct lead monomials.
class PolynomialSpan {
 public:
  /// Reduces `p` against the span; the result is zero iff p lies in it.
  Polynomial reduce(Polynomial p) const {
    while (!p.is_zero()) {
      auto it = pivots_.find(p.lead_monomial());
      if (it == pivots_.end()) break;
      const Polynomial& row = rows_[it->second];
      p = p.add_multiple(p.field().neg(p.lead_coeff()), Monomial(p.nvars()), row);
    }
    return p;
  }

  bool contains(const Polynomial& p) const { return reduce(p).is_zero(); }

  /// Adds p; returns false when it was already in the span.
  bool insert(const Polynomial& p) {
    Polynomial r = reduce(p);
    if (r.is_zero()) return false;
    r = r.monic();
    pivots_.emplace(r.lead_monomial(), rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

  std::size_t dimension() const { return rows_.size(); }
  const std::vector<Polynomial>& rows() const { return rows_; }

 private:
  std::vector<Polynomial> rows_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> pivots_;
};

namespace detail {

/// Fraction-free (Bareiss) rank of an integer matrix.
inline std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t k = 0;
  mpz_class prev = 1;
  for (std::size_t col = 0; col < cols && k < rows; ++col) {
    std::size_t pivot = rows;
    for (std::size_t i = k; i < rows; ++i) {
      if (m[i][col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    std::swap(m[pivot], m[k]);
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        m[i][j] = m[k][col] * m[i][j] - m[i][col] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][col] = 0;
    }
    prev = m[k][col];
    ++k;
  }
  return k;
}

inline std::size_t modular_rank(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  auto inverse = [p](std::int64_t a) {
    std::int64_t r = 1;
    std::int64_t e = p - 2;
    __int128 base = a;
    __int128 acc = 1;
    while (e > 0) {
      if (e & 1) acc = acc * base % p;
      base = base * base % p;
      e >>= 1;
    }
    r = static_cast<std::int64_t>(acc);
    return r;
  };
  std::size_t k = 0;
  for (std::size_t col = 0; col < cols && k < rows; ++col) {
    std::size_t pivot = rows;
    for (std::size_t i = k; i < rows; ++i) {
      if (m[i][col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    std::swap(m[pivot], m[k]);
    const std::int64_t inv = inverse(m[k][col]);
    for (std::size_t i = k + 1; i < rows; ++i) {
      if (m[i][col] == 0) continue;
      const std::int64_t f = static_cast<std::int64_t>(static_cast<__int128>(m[i][col]) * inv % p);
      for (std::size_t j = col; j < cols; ++j) {
        __int128 v = m[i][j] - static_cast<__int128>(f) * m[k][j];
        v %= p;
        if (v < 0) v += p;
        m[i][j] = static_cast<std::int64_t>(v);
      }
    }
    ++k;
  }
  return k;
}

}  // namespace detail

/// Rank of the k-span of the given polynomials, by dense elimination over the
/// monomials that occur. Over Q rows are cleared to integers and eliminated
/// fraction-free.
inline std::size_t span_rank(const std::vector<Polynomial>& polys) {
  std::unordered_map<Monomial, std::size_t, MonomialHash> column;
  for (const Polynomial& p : polys) {
    for (const Term& t : p.terms()) column.emplace(t.mono, column.size());
  }
  if (column.empty()) return 0;
  const Field field = polys.front().field();
  if (field.is_rationals()) {
    std::vector<std::vector<mpz_class>> m;
    for (const Polynomial& p : polys) {
      if (p.is_zero()) continue;
      mpz_class l = 1;
      for (const Term& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
      std::vector<mpz_class> row(column.size(), 0);
      for (const Term& t : p.terms()) row[column.at(t.mono)] = t.coeff.get_num() * (l / t.coeff.get_den());
      m.push_back(std::move(row));
    }
    return detail::bareiss_rank(std::move(m));
  }
  std::vector<std::vector<std::int64_t>> m;
  for (const Polynomial& p : polys) {
    if (p.is_zero()) continue;
    std::vector<std::int64_t> row(column.size(), 0);
    for (const Term& t : p.terms()) row[column.at(t.mono)] = t.coeff.get_num().get_si();
    m.push_back(std::move(row));
  }
  return detail::modular_rank(std::move(m), field.modulus());
}

}  // namespace intdep
