#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "intdep/monomial.hpp"

namespace intdep {

/// Univariate integer polynomial, coefficient of t^k at index k.
using IntPoly = std::vector<mpz_class>;

namespace detail {

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline void add_shifted(IntPoly& acc, const IntPoly& p, std::size_t shift) {
  if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i + shift] += p[i];
  trim(acc);
}

inline mpz_class binomial(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace detail

/// Monomial ideal given by (not necessarily minimal) generators.
struct MonomialIdeal {
  std::size_t nvars = 0;
  std::vector<Monomial> gens;

  /// Minimal generators in a canonical order (degree, then exponent vector).
  MonomialIdeal minimalized() const {
    std::vector<Monomial> g = gens;
    std::sort(g.begin(), g.end(), [](const Monomial& a, const Monomial& b) {
      if (a.degree() != b.degree()) return a.degree() < b.degree();
      return a.exponents() < b.exponents();
    });
    std::vector<Monomial> out;
    for (const Monomial& m : g) {
      if (std::none_of(out.begin(), out.end(), [&](const Monomial& o) { return o.divides(m); })) out.push_back(m);
    }
    return {nvars, std::move(out)};
  }

  bool contains(const Monomial& m) const {
    return std::any_of(gens.begin(), gens.end(), [&](const Monomial& g) { return g.divides(m); });
  }

  bool operator==(const MonomialIdeal& other) const {
    return nvars == other.nvars && minimalized().gens == other.minimalized().gens;
  }
};

/// Hilbert series numerator(t) / (1 - t)^denominator_power.
struct HilbertSeries {
  IntPoly numerator;
  std::size_t denominator_power = 0;

  /// Coefficients of the expanded power series for degrees 0..max_degree.
  std::vector<mpz_class> expand(std::size_t max_degree) const {
    std::vector<mpz_class> out(max_degree + 1, 0);
    for (std::size_t m = 0; m <= max_degree; ++m) {
      for (std::size_t k = 0; k < numerator.size() && k <= m; ++k) {
        if (denominator_power == 0) {
          if (k == m) out[m] += numerator[k];
        } else {
          out[m] += numerator[k] * detail::binomial(static_cast<long long>(m - k + denominator_power - 1),
                                                    static_cast<long long>(denominator_power - 1));
        }
      }
    }
    return out;
  }
};

namespace detail {

inline IntPoly hilbert_numerator(std::vector<Monomial> gens, std::size_t nvars) {
  MonomialIdeal ideal = MonomialIdeal{nvars, std::move(gens)}.minimalized();
  auto& g = ideal.gens;
  if (g.empty()) return {1};
  if (g.size() == 1) {
    IntPoly p(g[0].degree() + 1, 0);
    p[0] = 1;
    p[g[0].degree()] -= 1;
    trim(p);
    return p;
  }
  // Pure powers of distinct variables: product of (1 - t^a).
  std::vector<int> occurrences(nvars, 0);
  std::vector<bool> in_mixed(nvars, false);
  bool all_pure = true;
  for (const Monomial& m : g) {
    int support = 0;
    for (std::size_t i = 0; i < nvars; ++i) {
      if (m[i] != 0) {
        ++occurrences[i];
        ++support;
      }
    }
    if (support != 1) {
      all_pure = false;
      for (std::size_t i = 0; i < nvars; ++i) {
        if (m[i] != 0) in_mixed[i] = true;
      }
    }
  }
  if (all_pure) {
    IntPoly p{1};
    for (const Monomial& m : g) {
      IntPoly f(m.degree() + 1, 0);
      f[0] = 1;
      f[m.degree()] = -1;
      p = mul(p, f);
    }
    return p;
  }
  // Pivot on the most frequent variable of a mixed generator (lowest index
  // breaks ties), raised to the smallest positive exponent with which it
  // occurs. Such a pivot is never in M, so both branches make progress.
  std::size_t var = nvars;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (in_mixed[i] && (var == nvars || occurrences[i] > occurrences[var])) var = i;
  }
  Exponent power = std::numeric_limits<Exponent>::max();
  for (const Monomial& m : g) {
    if (m[var] != 0) power = std::min(power, m[var]);
  }
  const Monomial pivot = Monomial::variable(nvars, var, power);

  // HS(M) = HS(M + (p)) + t^deg(p) HS(M : p)
  std::vector<Monomial> sum = g;
  sum.push_back(pivot);
  std::vector<Monomial> colon;
  colon.reserve(g.size());
  for (const Monomial& m : g) colon.push_back(m / m.gcd(pivot));
  IntPoly result = hilbert_numerator(std::move(sum), nvars);
  add_shifted(result, hilbert_numerator(std::move(colon), nvars), pivot.degree());
  return result;
}

}  // namespace detail

/// Hilbert series of k[x_1..x_n]/M for a monomial ideal M, by pivot recursion.
inline HilbertSeries hilbert_series(const MonomialIdeal& ideal) {
  for (const Monomial& m : ideal.gens) {
    if (m.nvars() != ideal.nvars) throw std::invalid_argument("hilbert_series: ring mismatch");
  }
  return {detail::hilbert_numerator(ideal.gens, ideal.nvars), ideal.nvars};
}

/// Exact Hilbert polynomial data of a standard graded quotient.
struct HilbertPolynomial {
  std::vector<mpq_class> coefficients;  // in the degree variable m, constant term first
  std::size_t krull_dim = 0;
  mpz_class multiplicity;
  long long regularity_bound = 0;
  IntPoly reduced_numerator;

  mpq_class operator()(long long m) const {
    mpq_class v = 0;
    mpq_class power = 1;
    for (const mpq_class& c : coefficients) {
      v += c * power;
      power *= static_cast<long>(m);
    }
    return v;
  }
};

inline HilbertPolynomial hilbert_polynomial(const HilbertSeries& hs) {
  HilbertPolynomial hp;
  IntPoly num = hs.numerator;
  detail::trim(num);
  std::size_t dim = hs.denominator_power;
  if (num.empty()) {
    hp.krull_dim = 0;
    hp.multiplicity = 0;
    return hp;
  }
  // Divide out (1 - t) while it divides the numerator.
  while (dim > 0) {
    mpz_class at_one = 0;
    for (const auto& c : num) at_one += c;
    if (at_one != 0) break;
    // num = (1 - t) q  =>  q_k = sum_{i<=k} num_i
    IntPoly q(num.size() - 1, 0);
    mpz_class run = 0;
    for (std::size_t k = 0; k + 1 < num.size(); ++k) {
      run += num[k];
      q[k] = run;
    }
    detail::trim(q);
    num = std::move(q);
    --dim;
  }
  hp.krull_dim = dim;
  hp.reduced_numerator = num;
  mpz_class at_one = 0;
  for (const auto& c : num) at_one += c;
  hp.multiplicity = at_one;
  const long long deg_num = static_cast<long long>(num.size()) - 1;
  hp.regularity_bound = std::max<long long>(0, deg_num - static_cast<long long>(dim) + 1);
  if (dim == 0) return hp;
  // HP(m) = sum_k h_k * C(m - k + dim - 1, dim - 1), expanded in powers of m.
  std::vector<mpq_class> coeffs(dim, 0);
  for (std::size_t k = 0; k < num.size(); ++k) {
    if (num[k] == 0) continue;
    // poly in m: prod_{j=1}^{dim-1} (m - k + j) / (dim-1)!
    std::vector<mpq_class> p{1};
    for (std::size_t j = 1; j < dim; ++j) {
      const mpq_class shift = static_cast<long>(j) - static_cast<long>(k);
      std::vector<mpq_class> q(p.size() + 1, 0);
      for (std::size_t i = 0; i < p.size(); ++i) {
        q[i] += p[i] * shift;
        q[i + 1] += p[i];
      }
      p = std::move(q);
    }
    mpz_class fact = 1;
    for (std::size_t j = 2; j < dim; ++j) fact *= static_cast<unsigned long>(j);
    for (std::size_t i = 0; i < p.size(); ++i) coeffs[i] += mpq_class(num[k]) * p[i] / mpq_class(fact);
  }
  for (auto& c : coeffs) c.canonicalize();
  hp.coefficients = std::move(coeffs);
  return hp;
}

}  // namespace intdep
