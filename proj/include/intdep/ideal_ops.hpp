#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "intdep/errors.hpp"
#include "intdep/groebner.hpp"
#include "intdep/hilbert.hpp"
#include "intdep/linalg.hpp"
#include "intdep/ring.hpp"

namespace intdep {

/// Generators of I^n: all n-fold products of the minimal generators of I.
inline GradedIdeal ideal_power(const GradedIdeal& ideal, unsigned n) {
  if (n == 0) throw PreconditionError("ideal_power: exponent must be positive");
  const auto& gens = ideal.minimal_generators();
  const Ring& ring = ideal.ring();
  std::vector<Polynomial> products;
  // multisets of size n drawn from gens, as non-decreasing index sequences
  std::function<void(std::size_t, unsigned, const Polynomial&)> rec = [&](std::size_t from, unsigned left,
                                                                          const Polynomial& acc) {
    if (left == 0) {
      products.push_back(ring->reduce(acc));
      return;
    }
    for (std::size_t k = from; k < gens.size(); ++k) rec(k, left - 1, acc * gens[k]);
  };
  rec(0, n, ring->one());
  return GradedIdeal(ring, products);
}

/// Generators of (gens) ∩ k[x_{first_k+1}, ..., x_v] in the free ring, read in
/// the same coordinates. Uses an elimination block order.
inline std::vector<Polynomial> eliminate(std::size_t nvars, const Field& field, std::span<const Polynomial> gens,
                                         std::size_t first_k, const GroebnerOptions& options = {}) {
  if (first_k == 0) {
    std::vector<Polynomial> out;
    for (const Polynomial& g : gens) {
      if (!g.is_zero()) out.push_back(g);
    }
    return out;
  }
  const GroebnerBasis gb = groebner_basis(nvars, field, gens, MonomialOrder::block(first_k), options);
  std::vector<Polynomial> out;
  for (const Polynomial& g : gb.elements()) {
    if (g.involves_only(first_k)) out.push_back(g.with_order(MonomialOrder::grevlex()));
  }
  return out;
}

/// Elimination for ideals of a graded ring: generators of (I + P) ∩ k[x_{k+1}..x_v].
inline std::vector<Polynomial> eliminate(const GradedIdeal& ideal, std::size_t first_k) {
  const Ring& ring = ideal.ring();
  std::vector<Polynomial> gens = ideal.generators();
  if (first_k == 0) return gens;
  for (const Polynomial& r : ring->relation_basis().elements()) gens.push_back(r);
  return eliminate(ring->nvars(), ring->field(), gens, first_k);
}

namespace detail {

/// A ∩ B in the free ring on nvars variables, via t*A + (1 - t)*B with t
/// eliminated.
inline std::vector<Polynomial> free_intersection(std::size_t nvars, const Field& field, std::span<const Polynomial> a,
                                                 std::span<const Polynomial> b) {
  const std::size_t n = nvars + 1;
  const Polynomial t = Polynomial::variable(n, 0, field);
  const Polynomial one_minus_t = Polynomial::constant(n, field, 1) - t;
  std::vector<Polynomial> gens;
  for (const Polynomial& f : a) gens.push_back(t * f.embed(n, 1));
  for (const Polynomial& g : b) gens.push_back(one_minus_t * g.embed(n, 1));
  std::vector<Polynomial> out;
  for (const Polynomial& g : eliminate(n, field, gens, 1)) out.push_back(g.restrict_to_tail(1));
  return out;
}

inline std::vector<Polynomial> with_relations(const GradedIdeal& ideal) {
  std::vector<Polynomial> gens = ideal.generators();
  for (const Polynomial& r : ideal.ring()->relation_basis().elements()) gens.push_back(r);
  return gens;
}

}  // namespace detail

inline GradedIdeal intersect(const GradedIdeal& i, const GradedIdeal& j) {
  i.check_same_ring(j);
  const Ring& ring = i.ring();
  if (i.is_zero() || j.is_zero()) return GradedIdeal(ring, {});
  const auto a = detail::with_relations(i);
  const auto b = detail::with_relations(j);
  return GradedIdeal(ring, detail::free_intersection(ring->nvars(), ring->field(), a, b));
}

/// I : J = { f : f J ⊆ I }.
inline GradedIdeal colon(const GradedIdeal& i, const GradedIdeal& j) {
  i.check_same_ring(j);
  if (j.is_zero()) throw PreconditionError("colon: the divisor ideal is zero");
  const Ring& ring = i.ring();
  const auto a = detail::with_relations(i);
  std::optional<GradedIdeal> result;
  for (const Polynomial& g : j.generators()) {
    GradedIdeal part = GradedIdeal::unit(ring);
    if (!i.contains(g)) {
      const std::vector<Polynomial> principal{g};
      std::vector<Polynomial> quotients;
      for (const Polynomial& f : detail::free_intersection(ring->nvars(), ring->field(), a, principal)) {
        quotients.push_back(f.divide_exact(g));
      }
      part = GradedIdeal(ring, quotients);
    }
    result = result ? intersect(*result, part) : part;
  }
  return *result;
}

/// I : J^∞, by iterated colon until the Groebner bases stabilize.
inline GradedIdeal saturate(const GradedIdeal& i, const GradedIdeal& j) {
  GradedIdeal current = i;
  while (true) {
    GradedIdeal next = colon(current, j);
    if (next == current) return current;
    current = std::move(next);
  }
}

/// Echelon k-basis of the degree-t piece I_t, as normal forms modulo P.
inline std::vector<Polynomial> degree_piece_basis(const GradedIdeal& ideal, std::uint32_t t) {
  const Ring& ring = ideal.ring();
  PolynomialSpan span;
  for (const Polynomial& g : ideal.generators()) {
    const std::uint32_t dg = *g.homogeneous_degree();
    if (dg > t) continue;
    for (const Monomial& mu : graded_piece_basis(*ring, t - dg)) span.insert(ring->reduce(g.times_term(mu, 1)));
  }
  // back-substitute into reduced row echelon form for a canonical basis
  std::vector<Polynomial> rows = span.rows();
  std::sort(rows.begin(), rows.end(), [](const Polynomial& a, const Polynomial& b) {
    return mono_compare(a.lead_monomial(), b.lead_monomial(), MonomialOrder::grevlex()) > 0;
  });
  for (std::size_t k = rows.size(); k-- > 0;) {
    for (std::size_t l = k + 1; l < rows.size(); ++l) {
      // rows[l] has a smaller lead; clear it from rows[k]
      const Monomial& pivot = rows[l].lead_monomial();
      for (const Term& term : rows[k].terms()) {
        if (term.mono == pivot) {
          rows[k] = rows[k].add_multiple(rows[k].field().neg(term.coeff), Monomial(rows[k].nvars()), rows[l]);
          break;
        }
      }
    }
  }
  return rows;
}

/// ⟨I_t⟩: the ideal generated by the degree-t piece of I.
inline GradedIdeal truncate(const GradedIdeal& ideal, std::uint32_t t) {
  return GradedIdeal(ideal.ring(), degree_piece_basis(ideal, t));
}

/// m^t for the homogeneous maximal ideal m.
inline GradedIdeal maximal_power(const Ring& ring, std::uint32_t t) {
  std::vector<Polynomial> gens;
  for (const Monomial& mu : graded_piece_basis(*ring, t)) gens.push_back(Polynomial::monomial(mu, 1, ring->field()));
  return GradedIdeal(ring, gens);
}

/// Lead-term ideal of I + P under grevlex, in the ambient free ring.
inline MonomialIdeal initial_ideal(const GradedIdeal& ideal) {
  return MonomialIdeal{ideal.ring()->nvars(), ideal.groebner().lead_monomials()}.minimalized();
}

inline HilbertSeries quotient_hilbert_series(const GradedIdeal& ideal) { return hilbert_series(initial_ideal(ideal)); }

struct DimDegree {
  std::size_t dim = 0;
  mpz_class degree;
};

/// Krull dimension and multiplicity of R/I.
inline DimDegree dim_and_degree(const GradedIdeal& ideal) {
  const HilbertPolynomial hp = hilbert_polynomial(quotient_hilbert_series(ideal));
  return {hp.krull_dim, hp.multiplicity};
}

/// height I = dim R - dim R/I (R a graded domain).
inline std::size_t height(const GradedIdeal& ideal) {
  return ideal.ring()->dimension() - dim_and_degree(ideal).dim;
}

/// ℓ_k(I_m) by linear algebra on normal forms of g·μ; never touches Hilbert series.
inline std::size_t piece_length(const GradedIdeal& ideal, std::uint32_t m) {
  const Ring& ring = ideal.ring();
  std::vector<Polynomial> rows;
  for (const Polynomial& g : ideal.generators()) {
    const std::uint32_t dg = *g.homogeneous_degree();
    if (dg > m) continue;
    for (const Monomial& mu : graded_piece_basis(*ring, m - dg)) {
      Polynomial r = ring->reduce(g.times_term(mu, 1));
      if (!r.is_zero()) rows.push_back(std::move(r));
    }
  }
  return span_rank(rows);
}

/// ℓ_k((I^n)_m).
inline std::size_t graded_piece_length(const GradedIdeal& ideal, unsigned n, std::uint32_t m) {
  return piece_length(ideal_power(ideal, n), m);
}

/// Presentation of the subalgebra k[f_1..f_s] generated by forms of a common
/// degree c: a free ring on s degree-one symbols and the kernel of t_j ↦ f_j.
struct KernelPresentation {
  Ring ring;
  GradedIdeal kernel;
};

inline KernelPresentation kernel_presentation(const Ring& ring, const std::vector<Polynomial>& elements,
                                              const std::vector<std::string>& symbols) {
  if (elements.empty()) throw PreconditionError("kernel_presentation: no elements");
  if (symbols.size() != elements.size()) throw PreconditionError("kernel_presentation: one symbol per element");
  const auto c = elements.front().homogeneous_degree();
  if (!c || *c == 0) throw PreconditionError("kernel_presentation: elements must be forms of positive degree");
  for (const Polynomial& e : elements) {
    if (e.homogeneous_degree() != c) throw PreconditionError("kernel_presentation: elements must share one degree");
  }
  const std::size_t v = ring->nvars();
  const std::size_t s = elements.size();
  const std::size_t n = v + s;
  const Field& field = ring->field();
  std::vector<Polynomial> gens;
  for (const Polynomial& r : ring->relation_basis().elements()) gens.push_back(r.embed(n, 0));
  for (std::size_t j = 0; j < s; ++j) {
    gens.push_back(Polynomial::variable(n, v + j, field) - ring->reduce(elements[j]).embed(n, 0));
  }
  GroebnerOptions options;
  options.weights.assign(n, 1);
  for (std::size_t j = 0; j < s; ++j) options.weights[v + j] = static_cast<int>(*c);
  std::vector<Polynomial> kernel;
  for (const Polynomial& g : eliminate(n, field, gens, v, options)) kernel.push_back(g.restrict_to_tail(v));
  Ring target = RingSpec::make(field, symbols);
  for (const Polynomial& k : kernel) {
    if (k.homogeneous_degree() == 1u) {
      throw PreconditionError("kernel_presentation: elements are linearly dependent");
    }
  }
  return {target, GradedIdeal(target, kernel)};
}

}  // namespace intdep
