#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "intdep/polynomial.hpp"
#include "intdep/stats.hpp"

namespace intdep {

/// Reduced Groebner basis: monic, pairwise irredundant, sorted by ascending
/// lead monomial. Two bases of the same ideal under the same order compare equal.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(std::size_t nvars, Field field, MonomialOrder order, std::vector<Polynomial> elements)
      : nvars_(nvars), field_(field), order_(order), elements_(std::move(elements)) {}

  std::size_t nvars() const { return nvars_; }
  const Field& field() const { return field_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Polynomial>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  /// True when the basis contains a nonzero constant.
  bool is_unit() const { return !elements_.empty() && elements_.front().lead_monomial().is_one(); }

  std::vector<Monomial> lead_monomials() const {
    std::vector<Monomial> out;
    out.reserve(elements_.size());
    for (const Polynomial& g : elements_) out.push_back(g.lead_monomial());
    return out;
  }

  Polynomial normal_form(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return a.nvars_ == b.nvars_ && a.field_ == b.field_ && a.order_ == b.order_ && a.elements_ == b.elements_;
  }

 private:
  std::size_t nvars_ = 0;
  Field field_;
  MonomialOrder order_;
  std::vector<Polynomial> elements_;
};

/// Persistent store consulted by groebner_basis when installed.
class GroebnerStore {
 public:
  virtual ~GroebnerStore() = default;
  virtual std::optional<std::vector<Polynomial>> load(const std::string& key, std::size_t nvars, const Field& field,
                                                      const MonomialOrder& order) = 0;
  virtual void save(const std::string& key, const std::vector<Polynomial>& basis) = 0;
  /// When true, hits are recomputed and compared; a mismatch is an error.
  virtual bool verify_hits() const { return false; }
};

inline std::atomic<GroebnerStore*>& groebner_store() {
  static std::atomic<GroebnerStore*> store{nullptr};
  return store;
}

/// Installs a store for the lifetime of the guard.
class ScopedGroebnerStore {
 public:
  explicit ScopedGroebnerStore(GroebnerStore* store) : previous_(groebner_store().exchange(store)) {}
  ~ScopedGroebnerStore() { groebner_store().store(previous_); }
  ScopedGroebnerStore(const ScopedGroebnerStore&) = delete;
  ScopedGroebnerStore& operator=(const ScopedGroebnerStore&) = delete;

 private:
  GroebnerStore* previous_;
};

struct GroebnerOptions {
  /// Variable weights used for sugar-degree pair selection; empty = all ones.
  std::vector<int> weights;
  bool use_store = true;
};

namespace detail {

inline const Polynomial* find_reducer(const Monomial& m, std::span<const Polynomial* const> reducers) {
  for (const Polynomial* g : reducers) {
    if (g->lead_monomial().divides(m)) return g;
  }
  return nullptr;
}

/// Full reduction of f by monic reducers (all in f's order).
inline Polynomial reduce_full(Polynomial f, std::span<const Polynomial* const> reducers) {
  std::vector<Term> rem;
  std::size_t start = 0;
  const Field field = f.field();
  while (start < f.size()) {
    const Term& t = f.terms()[start];
    const Polynomial* g = find_reducer(t.mono, reducers);
    if (g != nullptr) {
      const mpq_class c = field.neg(t.coeff);
      const Monomial m = t.mono / g->lead_monomial();
      f = f.add_multiple_from(start, c, m, *g);
      start = 0;
    } else {
      rem.push_back(t);
      ++start;
    }
  }
  return Polynomial::from_sorted_terms(f.nvars(), field, f.order(), std::move(rem));
}

inline Polynomial spoly(const Polynomial& f, const Polynomial& g) {
  const Monomial l = f.lead_monomial().lcm(g.lead_monomial());
  const Field& field = f.field();
  Polynomial a = f.times_term(l / f.lead_monomial(), field.inv(f.lead_coeff()));
  return a.add_multiple(field.neg(field.inv(g.lead_coeff())), l / g.lead_monomial(), g);
}

inline std::string canonical_key(std::size_t nvars, const Field& field, const MonomialOrder& order,
                                 std::span<const Polynomial> gens) {
  std::vector<std::string> parts;
  for (const Polynomial& p : gens) {
    if (p.is_zero()) continue;
    const Polynomial q = p.with_order(MonomialOrder::grevlex()).monic();
    std::string s;
    for (const Term& t : q.terms()) {
      s += t.coeff.get_str() + ":";
      for (std::size_t i = 0; i < nvars; ++i) s += std::to_string(t.mono[i]) + (i + 1 < nvars ? "," : "");
      s += ";";
    }
    parts.push_back(std::move(s));
  }
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  std::string key = "gb|" + field.to_string() + "|" + std::to_string(nvars) + "|" + order.to_string();
  for (const std::string& s : parts) key += "|" + s;
  return key;
}

struct CriticalPair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
  std::int64_t sugar;
};

inline std::vector<Polynomial> buchberger(std::size_t nvars, const Field& field, const MonomialOrder& order,
                                          std::span<const Polynomial> gens, std::span<const int> weights) {
  for (const Polynomial& g : gens) {
    if (g.nvars() != nvars) throw std::invalid_argument("generator has the wrong number of variables");
  }
  std::vector<Polynomial> polys;
  std::vector<std::int64_t> sugar;
  std::vector<bool> alive;
  std::vector<CriticalPair> pairs;

  auto alive_reducers = [&]() {
    std::vector<const Polynomial*> r;
    for (std::size_t k = 0; k < polys.size(); ++k) {
      if (alive[k]) r.push_back(&polys[k]);
    }
    return r;
  };

  // Gebauer-Moeller update with new element h.
  auto update = [&](std::size_t h) {
    const Monomial& lh = polys[h].lead_monomial();
    std::vector<CriticalPair> fresh;
    for (std::size_t g = 0; g < polys.size(); ++g) {
      if (!alive[g] || g == h) continue;
      const Monomial& lg = polys[g].lead_monomial();
      const Monomial l = lh.lcm(lg);
      const std::int64_t s = std::max(sugar[h] + (l / lh).weighted_degree(weights),
                                      sugar[g] + (l / lg).weighted_degree(weights));
      fresh.push_back({g, h, l, s});
    }
    // Chain criterion among the new pairs.
    std::vector<CriticalPair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      const CriticalPair& p = fresh[a];
      const bool coprime = polys[p.i].lead_monomial().coprime(lh);
      bool dominated = false;
      if (!coprime) {
        for (std::size_t b = 0; b < fresh.size() && !dominated; ++b) {
          if (b == a) continue;
          const Monomial& q = fresh[b].lcm;
          if (q.divides(p.lcm) && !(q == p.lcm)) dominated = true;
          // equal lcms: keep only the first occurrence
          if (q == p.lcm && b < a) dominated = true;
        }
      }
      if (!dominated) kept.push_back(p);
    }
    // Product criterion: drop pairs with coprime leads (after chain filtering).
    std::vector<CriticalPair> accepted;
    for (CriticalPair& p : kept) {
      if (!polys[p.i].lead_monomial().coprime(lh)) accepted.push_back(std::move(p));
    }
    // Old pairs made redundant by h.
    std::erase_if(pairs, [&](const CriticalPair& p) {
      if (!lh.divides(p.lcm)) return false;
      const Monomial l1 = polys[p.i].lead_monomial().lcm(lh);
      const Monomial l2 = polys[p.j].lead_monomial().lcm(lh);
      return !(l1 == p.lcm) && !(l2 == p.lcm);
    });
    for (CriticalPair& p : accepted) pairs.push_back(std::move(p));
    for (std::size_t g = 0; g < polys.size(); ++g) {
      if (alive[g] && g != h && lh.divides(polys[g].lead_monomial())) alive[g] = false;
    }
  };

  auto add = [&](Polynomial p, std::int64_t s) {
    polys.push_back(p.monic());
    sugar.push_back(s);
    alive.push_back(true);
    update(polys.size() - 1);
  };

  // Seed with the generators, reduced against what is already present.
  std::vector<Polynomial> input;
  for (const Polynomial& g : gens) {
    if (!g.is_zero()) input.push_back(g.with_order(order));
  }
  std::sort(input.begin(), input.end(), [&](const Polynomial& a, const Polynomial& b) {
    const auto sa = a.weighted_degree(weights);
    const auto sb = b.weighted_degree(weights);
    if (sa != sb) return sa < sb;
    return mono_compare(a.lead_monomial(), b.lead_monomial(), order) < 0;
  });
  for (const Polynomial& g : input) {
    const auto reducers = alive_reducers();
    Polynomial r = reduce_full(g, reducers);
    if (!r.is_zero()) add(std::move(r), g.weighted_degree(weights));
  }

  auto& stats = engine_stats();
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const CriticalPair& a, const CriticalPair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return mono_compare(a.lcm, b.lcm, order) < 0;
    });
    const CriticalPair p = *best;
    pairs.erase(best);
    Polynomial s = spoly(polys[p.i], polys[p.j]);
    const auto reducers = alive_reducers();
    Polynomial r = reduce_full(std::move(s), reducers);
    stats.spairs_reduced.fetch_add(1);
    if (!r.is_zero()) add(std::move(r), p.sugar);
  }

  // Interreduce the minimal basis.
  std::vector<Polynomial> basis;
  for (std::size_t k = 0; k < polys.size(); ++k) {
    if (alive[k]) basis.push_back(polys[k]);
  }
  std::sort(basis.begin(), basis.end(), [&](const Polynomial& a, const Polynomial& b) {
    return mono_compare(a.lead_monomial(), b.lead_monomial(), order) < 0;
  });
  std::vector<Polynomial> reduced;
  reduced.reserve(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::vector<const Polynomial*> others;
    for (std::size_t l = 0; l < basis.size(); ++l) {
      if (l != k) others.push_back(&basis[l]);
    }
    const Polynomial& g = basis[k];
    std::vector<Term> head{g.lead_term()};
    Polynomial tail = Polynomial::from_sorted_terms(g.nvars(), field, order,
                                                    std::vector<Term>(g.terms().begin() + 1, g.terms().end()));
    Polynomial rt = reduce_full(std::move(tail), others);
    for (const Term& t : rt.terms()) head.push_back(t);
    reduced.push_back(Polynomial::from_sorted_terms(g.nvars(), field, order, std::move(head)).monic());
  }
  return reduced;
}

}  // namespace detail

inline Polynomial GroebnerBasis::normal_form(const Polynomial& f) const {
  if (f.nvars() != nvars_) throw std::invalid_argument("normal_form: ring mismatch");
  std::vector<const Polynomial*> reducers;
  reducers.reserve(elements_.size());
  for (const Polynomial& g : elements_) reducers.push_back(&g);
  return detail::reduce_full(f.with_order(order_), reducers);
}

/// Reduced Groebner basis of the ideal generated by `gens` in the free
/// polynomial ring on `nvars` variables.
inline GroebnerBasis groebner_basis(std::size_t nvars, const Field& field, std::span<const Polynomial> gens,
                                    const MonomialOrder& order, const GroebnerOptions& options = {}) {
  for (const Polynomial& g : gens) {
    if (g.nvars() != nvars) throw std::invalid_argument("groebner_basis: generator ring mismatch");
    if (!(g.field() == field)) throw std::invalid_argument("groebner_basis: generator field mismatch");
  }
  if (!options.weights.empty() && options.weights.size() != nvars) {
    throw std::invalid_argument("groebner_basis: weight vector length mismatch");
  }
  auto& stats = engine_stats();
  GroebnerStore* store = options.use_store ? groebner_store().load() : nullptr;
  std::string key;
  if (store != nullptr) {
    key = detail::canonical_key(nvars, field, order, gens);
    if (auto hit = store->load(key, nvars, field, order)) {
      stats.cache_hits.fetch_add(1);
      if (store->verify_hits()) {
        const auto fresh = detail::buchberger(nvars, field, order, gens, options.weights);
        if (fresh != *hit) throw std::runtime_error("cached Groebner basis differs from recomputation");
      }
      return GroebnerBasis(nvars, field, order, std::move(*hit));
    }
    stats.cache_misses.fetch_add(1);
  }
  auto elements = detail::buchberger(nvars, field, order, gens, options.weights);
  stats.gb_runs.fetch_add(1);
  EngineStats::raise_to(stats.max_gb_size, elements.size());
  for (const Polynomial& g : elements) EngineStats::raise_to(stats.max_coeff_bits, g.max_coeff_bits());
  if (store != nullptr) store->save(key, elements);
  return GroebnerBasis(nvars, field, order, std::move(elements));
}

/// Buchberger certificate: every S-polynomial reduces to zero and every
/// element is monic with a tail free of lead-term multiples.
inline bool is_reduced_groebner(const GroebnerBasis& gb) {
  const auto& el = gb.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (el[i].lead_coeff() != 1) return false;
    for (std::size_t j = 0; j < el.size(); ++j) {
      if (i == j) continue;
      for (const Term& t : el[i].terms()) {
        if (el[j].lead_monomial().divides(t.mono)) return false;
      }
    }
    for (std::size_t j = i + 1; j < el.size(); ++j) {
      if (!gb.normal_form(detail::spoly(el[i], el[j])).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace intdep
