#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "intdep/errors.hpp"
#include "intdep/groebner.hpp"
#include "intdep/hilbert.hpp"
#include "intdep/linalg.hpp"
#include "intdep/polynomial.hpp"

namespace intdep {

class RingSpec;
using Ring = std::shared_ptr<const RingSpec>;

/// Standard graded algebra k[x_1..x_v]/P, every variable of degree one.
/// Immutable; the Groebner basis of P, the Krull dimension and the
/// multiplicity are computed at construction.
class RingSpec {
 public:
  static Ring make(Field field, std::vector<std::string> variables, std::vector<Polynomial> relations = {}) {
    return std::shared_ptr<const RingSpec>(new RingSpec(field, std::move(variables), std::move(relations)));
  }

  const Field& field() const { return field_; }
  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t nvars() const { return variables_.size(); }
  const std::vector<Polynomial>& relations() const { return relations_; }
  bool is_polynomial_ring() const { return relation_basis_.empty(); }

  /// Reduced grevlex Groebner basis of the defining ideal P.
  const GroebnerBasis& relation_basis() const { return relation_basis_; }
  const HilbertSeries& hilbert_series() const { return series_; }
  const HilbertPolynomial& hilbert_polynomial() const { return polynomial_; }
  std::size_t dimension() const { return polynomial_.krull_dim; }
  const mpz_class& multiplicity() const { return polynomial_.multiplicity; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - variables_.begin());
  }

  Polynomial zero() const { return Polynomial(nvars(), field_); }
  Polynomial one() const { return Polynomial::constant(nvars(), field_, 1); }
  Polynomial var(std::size_t i) const { return Polynomial::variable(nvars(), i, field_); }
  Polynomial var(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw std::invalid_argument("unknown variable " + name);
    return var(*i);
  }

  /// Normal form modulo P (grevlex).
  Polynomial reduce(const Polynomial& f) const {
    return relation_basis_.normal_form(f).with_order(MonomialOrder::grevlex());
  }

  std::string to_string() const {
    std::string s = field_.to_string() + "[";
    for (std::size_t i = 0; i < variables_.size(); ++i) s += (i ? "," : "") + variables_[i];
    s += "]";
    if (!relations_.empty()) {
      s += " / (";
      for (std::size_t i = 0; i < relations_.size(); ++i) s += (i ? ", " : "") + relations_[i].to_string(variables_);
      s += ")";
    }
    return s;
  }

  /// Rings are interchangeable when field, names and defining ideal agree.
  bool same_as(const RingSpec& other) const {
    return this == &other || (field_ == other.field_ && variables_ == other.variables_ &&
                              relation_basis_ == other.relation_basis_);
  }

 private:
  RingSpec(Field field, std::vector<std::string> variables, std::vector<Polynomial> relations)
      : field_(field), variables_(std::move(variables)) {
    std::set<std::string> seen;
    for (const std::string& v : variables_) {
      if (v.empty()) throw std::invalid_argument("empty variable name");
      if (!seen.insert(v).second) throw std::invalid_argument("duplicate variable name " + v);
    }
    for (Polynomial& r : relations) {
      if (r.nvars() != nvars() || !(r.field() == field_)) throw std::invalid_argument("relation not in this ring");
      if (r.is_zero()) continue;
      auto d = r.homogeneous_degree();
      if (!d) throw std::invalid_argument("relation " + r.to_string(variables_) + " is not homogeneous");
      if (*d == 0) throw std::invalid_argument("relations must have positive degree");
      relations_.push_back(r.with_order(MonomialOrder::grevlex()));
    }
    relation_basis_ = groebner_basis(nvars(), field_, relations_, MonomialOrder::grevlex());
    series_ = intdep::hilbert_series(MonomialIdeal{nvars(), relation_basis_.lead_monomials()});
    polynomial_ = intdep::hilbert_polynomial(series_);
  }

  Field field_;
  std::vector<std::string> variables_;
  std::vector<Polynomial> relations_;
  GroebnerBasis relation_basis_;
  HilbertSeries series_;
  HilbertPolynomial polynomial_;
};

/// Standard monomials of degree m: a k-basis of R_m.
inline std::vector<Monomial> graded_piece_basis(const RingSpec& ring, std::uint32_t m) {
  const auto leads = ring.relation_basis().lead_monomials();
  std::vector<Monomial> out;
  for (Monomial& mono : monomials_of_degree(ring.nvars(), m)) {
    if (std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(mono); })) {
      out.push_back(std::move(mono));
    }
  }
  return out;
}

namespace detail {

struct IdealCache {
  std::mutex mutex;
  std::optional<GroebnerBasis> groebner;
  std::optional<std::vector<Polynomial>> minimal;
};

}  // namespace detail

/// Homogeneous ideal of a RingSpec. Generators are stored as nonzero normal
/// forms modulo the ring's relations; the zero ideal has no generators.
class GradedIdeal {
 public:
  GradedIdeal() = default;

  GradedIdeal(Ring ring, const std::vector<Polynomial>& generators)
      : ring_(std::move(ring)), cache_(std::make_shared<detail::IdealCache>()) {
    if (!ring_) throw std::invalid_argument("ideal needs a ring");
    for (const Polynomial& g : generators) {
      if (g.nvars() != ring_->nvars() || !(g.field() == ring_->field())) {
        throw std::invalid_argument("generator not in the ideal's ring");
      }
      if (!g.is_zero() && !g.homogeneous_degree()) {
        throw std::invalid_argument("generator " + g.to_string(ring_->variables()) + " is not homogeneous");
      }
      Polynomial r = ring_->reduce(g);
      if (r.is_zero()) continue;
      if (std::find(gens_.begin(), gens_.end(), r) == gens_.end()) gens_.push_back(std::move(r));
    }
  }

  static GradedIdeal unit(Ring ring) {
    auto one = ring->one();
    return GradedIdeal(std::move(ring), {one});
  }

  /// The homogeneous maximal ideal generated by the variables.
  static GradedIdeal maximal(Ring ring) {
    std::vector<Polynomial> vars;
    for (std::size_t i = 0; i < ring->nvars(); ++i) vars.push_back(ring->var(i));
    return GradedIdeal(std::move(ring), vars);
  }

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }

  /// Reduced grevlex basis of (generators + P) in the ambient free ring.
  const GroebnerBasis& groebner() const {
    std::lock_guard lock(cache_->mutex);
    if (!cache_->groebner) {
      std::vector<Polynomial> all = gens_;
      for (const Polynomial& r : ring_->relation_basis().elements()) all.push_back(r);
      cache_->groebner = groebner_basis(ring_->nvars(), ring_->field(), all, MonomialOrder::grevlex());
    }
    return *cache_->groebner;
  }

  bool is_unit() const { return groebner().is_unit(); }

  bool contains(const Polynomial& f) const { return groebner().contains(f); }

  bool contains(const GradedIdeal& other) const {
    check_same_ring(other);
    return std::all_of(other.gens_.begin(), other.gens_.end(), [&](const Polynomial& g) { return contains(g); });
  }

  friend bool operator==(const GradedIdeal& a, const GradedIdeal& b) {
    a.check_same_ring(b);
    return a.groebner() == b.groebner();
  }

  /// Canonical minimal homogeneous generating set, built degree by degree: a
  /// degree-t generator is kept iff it is not in the span of the degree-t part
  /// of the ideal generated by the generators kept so far.
  const std::vector<Polynomial>& minimal_generators() const {
    std::lock_guard lock(cache_->mutex);
    if (!cache_->minimal) cache_->minimal = compute_minimal();
    return *cache_->minimal;
  }

  std::vector<std::uint32_t> generating_degrees() const {
    std::vector<std::uint32_t> d;
    for (const Polynomial& g : minimal_generators()) d.push_back(*g.homogeneous_degree());
    return d;
  }

  /// d(I): the largest degree of a minimal generator.
  std::uint32_t max_generating_degree() const {
    if (is_zero()) throw PreconditionError("the zero ideal has no generating degree");
    const auto d = generating_degrees();
    return *std::max_element(d.begin(), d.end());
  }

  bool is_equigenerated() const {
    const auto d = generating_degrees();
    return !d.empty() && std::all_of(d.begin(), d.end(), [&](std::uint32_t x) { return x == d.front(); });
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string(ring_->variables());
    return s + ")";
  }

  void check_same_ring(const GradedIdeal& other) const {
    if (!ring_->same_as(*other.ring_)) throw std::invalid_argument("ideals live in different rings");
  }

 private:
  std::vector<Polynomial> compute_minimal() const {
    std::vector<Polynomial> sorted = gens_;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Polynomial& a, const Polynomial& b) {
      return *a.homogeneous_degree() < *b.homogeneous_degree();
    });
    std::vector<Polynomial> kept;
    std::size_t i = 0;
    while (i < sorted.size()) {
      const std::uint32_t t = *sorted[i].homogeneous_degree();
      PolynomialSpan span;
      for (const Polynomial& g : kept) {
        const std::uint32_t dg = *g.homogeneous_degree();
        for (const Monomial& mu : graded_piece_basis(*ring_, t - dg)) {
          span.insert(ring_->reduce(g.times_term(mu, 1)));
        }
      }
      for (; i < sorted.size() && *sorted[i].homogeneous_degree() == t; ++i) {
        if (span.insert(sorted[i])) kept.push_back(sorted[i]);
      }
    }
    return kept;
  }

  Ring ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<detail::IdealCache> cache_;
};

}  // namespace intdep
