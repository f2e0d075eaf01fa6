#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "intdep/field.hpp"
#include "intdep/monomial.hpp"

namespace intdep {

struct Term {
  Monomial mono;
  mpq_class coeff;
};

/// Sparse multivariate polynomial. Terms are kept strictly descending with
/// respect to the polynomial's monomial order; no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;

  Polynomial(std::size_t nvars, Field field, MonomialOrder order = MonomialOrder::grevlex())
      : field_(field), order_(order), nvars_(nvars) {}

  /// Builds from unordered terms, combining duplicates and dropping zeros.
  static Polynomial from_terms(std::size_t nvars, Field field, MonomialOrder order, std::vector<Term> terms) {
    Polynomial p(nvars, field, order);
    for (Term& t : terms) {
      if (t.mono.nvars() != nvars) throw std::invalid_argument("term has wrong variable count");
      field.normalize(t.coeff);
    }
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return mono_compare(a.mono, b.mono, order) > 0; });
    for (Term& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff = field.add(p.terms_.back().coeff, t.coeff);
      } else {
        p.terms_.push_back(std::move(t));
      }
    }
    std::erase_if(p.terms_, [](const Term& t) { return sgn(t.coeff) == 0; });
    return p;
  }

  /// Wraps terms already strictly descending in `order` with nonzero normalized coefficients.
  static Polynomial from_sorted_terms(std::size_t nvars, Field field, MonomialOrder order, std::vector<Term> terms) {
    Polynomial p(nvars, field, order);
    p.terms_ = std::move(terms);
    return p;
  }

  static Polynomial constant(std::size_t nvars, Field field, const mpq_class& c,
                             MonomialOrder order = MonomialOrder::grevlex()) {
    return monomial(Monomial(nvars), c, field, order);
  }

  static Polynomial monomial(const Monomial& m, const mpq_class& c, Field field,
                             MonomialOrder order = MonomialOrder::grevlex()) {
    Polynomial p(m.nvars(), field, order);
    mpq_class v = c;
    field.normalize(v);
    if (sgn(v) != 0) p.terms_.push_back({m, v});
    return p;
  }

  static Polynomial variable(std::size_t nvars, std::size_t index, Field field,
                             MonomialOrder order = MonomialOrder::grevlex()) {
    return monomial(Monomial::variable(nvars, index), 1, field, order);
  }

  std::size_t nvars() const { return nvars_; }
  const Field& field() const { return field_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  const Term& lead_term() const {
    require_nonzero();
    return terms_.front();
  }
  const Monomial& lead_monomial() const { return lead_term().mono; }
  const mpq_class& lead_coeff() const { return lead_term().coeff; }

  long long total_degree() const {
    long long d = -1;
    for (const Term& t : terms_) d = std::max<long long>(d, t.mono.degree());
    return d;
  }

  /// Common total degree of all terms, when there is one. Zero has none.
  std::optional<std::uint32_t> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    const std::uint32_t d = terms_.front().mono.degree();
    for (const Term& t : terms_) {
      if (t.mono.degree() != d) return std::nullopt;
    }
    return d;
  }

  bool is_weighted_homogeneous(std::span<const int> weights) const {
    if (terms_.empty()) return true;
    const auto d = terms_.front().mono.weighted_degree(weights);
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const Term& t) { return t.mono.weighted_degree(weights) == d; });
  }

  std::int64_t weighted_degree(std::span<const int> weights) const {
    std::int64_t d = 0;
    for (const Term& t : terms_) d = std::max(d, t.mono.weighted_degree(weights));
    return d;
  }

  bool involves_only(std::size_t first_var) const {
    for (const Term& t : terms_) {
      for (std::size_t i = 0; i < first_var; ++i) {
        if (t.mono[i] != 0) return false;
      }
    }
    return true;
  }

  Polynomial with_order(const MonomialOrder& ord) const {
    if (ord == order_) return *this;
    Polynomial p = *this;
    p.order_ = ord;
    std::sort(p.terms_.begin(), p.terms_.end(),
              [&](const Term& a, const Term& b) { return mono_compare(a.mono, b.mono, ord) > 0; });
    return p;
  }

  Polynomial monic() const {
    if (terms_.empty()) return *this;
    if (terms_.front().coeff == 1) return *this;
    return scaled(field_.inv(terms_.front().coeff));
  }

  Polynomial scaled(const mpq_class& c) const {
    Polynomial p(nvars_, field_, order_);
    mpq_class v = c;
    field_.normalize(v);
    if (sgn(v) == 0) return p;
    p.terms_.reserve(terms_.size());
    for (const Term& t : terms_) p.terms_.push_back({t.mono, field_.mul(t.coeff, v)});
    return p;
  }

  Polynomial times_term(const Monomial& m, const mpq_class& c) const {
    Polynomial p(nvars_, field_, order_);
    if (sgn(c) == 0) return p;
    p.terms_.reserve(terms_.size());
    for (const Term& t : terms_) p.terms_.push_back({t.mono * m, field_.mul(t.coeff, c)});
    return p;
  }

  /// this + c * m * g, merged in one pass (g must share this polynomial's order).
  Polynomial add_multiple(const mpq_class& c, const Monomial& m, const Polynomial& g) const {
    return add_multiple_from(0, c, m, g);
  }

  /// Same as add_multiple but discarding the first `skip` terms of this polynomial.
  Polynomial add_multiple_from(std::size_t skip, const mpq_class& c, const Monomial& m, const Polynomial& g) const {
    if (!(g.order_ == order_)) return add_multiple_from(skip, c, m, g.with_order(order_));
    const Polynomial& gg = g;
    Polynomial r(nvars_, field_, order_);
    r.terms_.reserve(terms_.size() - skip + gg.terms_.size());
    std::size_t i = skip;
    std::size_t j = 0;
    std::optional<Monomial> pending;
    while (i < terms_.size() || j < gg.terms_.size()) {
      if (j < gg.terms_.size() && !pending) pending = gg.terms_[j].mono * m;
      if (j >= gg.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      if (i >= terms_.size()) {
        r.terms_.push_back({*pending, field_.mul(c, gg.terms_[j].coeff)});
        pending.reset();
        ++j;
        continue;
      }
      const auto cmp = mono_compare(terms_[i].mono, *pending, order_);
      if (cmp > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        r.terms_.push_back({*pending, field_.mul(c, gg.terms_[j].coeff)});
        pending.reset();
        ++j;
      } else {
        mpq_class v = field_.add(terms_[i].coeff, field_.mul(c, gg.terms_[j].coeff));
        if (sgn(v) != 0) r.terms_.push_back({terms_[i].mono, std::move(v)});
        ++i;
        ++j;
        pending.reset();
      }
    }
    return r;
  }

  Polynomial operator-() const { return scaled(-1); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    a.check_compatible(b);
    return a.add_multiple(1, Monomial(a.nvars_), b);
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    a.check_compatible(b);
    return a.add_multiple(-1, Monomial(a.nvars_), b);
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_compatible(b);
    Polynomial r(a.nvars_, a.field_, a.order_);
    if (a.is_zero() || b.is_zero()) return r;
    const Polynomial& small = a.size() <= b.size() ? a : b;
    const Polynomial& big = a.size() <= b.size() ? b : a;
    std::vector<Term> acc;
    acc.reserve(small.size() * big.size());
    for (const Term& s : small.terms_) {
      for (const Term& t : big.terms_) acc.push_back({s.mono * t.mono, s.coeff * t.coeff});
    }
    return from_terms(a.nvars_, a.field_, a.order_, std::move(acc));
  }

  Polynomial pow(unsigned n) const {
    Polynomial r = constant(nvars_, field_, 1, order_);
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  /// Exact division by a nonzero divisor; throws if the remainder is nonzero.
  Polynomial divide_exact(const Polynomial& d) const {
    check_compatible(d);
    d.require_nonzero();
    const Polynomial dd = d.with_order(order_);
    Polynomial q(nvars_, field_, order_);
    Polynomial r = *this;
    std::vector<Term> qterms;
    while (!r.is_zero()) {
      const Term& lt = r.lead_term();
      if (!dd.lead_monomial().divides(lt.mono)) throw std::domain_error("polynomial division is not exact");
      const Monomial m = lt.mono / dd.lead_monomial();
      const mpq_class c = field_.div(lt.coeff, dd.lead_coeff());
      qterms.push_back({m, c});
      r = r.add_multiple(field_.neg(c), m, dd);
    }
    return from_terms(nvars_, field_, order_, std::move(qterms));
  }

  /// Re-reads the polynomial in a ring with `nvars` variables, shifting its
  /// variables to start at `offset`.
  Polynomial embed(std::size_t nvars, std::size_t offset = 0, std::optional<MonomialOrder> ord = {}) const {
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const Term& x : terms_) t.push_back({x.mono.embed(nvars, offset), x.coeff});
    return from_terms(nvars, field_, ord.value_or(order_), std::move(t));
  }

  /// Drops the leading `count` variables; they must not occur.
  Polynomial restrict_to_tail(std::size_t count, std::optional<MonomialOrder> ord = {}) const {
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const Term& x : terms_) {
      std::vector<Exponent> e(x.mono.exponents().begin() + static_cast<std::ptrdiff_t>(count), x.mono.exponents().end());
      for (std::size_t i = 0; i < count; ++i) {
        if (x.mono[i] != 0) throw std::invalid_argument("restrict_to_tail: eliminated variable occurs");
      }
      t.push_back({Monomial(std::move(e)), x.coeff});
    }
    return from_terms(nvars_ - count, field_, ord.value_or(order_), std::move(t));
  }

  /// Substitutes polynomials for variables (images share one ring).
  Polynomial substitute(std::span<const Polynomial> images) const {
    if (images.size() != nvars_) throw std::invalid_argument("substitute: need one image per variable");
    const Polynomial& proto = images.front();
    Polynomial r(proto.nvars(), proto.field(), proto.order());
    for (const Term& t : terms_) {
      Polynomial m = constant(proto.nvars(), proto.field(), t.coeff, proto.order());
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (t.mono[i] != 0) m = m * images[i].pow(t.mono[i]);
      }
      r = r + m;
    }
    return r;
  }

  std::size_t max_coeff_bits() const {
    std::size_t bits = 0;
    for (const Term& t : terms_) {
      bits = std::max(bits, mpz_sizeinbase(t.coeff.get_num_mpz_t(), 2));
      bits = std::max(bits, mpz_sizeinbase(t.coeff.get_den_mpz_t(), 2));
    }
    return bits;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_ || !(a.field_ == b.field_) || a.terms_.size() != b.terms_.size()) return false;
    const Polynomial& bb = a.order_ == b.order_ ? b : b.with_order(a.order_);
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].mono == bb.terms_[i].mono) || a.terms_[i].coeff != bb.terms_[i].coeff) return false;
    }
    return true;
  }

  std::string to_string(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const Term& t : terms_) {
      mpq_class c = t.coeff;
      const bool negative = sgn(c) < 0;
      if (negative) c = -c;
      if (first) {
        if (negative) s += "-";
      } else {
        s += negative ? " - " : " + ";
      }
      first = false;
      const bool unit = c == 1;
      if (t.mono.is_one()) {
        s += c.get_str();
      } else {
        if (!unit) s += c.get_str() + "*";
        s += t.mono.to_string(names);
      }
    }
    return s;
  }

 private:
  void require_nonzero() const {
    if (terms_.empty()) throw std::logic_error("zero polynomial has no lead term");
  }
  void check_compatible(const Polynomial& other) const {
    if (other.nvars_ != nvars_) throw std::invalid_argument("polynomials live in different rings");
    if (!(other.field_ == field_)) throw std::invalid_argument("polynomials have different coefficient fields");
  }

  Field field_;
  MonomialOrder order_;
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

}  // namespace intdep
