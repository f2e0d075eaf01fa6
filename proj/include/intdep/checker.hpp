#pragma once

#include <cstddef>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "intdep/errors.hpp"
#include "intdep/ideal_ops.hpp"
#include "intdep/multiplicity.hpp"
#include "intdep/ring.hpp"

namespace intdep {

struct HypothesisReport {
  std::size_t dim_R = 0;
  std::size_t height_I = 0;
  std::size_t height_J = 0;
  std::size_t dim_R_mod_I = 0;
  std::uint32_t d_I = 0;
  std::uint32_t d_J = 0;
  std::uint32_t d = 0;  // max(d(I), d(J))
  bool containment_ok = false;
  bool domain_asserted = false;
};

/// Checks the standing setting: R a graded domain of dimension >= 2,
/// I ⊆ J and 0 < height I <= height J < dim R. Each violation raises a
/// HypothesisError with its own code.
inline HypothesisReport validate_hypotheses(const GradedIdeal& i, const GradedIdeal& j, bool domain_asserted = false) {
  if (!i.ring() || !j.ring() || !i.ring()->same_as(*j.ring())) {
    throw HypothesisError(HypothesisCode::ring_mismatch, "I and J live in different rings");
  }
  const Ring& ring = i.ring();
  HypothesisReport h;
  h.domain_asserted = domain_asserted || ring->is_polynomial_ring();
  if (!h.domain_asserted) {
    throw HypothesisError(HypothesisCode::domain_not_asserted,
                          "the ring has relations; its domain property must be asserted (--assert-domain)");
  }
  h.dim_R = ring->dimension();
  if (h.dim_R < 2) {
    throw HypothesisError(HypothesisCode::dimension_too_small,
                          "dim R = " + std::to_string(h.dim_R) + " but at least 2 is required");
  }
  if (i.is_zero() || j.is_zero()) throw HypothesisError(HypothesisCode::height_zero, "zero ideal has height 0");
  h.containment_ok = j.contains(i);
  if (!h.containment_ok) throw HypothesisError(HypothesisCode::not_contained, "I is not contained in J");
  h.dim_R_mod_I = dim_and_degree(i).dim;
  h.height_I = h.dim_R - h.dim_R_mod_I;
  h.height_J = height(j);
  if (h.height_I == 0) throw HypothesisError(HypothesisCode::height_zero, "height I = 0");
  if (h.height_I > h.height_J) {
    throw HypothesisError(HypothesisCode::height_order, "height I = " + std::to_string(h.height_I) +
                                                            " exceeds height J = " + std::to_string(h.height_J));
  }
  if (h.height_J >= h.dim_R) {
    throw HypothesisError(HypothesisCode::height_full,
                          "height J = " + std::to_string(h.height_J) + " must be below dim R = " + std::to_string(h.dim_R));
  }
  h.d_I = i.max_generating_degree();
  h.d_J = j.max_generating_degree();
  h.d = std::max(h.d_I, h.d_J);
  return h;
}

struct Verdict {
  bool finite_colength = false;
  std::optional<bool> closures_equal;
  std::uint32_t c_used = 0;
  std::int64_t r_diagonal_I = 0;
  std::int64_t r_diagonal_J = 0;
  std::optional<std::int64_t> s_diagonal_I;
  std::optional<std::int64_t> s_diagonal_J;
  std::vector<std::string> criteria_cited;
  std::vector<std::string> assumptions;
  std::vector<std::string> notes;

  /// Re-derives the booleans from the stored witnesses.
  bool self_consistent() const {
    if (finite_colength != (r_diagonal_I == r_diagonal_J)) return false;
    if (closures_equal) {
      if (!s_diagonal_I || !s_diagonal_J) return false;
      if (*closures_equal != (finite_colength && *s_diagonal_I == *s_diagonal_J)) return false;
    }
    return true;
  }
};

struct CheckOptions {
  /// Slope of the diagonal; 0 selects d + 1.
  std::uint32_t c = 0;
  bool parallel = true;
  bool domain_asserted = false;
};

namespace detail {

inline std::uint32_t choose_c(const HypothesisReport& h, const CheckOptions& options) {
  if (options.c == 0) return h.d + 1;
  if (options.c <= h.d) {
    throw PreconditionError("c = " + std::to_string(options.c) + " must exceed max(d(I), d(J)) = " + std::to_string(h.d));
  }
  return options.c;
}

inline std::vector<std::string> assumptions_for(const GradedIdeal& i, const HypothesisReport& h) {
  std::vector<std::string> out;
  if (!i.ring()->is_polynomial_ring() && h.domain_asserted) out.push_back("R is a domain (user assertion)");
  if (!i.ring()->field().is_rationals()) out.push_back("coefficients in a prime field (diagnostic mode)");
  return out;
}

/// Evaluates the callables, concurrently when asked; results keep input order.
template <typename T, typename... F>
std::vector<T> evaluate_all(bool parallel, F&&... fs) {
  std::vector<T> out;
  if (!parallel) {
    (out.push_back(fs()), ...);
    return out;
  }
  std::vector<std::future<T>> futures;
  (futures.push_back(std::async(std::launch::async, std::forward<F>(fs))), ...);
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace detail

/// Finite colength of J̄/Ī: equality of the two R-diagonal degrees at c.
inline Verdict check_finite_colength(const GradedIdeal& i, const GradedIdeal& j, const CheckOptions& options = {}) {
  const HypothesisReport h = validate_hypotheses(i, j, options.domain_asserted);
  Verdict v;
  v.c_used = detail::choose_c(h, options);
  const auto r = detail::evaluate_all<std::int64_t>(
      options.parallel, [&] { return diagonal_degree(i, v.c_used).value; },
      [&] { return diagonal_degree(j, v.c_used).value; });
  v.r_diagonal_I = r[0];
  v.r_diagonal_J = r[1];
  v.finite_colength = r[0] == r[1];
  v.criteria_cited = {"R-diagonal degrees agree at c"};
  v.assumptions = detail::assumptions_for(i, h);
  return v;
}

/// Ī = J̄ iff the R-diagonal degrees and the S = R[T] diagonal degrees
/// agree at one c > d. Returns both comparisons.
inline Verdict check_integral_closure(const GradedIdeal& i, const GradedIdeal& j, const CheckOptions& options = {}) {
  const HypothesisReport h = validate_hypotheses(i, j, options.domain_asserted);
  Verdict v;
  v.c_used = detail::choose_c(h, options);
  SExtension ext = extend_to_S(i.ring(), {i, j});
  if (ext.note) v.notes.push_back(*ext.note);
  const std::uint32_t c = v.c_used;
  const auto r = detail::evaluate_all<std::int64_t>(
      options.parallel, [&] { return diagonal_degree(i, c).value; }, [&] { return diagonal_degree(j, c).value; },
      [&] { return diagonal_degree(ext.ideals[0], c).value; }, [&] { return diagonal_degree(ext.ideals[1], c).value; });
  v.r_diagonal_I = r[0];
  v.r_diagonal_J = r[1];
  v.s_diagonal_I = r[2];
  v.s_diagonal_J = r[3];
  v.finite_colength = r[0] == r[1];
  v.closures_equal = v.finite_colength && r[2] == r[3];
  v.criteria_cited = {"R-diagonal degrees agree at c", "S-diagonal degrees agree at c"};
  v.assumptions = detail::assumptions_for(i, h);
  if (v.finite_colength && r[3] < r[2]) throw EngineError("S-diagonal degree of J below that of I");
  return v;
}

struct EquigeneratedVerdict {
  bool closures_equal = false;
  std::uint32_t d_I = 0;
  std::uint32_t d_J = 0;
  std::size_t compared_indices = 0;  // e_i for i < dim R/I
  std::optional<RAMultiplicities> ra_I;
  std::optional<RAMultiplicities> ra_J;
};

/// Equigenerated pairs: Ī = J̄ iff d(I) = d(J) and e_i(R[It]) = e_i(R[Jt])
/// for i < dim R/I. No S-extension needed.
inline EquigeneratedVerdict check_equigenerated(const GradedIdeal& i, const GradedIdeal& j,
                                                const CheckOptions& options = {}) {
  const HypothesisReport h = validate_hypotheses(i, j, options.domain_asserted);
  if (!i.is_equigenerated() || !j.is_equigenerated()) {
    throw PreconditionError("check_equigenerated: both ideals must be equigenerated; use check_integral_closure");
  }
  EquigeneratedVerdict v;
  v.d_I = h.d_I;
  v.d_J = h.d_J;
  v.compared_indices = h.dim_R_mod_I;
  if (h.d_I != h.d_J) return v;
  const auto ra = detail::evaluate_all<RAMultiplicities>(
      options.parallel, [&] { return ra_multiplicities(i); }, [&] { return ra_multiplicities(j); });
  v.ra_I = ra[0];
  v.ra_J = ra[1];
  v.closures_equal = true;
  for (std::size_t k = 0; k < h.dim_R_mod_I; ++k) {
    if (ra[0].values[k] != ra[1].values[k]) v.closures_equal = false;
  }
  return v;
}

struct MixedRow {
  std::size_t index = 0;
  std::int64_t value_I = 0;
  std::int64_t value_J = 0;
  bool equal = false;
  bool forced_equal = false;  // outside the sharp range; both sides are β^i e
};

struct MixedReport {
  std::uint32_t beta = 0;
  std::uint32_t s_sample_c = 0;
  RAMultiplicities ra_I;
  RAMultiplicities ra_J;
  RAMultiplicities s_ra_I;
  RAMultiplicities s_ra_J;
  std::vector<MixedRow> r_table;
  std::vector<MixedRow> s_table;
  bool sharp_range = false;
  bool closures_equal = false;
  bool finite_colength = false;
};

struct MixedOptions {
  /// Aggregate only indices inside the sharp ranges instead of all indices.
  bool sharp_range = false;
  /// S-diagonal sample abscissa for the lifted S-side values; 0 selects d + 1.
  std::uint32_t c = 0;
  bool parallel = true;
  bool domain_asserted = false;
};

namespace detail {

inline std::vector<MixedRow> mixed_table(const MixedMultiplicities& a, const MixedMultiplicities& b,
                                         std::size_t first_sharp) {
  std::vector<MixedRow> rows;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    rows.push_back({k, a.values[k], b.values[k], a.values[k] == b.values[k], k < first_sharp});
  }
  return rows;
}

inline bool table_verdict(const std::vector<MixedRow>& rows, bool sharp) {
  for (const MixedRow& r : rows) {
    if (sharp && r.forced_equal) continue;
    if (!r.equal) return false;
  }
  return true;
}

}  // namespace detail

/// Mixed multiplicities of ⟨I_d⟩, ⟨J_d⟩ in R (indices 0..D-1) and of the
/// extended ideals in S (indices 0..D), compared entrywise.
inline MixedReport mixed_report(const GradedIdeal& i, const GradedIdeal& j, const MixedOptions& options = {}) {
  const HypothesisReport h = validate_hypotheses(i, j, options.domain_asserted);
  MixedReport rep;
  rep.beta = h.d;
  rep.sharp_range = options.sharp_range;
  CheckOptions co;
  co.c = options.c;
  rep.s_sample_c = detail::choose_c(h, co);
  SExtension ext = extend_to_S(i.ring(), {i, j});
  const std::uint32_t c = rep.s_sample_c;
  const auto ra = detail::evaluate_all<RAMultiplicities>(
      options.parallel, [&] { return ra_multiplicities(i); }, [&] { return ra_multiplicities(j); });
  const auto s = detail::evaluate_all<DiagonalDegree>(
      options.parallel, [&] { return diagonal_degree(ext.ideals[0], c); },
      [&] { return diagonal_degree(ext.ideals[1], c); });
  rep.ra_I = ra[0];
  rep.ra_J = ra[1];
  rep.s_ra_I = lift_ra_to_S(ra[0], s[0]);
  rep.s_ra_J = lift_ra_to_S(ra[1], s[1]);
  assert_ra_structure(rep.s_ra_I, ext.ideals[0]);
  assert_ra_structure(rep.s_ra_J, ext.ideals[1]);

  const std::size_t dim = h.dim_R;
  // sharp ranges: d - dim R/I <= i <= d - 1 in R and d - dim R/I <= j <= d in S
  const std::size_t first_sharp = dim - h.dim_R_mod_I;
  rep.r_table = detail::mixed_table(mixed_multiplicities(i, rep.ra_I, rep.beta),
                                    mixed_multiplicities(j, rep.ra_J, rep.beta), first_sharp);
  rep.s_table = detail::mixed_table(mixed_multiplicities(ext.ideals[0], rep.s_ra_I, rep.beta),
                                    mixed_multiplicities(ext.ideals[1], rep.s_ra_J, rep.beta), first_sharp);
  for (const auto* table : {&rep.r_table, &rep.s_table}) {
    for (const MixedRow& r : *table) {
      if (r.forced_equal && !r.equal) throw EngineError("forced-equal mixed multiplicity differs");
    }
  }
  rep.finite_colength = detail::table_verdict(rep.r_table, options.sharp_range);
  rep.closures_equal = rep.finite_colength && detail::table_verdict(rep.s_table, options.sharp_range);
  return rep;
}

}  // namespace intdep
