#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "intdep/errors.hpp"
#include "intdep/hilbert.hpp"
#include "intdep/ideal_ops.hpp"
#include "intdep/ring.hpp"

namespace intdep {

namespace detail {

inline std::int64_t to_int64(const mpz_class& v, const char* what) {
  if (!v.fits_slong_p()) throw EngineError(std::string(what) + " does not fit in 64 bits");
  return v.get_si();
}

inline std::int64_t to_int64(const mpq_class& v, const char* what) {
  if (v.get_den() != 1) throw EngineError(std::string(what) + " is not an integer: " + v.get_str());
  return to_int64(v.get_num(), what);
}

inline mpz_class factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

/// Exact solve of a square rational system by Gauss-Jordan elimination.
inline std::vector<mpq_class> solve(std::vector<std::vector<mpq_class>> a, std::vector<mpq_class> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) throw EngineError("singular interpolation system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const mpq_class f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<mpq_class> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace detail

/// The standard graded subalgebra k[I_c] ≅ ⊕_n (I^n)_{cn}, presented as a
/// quotient of a free ring on a basis of I_c.
struct FiberCone {
  std::uint32_t c = 0;
  std::vector<Polynomial> basis;
  KernelPresentation presentation;
  HilbertSeries series;
  HilbertPolynomial polynomial;
};

inline FiberCone fiber_cone(const GradedIdeal& ideal, std::uint32_t c) {
  if (ideal.is_zero()) throw PreconditionError("fiber_cone: zero ideal");
  if (c < ideal.max_generating_degree()) throw PreconditionError("fiber_cone: c below the generating degree");
  FiberCone fc;
  fc.c = c;
  fc.basis = degree_piece_basis(ideal, c);
  std::vector<std::string> symbols;
  for (std::size_t j = 0; j < fc.basis.size(); ++j) symbols.push_back("t" + std::to_string(j + 1));
  fc.presentation = kernel_presentation(ideal.ring(), fc.basis, symbols);
  fc.series = quotient_hilbert_series(fc.presentation.kernel);
  fc.polynomial = hilbert_polynomial(fc.series);
  return fc;
}

struct DiagonalDegree {
  std::uint32_t c = 0;
  std::int64_t value = 0;
};

/// e(R[It]_{Δ(c,1)}) for an integer c > d(I), via the fiber cone k[I_c].
inline DiagonalDegree diagonal_degree(const GradedIdeal& ideal, std::uint32_t c) {
  if (ideal.is_zero()) throw PreconditionError("diagonal_degree: zero ideal");
  if (c <= ideal.max_generating_degree()) {
    throw PreconditionError("diagonal_degree: c = " + std::to_string(c) + " must exceed d(I) = " +
                            std::to_string(ideal.max_generating_degree()));
  }
  const FiberCone fc = fiber_cone(ideal, c);
  if (fc.polynomial.krull_dim != ideal.ring()->dimension()) {
    throw EngineError("diagonal subalgebra has dimension " + std::to_string(fc.polynomial.krull_dim) +
                      ", ring has dimension " + std::to_string(ideal.ring()->dimension()));
  }
  return {c, detail::to_int64(fc.polynomial.multiplicity, "diagonal degree")};
}

struct FiberPieceRow {
  unsigned n = 0;
  mpz_class from_series;
  std::size_t direct = 0;
  bool match() const { return from_series == direct; }
};

/// Compares the degree-n Hilbert function of k[I_c] with the direct length
/// ℓ((I^n)_{cn}) for n = 1..n_max.
inline std::vector<FiberPieceRow> fiber_piece_agreement(const GradedIdeal& ideal, std::uint32_t c, unsigned n_max) {
  const FiberCone fc = fiber_cone(ideal, c);
  const auto coeffs = fc.series.expand(n_max);
  std::vector<FiberPieceRow> rows;
  for (unsigned n = 1; n <= n_max; ++n) rows.push_back({n, coeffs[n], graded_piece_length(ideal, n, c * n)});
  return rows;
}

/// e_0(R[It]), ..., e_{D-1}(R[It]).
struct RAMultiplicities {
  std::vector<std::int64_t> values;
  bool operator==(const RAMultiplicities&) const = default;
};

/// e_0(m|⟨I_β⟩), ..., e_{D-1}(m|⟨I_β⟩).
struct MixedMultiplicities {
  std::uint32_t beta = 0;
  std::vector<std::int64_t> values;
  bool operator==(const MixedMultiplicities&) const = default;
};

inline mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// Σ_i C(D-1, i) e_i c^i: the diagonal degree the RA-multiplicities predict at c.
inline mpz_class predicted_diagonal_degree(const RAMultiplicities& ra, std::uint32_t c) {
  const std::size_t dim = ra.values.size();
  mpz_class total = 0;
  mpz_class power = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    total += binomial(dim - 1, i) * ra.values[i] * power;
    power *= c;
  }
  return total;
}

/// Solves Σ_i C(D-1,i) e_i c_k^i = value_k for the e_i.
inline RAMultiplicities interpolate_ra(const std::vector<DiagonalDegree>& samples) {
  const std::size_t dim = samples.size();
  std::vector<std::vector<mpq_class>> a(dim, std::vector<mpq_class>(dim));
  std::vector<mpq_class> b(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    mpq_class power = 1;
    for (std::size_t i = 0; i < dim; ++i) {
      a[k][i] = mpq_class(binomial(dim - 1, i)) * power;
      power *= samples[k].c;
    }
    b[k] = samples[k].value;
  }
  RAMultiplicities ra;
  for (const mpq_class& x : detail::solve(std::move(a), std::move(b))) {
    ra.values.push_back(detail::to_int64(x, "RA-multiplicity"));
  }
  return ra;
}

struct RAOptions {
  /// First sample abscissa; 0 selects d(I) + 1.
  std::uint32_t first_sample = 0;
};

/// Checks e_{D-1} = e(R) and e_i = 0 for dim(R/I) <= i <= D-2.
inline void assert_ra_structure(const RAMultiplicities& ra, const GradedIdeal& ideal) {
  const Ring& ring = ideal.ring();
  const std::size_t dim = ring->dimension();
  if (ra.values.size() != dim) throw EngineError("RA vector has the wrong length");
  if (ra.values.back() != detail::to_int64(ring->multiplicity(), "e(R)")) {
    throw EngineError("top RA-multiplicity " + std::to_string(ra.values.back()) + " differs from e(R)");
  }
  const std::size_t quotient_dim = dim_and_degree(ideal).dim;
  for (std::size_t i = quotient_dim; i + 2 <= dim; ++i) {
    if (ra.values[i] != 0) throw EngineError("RA-multiplicity e_" + std::to_string(i) + " should vanish");
  }
}

inline void require_proper_height(const GradedIdeal& ideal) {
  if (ideal.is_zero()) throw PreconditionError("ideal must be nonzero");
  const std::size_t dim = ideal.ring()->dimension();
  const std::size_t h = height(ideal);
  if (h == 0 || h >= dim) {
    throw PreconditionError("ideal height " + std::to_string(h) + " must lie strictly between 0 and " +
                            std::to_string(dim));
  }
}

/// RA-multiplicities by exact interpolation of D diagonal degrees at
/// consecutive abscissas above d(I).
inline RAMultiplicities ra_multiplicities(const GradedIdeal& ideal, const RAOptions& options = {}) {
  require_proper_height(ideal);
  const std::uint32_t d = ideal.max_generating_degree();
  const std::uint32_t first = options.first_sample == 0 ? d + 1 : options.first_sample;
  if (first <= d) throw PreconditionError("sample abscissas must exceed d(I)");
  const std::size_t dim = ideal.ring()->dimension();
  std::vector<DiagonalDegree> samples;
  for (std::size_t k = 0; k < dim; ++k) samples.push_back(diagonal_degree(ideal, first + static_cast<std::uint32_t>(k)));
  RAMultiplicities ra = interpolate_ra(samples);
  assert_ra_structure(ra, ideal);
  return ra;
}

/// e_i(m|⟨I_β⟩) = Σ_{j<=i} C(i,j) β^j e_{D-1-i+j}(R[It]).
inline MixedMultiplicities mixed_from_ra(const RAMultiplicities& ra, std::uint32_t beta) {
  const std::size_t dim = ra.values.size();
  MixedMultiplicities mm{beta, {}};
  for (std::size_t i = 0; i < dim; ++i) {
    mpz_class total = 0;
    mpz_class power = 1;
    for (std::size_t j = 0; j <= i; ++j) {
      total += binomial(i, j) * power * ra.values[dim - 1 - i + j];
      power *= beta;
    }
    mm.values.push_back(detail::to_int64(total, "mixed multiplicity"));
  }
  return mm;
}

/// e_i(R[It]) = Σ_{j<=D-1-i} (-1)^j C(D-1-i,j) β^j e_{D-1-i-j}(m|⟨I_β⟩).
inline RAMultiplicities ra_from_mixed(const MixedMultiplicities& mm) {
  const std::size_t dim = mm.values.size();
  RAMultiplicities ra;
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t top = dim - 1 - i;
    mpz_class total = 0;
    mpz_class power = 1;
    for (std::size_t j = 0; j <= top; ++j) {
      mpz_class term = binomial(top, j) * power * mm.values[top - j];
      total += (j % 2 == 0) ? term : mpz_class(-term);
      power *= mm.beta;
    }
    ra.values.push_back(detail::to_int64(total, "RA-multiplicity"));
  }
  return ra;
}

/// Mixed multiplicities from known RA-multiplicities, with the inverse
/// transform and the forced values e_j = β^j e(R) (j < D - dim R/I) checked.
inline MixedMultiplicities mixed_multiplicities(const GradedIdeal& ideal, const RAMultiplicities& ra,
                                                std::uint32_t beta) {
  if (beta < ideal.max_generating_degree()) {
    throw PreconditionError("mixed_multiplicities: beta = " + std::to_string(beta) + " is below d(I) = " +
                            std::to_string(ideal.max_generating_degree()));
  }
  MixedMultiplicities mm = mixed_from_ra(ra, beta);
  if (!(ra_from_mixed(mm) == ra)) throw EngineError("mixed/RA conversion roundtrip failed");
  const Ring& ring = ideal.ring();
  const std::size_t dim = ring->dimension();
  const std::size_t quotient_dim = dim_and_degree(ideal).dim;
  mpz_class forced = ring->multiplicity();
  for (std::size_t j = 0; j + quotient_dim < dim; ++j) {
    if (mm.values[j] != forced) throw EngineError("forced mixed multiplicity e_" + std::to_string(j) + " mismatch");
    forced *= beta;
  }
  return mm;
}

inline MixedMultiplicities mixed_multiplicities(const GradedIdeal& ideal, std::uint32_t beta) {
  if (!ideal.is_zero() && beta < ideal.max_generating_degree()) {
    throw PreconditionError("mixed_multiplicities: beta = " + std::to_string(beta) + " is below d(I) = " +
                            std::to_string(ideal.max_generating_degree()));
  }
  return mixed_multiplicities(ideal, ra_multiplicities(ideal), beta);
}

/// S = R[T] with T of degree one, and ideals of R re-read in S.
struct SExtension {
  Ring ring;
  std::string new_variable;
  std::vector<GradedIdeal> ideals;
  std::optional<std::string> note;
};

inline SExtension extend_to_S(const Ring& ring, const std::vector<GradedIdeal>& ideals,
                              const std::string& preferred = "T") {
  std::string name = preferred;
  std::optional<std::string> note;
  for (int k = 0; ring->index_of(name); ++k) name = preferred + std::to_string(k);
  if (name != preferred) note = "variable " + preferred + " already used; extension variable renamed to " + name;
  const std::size_t n = ring->nvars() + 1;
  std::vector<std::string> vars = ring->variables();
  vars.push_back(name);
  std::vector<Polynomial> relations;
  for (const Polynomial& r : ring->relations()) relations.push_back(r.embed(n));
  SExtension ext{RingSpec::make(ring->field(), vars, relations), name, {}, note};
  for (const GradedIdeal& ideal : ideals) {
    if (!ideal.ring()->same_as(*ring)) throw std::invalid_argument("extend_to_S: ideal from another ring");
    std::vector<Polynomial> gens;
    for (const Polynomial& g : ideal.generators()) gens.push_back(g.embed(n));
    ext.ideals.emplace_back(ext.ring, gens);
  }
  return ext;
}

/// RA-multiplicities of IS in S = R[T] from those of I in R and a single
/// S-diagonal degree: since d/dc of the S-diagonal degree is dim R times the
/// R-diagonal degree, e_i(S[IS t]) = e_{i-1}(R[It]) for i >= 1, and e_0 is
/// fixed by the sample.
inline RAMultiplicities lift_ra_to_S(const RAMultiplicities& ra, const DiagonalDegree& s_sample) {
  const std::size_t dim = ra.values.size() + 1;
  RAMultiplicities out;
  out.values.assign(dim, 0);
  for (std::size_t i = 1; i < dim; ++i) out.values[i] = ra.values[i - 1];
  mpz_class rest = 0;
  mpz_class power = s_sample.c;
  for (std::size_t i = 1; i < dim; ++i) {
    rest += binomial(dim - 1, i) * out.values[i] * power;
    power *= s_sample.c;
  }
  out.values[0] = detail::to_int64(mpz_class(s_sample.value - rest), "lifted RA-multiplicity");
  return out;
}

/// ε(I) - ε(J) for I ⊆ J whose closures differ by finite length, read off
/// the S-diagonal degrees at c: e(S[Jt]_Δ) - e(S[It]_Δ).
inline std::int64_t epsilon_difference(const GradedIdeal& i, const GradedIdeal& j, std::uint32_t c) {
  i.check_same_ring(j);
  if (!j.contains(i)) throw PreconditionError("epsilon_difference: I is not contained in J");
  const std::uint32_t bound = std::max(i.max_generating_degree(), j.max_generating_degree());
  if (c <= bound) throw PreconditionError("epsilon_difference: c must exceed max(d(I), d(J))");
  if (diagonal_degree(i, c).value != diagonal_degree(j, c).value) {
    throw PreconditionError("epsilon_difference: closures do not agree up to finite length at c = " +
                            std::to_string(c));
  }
  SExtension ext = extend_to_S(i.ring(), {i, j});
  const std::int64_t ei = diagonal_degree(ext.ideals[0], c).value;
  const std::int64_t ej = diagonal_degree(ext.ideals[1], c).value;
  const std::int64_t diff = ej - ei;
  if (diff < 0) throw EngineError("negative epsilon difference");
  return diff;
}

struct DensitySample {
  unsigned n = 0;
  mpq_class x;
  mpq_class adic_value;
  mpq_class saturated_value;
};

/// f_n(x) = d!·ℓ((I^n)_{⌊xn⌋})/n^{d-1} and the same for the saturation of I^n.
inline DensitySample density_sample(const GradedIdeal& ideal, unsigned n, const mpq_class& x) {
  if (n == 0) throw PreconditionError("density_sample: n must be positive");
  if (sgn(x) < 0) throw PreconditionError("density_sample: x must be nonnegative");
  const Ring& ring = ideal.ring();
  const unsigned dim = static_cast<unsigned>(ring->dimension());
  if (dim == 0) throw PreconditionError("density_sample: ring of dimension zero");
  mpz_class m = mpz_class(x.get_num() * n) / x.get_den();  // floor, x >= 0
  if (!m.fits_ulong_p() || m > 60000) throw PreconditionError("density_sample: degree out of range");
  const auto degree = static_cast<std::uint32_t>(m.get_ui());
  const GradedIdeal power = ideal_power(ideal, n);
  const GradedIdeal saturated = saturate(power, GradedIdeal::maximal(ring));
  mpz_class scale_den;
  mpz_ui_pow_ui(scale_den.get_mpz_t(), n, dim - 1);
  const mpq_class scale(detail::factorial(dim), scale_den);
  DensitySample s;
  s.n = n;
  s.x = x;
  s.adic_value = scale * mpq_class(static_cast<unsigned long>(piece_length(power, degree)));
  s.saturated_value = scale * mpq_class(static_cast<unsigned long>(piece_length(saturated, degree)));
  s.adic_value.canonicalize();
  s.saturated_value.canonicalize();
  return s;
}

/// d·Σ_i C(d-1,i) e_i x^i, valid for x >= d(I).
inline mpq_class asymptotic_density_at(const GradedIdeal& ideal, const RAMultiplicities& ra, const mpq_class& x) {
  if (x < ideal.max_generating_degree()) {
    throw PreconditionError("asymptotic_density_at: x below d(I); only finite-n sampling applies there");
  }
  const std::size_t dim = ra.values.size();
  mpq_class total = 0;
  mpq_class power = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    total += mpq_class(binomial(dim - 1, i) * ra.values[i]) * power;
    power *= x;
  }
  return total * static_cast<unsigned long>(dim);
}

inline mpq_class asymptotic_density_at(const GradedIdeal& ideal, const mpq_class& x) {
  if (x < ideal.max_generating_degree()) {
    throw PreconditionError("asymptotic_density_at: x below d(I); only finite-n sampling applies there");
  }
  return asymptotic_density_at(ideal, ra_multiplicities(ideal), x);
}

}  // namespace intdep
