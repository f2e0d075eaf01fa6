#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "intdep/ideal_ops.hpp"

using namespace intdep;

namespace {

Monomial mono(std::vector<long long> e) { return Monomial::from_exponents(e); }

IntPoly ints(std::initializer_list<long> v) {
  IntPoly out;
  for (long c : v) out.emplace_back(c);
  return out;
}

/// Count of standard monomials of degree m, by enumeration.
std::size_t standard_count(const MonomialIdeal& ideal, unsigned m) {
  std::size_t n = 0;
  for (const Monomial& mu : monomials_of_degree(ideal.nvars, m)) n += ideal.contains(mu) ? 0 : 1;
  return n;
}

MonomialIdeal random_monomial_ideal(std::mt19937& rng, std::size_t nvars) {
  MonomialIdeal out{nvars, {}};
  const int count = std::uniform_int_distribution<int>(1, 5)(rng);
  for (int k = 0; k < count; ++k) {
    std::vector<long long> e(nvars);
    for (auto& x : e) x = std::uniform_int_distribution<int>(0, 3)(rng);
    if (std::all_of(e.begin(), e.end(), [](long long x) { return x == 0; })) e[0] = 1;
    out.gens.push_back(Monomial::from_exponents(e));
  }
  return out;
}

}  // namespace

TEST(InitialIdeal, Examples) {
  Ring r = RingSpec::make(Field::rationals(), {"x", "y"});
  const auto x = r->var(0), y = r->var(1);
  const MonomialIdeal in = initial_ideal(GradedIdeal(r, {x * x + y * y, x * y}));
  EXPECT_EQ(in, (MonomialIdeal{2, {mono({2, 0}), mono({1, 1}), mono({0, 3})}}.minimalized()));
  const MonomialIdeal cone = initial_ideal(GradedIdeal::unit(corpus::cubic_cone()));
  EXPECT_EQ(cone.gens.size(), 1u);
  EXPECT_TRUE(cone.gens[0].is_one());
}

TEST(InitialIdeal, ContainsRelationLeadTerm) {
  const corpus::Pair p = corpus::ex64();
  const MonomialIdeal in = initial_ideal(p.J);
  // the cubic relation already lies in (x + y, z), so in(J) = (x, z) and y is free
  EXPECT_EQ(in, (MonomialIdeal{3, {mono({1, 0, 0}), mono({0, 0, 1})}}.minimalized()));
  EXPECT_FALSE(in.contains(mono({0, 7, 0})));
}

TEST(HilbertSeriesExamples, PolynomialRings) {
  for (std::size_t v = 1; v <= 4; ++v) {
    const HilbertSeries hs = hilbert_series(MonomialIdeal{v, {}});
    EXPECT_EQ(hs.numerator, ints({1}));
    EXPECT_EQ(hs.denominator_power, v);
  }
}

TEST(HilbertSeriesExamples, HypersurfaceAndCompleteIntersection) {
  // k[x,y,z]/(x^3): (1 - t^3)/(1 - t)^3
  const HilbertSeries cubic = hilbert_series(MonomialIdeal{3, {mono({3, 0, 0})}});
  EXPECT_EQ(cubic.numerator, ints({1, 0, 0, -1}));
  // (x^2, y^2) in k[x,y]: (1 - t^2)^2 / (1 - t)^2
  const HilbertSeries ci = hilbert_series(MonomialIdeal{2, {mono({2, 0}), mono({0, 2})}});
  EXPECT_EQ(ci.numerator, ints({1, 0, -2, 0, 1}));
  EXPECT_EQ(ci.expand(4), (std::vector<mpz_class>{1, 2, 1, 0, 0}));
}

TEST(HilbertSeriesExamples, MixedGenerators) {
  // (x^2, xy^2) in k[x,y]: h = 1 - t^2 - t^3 + t^4 over (1-t)^2
  const HilbertSeries hs = hilbert_series(MonomialIdeal{2, {mono({2, 0}), mono({1, 2})}});
  EXPECT_EQ(hs.numerator, ints({1, 0, -1, -1, 1}));
  EXPECT_EQ(hs.expand(5), (std::vector<mpz_class>{1, 2, 2, 1, 1, 1}));
}

TEST(HilbertSeriesExamples, UnitIdeal) {
  const HilbertSeries hs = hilbert_series(MonomialIdeal{2, {mono({0, 0})}});
  EXPECT_EQ(hs.expand(3), (std::vector<mpz_class>{0, 0, 0, 0}));
}

TEST(HilbertSeriesExamples, AgreesWithEnumerationRandomized) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t v = 1 + trial % 4;
    const MonomialIdeal ideal = random_monomial_ideal(rng, v);
    const auto coeffs = hilbert_series(ideal).expand(10);
    for (unsigned m = 0; m <= 10; ++m) {
      EXPECT_EQ(coeffs[m], mpz_class(standard_count(ideal, m))) << "trial " << trial << " m=" << m;
    }
  }
}

TEST(HilbertPolynomialExamples, CubicCone) {
  const Ring r = corpus::cubic_cone();
  const HilbertPolynomial hp = hilbert_polynomial(r->hilbert_series());
  EXPECT_EQ(hp.krull_dim, 2u);
  EXPECT_EQ(hp.multiplicity, 3);
  // 3m for m >= 1
  for (long long m = 1; m <= 8; ++m) EXPECT_EQ(hp(m), mpq_class(static_cast<long>(3 * m)));
}

TEST(HilbertPolynomialExamples, PolynomialRingAndArtinian) {
  const HilbertPolynomial free3 = hilbert_polynomial(hilbert_series(MonomialIdeal{3, {}}));
  EXPECT_EQ(free3.krull_dim, 3u);
  EXPECT_EQ(free3.multiplicity, 1);
  for (long long m = 0; m <= 6; ++m) EXPECT_EQ(free3(m) * 2, mpq_class(static_cast<long>((m + 1) * (m + 2))));
  const HilbertPolynomial art = hilbert_polynomial(hilbert_series(MonomialIdeal{2, {mono({2, 0}), mono({0, 2})}}));
  EXPECT_EQ(art.krull_dim, 0u);
  EXPECT_EQ(art.multiplicity, 4);
}

TEST(HilbertPolynomialExamples, AgreesWithSeriesBeyondRegularity) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const MonomialIdeal ideal = random_monomial_ideal(rng, 2 + trial % 3);
    const HilbertSeries hs = hilbert_series(ideal);
    const HilbertPolynomial hp = hilbert_polynomial(hs);
    if (hp.krull_dim == 0) continue;
    const auto start = static_cast<std::size_t>(hp.regularity_bound);
    const auto coeffs = hs.expand(start + 6);
    for (std::size_t m = start; m < coeffs.size(); ++m) {
      EXPECT_EQ(hp(static_cast<long long>(m)), mpq_class(coeffs[m])) << "trial " << trial << " m=" << m;
    }
  }
}

TEST(DimAndDegree, Examples) {
  const corpus::Pair plane = corpus::ex71();
  const auto dd = dim_and_degree(plane.I);
  // (X^2, XY^2) = (X) ∩ (X^2, Y^2)
  EXPECT_EQ(dd.dim, 1u);
  EXPECT_EQ(dd.degree, 1);
  EXPECT_EQ(height(plane.I), 1u);
  const corpus::Pair cone = corpus::ex64();
  // R/J = k[y]; R/I = k[y,z]/(yz) since the relation becomes -3yz(y + z)
  EXPECT_EQ(dim_and_degree(cone.J).dim, 1u);
  EXPECT_EQ(dim_and_degree(cone.I).dim, 1u);
  EXPECT_EQ(dim_and_degree(cone.J).degree, 1);
  EXPECT_EQ(dim_and_degree(cone.I).degree, 2);
  const corpus::Pair sq = corpus::squares();
  EXPECT_EQ(dim_and_degree(sq.I).dim, 1u);
  EXPECT_EQ(dim_and_degree(sq.I).degree, 4);
}

TEST(GradedPieceLength, Examples) {
  const corpus::Pair plane = corpus::ex71();
  // (X^2, XY^2)_3 = <X^3, X^2Y, XY^2>
  EXPECT_EQ(piece_length(plane.I, 3), 3u);
  EXPECT_EQ(piece_length(plane.I, 1), 0u);
  EXPECT_EQ(graded_piece_length(plane.I, 2, 4), 1u);
  EXPECT_EQ(graded_piece_length(plane.I, 2, 6), 5u);
  const corpus::Pair cone = corpus::ex64();
  // (x + y, z)_1 spans two of the three linear forms
  EXPECT_EQ(piece_length(cone.J, 1), 2u);
  EXPECT_EQ(piece_length(cone.J, 3), 8u);
}

TEST(GradedPieceLength, QuotientSeriesMatchesDirectCount) {
  for (const auto& [name, ideal] : corpus::ideal_corpus()) {
    const auto quotient = quotient_hilbert_series(ideal).expand(8);
    const auto ambient = ideal.ring()->hilbert_series().expand(8);
    for (std::uint32_t m = 0; m <= 8; ++m) {
      EXPECT_EQ(mpz_class(piece_length(ideal, m)) + quotient[m], ambient[m]) << name << " m=" << m;
    }
  }
}
