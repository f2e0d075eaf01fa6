#include <gtest/gtest.h>

#include "corpus.hpp"
#include "intdep/multiplicity.hpp"

using namespace intdep;

namespace {

GradedIdeal line() {
  Ring r = corpus::plane();
  return GradedIdeal(r, {r->var(0)});
}

std::vector<std::int64_t> v(std::initializer_list<std::int64_t> xs) { return xs; }

}  // namespace

TEST(DiagonalDegree, LineClosedForm) {
  for (std::uint32_t c = 2; c <= 6; ++c) EXPECT_EQ(diagonal_degree(line(), c).value, c - 1) << "c=" << c;
}

TEST(DiagonalDegree, PlaneExample) {
  const corpus::Pair p = corpus::ex71();
  EXPECT_EQ(diagonal_degree(p.I, 4).value, 3);
  EXPECT_EQ(diagonal_degree(p.J, 4).value, 3);
}

TEST(DiagonalDegree, CubicConeExample) {
  const corpus::Pair p = corpus::ex64();
  EXPECT_EQ(diagonal_degree(p.I, 3).value, 7);
  EXPECT_EQ(diagonal_degree(p.J, 3).value, 8);
}

TEST(DiagonalDegree, RejectsSmallC) {
  const corpus::Pair p = corpus::ex71();
  EXPECT_THROW(diagonal_degree(p.I, 3), PreconditionError);
  EXPECT_THROW(diagonal_degree(GradedIdeal(p.I.ring(), {}), 3), PreconditionError);
}

TEST(DiagonalDegree, MonotoneUnderInclusion) {
  for (const corpus::Pair& p : corpus::checker_corpus()) {
    const std::uint32_t c = std::max(p.I.max_generating_degree(), p.J.max_generating_degree()) + 1;
    EXPECT_LE(diagonal_degree(p.I, c).value, diagonal_degree(p.J, c).value) << p.name;
  }
}

TEST(FiberPieces, AgreeWithDirectLengths) {
  for (const auto& [name, ideal] : corpus::ideal_corpus()) {
    const std::uint32_t c = ideal.max_generating_degree() + 1;
    for (const FiberPieceRow& row : fiber_piece_agreement(ideal, c, 3)) {
      EXPECT_TRUE(row.match()) << name << " n=" << row.n << " " << row.from_series.get_str() << " vs " << row.direct;
    }
  }
}

TEST(RAMultiplicities, WorkedExamples) {
  const corpus::Pair plane = corpus::ex71();
  EXPECT_EQ(ra_multiplicities(plane.I).values, v({-1, 1}));
  EXPECT_EQ(ra_multiplicities(plane.J).values, v({-1, 1}));
  const corpus::Pair cone = corpus::ex64();
  EXPECT_EQ(ra_multiplicities(cone.I).values, v({-2, 3}));
  EXPECT_EQ(ra_multiplicities(cone.J).values, v({-1, 3}));
  EXPECT_EQ(ra_multiplicities(line()).values, v({-1, 1}));
}

TEST(RAMultiplicities, PredictsFurtherDiagonals) {
  const corpus::Pair cone = corpus::ex64();
  const RAMultiplicities ra = ra_multiplicities(cone.I);
  EXPECT_EQ(predicted_diagonal_degree(ra, 5), diagonal_degree(cone.I, 5).value);
}

TEST(RAMultiplicities, SampleSetIndependence) {
  for (const auto& [name, ideal] : corpus::ideal_corpus()) {
    if (height(ideal) >= ideal.ring()->dimension()) continue;
    RAOptions later;
    later.first_sample = ideal.max_generating_degree() + 2;
    EXPECT_EQ(ra_multiplicities(ideal), ra_multiplicities(ideal, later)) << name;
  }
}

TEST(RAMultiplicities, RejectsImproperHeight) {
  Ring r = corpus::plane();
  EXPECT_THROW(ra_multiplicities(GradedIdeal::maximal(r)), PreconditionError);
  EXPECT_THROW(ra_multiplicities(GradedIdeal(r, {})), PreconditionError);
  RAOptions bad;
  bad.first_sample = 1;
  EXPECT_THROW(ra_multiplicities(line(), bad), PreconditionError);
}

TEST(RAMultiplicities, StructureAssertionCatchesBadVectors) {
  const GradedIdeal l = line();
  EXPECT_NO_THROW(assert_ra_structure({{-1, 1}}, l));
  EXPECT_THROW(assert_ra_structure({{-1, 2}}, l), EngineError);
  EXPECT_THROW(assert_ra_structure({{1}}, l), EngineError);
  // a line in Q[x,y,z]: e_1 must vanish
  const corpus::Pair sq = corpus::squares();
  EXPECT_THROW(assert_ra_structure({{-3, 1, 1}}, sq.I), EngineError);
}

TEST(Interpolation, NonIntegralSolutionRejected) {
  EXPECT_THROW(interpolate_ra({{2, 1}, {3, 2}, {4, 4}}), EngineError);
  EXPECT_EQ(interpolate_ra({{2, 1}, {3, 2}}).values, v({-1, 1}));
}

TEST(Mixed, WorkedExamples) {
  const corpus::Pair cone = corpus::ex64();
  EXPECT_EQ(mixed_multiplicities(cone.I, 2).values, v({3, 4}));
  EXPECT_EQ(mixed_multiplicities(cone.J, 1).values, v({3, 2}));
  EXPECT_EQ(mixed_multiplicities(cone.J, 2).values, v({3, 5}));
  EXPECT_THROW(mixed_multiplicities(cone.I, 1), PreconditionError);
}

TEST(Mixed, RoundTrip) {
  for (const RAMultiplicities& ra : {RAMultiplicities{{-2, 3}}, RAMultiplicities{{-1, 1}}, RAMultiplicities{{5, 0, 2}},
                                     RAMultiplicities{{-7, 4, 0, 1}}}) {
    for (std::uint32_t beta = 1; beta <= 5; ++beta) EXPECT_EQ(ra_from_mixed(mixed_from_ra(ra, beta)), ra);
  }
}

TEST(SExtension, Shapes) {
  const corpus::Pair plane = corpus::ex71();
  const SExtension ext = extend_to_S(plane.I.ring(), {plane.I, plane.J});
  EXPECT_EQ(ext.ring->variables(), (std::vector<std::string>{"X", "Y", "T"}));
  EXPECT_EQ(ext.ring->dimension(), 3u);
  EXPECT_FALSE(ext.note);
  EXPECT_EQ(ext.ideals[0].max_generating_degree(), plane.I.max_generating_degree());
  const corpus::Pair cone = corpus::ex64();
  const SExtension cext = extend_to_S(cone.I.ring(), {cone.I});
  EXPECT_EQ(cext.ring->dimension(), 3u);
  EXPECT_EQ(cext.ring->multiplicity(), 3);
}

TEST(SExtension, RenamesOnCollision) {
  Ring r = RingSpec::make(Field::rationals(), {"T", "T0"});
  const SExtension ext = extend_to_S(r, {GradedIdeal(r, {r->var(0)})});
  EXPECT_EQ(ext.new_variable, "T1");
  ASSERT_TRUE(ext.note);
  EXPECT_NE(ext.note->find("T1"), std::string::npos);
}

TEST(SExtension, PieceLengthsAccumulate) {
  const corpus::Pair plane = corpus::ex71();
  const SExtension ext = extend_to_S(plane.I.ring(), {plane.I});
  std::size_t sum = 0;
  for (std::uint32_t m = 0; m <= 4; ++m) sum += piece_length(plane.I, m);
  EXPECT_EQ(sum, 8u);
  EXPECT_EQ(piece_length(ext.ideals[0], 4), 8u);
  for (unsigned n = 1; n <= 2; ++n) {
    std::size_t acc = 0;
    for (std::uint32_t m = 0; m <= 4 * n; ++m) acc += graded_piece_length(plane.I, n, m);
    EXPECT_EQ(graded_piece_length(ext.ideals[0], n, 4 * n), acc) << "n=" << n;
  }
}

TEST(SExtension, LiftMatchesFullInterpolation) {
  const corpus::Pair plane = corpus::ex71();
  const SExtension ext = extend_to_S(plane.I.ring(), {plane.I, plane.J});
  for (std::size_t k = 0; k < 2; ++k) {
    const GradedIdeal& base = k == 0 ? plane.I : plane.J;
    const RAMultiplicities lifted = lift_ra_to_S(ra_multiplicities(base), diagonal_degree(ext.ideals[k], 4));
    EXPECT_EQ(lifted, ra_multiplicities(ext.ideals[k]));
  }
}

TEST(Epsilon, Examples) {
  const corpus::Pair plane = corpus::ex71();
  EXPECT_EQ(epsilon_difference(plane.I, plane.J, 4), 1);
  EXPECT_EQ(epsilon_difference(plane.I, plane.I, 4), 0);
  EXPECT_THROW(epsilon_difference(plane.J, plane.I, 4), PreconditionError);
  EXPECT_THROW(epsilon_difference(plane.I, plane.J, 3), PreconditionError);
}

TEST(Epsilon, CubicConePairFailsPrecondition) {
  // the R-diagonals differ (7 vs 8), so no finite-length comparison exists
  const corpus::Pair cone = corpus::ex64();
  EXPECT_THROW(epsilon_difference(cone.I, cone.J, 3), PreconditionError);
}

TEST(Density, Examples) {
  const DensitySample a = density_sample(line(), 5, 2);
  EXPECT_EQ(a.adic_value, mpq_class(12, 5));
  const DensitySample b = density_sample(corpus::ex71().I, 2, 3);
  EXPECT_EQ(b.adic_value, 5);
  EXPECT_EQ(density_sample(corpus::ex71().I, 3, mpq_class(1, 2)).adic_value, 0);
  EXPECT_THROW(density_sample(line(), 0, 1), PreconditionError);
  EXPECT_THROW(density_sample(line(), 1, -1), PreconditionError);
}

TEST(Density, AdicBelowSaturated) {
  const corpus::Pair plane = corpus::ex71();
  for (unsigned n = 1; n <= 4; ++n) {
    for (int num = 0; num <= 16; num += 3) {
      const DensitySample s = density_sample(plane.I, n, mpq_class(num, 4));
      EXPECT_LE(s.adic_value, s.saturated_value) << "n=" << n << " x=" << num << "/4";
    }
  }
}

TEST(Density, LineTrendWithinBound) {
  for (unsigned c = 2; c <= 4; ++c) {
    for (unsigned n = 1; n <= 20; ++n) {
      mpq_class gap = density_sample(line(), n, c).adic_value - 2 * (c - 1);
      if (gap < 0) gap = -gap;
      EXPECT_LE(gap, mpq_class(2, n)) << "c=" << c << " n=" << n;
    }
  }
}

TEST(AsymptoticDensity, Examples) {
  EXPECT_EQ(asymptotic_density_at(line(), 3), 4);
  EXPECT_EQ(asymptotic_density_at(corpus::ex71().I, 4), 6);
  EXPECT_EQ(asymptotic_density_at(corpus::ex64().I, 3), 14);
  EXPECT_THROW(asymptotic_density_at(corpus::ex71().I, 2), PreconditionError);
}

TEST(AsymptoticDensity, MatchesLargeNSaturatedSamples) {
  // for x >= d(I) the saturated density at finite n approaches d * e(diagonal)
  const corpus::Pair plane = corpus::ex71();
  const mpq_class target = asymptotic_density_at(plane.I, 4);
  const DensitySample s = density_sample(plane.I, 12, 4);
  mpq_class gap = s.saturated_value - target;
  if (gap < 0) gap = -gap;
  EXPECT_LE(gap, mpq_class(1, 2));
}
