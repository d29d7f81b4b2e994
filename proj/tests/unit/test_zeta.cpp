#include <gtest/gtest.h>

#include <chrono>

#include "k3aut/io.hpp"
#include "k3aut/zeta.hpp"
#include "oracles.hpp"

using namespace k3aut;

namespace {

const PublishedConstants& constants() {
  static const PublishedConstants pc = PublishedConstants::load_default();
  return pc;
}

PointCountSeries series(const std::string& key, std::size_t n = 0) {
  PointCountSeries s{3, constants().integers(key)};
  if (n) s.counts.resize(n);
  return s;
}

std::vector<unsigned> orbits(const std::string& key) {
  std::vector<unsigned> o;
  for (const Int& x : constants().integers(key)) o.push_back(static_cast<unsigned>(x.get_ui()));
  return o;
}

std::vector<Rat> matrix_power_traces(const IntMat& A, unsigned count) {
  std::vector<Rat> t;
  IntMat P = IntMat::identity(A.rows());
  for (unsigned k = 0; k < count; ++k) {
    P = P * A;
    Int s = 0;
    for (std::size_t i = 0; i < A.rows(); ++i) s += P(i, i);
    t.push_back(Rat(s));
  }
  return t;
}

RatPoly negate_variable(const RatPoly& f) {
  std::vector<Rat> c = f.coeffs();
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
  return RatPoly(c);
}

// t^d f(1/t) as an ascending coefficient list.
RatPoly reversed(const RatPoly& f, std::size_t d) {
  std::vector<Rat> c(d + 1);
  for (std::size_t k = 0; k <= d; ++k) c[d - k] = f.coeff(k);
  return RatPoly(c);
}

}  // namespace

TEST(Traces, FirstValues) {
  const auto tu = twisted_h2_traces(series("u3.counts", 2));
  EXPECT_EQ(tu[0], Rat(2));
  EXPECT_EQ(tu[1], Rat(4, 3));
  EXPECT_EQ(twisted_h2_traces(series("y3.counts", 1))[0], Rat(8, 3));
}

TEST(Traces, DenominatorsArePowersOfP) {
  for (const char* key : {"u3.counts", "y3.counts"})
    for (const Rat& t : twisted_h2_traces(series(key))) {
      Int d = t.get_den();
      while (d % 3 == 0) d /= 3;
      EXPECT_EQ(d, 1);
    }
}

TEST(Traces, SubspaceTrace) {
  const std::vector<unsigned> u{1, 1, 4};
  EXPECT_EQ(subspace_trace(u, 3), Rat(2));
  EXPECT_EQ(subspace_trace(u, 4), Rat(6));
  EXPECT_EQ(subspace_trace(u, 8), Rat(6));
  for (unsigned n = 1; n < 10; ++n) EXPECT_EQ(subspace_trace({1, 1, 1, 1}, n), Rat(4));
  EXPECT_EQ(subspace_trace({}, 5), Rat(0));
  EXPECT_EQ(subspace_charpoly({1, 1, 4}),
            RatPoly::from_ints({-1, 1}).pow(2) * (RatPoly::monomial(1, 4) - RatPoly::constant(1)));
}

TEST(Newton, TrivialQuadratic) {
  const auto c = newton_half({Rat(5)}, 2);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[1], Rat(-5));
  EXPECT_THROW(newton_half({Rat(5)}, 4), std::invalid_argument);
  EXPECT_THROW(newton_half({Rat(5)}, 3), std::invalid_argument);
}

TEST(Newton, RoundTripAgainstInterpolatedCharPoly) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 8;
    const IntMat A = oracle::random_matrix(rng, d, d, -4, 4);
    const RatPoly chi = oracle::charpoly_by_interpolation(A);
    // Newton coefficients c_0..c_d of a degree-d polynomial need d traces.
    const auto c = newton_half(matrix_power_traces(A, static_cast<unsigned>(d)), static_cast<unsigned>(2 * d));
    for (std::size_t k = 0; k <= d; ++k) ASSERT_EQ(c[k], chi.coeff(d - k)) << trial;
    const auto ps = power_sums(chi, 2 * static_cast<unsigned>(d));
    ASSERT_EQ(ps, matrix_power_traces(A, 2 * static_cast<unsigned>(d))) << trial;
  }
}

TEST(FunctionalEquation, PalindromicToy) {
  const auto r = complete_functional_equation({Rat(1), Rat(3), Rat(-2)}, 4);
  ASSERT_FALSE(r.ambiguous);
  EXPECT_EQ(r.signs.front(), 1);
  EXPECT_EQ(r.candidates.front(), RatPoly::from_ints({1, 3, -2, 3, 1}));
}

TEST(FunctionalEquation, ZeroMiddleIsAmbiguous) {
  const auto r = complete_functional_equation({Rat(1), Rat(3), Rat(0)}, 4);
  ASSERT_TRUE(r.ambiguous);
  ASSERT_EQ(r.candidates.size(), 2u);
  EXPECT_EQ(r.candidates[0], RatPoly::from_ints({1, 3, 0, 3, 1}));
  EXPECT_EQ(r.candidates[1], RatPoly::from_ints({-1, -3, 0, 3, 1}));
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(reversed(r.candidates[i], 4), r.candidates[i] * Rat(r.signs[i]));
}

TEST(UnitRoots, Examples) {
  EXPECT_EQ(unit_root_count(RatPoly::from_ints({1, -1442, 1})), 0u);
  EXPECT_EQ(unit_root_count(subspace_charpoly({1, 1, 4})), 6u);
  EXPECT_EQ(unit_root_count(RatPoly::from_ints({1, 0, 1}).pow(3) * RatPoly::from_ints({2, 1})), 6u);
}

TEST(Pipeline, TrivialSpec) {
  // Zero quotient traces in dimension 2 leave the sign open: t^2 + 1 or t^2 - 1.
  // Both have two unit roots, so with one known class the bound is 3.
  PointCountSeries s{5, {Int(5 * 5 + 1 + 5 * 1)}};  // t_1 = 1, all from the known class
  const ZetaResult r = picard_rank_bound(s, {1}, 3);
  ASSERT_TRUE(r.quotient.ambiguous);
  EXPECT_EQ(r.quotient.candidates[0], RatPoly::from_ints({1, 0, 1}));
  EXPECT_EQ(r.quotient.candidates[1], RatPoly::from_ints({-1, 0, 1}));
  EXPECT_EQ(r.rank_bound, 3u);
}

TEST(Pipeline, ReproducesPublishedQuarticPolynomial) {
  const auto t0 = std::chrono::steady_clock::now();
  const ZetaResult r = picard_rank_bound(series("u3.counts"), orbits("u3.orbits"), 22);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ASSERT_FALSE(r.quotient.ambiguous);
  EXPECT_EQ(r.quotient.signs.front(), constants().integer("u3.sign"));
  EXPECT_EQ(r.quotient.candidates.front(), constants().poly("u3.quotient_poly"));
  EXPECT_EQ(Int(r.rank_bound), constants().integer("u3.rank_bound"));
  EXPECT_LT(secs, 1.0);
}

TEST(Pipeline, CompleteIntersectionCountsGivePrintedPolynomialAtMinusT) {
  // The published counts determine f(-t) for the printed f: every odd
  // coefficient has the opposite sign. Sign and rank bound are unaffected.
  const ZetaResult r = picard_rank_bound(series("y3.counts"), orbits("y3.orbits"), 22);
  ASSERT_FALSE(r.quotient.ambiguous);
  EXPECT_EQ(r.quotient.signs.front(), constants().integer("y3.sign"));
  const RatPoly printed = constants().poly("y3.quotient_poly");
  EXPECT_NE(r.quotient.candidates.front(), printed);
  EXPECT_EQ(r.quotient.candidates.front(), negate_variable(printed));
  EXPECT_EQ(Int(r.rank_bound), constants().integer("y3.rank_bound"));
  EXPECT_EQ(unit_root_count(printed), 0u);
}

TEST(Pipeline, ReconstructedPolynomialsRoundTrip) {
  for (const std::string name : {"u3", "y3"}) {
    const auto s = series(name + ".counts");
    const auto spec = orbits(name + ".orbits");
    const ZetaResult r = picard_rank_bound(s, spec, 22);
    const RatPoly& f = r.quotient.candidates.front();
    const std::size_t d = static_cast<std::size_t>(f.degree());
    EXPECT_EQ(reversed(f, d), f * Rat(r.quotient.signs.front()));
    EXPECT_EQ(power_sums(f, static_cast<unsigned>(s.counts.size())), r.quotient_traces);
    EXPECT_EQ(predicted_counts(3, spec, f, static_cast<unsigned>(s.counts.size())), s.counts);
  }
}

TEST(Pipeline, ThreeFIsPrimitiveAndNotMonic) {
  for (const std::string name : {"u3", "y3"}) {
    const RatPoly f3 = constants().poly(name + ".quotient_poly") * Rat(3);
    Int g = 0;
    for (const Rat& c : f3.coeffs()) {
      ASSERT_EQ(c.get_den(), 1) << name;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    }
    EXPECT_EQ(g, 1) << name;
    EXPECT_NE(f3.leading(), Rat(1)) << name;
  }
}

TEST(Verification, PartialCounts) {
  const auto vu = verify_quotient_poly(series("u3.counts", 4), orbits("u3.orbits"), constants().poly("u3.quotient_poly"));
  EXPECT_TRUE(vu.verified);
  EXPECT_EQ(vu.checked_n, (std::vector<unsigned>{1, 2, 3, 4}));
  const RatPoly fy = constants().poly("y3.quotient_poly");
  const auto vy = verify_quotient_poly(series("y3.counts", 4), orbits("y3.orbits"), fy);
  EXPECT_FALSE(vy.verified);
  EXPECT_EQ(vy.mismatched_n, (std::vector<unsigned>{1, 3}));
  EXPECT_TRUE(verify_quotient_poly(series("y3.counts"), orbits("y3.orbits"), negate_variable(fy)).verified);
  PointCountSeries bad = series("u3.counts", 3);
  bad.counts[2] += 27;
  const auto v = verify_quotient_poly(bad, orbits("u3.orbits"), constants().poly("u3.quotient_poly"));
  EXPECT_FALSE(v.verified);
  EXPECT_EQ(v.mismatched_n, std::vector<unsigned>{3});
}

TEST(Traces, RejectsBadCharacteristic) {
  EXPECT_NO_THROW(twisted_h2_traces(PointCountSeries{3, {Int(17)}}));
  EXPECT_THROW(twisted_h2_traces(PointCountSeries{0, {Int(17)}}), std::invalid_argument);
}
