#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <set>

#include "k3aut/diagquartic.hpp"
#include "k3aut/normal_form.hpp"

using namespace k3aut;

namespace {

const DiagonalQuartic& quartic() {
  static const DiagonalQuartic d = build_diagonal_quartic(Rat(3));
  return d;
}

NFElem random_elem(std::mt19937_64& rng, const Rat& c) {
  std::uniform_int_distribution<long> d(-3, 3);
  NFElem x(c);
  for (unsigned i = 0; i < 4; ++i)
    for (unsigned j = 0; j < 4; ++j)
      if (d(rng) > 0) x = x + NFElem::monomial(c, i, j) * NFElem::from_rat(c, Rat(d(rng), 1 + (i + j) % 2));
  return x;
}

using cd = std::complex<double>;

// Floating-point image under zeta = exp(i pi/4), gamma = c^(1/4).
cd embed(const NFElem& x, double c) {
  const cd z = std::polar(1.0, M_PI / 4);
  const double g = std::pow(c, 0.25);
  cd s = 0;
  for (unsigned i = 0; i < 4; ++i)
    for (unsigned j = 0; j < 4; ++j) s += x.coord(i, j).get_d() * std::pow(z, static_cast<int>(i)) * std::pow(g, j);
  return s;
}

cd det4(cd m[4][4]) {
  cd det = 0;
  int p[4] = {0, 1, 2, 3};
  do {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inv += p[i] > p[j];
    const cd t = m[0][p[0]] * m[1][p[1]] * m[2][p[2]] * m[3][p[3]];
    det += inv % 2 ? -t : t;
  } while (std::next_permutation(p, p + 4));
  return det;
}

}  // namespace

TEST(Admissible, Examples) {
  EXPECT_TRUE(admissible_c(Rat(3)));
  EXPECT_TRUE(admissible_c(Rat(-3)));
  EXPECT_TRUE(admissible_c(Rat(5, 7)));
  EXPECT_FALSE(admissible_c(Rat(2)));
  EXPECT_FALSE(admissible_c(Rat(4)));
  EXPECT_FALSE(admissible_c(Rat(-18)));
  EXPECT_FALSE(admissible_c(Rat(1, 2)));
  EXPECT_FALSE(admissible_c(Rat(9, 4)));
  EXPECT_THROW(admissible_c(Rat(0)), std::invalid_argument);
  EXPECT_THROW(diagonal_lines(Rat(2)), std::invalid_argument);
}

TEST(NumberField, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(8);
  const Rat c(3);
  for (int t = 0; t < 60; ++t) {
    const NFElem a = random_elem(rng, c), b = random_elem(rng, c), d = random_elem(rng, c);
    ASSERT_EQ((a * b) * d, a * (b * d));
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + d), a * b + a * d);
    if (!a.is_zero()) ASSERT_EQ(a * a.inverse(), NFElem::from_rat(c, 1));
  }
}

TEST(NumberField, GeneratorsAndEmbedding) {
  const Rat c(3);
  const NFElem z = NFElem::monomial(c, 1, 0), g = NFElem::monomial(c, 0, 1);
  NFElem z8 = NFElem::from_rat(c, 1), g4 = NFElem::from_rat(c, 1);
  for (int i = 0; i < 8; ++i) z8 = z8 * z;
  for (int i = 0; i < 4; ++i) g4 = g4 * g;
  EXPECT_EQ(z8, NFElem::from_rat(c, 1));
  EXPECT_EQ(g4, NFElem::from_rat(c, 3));
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const NFElem a = random_elem(rng, c), b = random_elem(rng, c);
    EXPECT_LT(std::abs(embed(a * b, 3.0) - embed(a, 3.0) * embed(b, 3.0)), 1e-8);
  }
}

TEST(NumberField, ZeroDivisorForInadmissibleParameter) {
  const Rat c(4);
  const NFElem g2 = NFElem::monomial(c, 0, 2);
  const NFElem a = g2 - NFElem::from_rat(c, 2), b = g2 + NFElem::from_rat(c, 2);
  EXPECT_TRUE((a * b).is_zero());
  EXPECT_THROW(a.inverse(), std::domain_error);
  EXPECT_THROW(NFElem(c).inverse(), std::domain_error);
}

TEST(NumberField, GaloisMapsAreRingHomomorphisms) {
  std::mt19937_64 rng(10);
  const Rat c(3);
  for (const GaloisAutomorphism& s : galois_group())
    for (int t = 0; t < 5; ++t) {
      const NFElem a = random_elem(rng, c), b = random_elem(rng, c);
      ASSERT_EQ((a * b).galois(s.a, s.k), a.galois(s.a, s.k) * b.galois(s.a, s.k));
      ASSERT_EQ((a + b).galois(s.a, s.k), a.galois(s.a, s.k) + b.galois(s.a, s.k));
    }
}

TEST(Lines, FortyEightDistinctLinesOnTheSurface) {
  const auto& lines = quartic().lines;
  ASSERT_EQ(lines.size(), 48u);
  for (const LineP3& l : lines) EXPECT_TRUE(line_on_surface(l, Rat(3))) << l.tag;
  // x = y, z = w is the first line.
  const Rat c(3);
  const NFElem one = NFElem::from_rat(c, 1), zero(c);
  EXPECT_TRUE(point_on_line(lines[0], NFVec{one, one, zero, zero}));
  EXPECT_TRUE(point_on_line(lines[0], NFVec{zero, zero, one, one}));
  std::set<std::string> tags;
  for (const LineP3& l : lines) tags.insert(l.tag);
  EXPECT_EQ(tags.size(), 48u);
}

TEST(Lines, IncidenceMatchesFloatingPointDeterminants) {
  const auto& d = quartic();
  const IntMat& g = d.pic.gram48;
  for (std::size_t i = 0; i < 48; ++i) {
    EXPECT_EQ(g(i, i), -2);
    for (std::size_t j = i + 1; j < 48; ++j) {
      cd m[4][4];
      for (int r = 0; r < 2; ++r)
        for (int k = 0; k < 4; ++k) {
          m[r][k] = embed(d.lines[i].span[r][k], 3.0);
          m[2 + r][k] = embed(d.lines[j].span[r][k], 3.0);
        }
      const bool meet = std::abs(det4(m)) < 1e-9;
      ASSERT_EQ(g(i, j), meet ? 1 : 0) << i << ' ' << j;
      ASSERT_EQ(g(i, j), g(j, i));
    }
  }
  // (x = y, z = w) meets (x = y, z = iw) at (1:1:0:0).
  EXPECT_EQ(g(0, 1), 1);
  EXPECT_EQ(rank(g), 20u);
}

TEST(Lines, ThreadCountDoesNotChangeIncidence) {
  EXPECT_EQ(incidence_gram(quartic().lines, 3), quartic().pic.gram48);
}

TEST(Galois, SixteenDistinctPermutationsFormingAGroup) {
  const auto& perms = quartic().pic.galois_perms;
  ASSERT_EQ(perms.size(), 16u);
  std::vector<std::size_t> id(48);
  for (std::size_t i = 0; i < 48; ++i) id[i] = i;
  EXPECT_EQ(perms.front(), id);
  const std::set<std::vector<std::size_t>> set(perms.begin(), perms.end());
  EXPECT_EQ(set.size(), 16u);
  for (const auto& p : perms)
    for (const auto& q : perms) {
      std::vector<std::size_t> pq(48);
      for (std::size_t i = 0; i < 48; ++i) pq[i] = p[q[i]];
      EXPECT_TRUE(set.count(pq));
    }
  const IntMat& g = quartic().pic.gram48;
  for (const auto& p : perms)
    for (std::size_t i = 0; i < 48; ++i)
      for (std::size_t j = 0; j < 48; ++j) ASSERT_EQ(g(p[i], p[j]), g(i, j));
}

TEST(Picard, RankDeterminantAndAction) {
  const auto& d = quartic();
  EXPECT_EQ(d.pic.picard.rank(), 20u);
  // The geometric Picard lattice of the Fermat quartic has discriminant -64.
  EXPECT_EQ(determinant(d.pic.picard), -64);
  EXPECT_EQ(signature(d.pic.picard).positive, 1u);
  EXPECT_EQ(d.pic.lifts * d.pic.line_images, IntMat::identity(20));
  for (const IntMat& g : d.pic.galois_matrices) EXPECT_EQ(g.transpose() * d.pic.picard.gram() * g, d.pic.picard.gram());
}

TEST(Picard, HyperplaneClass) {
  const auto& d = quartic();
  EXPECT_EQ(d.pic.picard.norm(d.H), 4);
  for (std::size_t i = 0; i < 48; ++i) EXPECT_EQ(d.pic.picard.pair(d.H, d.pic.line_images.row(i)), 1);
  for (const IntMat& g : d.pic.galois_matrices) EXPECT_EQ(g * d.H, d.H);
}

TEST(Picard, FixedLatticeAndSaturation) {
  const auto& d = quartic();
  EXPECT_EQ(d.fixed.rank(), 6u);
  EXPECT_FALSE(d.fixed.degenerate);
  EXPECT_EQ(determinant(d.fixed.gram), -256);
  const Overlattice ov = saturate_by_halving(d.fixed.lattice());
  EXPECT_EQ(ov.index, 4);
  EXPECT_EQ(determinant(ov.lattice), -16);
  const Lattice ln = direct_sum(hyperbolic_plane(), a1_power(4));
  const IsometrySearchResult iso = isometry_search(ov.lattice, ln);
  ASSERT_EQ(iso.status, IsometryStatus::Found);
  EXPECT_EQ(*iso.map * ln.gram() * iso.map->transpose(), ov.lattice.gram());
}

TEST(Conics, InvariantsAndResidualSymmetry) {
  const auto& d = quartic();
  ASSERT_FALSE(d.conics.empty());
  const std::set<IntVec> all(d.conics.begin(), d.conics.end());
  std::set<IntVec> line_pairs;
  for (std::size_t i = 0; i < 48; ++i)
    for (std::size_t j = 0; j < 48; ++j)
      if (d.pic.gram48(i, j) == 1) line_pairs.insert(d.pic.line_images.row(i) + d.pic.line_images.row(j));
  std::size_t residual_conics = 0;
  for (const IntVec& D : d.conics) {
    EXPECT_EQ(d.pic.picard.norm(D), -2);
    EXPECT_EQ(d.pic.picard.pair(D, d.H), 2);
    EXPECT_FALSE(line_pairs.count(D));
    // The residual of a conic in its plane is a conic or a pair of meeting lines.
    const IntVec R = d.H - D;
    EXPECT_TRUE(all.count(R) || line_pairs.count(R));
    residual_conics += all.count(R);
  }
  EXPECT_GT(residual_conics, 0u);
}

TEST(Orbits, FiniteTypeCounts) {
  const auto& d = quartic();
  std::size_t lines = 0, conics = 0, line_total = 0;
  for (const GaloisOrbit& o : d.line_orbits) {
    line_total += o.classes.size();
    lines += classify_orbit(o).kind != OrbitKind::Infinite;
  }
  for (const GaloisOrbit& o : d.conic_orbits) conics += classify_orbit(o).kind != OrbitKind::Infinite;
  EXPECT_EQ(line_total, 48u);
  EXPECT_EQ(lines, 14u);
  EXPECT_EQ(conics, 8u);
}

TEST(Orbits, AnotherAdmissibleParameter) {
  const DiagonalQuartic d = build_diagonal_quartic(Rat(-5, 7));
  EXPECT_EQ(determinant(d.fixed.gram), -256);
  std::size_t finite = 0;
  for (const auto& o : d.line_orbits) finite += classify_orbit(o).kind != OrbitKind::Infinite;
  for (const auto& o : d.conic_orbits) finite += classify_orbit(o).kind != OrbitKind::Infinite;
  EXPECT_EQ(finite, 22u);
}
