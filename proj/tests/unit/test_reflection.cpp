#include <gtest/gtest.h>

#include "k3aut/normal_form.hpp"
#include "k3aut/poly.hpp"
#include "k3aut/reflection.hpp"

using namespace k3aut;

namespace {

// Basis (H + C1 + C2, C1, C2) of the rank-3 lattice of the conic example.
Lattice conic_ambient() { return Lattice(IntMat::diagonal(vec({10, -2, -2}))); }
const IntMat kConicFixed{{1, 0, 0}, {0, 1, 1}};
const std::vector<std::vector<std::size_t>> kSwap{{1, 0}};

GaloisOrbit conic_orbit() { return make_orbit(conic_ambient(), {vec({0, 1, 0}), vec({0, 0, 1})}, kSwap); }
GaloisOrbit f_orbit() { return make_orbit(conic_ambient(), {vec({6, -9, -10}), vec({6, -10, -9})}, kSwap); }

// Ambient reflection in a (-2)-class: x -> x + (x.e) e, written as a matrix.
IntMat minus_two_reflection(const Lattice& L, const IntVec& e) { return reflection_matrix(L.gram(), e); }

// Matrix of an ambient isometry on the fixed sublattice given by basis rows.
IntMat on_fixed(const IntMat& g, const IntMat& B) {
  IntMat h(B.rows(), B.rows());
  for (std::size_t i = 0; i < B.rows(); ++i) {
    const auto x = solve_row_integer(B, g * B.row(i));
    EXPECT_TRUE(x.has_value());
    for (std::size_t j = 0; j < B.rows(); ++j) h(j, i) = (*x)[j];
  }
  return h;
}

}  // namespace

TEST(Orbit, RejectsBadInput) {
  EXPECT_THROW(make_orbit(conic_ambient(), {vec({1, 0, 0})}), std::invalid_argument);
  EXPECT_THROW(make_orbit(conic_ambient(), {vec({0, 1, 0}), vec({0, 0, 1})}), std::invalid_argument);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify_orbit(conic_orbit()), (OrbitType{OrbitKind::Disjoint, 2}));
  const Lattice a2(IntMat{{-2, 1}, {1, -2}});
  EXPECT_EQ(classify_orbit(make_orbit(a2, {vec({1, 0}), vec({0, 1})}, kSwap)), (OrbitType{OrbitKind::PairedA2, 1}));
  GaloisOrbit o;
  o.classes = {vec({1, 0}), vec({0, 1})};
  o.incidence = IntMat{{-2, 2}, {2, -2}};
  EXPECT_EQ(classify_orbit(o).kind, OrbitKind::Infinite);
  EXPECT_THROW(folded_class(o), std::invalid_argument);
  // a path of three classes is neither disjoint nor a matching
  GaloisOrbit p;
  p.classes = {vec({1}), vec({1}), vec({1})};
  p.incidence = IntMat{{-2, 1, 0}, {1, -2, 1}, {0, 1, -2}};
  EXPECT_EQ(classify_orbit(p).kind, OrbitKind::Infinite);
}

TEST(Folded, ClassNorms) {
  const Lattice L = conic_ambient();
  EXPECT_EQ(L.norm(folded_class(conic_orbit())), -4);
  const GaloisOrbit f = f_orbit();
  EXPECT_EQ(f.incidence(0, 0), -2);
  EXPECT_EQ(f.incidence(0, 1), 0);
  EXPECT_EQ(L.norm(folded_class(f)), -4);
  const Lattice a2(IntMat{{-2, 1}, {1, -2}});
  EXPECT_EQ(a2.norm(folded_class(make_orbit(a2, {vec({1, 0}), vec({0, 1})}, kSwap))), -2);
}

TEST(Folded, ReflectionMatricesOfConicExample) {
  const IntMat a1 = folded_reflection(conic_ambient(), conic_orbit(), kConicFixed);
  const IntMat a2 = folded_reflection(conic_ambient(), f_orbit(), kConicFixed);
  EXPECT_EQ(a1, (IntMat{{1, 0}, {0, -1}}));
  EXPECT_EQ(a2, (IntMat{{721, 456}, {-1140, -721}}));
  const IntMat M{{10, 0}, {0, -4}};
  for (const IntMat& r : {a1, a2}) {
    EXPECT_TRUE(preserves_gram(r, M));
    EXPECT_EQ(r * r, IntMat::identity(2));
  }
  // vectors orthogonal to the class are fixed
  EXPECT_EQ(a2 * vec({19, -30}), vec({19, -30}));
}

TEST(Folded, FoldEqualsUnfoldForDisjointOrbit) {
  const Lattice L = direct_sum(hyperbolic_plane(), a1_power(4));
  IntMat cyc(6, 6);
  cyc(0, 0) = cyc(1, 1) = 1;
  cyc(3, 2) = cyc(4, 3) = cyc(5, 4) = cyc(2, 5) = 1;
  const Sublattice fix = fixed_sublattice(L, GroupAction{{cyc}, {}});
  std::vector<IntVec> cls;
  for (std::size_t i = 2; i < 6; ++i) {
    IntVec e(6, Int(0));
    e[i] = 1;
    cls.push_back(e);
  }
  const GaloisOrbit o = make_orbit(L, cls, {{1, 2, 3, 0}});
  EXPECT_EQ(classify_orbit(o), (OrbitType{OrbitKind::Disjoint, 4}));
  IntMat unfolded = IntMat::identity(6);
  for (const IntVec& e : cls) unfolded = unfolded * minus_two_reflection(L, e);
  EXPECT_EQ(folded_reflection(L, o, fix.basis), on_fixed(unfolded, fix.basis));
}

TEST(Folded, FoldEqualsUnfoldForPairedOrbit) {
  const Lattice L = direct_sum(hyperbolic_plane(), Lattice(IntMat{{-2, 1}, {1, -2}}));
  const IntMat sw{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  const Sublattice fix = fixed_sublattice(L, GroupAction{{sw}, {}});
  const IntVec e = vec({0, 0, 1, 0}), f = vec({0, 0, 0, 1});
  const GaloisOrbit o = make_orbit(L, {e, f}, kSwap);
  EXPECT_EQ(classify_orbit(o), (OrbitType{OrbitKind::PairedA2, 1}));
  const IntMat re = minus_two_reflection(L, e), rf = minus_two_reflection(L, f);
  const IntMat pair_refl = minus_two_reflection(L, e + f);
  EXPECT_EQ(re * rf * re, pair_refl);
  const IntMat folded = folded_reflection(L, o, fix.basis);
  EXPECT_EQ(folded, on_fixed(pair_refl, fix.basis));
  EXPECT_EQ(folded * folded, IntMat::identity(fix.rank()));
  EXPECT_TRUE(preserves_gram(folded, fix.gram));
}

TEST(RxGenerators, SkipsInfiniteOrbits) {
  const Lattice L = conic_ambient();
  GaloisOrbit bad;
  bad.classes = {vec({0, 1, 0}), vec({0, 0, 1})};
  bad.incidence = IntMat{{-2, 3}, {3, -2}};
  const ReflectionGroupData d = rx_generators(L, {conic_orbit(), bad, f_orbit()}, kConicFixed);
  EXPECT_EQ(d.generators.size(), 2u);
  EXPECT_EQ(d.infinite_orbits, std::vector<std::size_t>{1});
  EXPECT_EQ(d.walls[0], vec({0, 1}));
  EXPECT_EQ(d.walls[1], vec({12, -19}));
  EXPECT_TRUE(rx_generators(L, {}, kConicFixed).generators.empty());
}

TEST(Descent, Examples) {
  const IntMat M{{10, 0}, {0, -4}};
  const ReflectionGroupData d = rx_generators(conic_ambient(), {conic_orbit(), f_orbit()}, kConicFixed);
  const IntVec y = vec({1, -1});
  ASSERT_TRUE(is_chamber_interior(M, y, d.walls));
  const DescentResult one = chamber_descent(M, d.generators[1], y, d.walls, d.generators);
  EXPECT_EQ(one.outcome, DescentOutcome::Member);
  EXPECT_EQ(one.word, std::vector<std::size_t>{1});
  const DescentResult neg = chamber_descent(M, -IntMat::identity(2), y, d.walls, d.generators);
  EXPECT_EQ(neg.outcome, DescentOutcome::NonMember);
  EXPECT_TRUE(neg.flipped);
  const IntMat g = d.generators[0] * d.generators[1];
  const DescentResult two = chamber_descent(M, g, y, d.walls, d.generators);
  ASSERT_EQ(two.outcome, DescentOutcome::Member);
  EXPECT_EQ(two.word.size(), 2u);
  IntMat prod = IntMat::identity(2);
  for (std::size_t w : two.word) prod = prod * d.generators[w];
  EXPECT_EQ(prod, g);
}

TEST(Descent, ProductsOfMembersStayShort) {
  const IntMat M{{10, 0}, {0, -4}};
  const ReflectionGroupData d = rx_generators(conic_ambient(), {conic_orbit(), f_orbit()}, kConicFixed);
  const IntVec y = vec({1, -1});
  std::vector<IntMat> words{IntMat::identity(2)};
  for (int len = 0; len < 4; ++len) {
    const IntMat w = words.back() * d.generators[len % 2];
    words.push_back(w);
  }
  for (const IntMat& g : words)
    for (const IntMat& h : words) {
      const DescentResult a = chamber_descent(M, g, y, d.walls, d.generators);
      const DescentResult b = chamber_descent(M, h, y, d.walls, d.generators);
      const DescentResult c = chamber_descent(M, g * h, y, d.walls, d.generators);
      ASSERT_EQ(c.outcome, DescentOutcome::Member);
      EXPECT_LE(c.word.size(), a.word.size() + b.word.size());
    }
}

TEST(Descent, PellUnitIsNotInReflectionGroup) {
  const IntMat M{{10, 0}, {0, -4}};
  const ReflectionGroupData d = rx_generators(conic_ambient(), {conic_orbit(), f_orbit()}, kConicFixed);
  const IntMat pell{{19, 12}, {30, 19}};
  ASSERT_TRUE(preserves_gram(pell, M));
  const DescentResult r = chamber_descent(M, pell, vec({1, -1}), d.walls, d.generators);
  EXPECT_NE(r.outcome, DescentOutcome::Member);
}

TEST(Sterk, Examples) {
  const IntMat M{{10, 0}, {0, -4}};
  const IntVec y = vec({1, -1});
  EXPECT_TRUE(sterk_domain_contains(M, y, y, {IntMat::identity(2)}));
  const IntMat a1{{1, 0}, {0, -1}};
  const IntMat a2{{721, 456}, {-1140, -721}};
  // D1 = (1,0): a1 fixes it; a2 sends it to (721, -1140) with pairing 721*10 - 4560 = 2650 >= 10
  EXPECT_TRUE(sterk_domain_contains(M, vec({1, 0}), y, {a1, a2}));
  // (0,1) pairs with y as 4, its a1-image pairs as -4
  EXPECT_FALSE(sterk_domain_contains(M, vec({0, 1}), y, {a1}));
}

TEST(Order, Examples) {
  const IntMat a1{{1, 0}, {0, -1}};
  const IntMat a2{{721, 456}, {-1140, -721}};
  const IntMat p = a1 * a2;
  EXPECT_EQ(p, (IntMat{{721, 456}, {1140, 721}}));
  EXPECT_EQ(characteristic_polynomial(p), RatPoly::from_ints({1, -1442, 1}));
  EXPECT_TRUE(is_infinite_order(p).infinite);
  const OrderInfo o = is_infinite_order(a1);
  EXPECT_FALSE(o.infinite);
  EXPECT_EQ(o.order, 2u);
  EXPECT_EQ(is_infinite_order(IntMat::identity(3)).order, 1u);
  // unipotent: cyclotomic spectrum but infinite order
  EXPECT_TRUE(is_infinite_order(IntMat{{1, 1}, {0, 1}}).infinite);
}
