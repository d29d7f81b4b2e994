#include <gtest/gtest.h>

#include <map>

#include "k3aut/counting.hpp"

using namespace k3aut;

namespace {

SurfaceModel shipped(const std::string& name) { return load_surface(shipped_surface_path(name)); }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

SurfaceModel zero_model() {
  SurfaceModel m;
  m.name = "zero";
  m.p = 3;
  m.ambient_dim = 3;
  return m;
}

}  // namespace

TEST(SurfaceData, TranscriptionChecksums) {
  // Term counts and hashes of the canonical serialisation of each shipped model.
  const std::map<std::string, std::vector<std::size_t>> terms{
      {"u3", {24}}, {"y3", {9, 25}}, {"y5", {10, 24}}, {"diagonal_c1_p5", {4}}, {"diagonal_c3_p7", {4}}};
  for (const auto& [name, sizes] : terms) {
    const SurfaceModel m = shipped(name);
    ASSERT_EQ(m.polys.size(), sizes.size()) << name;
    for (std::size_t i = 0; i < sizes.size(); ++i) EXPECT_EQ(m.polys[i].size(), sizes[i]) << name;
  }
  EXPECT_EQ(fnv1a(canonical_surface_string(shipped("u3"))), 0x24f8595888440553ULL);
  EXPECT_EQ(fnv1a(canonical_surface_string(shipped("y3"))), 0xd6830e9dc9bdd6f6ULL);
  EXPECT_EQ(fnv1a(canonical_surface_string(shipped("y5"))), 0xec185d062e773840ULL);
}

TEST(SurfaceData, QuarticContainsTheLineZWZero) {
  const SurfaceModel m = shipped("u3");
  for (const Monomial& t : m.polys[0]) EXPECT_TRUE(t.exps[2] + t.exps[3] > 0);
}

TEST(SurfaceData, RejectsInhomogeneous) {
  EXPECT_THROW(parse_surface_json(R"({"p":3,"ambient_dim":1,"polys":[[[1,[1,0]],[1,[2,0]]]]})"),
               std::invalid_argument);
  EXPECT_THROW(parse_surface_json(R"({"p":4,"ambient_dim":1,"polys":[]})"), std::invalid_argument);
}

TEST(Counting, ZeroModelIsProjectiveSpace) {
  EXPECT_EQ(count_direct(zero_model(), 1), 40u);
  EXPECT_EQ(count_fibered(zero_model(), 1), 40u);
}

TEST(Counting, FirstPointCounts) {
  EXPECT_EQ(count_direct(shipped("u3"), 1), 16u);
  EXPECT_EQ(count_direct(shipped("y3"), 1), 18u);
  EXPECT_EQ(count_fibered(shipped("u3"), 2), 94u);
}

TEST(Counting, DirectEqualsFiberedUpToEightyOne) {
  for (const std::string name : {"u3", "y3", "y5", "diagonal_c1_p5", "diagonal_c3_p7"}) {
    const SurfaceModel m = shipped(name);
    std::uint64_t q = m.p;
    for (unsigned n = 1; q <= 81; ++n, q *= m.p) {
      const std::uint64_t d = count_direct(m, n);
      EXPECT_EQ(d, count_fibered(m, n)) << name << " n=" << n;
    }
  }
}

TEST(Counting, SubfieldInclusionAndThreads) {
  const SurfaceModel m = shipped("u3");
  std::vector<std::uint64_t> c;
  for (unsigned n = 1; n <= 4; ++n) c.push_back(count_fibered(m, n));
  EXPECT_LE(c[0], c[1]);
  EXPECT_LE(c[0], c[2]);
  EXPECT_LE(c[1], c[3]);
  CountOptions opt;
  opt.threads = 3;
  EXPECT_EQ(count_fibered(m, 4, opt), c[3]);
  EXPECT_EQ(count_direct(m, 3, opt), c[2]);
}

TEST(Lines, DiagonalQuarticOverF5) {
  const SurfaceModel m = shipped("diagonal_c1_p5");
  const Fq K(5, 1);
  const auto lines = find_lines(m, 1);
  // x = y, z = w
  const LineFq target{{{1, 1, 0, 0}, {0, 0, 1, 1}}};
  EXPECT_NE(std::find(lines.begin(), lines.end(), target), lines.end());
  for (const LineFq& l : lines)
    for (const auto& x : line_points(K, l))
      for (const HomPoly& f : m.polys) EXPECT_EQ(evaluate(K, f, x), 0u);
}

TEST(Lines, Y3ContainsTheRationalLine) {
  const SurfaceModel m = shipped("y3");
  const Fq K(3, 1);
  const auto lines = find_lines(m, 1);
  std::vector<Fq::Elem> a, b;
  for (long v : {1, 1, 2, 0, 1}) a.push_back(K.from_int(v));
  for (long v : {2, 1, 1, 1, 0}) b.push_back(K.from_int(v));
  bool found = false;
  for (const LineFq& l : lines) {
    const auto pts = line_points(K, l);
    const bool has_a = std::find(pts.begin(), pts.end(), a) != pts.end();
    std::vector<Fq::Elem> bn = b;
    const Fq::Elem inv = K.inv(bn[0]);
    for (auto& v : bn) v = K.mul(v, inv);
    const bool has_b = std::find(pts.begin(), pts.end(), bn) != pts.end();
    found = found || (has_a && has_b);
    for (const auto& x : pts)
      for (const HomPoly& f : m.polys) EXPECT_EQ(evaluate(K, f, x), 0u);
  }
  EXPECT_TRUE(found);
}

TEST(Lines, Y5HasNoRationalLines) { EXPECT_TRUE(find_lines(shipped("y5"), 1).empty()); }

TEST(Lines, AvoidFilterDropsMeetingLines) {
  const SurfaceModel m = shipped("diagonal_c1_p5");
  LineSearchOptions opt;
  // the plane section x = y meets every line through a point with x = y
  opt.avoid.push_back({HomPoly{{1, {1, 0, 0, 0}}, {-1, {0, 1, 0, 0}}}});
  const auto all = find_lines(m, 1);
  const auto kept = find_lines(m, 1, opt);
  EXPECT_LT(kept.size(), all.size());
}
