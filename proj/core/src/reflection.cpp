#include "k3aut/reflection.hpp"

#include "k3aut/normal_form.hpp"
#include "k3aut/poly.hpp"

#include <numeric>
#include <stdexcept>

namespace k3aut {

GaloisOrbit make_orbit(const Lattice& ambient, std::vector<IntVec> classes,
                       std::vector<std::vector<std::size_t>> perms) {
  const std::size_t k = classes.size();
  if (k == 0) throw std::invalid_argument("orbit is empty");
  GaloisOrbit o;
  o.incidence = IntMat(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    if (classes[i].size() != ambient.rank()) throw std::invalid_argument("class has wrong length");
    for (std::size_t j = 0; j < k; ++j) o.incidence(i, j) = ambient.pair(classes[i], classes[j]);
    if (o.incidence(i, i) != -2) throw std::invalid_argument("orbit class is not a (-2)-class");
  }
  for (const auto& p : perms) {
    if (p.size() != k) throw std::invalid_argument("permutation has wrong length");
    std::vector<char> hit(k, 0);
    for (std::size_t x : p) {
      if (x >= k || hit[x]) throw std::invalid_argument("not a permutation");
      hit[x] = 1;
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (o.incidence(p[i], p[j]) != o.incidence(i, j))
          throw std::invalid_argument("permutation does not preserve incidence");
  }
  std::vector<char> reached(k, 0);
  std::vector<std::size_t> stack{0};
  reached[0] = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (const auto& p : perms)
      if (!reached[p[i]]) {
        reached[p[i]] = 1;
        stack.push_back(p[i]);
      }
  }
  for (char c : reached)
    if (!c) throw std::invalid_argument("Galois action is not transitive on the orbit");
  o.classes = std::move(classes);
  o.perms = std::move(perms);
  return o;
}

OrbitType classify_orbit(const GaloisOrbit& o) {
  const std::size_t k = o.classes.size();
  bool disjoint = true;
  std::vector<std::size_t> partner(k, k);
  bool matching = true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const Int& a = o.incidence(i, j);
      if (a == 0) continue;
      disjoint = false;
      if (a != 1 || (partner[i] != k && partner[i] != j)) {
        matching = false;
      } else {
        partner[i] = j;
      }
    }
  if (disjoint) return {OrbitKind::Disjoint, k};
  if (!matching) return {OrbitKind::Infinite, 0};
  for (std::size_t i = 0; i < k; ++i)
    if (partner[i] == k) return {OrbitKind::Infinite, 0};
  return {OrbitKind::PairedA2, k / 2};
}

std::string to_string(const OrbitType& t) {
  switch (t.kind) {
    case OrbitKind::Disjoint:
      return "Disjoint(" + std::to_string(t.r) + ")";
    case OrbitKind::PairedA2:
      return "PairedA2(" + std::to_string(t.r) + ")";
    case OrbitKind::Infinite:
      break;
  }
  return "Infinite";
}

IntVec folded_class(const GaloisOrbit& o) {
  if (classify_orbit(o).kind == OrbitKind::Infinite) throw std::invalid_argument("orbit is of infinite type");
  IntVec c(o.classes.front().size(), Int(0));
  for (const IntVec& v : o.classes) c = c + v;
  return c;
}

IntMat reflection_matrix(const IntMat& gram, const IntVec& c) {
  const std::size_t n = gram.rows();
  if (c.size() != n) throw std::invalid_argument("class has wrong length");
  const Int cc = pair(c, gram, c);
  if (cc == 0) throw std::invalid_argument("cannot reflect in an isotropic class");
  const IntVec gc = gram * c;
  IntMat r = IntMat::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    // column j: e_j - 2 (e_j . c)/(c . c) c
    const Int num = 2 * gc[j];
    if (!mpz_divisible_p(num.get_mpz_t(), cc.get_mpz_t()))
      throw std::invalid_argument("reflection is not integral on this lattice");
    const Int f = num / cc;
    for (std::size_t i = 0; i < n; ++i) r(i, j) -= f * c[i];
  }
  return r;
}

IntMat folded_reflection(const Lattice& ambient, const GaloisOrbit& o, const IntMat& fixed_basis) {
  const IntVec c = folded_class(o);
  const auto coords = solve_row_integer(fixed_basis, c);
  if (!coords) throw std::invalid_argument("folded class is not in the fixed lattice");
  const IntMat gram = fixed_basis * ambient.gram() * fixed_basis.transpose();
  return reflection_matrix(gram, *coords);
}

ReflectionGroupData rx_generators(const Lattice& ambient, const std::vector<GaloisOrbit>& orbits,
                                  const IntMat& fixed_basis) {
  ReflectionGroupData out;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (classify_orbit(orbits[i]).kind == OrbitKind::Infinite) {
      out.infinite_orbits.push_back(i);
      continue;
    }
    const auto coords = solve_row_integer(fixed_basis, folded_class(orbits[i]));
    if (!coords) throw std::invalid_argument("folded class is not in the fixed lattice");
    out.generators.push_back(folded_reflection(ambient, orbits[i], fixed_basis));
    out.walls.push_back(*coords);
    out.orbit_index.push_back(i);
  }
  return out;
}

bool is_chamber_interior(const IntMat& gram, const IntVec& y, const std::vector<IntVec>& walls) {
  if (pair(y, gram, y) <= 0) return false;
  for (const IntVec& c : walls)
    if (pair(y, gram, c) <= 0) return false;
  return true;
}

DescentResult chamber_descent(const IntMat& gram, const IntMat& g, const IntVec& y,
                              const std::vector<IntVec>& walls, const std::vector<IntMat>& reflections,
                              std::size_t step_cap) {
  if (walls.size() != reflections.size()) throw std::invalid_argument("walls and reflections differ in number");
  const std::size_t n = gram.rows();
  DescentResult res;
  IntMat acc = g;
  IntVec x = g * y;
  if (pair(x, gram, y) < 0) {
    res.flipped = true;
    acc = -acc;
    for (Int& v : x) v = -v;
  }
  std::vector<IntVec> gw;  // G c for each wall
  gw.reserve(walls.size());
  for (const IntVec& c : walls) gw.push_back(gram * c);
  for (std::size_t step = 0;; ++step) {
    std::size_t hit = walls.size();
    for (std::size_t i = 0; i < walls.size(); ++i)
      if (dot(x, gw[i]) < 0) {
        hit = i;
        break;
      }
    if (hit == walls.size()) break;
    if (step >= step_cap) throw std::runtime_error("chamber descent exceeded its step cap");
    x = reflections[hit] * x;
    acc = reflections[hit] * acc;
    res.word.push_back(hit);
  }
  res.final_point = x;
  res.reduced = acc;
  if (x != y) {
    res.outcome = DescentOutcome::Stuck;
  } else if (!res.flipped && acc == IntMat::identity(n)) {
    res.outcome = DescentOutcome::Member;
  } else {
    res.outcome = DescentOutcome::NonMember;
  }
  return res;
}

bool sterk_domain_contains(const IntMat& gram, const IntVec& x, const IntVec& y,
                           const std::vector<IntMat>& gammas) {
  const Int base = pair(x, gram, y);
  for (const IntMat& g : gammas)
    if (pair(g * x, gram, y) < base) return false;
  return true;
}

OrderInfo is_infinite_order(const IntMat& g) {
  const std::size_t n = g.rows();
  const RatPoly f = characteristic_polynomial(g);
  OrderInfo info;
  if (!poly_is_finite_order_root_spectrum(f)) return info;
  std::size_t k = 1;
  for (const auto& [m, mult] : cyclotomic_factorization(f)) {
    (void)mult;
    k = std::lcm(k, static_cast<std::size_t>(m));
  }
  const IntMat id = IntMat::identity(n);
  IntMat p = id;
  for (std::size_t d = 1; d <= k; ++d) {
    p = p * g;
    if (p == id) {
      if (k % d == 0) {
        info.infinite = false;
        info.order = d;
      }
      return info;
    }
  }
  return info;
}

}  // namespace k3aut
