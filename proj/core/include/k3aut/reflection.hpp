#pragma once

#include "k3aut/lattice.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace k3aut {

/// A Galois orbit of (-2)-classes in an ambient lattice.
struct GaloisOrbit {
  std::vector<IntVec> classes;
  IntMat incidence;                             // pairwise intersection numbers
  std::vector<std::vector<std::size_t>> perms;  // action of each Galois generator
};

/// Builds an orbit, computing the incidence matrix. Throws std::invalid_argument
/// unless every class has norm -2, every permutation preserves the incidence,
/// and the permutations act transitively (a single class needs no permutation).
GaloisOrbit make_orbit(const Lattice& ambient, std::vector<IntVec> classes,
                       std::vector<std::vector<std::size_t>> perms = {});

enum class OrbitKind { Disjoint, PairedA2, Infinite };

struct OrbitType {
  OrbitKind kind = OrbitKind::Infinite;
  std::size_t r = 0;  // number of classes (Disjoint) or pairs (PairedA2)
  friend bool operator==(const OrbitType&, const OrbitType&) = default;
};

OrbitType classify_orbit(const GaloisOrbit& o);
std::string to_string(const OrbitType& t);

/// Sum of the classes; throws std::invalid_argument for an infinite-type orbit.
IntVec folded_class(const GaloisOrbit& o);

/// Matrix (acting on columns) of x -> x - 2 (x.c)/(c.c) c for a vector c in the
/// lattice's own coordinates. Throws std::invalid_argument when c is isotropic
/// or the reflection is not integral.
IntMat reflection_matrix(const IntMat& gram, const IntVec& c);

/// The folded reflection on the lattice spanned by fixed_basis (rows, ambient
/// coordinates). The folded class must lie in that lattice.
IntMat folded_reflection(const Lattice& ambient, const GaloisOrbit& o, const IntMat& fixed_basis);

struct ReflectionGroupData {
  std::vector<IntMat> generators;        // folded reflections on the fixed basis
  std::vector<IntVec> walls;             // folded classes in fixed coordinates
  std::vector<std::size_t> orbit_index;  // source orbit of each generator
  std::vector<std::size_t> infinite_orbits;
};

ReflectionGroupData rx_generators(const Lattice& ambient, const std::vector<GaloisOrbit>& orbits,
                                  const IntMat& fixed_basis);

enum class DescentOutcome { Member, NonMember, Stuck };

struct DescentResult {
  DescentOutcome outcome = DescentOutcome::Stuck;
  /// Wall indices in application order; for members g = r_{w[0]} ... r_{w[k-1]}.
  std::vector<std::size_t> word;
  IntVec final_point;
  bool flipped = false;  // g.y lay in the opposite cone and was negated
  /// reflections composed with g (or with -g when flipped)
  IntMat reduced;
};

/// Walks g.y back to the chamber of y by reflecting in violated walls.
/// Throws std::runtime_error when the step cap is exceeded.
DescentResult chamber_descent(const IntMat& gram, const IntMat& g, const IntVec& y,
                              const std::vector<IntVec>& walls, const std::vector<IntMat>& reflections,
                              std::size_t step_cap = 1000000);

/// Whether y pairs strictly positively with every wall and has positive norm.
bool is_chamber_interior(const IntMat& gram, const IntVec& y, const std::vector<IntVec>& walls);

/// (gamma x . y) >= (x . y) for each supplied gamma.
bool sterk_domain_contains(const IntMat& gram, const IntVec& x, const IntVec& y,
                           const std::vector<IntMat>& gammas);

struct OrderInfo {
  bool infinite = true;
  std::size_t order = 0;  // set when finite
};

OrderInfo is_infinite_order(const IntMat& g);

}  // namespace k3aut
