#pragma once

#include "k3aut/exact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3aut {

/// An integral lattice given by a symmetric nondegenerate Gram matrix.
class Lattice {
 public:
  /// Throws std::invalid_argument for an empty, non-square, non-symmetric or
  /// degenerate Gram matrix, or a label list of the wrong length.
  explicit Lattice(IntMat gram, std::vector<std::string> labels = {});

  const IntMat& gram() const { return gram_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t rank() const { return gram_.rows(); }

  Int pair(const IntVec& a, const IntVec& b) const { return k3aut::pair(a, gram_, b); }
  Int norm(const IntVec& a) const { return k3aut::pair(a, gram_, a); }
  bool is_even() const;

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMat gram_;
  std::vector<std::string> labels_;
};

/// Direct sum with block-diagonal Gram matrix.
Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice hyperbolic_plane();
/// n copies of A1 in the negative-definite convention, Gram -2 I_n.
Lattice a1_power(std::size_t n);

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of a symmetric matrix by exact congruence diagonalisation.
Signature signature(const IntMat& symmetric);
Signature signature(const Lattice& L);
Int determinant(const Lattice& L);
bool is_definite(const Lattice& L);

/// An integer matrix g acting on coordinate columns with g^T G g = G.
class Isometry {
 public:
  /// Throws std::invalid_argument unless mat preserves L's Gram matrix and is unimodular.
  static Isometry verified(IntMat mat, const Lattice& L);
  const IntMat& matrix() const { return mat_; }

 private:
  explicit Isometry(IntMat m) : mat_(std::move(m)) {}
  IntMat mat_;
};

bool preserves_gram(const IntMat& g, const IntMat& gram);

/// Generators of a group acting on a lattice.
struct GroupAction {
  std::vector<IntMat> generators;
  std::vector<std::string> labels;
};

/// L^#/L with its discriminant form. form(i,i) = q(g_i) in [0,2); form(i,j) for
/// i != j is the bilinear value b(g_i,g_j) in [0,1).
struct DiscriminantData {
  IntVec invariant_factors;           // all > 1, d_i | d_{i+1}
  std::vector<RatVec> generator_lifts;  // coordinates in the lattice basis (over Q)
  RatMat form;
  IntMat gram;         // Gram matrix of the lattice
  IntMat coord_rows;   // k x n: coordinates of x in L^# are coord_rows * (gram * x) mod d_i
  Int order() const;
};

DiscriminantData discriminant_group(const Lattice& L);

struct DiscriminantAutomorphisms {
  std::size_t order = 0;
  /// Each matrix has column j = image of generator j in generator coordinates.
  std::vector<IntMat> automorphisms;
};

/// Exhaustive search over generator images. Throws std::length_error when the
/// group has more than max_order elements.
DiscriminantAutomorphisms aut_discriminant_form(const DiscriminantData& D,
                                                std::size_t max_order = 1u << 16);

/// Generator coordinates (reduced mod d_i) of a dual vector x.
IntVec discriminant_coords(const DiscriminantData& D, const RatVec& x);

/// Image of a discriminant-group element (generator coordinates) under an
/// isometry of the lattice, in generator coordinates.
IntVec discriminant_image(const DiscriminantData& D, const IntMat& isometry, const IntVec& element);

/// A subgroup of an ambient lattice given by basis rows in ambient coordinates.
struct Sublattice {
  IntMat basis;  // k x n, rows independent
  IntMat gram;   // basis * G * basis^T
  bool degenerate = false;
  Lattice lattice() const { return Lattice(gram); }
  std::size_t rank() const { return basis.rows(); }
};

Sublattice make_sublattice(const Lattice& L, const IntMat& basis_rows);

/// Elements fixed by every generator; the basis is Hermite-reduced. A degenerate
/// restricted form is flagged rather than rejected.
Sublattice fixed_sublattice(const Lattice& L, const GroupAction& H);

/// {x : x . m = 0 for all m in M}; saturated in L. Throws when M is degenerate.
Sublattice orthogonal_complement(const Lattice& L, const IntMat& m_basis_rows);

struct Overlattice {
  RatMat basis;  // rows in coordinates of the input lattice
  Lattice lattice;
  Int index;
};

/// Adjoin v/2 for every v with 8 | v.v and 2 | v.w for all w in L.
Overlattice saturate_by_halving(const Lattice& L);

/// Whether v = k x for some x in L (L in its own basis). Throws for k = 0.
bool is_divisible(const Lattice& L, const IntVec& v, const Int& k);
/// Same question for v in the row span of basis_rows (ambient coordinates).
bool is_divisible(const IntMat& basis_rows, const IntVec& v, const Int& k);

/// All vectors of exactly the given norm in a definite lattice, sorted
/// lexicographically. Throws std::invalid_argument for indefinite input.
std::vector<IntVec> short_vectors(const Lattice& L, const Int& target_norm);
/// All nonzero vectors with |norm| <= bound, sorted lexicographically.
std::vector<IntVec> vectors_up_to(const Lattice& L, const Int& abs_norm_bound);
/// All x (zero included) with |(x - center).(x - center)| <= bound, sorted.
std::vector<IntVec> vectors_near(const Lattice& L, const std::vector<Rat>& center, const Rat& abs_norm_bound);

enum class IsometryStatus { Found, Inconclusive, NotIsometric };

struct IsometrySearchResult {
  IsometryStatus status = IsometryStatus::Inconclusive;
  /// Rows are images of L1's basis vectors in L2 coordinates: T G2 T^T = G1.
  std::optional<IntMat> map;
  std::string reason;
};

/// Backtracking search for an isometry L1 -> L2 with image coefficients bounded
/// by coeff_bound. Exhaustion yields Inconclusive, never a non-isometry proof;
/// NotIsometric is returned only when a cheap invariant differs.
IsometrySearchResult isometry_search(const Lattice& L1, const Lattice& L2, long coeff_bound = 5);

struct FiniteGroup {
  std::vector<IntMat> generators;
  std::vector<IntMat> elements;
  std::size_t order() const { return elements.size(); }
};

/// Full orthogonal group of a definite lattice of rank <= 8.
FiniteGroup definite_isometry_group(const Lattice& L);

/// Closure of a finite matrix group; throws std::length_error past cap elements.
std::vector<IntMat> group_closure(const std::vector<IntMat>& generators, std::size_t cap = 1000000);

}  // namespace k3aut
