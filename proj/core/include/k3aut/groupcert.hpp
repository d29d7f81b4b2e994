#pragma once

#include "k3aut/lattice.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace k3aut {

/// Generators of a group of isometries of a lattice.
struct GenSet {
  Lattice lattice{IntMat{{1}}};
  std::vector<IntMat> gens;
  std::vector<std::string> labels;
  /// Throws std::invalid_argument unless every generator preserves the Gram matrix.
  void validate() const;
};

/// Six generators of O(L_N) on the basis e1..e6 with Gram U + (-2)I_4: a
/// transposition and a 4-cycle of e3..e6, reflections in e2 - e1, e3 and
/// e1 - e3, and -1.
GenSet o_ln_generators();

/// A subspace of F_2^n (n <= 6) as the bitset of its members.
using F2Subspace = std::uint64_t;

/// All subspaces of codimension 2 in F_2^n, sorted.
std::vector<F2Subspace> codim2_subspaces(unsigned n);
/// The image of L/2L-subspace W under g (acting on columns).
F2Subspace act_on_subspace(const IntMat& g, F2Subspace W);
/// W = S/2L for a sublattice S (rows) with L/S = (Z/2)^2. Throws otherwise.
F2Subspace subspace_of_sublattice(const IntMat& basis_rows);

struct StabilizerResult {
  std::size_t permutation_degree = 0;  // number of (Z/2)^2-quotient sublattices
  std::vector<F2Subspace> orbit;       // orbit of the target, in BFS order
  std::vector<IntMat> transversal;     // transversal[i] maps the target to orbit[i]
  std::size_t schreier_candidates = 0;
  GenSet stabilizer;                   // distinct nontrivial Schreier generators
};

/// Orbit-stabiliser on (Z/2)^2-quotient sublattices. Throws std::runtime_error
/// when the orbit exceeds the cap.
StabilizerResult sublattice_stabilizer(const GenSet& G, const IntMat& target_basis_rows, std::size_t cap = 100000);

/// Words are letter lists: +(i+1) is generator i, -(i+1) its inverse.
using Word = std::vector<int>;

IntMat evaluate_word(const std::vector<IntMat>& gens, const Word& w);

struct ReducedGenSet {
  GenSet kept;
  std::vector<IntMat> dropped;
  std::vector<Word> witnesses;  // over the kept generators' indices at the time of dropping,
                                // rewritten in terms of the final kept list
};

/// Drops identities and duplicates, then (last to first) any generator equal to
/// a word of length <= word_cap in the remaining generators and their inverses.
ReducedGenSet reduce_generators(const GenSet& G, unsigned word_cap = 5);

/// Freely and cyclically reduced words equal to the identity, one per class under
/// rotation and inversion: words in gens of length <= maxlen, and words in gens
/// and extra of length <= extlen using at least one extra letter. Extra letters
/// are numbered after the generators.
std::vector<Word> discover_relations(const std::vector<IntMat>& gens, unsigned maxlen,
                                     const std::vector<IntMat>& extra, unsigned extlen,
                                     std::size_t word_cap = 50000000);

struct FiniteIndexCertificate {
  std::vector<IntMat> representatives;            // canonical coset representatives
  std::vector<std::vector<std::size_t>> action;   // action[r][s]: coset of rep_r * gen_s
  std::uint64_t transcript_hash = 0;
  std::size_t index() const { return representatives.size(); }
};

enum class CertStatus { Certified, Inconclusive };

struct CertificationResult {
  CertStatus status = CertStatus::Inconclusive;
  std::optional<FiniteIndexCertificate> certificate;
  std::string reason;
  std::size_t explored = 0;
};

/// Breadth-first enumeration of the right cosets R g of the reflection group
/// R = <reflections> inside <gens, reflections>, with chamber descent towards y
/// as the canonical form. Certified means the cosets close up within the cap.
CertificationResult certify_finite_quotient(const IntMat& gram, const std::vector<IntMat>& gens,
                                            const std::vector<IntVec>& walls,
                                            const std::vector<IntMat>& reflections, const IntVec& y,
                                            std::size_t cap = 10000);

/// Re-checks every table entry: rep_r * gen_s * rep_t^-1 must be a descent member of R.
bool verify_certificate(const FiniteIndexCertificate& cert, const IntMat& gram, const std::vector<IntMat>& gens,
                        const std::vector<IntVec>& walls, const std::vector<IntMat>& reflections,
                        const IntVec& y);

}  // namespace k3aut
