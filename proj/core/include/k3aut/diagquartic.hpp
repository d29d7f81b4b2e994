#pragma once

#include "k3aut/lattice.hpp"
#include "k3aut/reflection.hpp"

#include <array>
#include <string>
#include <vector>

namespace k3aut {

/// |c| is neither a rational square nor twice one. Throws for c = 0.
bool admissible_c(const Rat& c);

/// Element of Q(zeta, gamma) with zeta^4 = -1 and gamma^4 = c, stored on the
/// basis zeta^i gamma^j (0 <= i, j <= 3) at index 4i + j.
class NFElem {
 public:
  explicit NFElem(Rat c = Rat(3));
  static NFElem from_rat(const Rat& c, const Rat& r);
  /// zeta^m gamma^e for any m >= 0, e in 0..3.
  static NFElem monomial(const Rat& c, unsigned m, unsigned e);

  const Rat& param() const { return c_; }
  const Rat& coord(unsigned i, unsigned j) const { return x_[4 * i + j]; }
  bool is_zero() const;

  NFElem operator+(const NFElem& o) const;
  NFElem operator-(const NFElem& o) const;
  NFElem operator-() const;
  NFElem operator*(const NFElem& o) const;
  NFElem& operator+=(const NFElem& o);
  friend bool operator==(const NFElem& a, const NFElem& b) { return a.c_ == b.c_ && a.x_ == b.x_; }
  friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

  /// Multiplicative inverse by an exact 16 x 16 solve. Throws std::domain_error
  /// for zero, or for a zero divisor when c is not admissible.
  NFElem inverse() const;

  /// Image under zeta -> zeta^a (a odd), gamma -> zeta^(2k) gamma.
  NFElem galois(unsigned a, unsigned k) const;

  std::string to_string() const;

 private:
  void check_same(const NFElem& o) const;
  Rat c_;
  std::array<Rat, 16> x_;
};

using NFVec = std::array<NFElem, 4>;

/// A line in P^3 given by two points spanning it and two linear forms cutting it out.
struct LineP3 {
  unsigned family = 0;  // 0: x = a y, z = b w; 1: x = a z, y = b w; 2: x = a w, y = b z
  unsigned alpha = 0;   // a = zeta^(2 alpha) times gamma (families 1, 2), times zeta (family 2)
  unsigned beta = 0;
  std::array<NFVec, 2> span;
  std::array<NFVec, 2> equations;
  std::string tag;
};

/// The 48 lines on x^4 - y^4 = c (z^4 - w^4), ordered by family, alpha, beta.
/// Each is checked to lie on the surface. Throws for inadmissible c.
std::vector<LineP3> diagonal_lines(const Rat& c);

/// Whether the quartic vanishes identically on the line.
bool line_on_surface(const LineP3& l, const Rat& c);

/// Whether the point lies on the line.
bool point_on_line(const LineP3& l, const NFVec& p);

/// 4 x 4 determinant over the number field.
NFElem determinant4(const std::array<NFVec, 4>& rows);

/// -2 on the diagonal, 1 where two lines meet. Throws on duplicate lines.
IntMat incidence_gram(const std::vector<LineP3>& lines, unsigned threads = 1);

struct GaloisAutomorphism {
  unsigned a = 1;  // zeta -> zeta^a
  unsigned k = 0;  // gamma -> zeta^(2k) gamma
};

/// The 16 automorphisms, identity first.
std::vector<GaloisAutomorphism> galois_group();

/// perms[s][i] is the index of the image of line i under the s-th automorphism.
std::vector<std::vector<std::size_t>> galois_permutations(const std::vector<LineP3>& lines);

struct PicardData {
  IntMat gram48;
  std::vector<std::vector<std::size_t>> galois_perms;
  Lattice picard{IntMat{{1}}};
  IntMat line_images;                  // 48 x 20, row i is the class of line i
  IntMat lifts;                        // 20 x 48, row j lifts basis vector j
  std::vector<IntMat> galois_matrices;  // act on columns of picard coordinates
};

/// Z^48 modulo the radical of gram48, with the transported Galois action.
PicardData build_picard(const IntMat& gram48, const std::vector<std::vector<std::size_t>>& perms);

/// Class of the plane section x = y, the sum of the lines {x = y, z = b w}.
IntVec hyperplane_class(const PicardData& pic, const std::vector<LineP3>& lines);

/// Classes D with D.H = 2 and D^2 = -2 that are not a sum of two line classes,
/// sorted. Found as H/2 + M with M in H-perp, M^2 = -3.
std::vector<IntVec> conic_classes(const PicardData& pic, const IntVec& H);

/// Orbits of the group generated by perms on {0, ..., n-1}, each sorted, ordered by least element.
std::vector<std::vector<std::size_t>> permutation_orbits(const std::vector<std::vector<std::size_t>>& perms,
                                                         std::size_t n);

/// Galois orbits of the given classes as GaloisOrbit records in picard coordinates.
std::vector<GaloisOrbit> class_orbits(const PicardData& pic, const std::vector<IntVec>& classes);

struct DiagonalQuartic {
  Rat c;
  std::vector<LineP3> lines;
  PicardData pic;
  IntVec H;
  Sublattice fixed;
  std::vector<GaloisOrbit> line_orbits;
  std::vector<IntVec> conics;
  std::vector<GaloisOrbit> conic_orbits;
};

DiagonalQuartic build_diagonal_quartic(const Rat& c, unsigned threads = 1);

}  // namespace k3aut
