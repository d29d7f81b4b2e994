#pragma once

#include "k3aut/ffield.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace k3aut {

struct Monomial {
  long coeff = 0;
  std::vector<unsigned> exps;
};

using HomPoly = std::vector<Monomial>;

/// Homogeneous polynomials over a prime field defining a subscheme of P^d.
struct SurfaceModel {
  std::string name;
  unsigned p = 0;
  unsigned ambient_dim = 0;
  std::vector<std::string> vars;
  std::vector<HomPoly> polys;  // coefficients as written; reduced mod p on use
};

/// Validates homogeneity, exponent lengths and primality of p.
void validate(const SurfaceModel& m);

/// Surface JSON: {"name", "p", "ambient_dim", "vars"?, "polys": [[[c, [e...]], ...], ...]}.
SurfaceModel parse_surface_json(const std::string& text);
SurfaceModel load_surface(const std::string& path);
/// Path of a shipped model such as "u3", "y3", "y5".
std::string shipped_surface_path(const std::string& name);
/// Canonical one-line serialization, used for transcription checksums.
std::string canonical_surface_string(const SurfaceModel& m);

struct CountOptions {
  unsigned threads = 1;
  /// Refuse direct counts with more than this many candidate points.
  double direct_budget = 2e9;
};

/// Projective points over F_{p^n} on the common zero locus, by evaluating the
/// polynomials at every normalised point.
std::uint64_t count_direct(const SurfaceModel& m, unsigned n, const CountOptions& opt = {});

/// Same count, fibred over the last coordinate: every normalised prefix
/// contributes the number of distinct common roots in the last variable.
std::uint64_t count_fibered(const SurfaceModel& m, unsigned n, const CountOptions& opt = {});

/// Evaluates one polynomial at a point given in field elements.
Fq::Elem evaluate(const Fq& K, const HomPoly& f, const std::vector<Fq::Elem>& x);

/// A projective line as a 2 x (d+1) reduced row echelon matrix, entries as
/// field indices (base-p digit encoding of the polynomial representation).
struct LineFq {
  std::vector<std::vector<std::uint32_t>> rows;
  friend bool operator<(const LineFq& a, const LineFq& b) { return a.rows < b.rows; }
  friend bool operator==(const LineFq& a, const LineFq& b) { return a.rows == b.rows; }
};

struct LineSearchOptions {
  /// Each entry is a system of homogeneous polynomials; lines meeting its zero
  /// set in an F_q-point are dropped.
  std::vector<std::vector<HomPoly>> avoid;
  std::uint64_t max_points = 200000;
};

/// All F_{p^n}-lines contained in the model, via lines through pairs of
/// rational points, deduplicated by echelon form.
std::vector<LineFq> find_lines(const SurfaceModel& m, unsigned n, const LineSearchOptions& opt = {});

/// The q + 1 rational points of a line, each normalised.
std::vector<std::vector<Fq::Elem>> line_points(const Fq& K, const LineFq& line);

/// Normalised rational points (first nonzero coordinate 1) on the model.
std::vector<std::vector<Fq::Elem>> rational_points(const SurfaceModel& m, const Fq& K, std::uint64_t cap);

}  // namespace k3aut
