#pragma once

#include "k3aut/poly.hpp"

#include <optional>
#include <vector>

namespace k3aut {

/// Point counts N_1, ..., N_m over F_{p^n}.
struct PointCountSeries {
  unsigned p = 0;
  std::vector<Int> counts;
};

/// t_n = N_n / p^n - p^n - p^-n, the trace of Frobenius^n on twisted H^2.
/// Throws std::logic_error if a denominator is not a power of p.
std::vector<Rat> twisted_h2_traces(const PointCountSeries& s);

/// Trace of the n-th power of a permutation with the given cycle sizes.
Rat subspace_trace(const std::vector<unsigned>& orbit_sizes, unsigned n);
/// prod over orbits of (t^size - 1).
RatPoly subspace_charpoly(const std::vector<unsigned>& orbit_sizes);

/// Coefficients c_0 = 1, c_1, ..., c_{dim/2} of the monic degree-dim
/// polynomial whose root power sums are traces[0], traces[1], ...
/// Throws std::invalid_argument for odd dim or too few traces.
std::vector<Rat> newton_half(const std::vector<Rat>& traces, unsigned dim);

/// Power sums p_1..p_count of the roots of a monic-normalised polynomial.
std::vector<Rat> power_sums(const RatPoly& f, unsigned count);

struct CompletedPoly {
  std::vector<RatPoly> candidates;  // one unless ambiguous
  std::vector<int> signs;
  bool ambiguous = false;
};

/// Extends c_0..c_{dim/2} using t^dim f(1/t) = sign f(t). A nonzero middle
/// coefficient forces sign +1; otherwise both signs are returned.
CompletedPoly complete_functional_equation(const std::vector<Rat>& half, unsigned dim);

/// Total multiplicity of cyclotomic factors.
unsigned unit_root_count(const RatPoly& f);

struct ZetaResult {
  std::vector<Rat> quotient_traces;
  CompletedPoly quotient;  // characteristic polynomial(s) on the quotient
  RatPoly full;            // subspace factor times the first candidate
  unsigned unit_roots = 0;
  unsigned rank_bound = 0;
};

/// Full reconstruction; dim_total is the dimension of H^2 (22 for a K3 surface).
ZetaResult picard_rank_bound(const PointCountSeries& counts, const std::vector<unsigned>& orbit_sizes,
                             unsigned dim_total);

struct VerificationResult {
  bool verified = false;
  std::vector<unsigned> checked_n;
  std::vector<unsigned> mismatched_n;
};

/// Checks that the power sums of a candidate quotient polynomial equal the
/// quotient traces derived from the available counts.
VerificationResult verify_quotient_poly(const PointCountSeries& counts, const std::vector<unsigned>& orbit_sizes,
                                        const RatPoly& f);

/// N_n predicted by a quotient polynomial for n = 1..count.
std::vector<Int> predicted_counts(unsigned p, const std::vector<unsigned>& orbit_sizes, const RatPoly& f,
                                  unsigned count);

}  // namespace k3aut
