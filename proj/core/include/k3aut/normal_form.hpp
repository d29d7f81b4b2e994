#pragma once

#include "k3aut/exact.hpp"

#include <optional>

namespace k3aut {

struct SmithForm {
  IntMat U;  // unimodular, rows x rows
  IntMat D;  // diagonal, d_i | d_{i+1}, d_i >= 0
  IntMat V;  // unimodular, cols x cols
  /// Nonzero diagonal entries of D in order.
  IntVec invariant_factors() const;
};

/// U * A * V = D. Pivot: smallest nonzero |a_ij| in the active block, ties to
/// the lowest row and then the lowest column.
SmithForm smith_normal_form(const IntMat& A);

struct HermiteForm {
  IntMat H;  // row echelon; pivots positive; entries above a pivot in [0, pivot)
  IntMat U;  // unimodular with U * A = H
  std::size_t rank = 0;
};

HermiteForm hermite_normal_form(const IntMat& A);

/// Nonzero rows of the Hermite form: a canonical basis of the row lattice.
IntMat row_lattice_basis(const IntMat& A);

/// Basis (as rows, Hermite-reduced) of { x in Z^n : A x = 0 }.
IntMat integer_kernel(const IntMat& A);

/// Basis (as rows) of { x in Z^m : x A = 0 }.
IntMat integer_left_kernel(const IntMat& A);

Int determinant(const IntMat& A);
Rat determinant(const RatMat& A);
std::size_t rank(const IntMat& A);
std::size_t rank(const RatMat& A);

/// Inverse over Q; throws std::domain_error when singular.
RatMat inverse(const RatMat& A);
/// Inverse of a unimodular integer matrix; throws std::domain_error otherwise.
IntMat inverse_unimodular(const IntMat& A);
bool is_unimodular(const IntMat& A);

/// Some x with x * B = v over Q (B has independent rows), or nullopt.
std::optional<RatVec> solve_row(const RatMat& B, const RatVec& v);
/// Integer solution of x * B = v when it exists (B may have dependent rows).
std::optional<IntVec> solve_row_integer(const IntMat& B, const IntVec& v);

}  // namespace k3aut
