#pragma once

#include <random>

#include "k3aut/normal_form.hpp"
#include "k3aut/poly.hpp"

namespace k3aut::oracle {

inline IntMat random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

// det(kI - A) at k = 0..n, then Lagrange interpolation.
inline RatPoly charpoly_by_interpolation(const IntMat& A) {
  const std::size_t n = A.rows();
  RatPoly result;
  for (std::size_t k = 0; k <= n; ++k) {
    IntMat M = IntMat::identity(n);
    M *= Int(static_cast<long>(k));
    Int v = determinant(M - A);
    RatPoly basis = RatPoly::constant(1);
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == k) continue;
      basis = basis * RatPoly::from_ints({-static_cast<long>(j), 1}) *
              (Rat(1) / Rat(static_cast<long>(k) - static_cast<long>(j)));
    }
    result = result + basis * Rat(v);
  }
  return result;
}

}  // namespace k3aut::oracle
