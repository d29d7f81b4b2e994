#include "k3aut/normal_form.hpp"

#include <algorithm>

namespace k3aut {

IntVec SmithForm::invariant_factors() const {
  IntVec out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) out.push_back(D(i, i));
  return out;
}

namespace {

void row_axpy(IntMat& M, std::size_t dst, std::size_t src, const Int& q) {
  // row_dst -= q * row_src
  for (std::size_t j = 0; j < M.cols(); ++j)
    if (M(src, j) != 0) M(dst, j) -= q * M(src, j);
}

void col_axpy(IntMat& M, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t i = 0; i < M.rows(); ++i)
    if (M(i, src) != 0) M(i, dst) -= q * M(i, src);
}

void negate_row(IntMat& M, std::size_t r) {
  for (std::size_t j = 0; j < M.cols(); ++j) M(r, j) = -M(r, j);
}

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMat& A) {
  const std::size_t m = A.rows(), n = A.cols();
  IntMat D = A;
  IntMat U = IntMat::identity(m);
  IntMat V = IntMat::identity(n);

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Select the pivot in the active block.
      bool found = false;
      std::size_t pr = 0, pc = 0;
      Int best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (D(i, j) == 0) continue;
          Int a = abs(D(i, j));
          if (!found || a < best) {
            found = true;
            best = a;
            pr = i;
            pc = j;
          }
        }
      if (!found) goto done;
      D.swap_rows(t, pr);
      U.swap_rows(t, pr);
      D.swap_cols(t, pc);
      V.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Int q = fdiv(D(i, t), D(t, t));
        row_axpy(D, i, t, q);
        row_axpy(U, i, t, q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Int q = fdiv(D(t, j), D(t, t));
        col_axpy(D, j, t, q);
        col_axpy(V, j, t, q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and retry.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            row_axpy(D, t, i, Int(-1));
            row_axpy(U, t, i, Int(-1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (D(t, t) < 0) {
      negate_row(D, t);
      negate_row(U, t);
    }
  }
done:
  return SmithForm{std::move(U), std::move(D), std::move(V)};
}

HermiteForm hermite_normal_form(const IntMat& A) {
  const std::size_t m = A.rows(), n = A.cols();
  IntMat H = A;
  IntMat U = IntMat::identity(m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, c) != 0 && (best == m || abs(H(i, c)) < abs(H(best, c)))) best = i;
      if (best == m) break;
      H.swap_rows(r, best);
      U.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        Int q = fdiv(H(i, c), H(r, c));
        row_axpy(H, i, r, q);
        row_axpy(U, i, r, q);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r < m && H(r, c) != 0) {
      if (H(r, c) < 0) {
        negate_row(H, r);
        negate_row(U, r);
      }
      for (std::size_t i = 0; i < r; ++i) {
        Int q = fdiv(H(i, c), H(r, c));
        if (q != 0) {
          row_axpy(H, i, r, q);
          row_axpy(U, i, r, q);
        }
      }
      ++r;
    }
  }
  return HermiteForm{std::move(H), std::move(U), r};
}

IntMat row_lattice_basis(const IntMat& A) {
  HermiteForm hf = hermite_normal_form(A);
  return hf.H.block(0, 0, hf.rank, A.cols());
}

IntMat integer_left_kernel(const IntMat& A) {
  HermiteForm hf = hermite_normal_form(A);
  const std::size_t m = A.rows();
  if (hf.rank == m) return IntMat(0, m);
  IntMat K = hf.U.block(hf.rank, 0, m - hf.rank, m);
  return row_lattice_basis(K);
}

IntMat integer_kernel(const IntMat& A) { return integer_left_kernel(A.transpose()); }

Int determinant(const IntMat& A) {
  if (!A.square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  IntMat M = A;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && M(p, k) == 0) ++p;
      if (p == n) return 0;
      M.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(M(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

Rat determinant(const RatMat& A) {
  if (!A.square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = A.rows();
  RatMat M = A;
  Rat det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && M(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      M.swap_rows(k, p);
      det = -det;
    }
    det *= M(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (M(i, k) == 0) continue;
      Rat f = M(i, k) / M(k, k);
      for (std::size_t j = k; j < n; ++j) M(i, j) -= f * M(k, j);
    }
  }
  return det;
}

std::size_t rank(const RatMat& A) {
  RatMat M = A;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
    std::size_t p = r;
    while (p < M.rows() && M(p, c) == 0) ++p;
    if (p == M.rows()) continue;
    M.swap_rows(r, p);
    for (std::size_t i = r + 1; i < M.rows(); ++i) {
      if (M(i, c) == 0) continue;
      Rat f = M(i, c) / M(r, c);
      for (std::size_t j = c; j < M.cols(); ++j) M(i, j) -= f * M(r, j);
    }
    ++r;
  }
  return r;
}

std::size_t rank(const IntMat& A) { return hermite_normal_form(A).rank; }

RatMat inverse(const RatMat& A) {
  if (!A.square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = A.rows();
  RatMat M = A;
  RatMat I = RatMat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && M(p, c) == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    M.swap_rows(c, p);
    I.swap_rows(c, p);
    Rat inv = 1 / M(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      M(c, j) *= inv;
      I(c, j) *= inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || M(i, c) == 0) continue;
      Rat f = M(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        M(i, j) -= f * M(c, j);
        I(i, j) -= f * I(c, j);
      }
    }
  }
  return I;
}

bool is_unimodular(const IntMat& A) {
  if (!A.square()) return false;
  Int d = determinant(A);
  return d == 1 || d == -1;
}

IntMat inverse_unimodular(const IntMat& A) {
  if (!is_unimodular(A)) throw std::domain_error("matrix is not unimodular");
  return to_int(inverse(to_rat(A)));
}

std::optional<RatVec> solve_row(const RatMat& B, const RatVec& v) {
  // Solve x B = v, i.e. B^T x^T = v^T, by elimination on the augmented system.
  const std::size_t k = B.rows(), n = B.cols();
  if (v.size() != n) throw std::invalid_argument("solve_row: dimension mismatch");
  RatMat M(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) M(i, j) = B(j, i);
    M(i, k) = v[i];
  }
  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t p = r;
    while (p < n && M(p, c) == 0) ++p;
    if (p == n) continue;
    M.swap_rows(r, p);
    Rat inv = 1 / M(r, c);
    for (std::size_t j = c; j <= k; ++j) M(r, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || M(i, c) == 0) continue;
      Rat f = M(i, c);
      for (std::size_t j = c; j <= k; ++j) M(i, j) -= f * M(r, j);
    }
    pivcol.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (M(i, k) != 0) return std::nullopt;
  RatVec x(k);
  for (std::size_t i = 0; i < r; ++i) x[pivcol[i]] = M(i, k);
  return x;
}

std::optional<IntVec> solve_row_integer(const IntMat& B, const IntVec& v) {
  // With U B V = D: x B = v  <=>  (x U^{-1}) D = v V.
  SmithForm sf = smith_normal_form(B);
  IntVec w = row_times(v, sf.V);
  const std::size_t k = B.rows();
  IntVec y(k);
  for (std::size_t j = 0; j < w.size(); ++j) {
    Int d = j < std::min(k, B.cols()) ? sf.D(j, j) : Int(0);
    if (d == 0) {
      if (w[j] != 0) return std::nullopt;
      continue;
    }
    if (w[j] % d != 0) return std::nullopt;
    y[j] = w[j] / d;
  }
  return row_times(y, sf.U);
}

}  // namespace k3aut
