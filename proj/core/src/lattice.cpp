#include "k3aut/lattice.hpp"

#include "k3aut/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace k3aut {

namespace {

bool symmetric(const IntMat& g) {
  if (!g.square()) return false;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = i + 1; j < g.cols(); ++j)
      if (g(i, j) != g(j, i)) return false;
  return true;
}

}  // namespace

Lattice::Lattice(IntMat gram, std::vector<std::string> labels)
    : gram_(std::move(gram)), labels_(std::move(labels)) {
  if (gram_.empty() || !gram_.square()) throw std::invalid_argument("gram must be square and nonempty");
  if (!symmetric(gram_)) throw std::invalid_argument("gram must be symmetric");
  if (!labels_.empty() && labels_.size() != gram_.rows())
    throw std::invalid_argument("label count does not match rank");
  if (determinant(gram_) == 0) throw std::invalid_argument("gram is degenerate");
}

bool Lattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (mpz_odd_p(gram_(i, i).get_mpz_t())) return false;
  return true;
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntMat g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
  return Lattice(g);
}

Lattice hyperbolic_plane() { return Lattice(IntMat{{0, 1}, {1, 0}}); }

Lattice a1_power(std::size_t n) { return Lattice(IntMat::diagonal(IntVec(n, Int(-2)))); }

Signature signature(const IntMat& symmetric_gram) {
  if (!symmetric(symmetric_gram)) throw std::invalid_argument("signature needs a symmetric matrix");
  RatMat a = to_rat(symmetric_gram);
  const std::size_t n = a.rows();
  Signature s;
  std::size_t k = 0;
  while (k < n) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      // zero diagonal: use x_i + x_j for a nonzero off-diagonal entry
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        s.zero += n - k;
        break;
      }
      for (std::size_t c = 0; c < n; ++c) a(pi, c) += a(pj, c);
      for (std::size_t r = 0; r < n; ++r) a(r, pi) += a(r, pj);
      piv = pi;
    }
    if (piv != k) {
      a.swap_rows(piv, k);
      a.swap_cols(piv, k);
    }
    const Rat p = a(k, k);
    (p > 0 ? s.positive : s.negative) += 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rat f = a(i, k) / p;
      for (std::size_t c = k; c < n; ++c) a(i, c) -= f * a(k, c);
      for (std::size_t r = k; r < n; ++r) a(r, i) -= f * a(r, k);
    }
    ++k;
  }
  return s;
}

Signature signature(const Lattice& L) { return signature(L.gram()); }

Int determinant(const Lattice& L) { return determinant(L.gram()); }

bool is_definite(const Lattice& L) {
  const Signature s = signature(L);
  return s.positive == 0 || s.negative == 0;
}

bool preserves_gram(const IntMat& g, const IntMat& gram) {
  if (!g.square() || g.rows() != gram.rows()) return false;
  return g.transpose() * gram * g == gram;
}

Isometry Isometry::verified(IntMat mat, const Lattice& L) {
  if (!preserves_gram(mat, L.gram())) throw std::invalid_argument("matrix does not preserve the gram matrix");
  if (!is_unimodular(mat)) throw std::invalid_argument("isometry matrix is not unimodular");
  return Isometry(std::move(mat));
}

// ---------------------------------------------------------------- discriminant

Int DiscriminantData::order() const {
  Int o = 1;
  for (const Int& d : invariant_factors) o *= d;
  return o;
}

DiscriminantData discriminant_group(const Lattice& L) {
  const IntMat& G = L.gram();
  const std::size_t n = L.rank();
  SmithForm sf = smith_normal_form(G);
  const RatMat Ginv = inverse(to_rat(G));
  const IntMat Uinv = inverse_unimodular(sf.U);
  DiscriminantData d;
  d.gram = G;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const Int di = abs(sf.D(i, i));
    if (di <= 1) continue;
    rows.push_back(i);
    d.invariant_factors.push_back(di);
    d.generator_lifts.push_back(Ginv * to_rat(Uinv.col(i)));
  }
  d.coord_rows = sf.U.select_rows(rows);
  const std::size_t k = d.invariant_factors.size();
  const RatMat Gq = to_rat(G);
  d.form = RatMat(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const Rat v = pair(d.generator_lifts[i], Gq, d.generator_lifts[j]);
      d.form(i, j) = i == j ? mod_rat(v, 2) : mod_rat(v, 1);
    }
  return d;
}

IntVec discriminant_coords(const DiscriminantData& D, const RatVec& x) {
  const std::size_t k = D.invariant_factors.size();
  const IntVec y = to_int(to_rat(D.gram) * x);
  IntVec a(k);
  for (std::size_t i = 0; i < k; ++i) a[i] = mod_pos(dot(D.coord_rows.row(i), y), D.invariant_factors[i]);
  return a;
}

IntVec discriminant_image(const DiscriminantData& D, const IntMat& isometry, const IntVec& element) {
  const std::size_t k = D.invariant_factors.size();
  if (element.size() != k) throw std::invalid_argument("element has wrong length");
  const std::size_t n = D.gram.rows();
  RatVec x(n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < n; ++c) x[c] += Rat(element[i]) * D.generator_lifts[i][c];
  return discriminant_coords(D, to_rat(isometry) * x);
}

namespace {

// Elements of a finite abelian group in mixed-radix order.
struct FiniteAbelian {
  std::vector<long> d;
  std::size_t size = 1;

  std::vector<long> decode(std::size_t idx) const {
    std::vector<long> a(d.size());
    for (std::size_t i = d.size(); i-- > 0;) {
      a[i] = static_cast<long>(idx % static_cast<std::size_t>(d[i]));
      idx /= static_cast<std::size_t>(d[i]);
    }
    return a;
  }
  std::size_t encode(const std::vector<long>& a) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      long v = a[i] % d[i];
      if (v < 0) v += d[i];
      idx = idx * static_cast<std::size_t>(d[i]) + static_cast<std::size_t>(v);
    }
    return idx;
  }
};

Rat disc_bilinear(const RatMat& form, const std::vector<long>& a, const std::vector<long>& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (a[i] != 0 && b[j] != 0) s += Rat(a[i] * b[j]) * form(i, j);
  return mod_rat(s, 1);
}

Rat disc_quadratic(const RatMat& form, const std::vector<long>& a) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    s += Rat(a[i] * a[i]) * form(i, i);
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[j] != 0) s += Rat(2 * a[i] * a[j]) * form(i, j);
  }
  return mod_rat(s, 2);
}

}  // namespace

DiscriminantAutomorphisms aut_discriminant_form(const DiscriminantData& D, std::size_t max_order) {
  FiniteAbelian A;
  for (const Int& di : D.invariant_factors) {
    if (!di.fits_slong_p() || Int(A.size) * di > Int(static_cast<unsigned long>(max_order)))
      throw std::length_error("discriminant group exceeds the brute-force cap");
    A.d.push_back(di.get_si());
    A.size *= static_cast<std::size_t>(di.get_si());
  }
  const std::size_t k = A.d.size();
  DiscriminantAutomorphisms out;
  if (k == 0) {
    out.order = 1;
    out.automorphisms.push_back(IntMat(0, 0));
    return out;
  }
  std::vector<std::vector<long>> elems(A.size);
  std::vector<Rat> q(A.size);
  for (std::size_t e = 0; e < A.size; ++e) {
    elems[e] = A.decode(e);
    q[e] = disc_quadratic(D.form, elems[e]);
  }
  // candidates for generator j: elements killed by d_j with the right q value
  std::vector<std::vector<std::size_t>> cand(k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t e = 0; e < A.size; ++e) {
      bool killed = true;
      for (std::size_t i = 0; i < k && killed; ++i) killed = (elems[e][i] * A.d[j]) % A.d[i] == 0;
      if (killed && q[e] == D.form(j, j)) cand[j].push_back(e);
    }
  }
  std::vector<std::size_t> img(k);
  std::vector<char> seen(A.size);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == k) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t e = 0; e < A.size; ++e) {
        std::vector<long> s(k, 0);
        for (std::size_t g = 0; g < k; ++g)
          for (std::size_t i = 0; i < k; ++i) s[i] += elems[e][g] * elems[img[g]][i];
        const std::size_t t = A.encode(s);
        if (seen[t]) return;
        seen[t] = 1;
      }
      IntMat m(k, k);
      for (std::size_t g = 0; g < k; ++g)
        for (std::size_t i = 0; i < k; ++i) m(i, g) = elems[img[g]][i];
      out.automorphisms.push_back(std::move(m));
      return;
    }
    for (std::size_t e : cand[j]) {
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i) ok = disc_bilinear(D.form, elems[img[i]], elems[e]) == D.form(i, j);
      if (!ok) continue;
      img[j] = e;
      rec(j + 1);
    }
  };
  rec(0);
  out.order = out.automorphisms.size();
  return out;
}

// ---------------------------------------------------------------- sublattices

Sublattice make_sublattice(const Lattice& L, const IntMat& basis_rows) {
  if (basis_rows.cols() != L.rank()) throw std::invalid_argument("basis has wrong width");
  if (rank(basis_rows) != basis_rows.rows()) throw std::invalid_argument("basis rows are dependent");
  Sublattice s;
  s.basis = basis_rows;
  s.gram = basis_rows * L.gram() * basis_rows.transpose();
  s.degenerate = s.basis.rows() == 0 || determinant(s.gram) == 0;
  return s;
}

Sublattice fixed_sublattice(const Lattice& L, const GroupAction& H) {
  const std::size_t n = L.rank();
  if (H.generators.empty()) return make_sublattice(L, IntMat::identity(n));
  IntMat stacked(n * H.generators.size(), n);
  for (std::size_t t = 0; t < H.generators.size(); ++t) {
    const IntMat& g = H.generators[t];
    if (!preserves_gram(g, L.gram())) throw std::invalid_argument("generator does not preserve the gram matrix");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) stacked(t * n + i, j) = g(i, j) - (i == j ? 1 : 0);
  }
  return make_sublattice(L, integer_kernel(stacked));
}

Sublattice orthogonal_complement(const Lattice& L, const IntMat& m_basis_rows) {
  const Sublattice m = make_sublattice(L, m_basis_rows);
  if (m.degenerate) throw std::invalid_argument("sublattice is degenerate");
  const IntMat a = m_basis_rows * L.gram();
  return make_sublattice(L, integer_kernel(a));
}

namespace {

// Basis of the F2 kernel of G mod 2, as 0/1 vectors.
std::vector<IntVec> kernel_mod2(const IntMat& G) {
  const std::size_t n = G.rows();
  std::vector<std::vector<char>> m(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = mpz_odd_p(G(i, j).get_mpz_t()) ? 1 : 0;
  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t p = r;
    while (p < n && !m[p][c]) ++p;
    if (p == n) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < n; ++i)
      if (i != r && m[i][c])
        for (std::size_t j = 0; j < n; ++j) m[i][j] ^= m[r][j];
    pivcol.push_back(c);
    ++r;
  }
  std::vector<char> is_piv(n, 0);
  for (std::size_t c : pivcol) is_piv[c] = 1;
  std::vector<IntVec> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    IntVec v(n, Int(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivcol.size(); ++i)
      if (m[i][f]) v[pivcol[i]] = 1;
    basis.push_back(v);
  }
  return basis;
}

RatMat half_overlattice_basis(std::size_t n, const std::vector<IntVec>& halves) {
  IntMat gens(n + halves.size(), n);
  for (std::size_t i = 0; i < n; ++i) gens(i, i) = 2;
  for (std::size_t t = 0; t < halves.size(); ++t) gens.set_row(n + t, halves[t]);
  const IntMat h = row_lattice_basis(gens);
  RatMat b = to_rat(h);
  b *= Rat(1, 2);
  return b;
}

}  // namespace

Overlattice saturate_by_halving(const Lattice& L) {
  const IntMat& G = L.gram();
  const std::size_t n = L.rank();
  const std::vector<IntVec> ker = kernel_mod2(G);
  if (ker.size() > 24) throw std::length_error("2-kernel too large to scan");
  const RatMat Gq = to_rat(G);
  std::vector<IntVec> halves;
  RatMat basis = RatMat::identity(n);
  // One pass over the nonzero classes of the 2-kernel; v/2 is kept only while
  // the overlattice stays integral.
  for (std::size_t mask = 1; mask < (std::size_t{1} << ker.size()); ++mask) {
    IntVec v(n, Int(0));
    for (std::size_t b = 0; b < ker.size(); ++b)
      if (mask >> b & 1) v = v + ker[b];
    for (Int& x : v) x = mod_pos(x, 2);
    const Int nv = L.norm(v);
    if (mod_pos(nv, 8) != 0) continue;
    std::vector<IntVec> trial = halves;
    trial.push_back(v);
    const RatMat b = half_overlattice_basis(n, trial);
    if (!is_integral(b * Gq * b.transpose())) continue;
    halves = std::move(trial);
    basis = b;
  }
  const IntMat gram = to_int(basis * Gq * basis.transpose());
  const Rat det_b = determinant(basis);
  const Rat idx = 1 / abs(det_b);
  if (idx.get_den() != 1) throw std::logic_error("overlattice index is not an integer");
  return Overlattice{basis, Lattice(gram), idx.get_num()};
}

bool is_divisible(const Lattice& L, const IntVec& v, const Int& k) {
  if (k == 0) throw std::invalid_argument("divisor must be nonzero");
  if (v.size() != L.rank()) throw std::invalid_argument("vector has wrong length");
  for (const Int& x : v)
    if (!mpz_divisible_p(x.get_mpz_t(), k.get_mpz_t())) return false;
  return true;
}

bool is_divisible(const IntMat& basis_rows, const IntVec& v, const Int& k) {
  if (k == 0) throw std::invalid_argument("divisor must be nonzero");
  const std::optional<IntVec> x = solve_row_integer(basis_rows, v);
  if (!x) throw std::invalid_argument("vector is not in the sublattice");
  // With independent rows the coordinates are unique.
  for (const Int& c : *x)
    if (!mpz_divisible_p(c.get_mpz_t(), k.get_mpz_t())) return false;
  return true;
}

// ---------------------------------------------------------------- enumeration

namespace {

// Fincke-Pohst over a positive-definite Gram matrix with exact rational data.
// Calls visit(x, norm) for every x with (x - center)^T Q (x - center) <= bound,
// norm being that value. The zero vector is reported only if keep_zero.
void fincke_pohst(const IntMat& Q, const std::vector<Rat>& center, const Rat& bound, bool keep_zero,
                  const std::function<void(const IntVec&, const Rat&)>& visit) {
  const std::size_t n = Q.rows();
  RatMat q = to_rat(Q);
  for (std::size_t i = 0; i < n; ++i) {
    if (q(i, i) <= 0) throw std::invalid_argument("form is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) = q(i, j) / q(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  IntVec x(n, Int(0));
  std::vector<Rat> remain(n + 1);
  remain[n] = bound;
  // Integers t with q_ii (t + c)^2 <= T form an interval around -c.
  auto admissible = [&](std::size_t i, const Rat& c, const Int& t) {
    const Rat u = Rat(t) + c;
    return q(i, i) * u * u <= remain[i + 1];
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    Rat c = -center[i];
    for (std::size_t j = i + 1; j < n; ++j) c += q(i, j) * (Rat(x[j]) - center[j]);
    const Rat s = remain[i + 1] / q(i, i);
    const double r = std::sqrt(std::max(0.0, s.get_d()));
    Int lo = floor_div(-c - Rat(r)) - 1;
    Int hi = ceil_div(-c + Rat(r)) + 1;
    const Int mid = floor_div(-c);
    while (lo < mid && !admissible(i, c, lo)) ++lo;
    while (admissible(i, c, lo - 1)) --lo;
    while (hi > mid && !admissible(i, c, hi)) --hi;
    while (admissible(i, c, hi + 1)) ++hi;
    for (Int t = lo; t <= hi; ++t) {
      if (!admissible(i, c, t)) continue;
      x[i] = t;
      const Rat u = Rat(t) + c;
      remain[i] = remain[i + 1] - q(i, i) * u * u;
      if (i == 0) {
        if (keep_zero || !is_zero(x)) visit(x, bound - remain[0]);
      } else {
        rec(i - 1);
      }
    }
    x[i] = 0;
  };
  rec(n - 1);
}

// Sign s such that s * G is positive definite; throws for indefinite input.
int definite_sign(const Lattice& L) {
  const Signature s = signature(L);
  if (s.negative == 0) return 1;
  if (s.positive == 0) return -1;
  throw std::invalid_argument("lattice is indefinite");
}

}  // namespace

std::vector<IntVec> short_vectors(const Lattice& L, const Int& target_norm) {
  const int sign = definite_sign(L);
  const Int t = sign * target_norm;
  std::vector<IntVec> out;
  if (t <= 0) return out;
  IntMat Q = L.gram();
  if (sign < 0) Q = -Q;
  fincke_pohst(Q, std::vector<Rat>(L.rank()), Rat(t), false, [&](const IntVec& x, const Rat& nrm) {
    if (nrm == t) out.push_back(x);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVec> vectors_up_to(const Lattice& L, const Int& abs_norm_bound) {
  const int sign = definite_sign(L);
  std::vector<IntVec> out;
  if (abs_norm_bound <= 0) return out;
  IntMat Q = L.gram();
  if (sign < 0) Q = -Q;
  fincke_pohst(Q, std::vector<Rat>(L.rank()), Rat(abs_norm_bound), false,
               [&](const IntVec& x, const Rat&) { out.push_back(x); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVec> vectors_near(const Lattice& L, const std::vector<Rat>& center, const Rat& abs_norm_bound) {
  if (center.size() != L.rank()) throw std::invalid_argument("center has wrong length");
  const int sign = definite_sign(L);
  std::vector<IntVec> out;
  if (abs_norm_bound < 0) return out;
  IntMat Q = L.gram();
  if (sign < 0) Q = -Q;
  fincke_pohst(Q, center, abs_norm_bound, true, [&](const IntVec& x, const Rat&) { out.push_back(x); });
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- isometries

IsometrySearchResult isometry_search(const Lattice& L1, const Lattice& L2, long coeff_bound) {
  IsometrySearchResult res;
  if (L1.rank() != L2.rank()) {
    res.status = IsometryStatus::NotIsometric;
    res.reason = "rank differs";
    return res;
  }
  if (determinant(L1) != determinant(L2)) {
    res.status = IsometryStatus::NotIsometric;
    res.reason = "determinant differs";
    return res;
  }
  if (!(signature(L1) == signature(L2))) {
    res.status = IsometryStatus::NotIsometric;
    res.reason = "signature differs";
    return res;
  }
  if (L1.is_even() != L2.is_even()) {
    res.status = IsometryStatus::NotIsometric;
    res.reason = "parity differs";
    return res;
  }
  if (coeff_bound < 0) throw std::invalid_argument("coefficient bound must be nonnegative");
  const std::size_t n = L1.rank();
  const IntMat& G1 = L1.gram();
  const IntMat& G2 = L2.gram();
  // Small-integer arithmetic for the box scan.
  const long lim = 1L << 20;
  std::vector<long> g2(n * n), g1(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (abs(G1(i, j)) > lim || abs(G2(i, j)) > lim) {
        res.reason = "gram entries too large for the box search";
        return res;
      }
      g1[i * n + j] = G1(i, j).get_si();
      g2[i * n + j] = G2(i, j).get_si();
    }
  const double box = std::pow(2.0 * static_cast<double>(coeff_bound) + 1.0, static_cast<double>(n));
  if (box > 5e7) {
    res.reason = "coefficient box too large";
    return res;
  }
  std::map<long, std::vector<std::vector<long>>> bucket;
  for (std::size_t i = 0; i < n; ++i) bucket[g1[i * n + i]];
  std::vector<long> v(n, -coeff_bound);
  while (true) {
    long nrm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      long row = 0;
      for (std::size_t j = 0; j < n; ++j) row += g2[i * n + j] * v[j];
      nrm += v[i] * row;
    }
    auto it = bucket.find(nrm);
    if (it != bucket.end() && std::any_of(v.begin(), v.end(), [](long c) { return c != 0; })) it->second.push_back(v);
    std::size_t p = 0;
    while (p < n && v[p] == coeff_bound) v[p++] = -coeff_bound;
    if (p == n) break;
    ++v[p];
  }
  std::vector<const std::vector<long>*> img(n);
  std::vector<std::vector<long>> gimg(n, std::vector<long>(n));  // G2 * img
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (const auto& c : bucket[g1[i * n + i]]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        long s = 0;
        for (std::size_t t = 0; t < n; ++t) s += c[t] * gimg[j][t];
        ok = s == g1[i * n + j];
      }
      if (!ok) continue;
      img[i] = &c;
      for (std::size_t r = 0; r < n; ++r) {
        long s = 0;
        for (std::size_t t = 0; t < n; ++t) s += g2[r * n + t] * c[t];
        gimg[i][r] = s;
      }
      if (rec(i + 1)) return true;
    }
    return false;
  };
  if (!rec(0)) {
    res.reason = "no isometry with coefficients bounded by " + std::to_string(coeff_bound);
    return res;
  }
  IntMat T(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) T(i, j) = (*img[i])[j];
  if (T * G2 * T.transpose() != G1 || !is_unimodular(T)) throw std::logic_error("isometry certificate failed to verify");
  res.status = IsometryStatus::Found;
  res.map = T;
  return res;
}

std::vector<IntMat> group_closure(const std::vector<IntMat>& generators, std::size_t cap) {
  if (generators.empty()) return {};
  const std::size_t n = generators.front().rows();
  std::unordered_set<IntMat, IntMatHash> seen;
  std::vector<IntMat> order{IntMat::identity(n)};
  seen.insert(order.front());
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const IntMat& g : generators) {
      IntMat h = order[head] * g;
      if (seen.insert(h).second) {
        if (order.size() >= cap) throw std::length_error("group closure exceeded cap");
        order.push_back(std::move(h));
      }
    }
  }
  return order;
}

FiniteGroup definite_isometry_group(const Lattice& L) {
  const std::size_t n = L.rank();
  if (n > 8) throw std::length_error("rank cap for definite isometry group exceeded");
  definite_sign(L);
  const IntMat& G = L.gram();
  std::map<Int, std::vector<IntVec>> cand;
  for (std::size_t i = 0; i < n; ++i)
    if (!cand.count(G(i, i))) cand[G(i, i)] = short_vectors(L, G(i, i));
  std::vector<const IntVec*> img(n);
  FiniteGroup out;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      IntMat g(n, n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) g(r, c) = (*img[c])[r];
      out.elements.push_back(std::move(g));
      return;
    }
    for (const IntVec& v : cand[G(i, i)]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = L.pair(*img[j], v) == G(j, i);
      if (!ok) continue;
      img[i] = &v;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.elements.begin(), out.elements.end(),
            [](const IntMat& a, const IntMat& b) { return a.data() < b.data(); });
  // Greedy generating set; the closure must reproduce the full list.
  std::unordered_set<IntMat, IntMatHash> span{IntMat::identity(n)};
  for (const IntMat& g : out.elements) {
    if (span.count(g)) continue;
    out.generators.push_back(g);
    const std::vector<IntMat> c = group_closure(out.generators);
    span = std::unordered_set<IntMat, IntMatHash>(c.begin(), c.end());
  }
  if (span.size() != out.elements.size()) throw std::logic_error("isometry enumeration is not closed");
  return out;
}

}  // namespace k3aut
