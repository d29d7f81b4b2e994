#include "k3aut/zeta.hpp"

#include <stdexcept>

namespace k3aut {

namespace {

Int int_pow(unsigned p, unsigned n) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, n);
  return r;
}

bool is_power_of(Int d, unsigned p) {
  while (d > 1) {
    if (!mpz_divisible_ui_p(d.get_mpz_t(), p)) return false;
    d /= p;
  }
  return d == 1;
}

}  // namespace

std::vector<Rat> twisted_h2_traces(const PointCountSeries& s) {
  if (s.p < 2) throw std::invalid_argument("p must be a prime");
  std::vector<Rat> t;
  for (std::size_t i = 0; i < s.counts.size(); ++i) {
    const unsigned n = static_cast<unsigned>(i + 1);
    const Int q = int_pow(s.p, n);
    Rat v = Rat(s.counts[i], q) - Rat(q) - Rat(Int(1), q);
    v.canonicalize();
    if (!is_power_of(v.get_den(), s.p)) throw std::logic_error("trace denominator is not a power of p");
    t.push_back(v);
  }
  return t;
}

Rat subspace_trace(const std::vector<unsigned>& orbit_sizes, unsigned n) {
  Rat s = 0;
  for (unsigned k : orbit_sizes) {
    if (k == 0) throw std::invalid_argument("orbit sizes must be positive");
    if (n % k == 0) s += k;
  }
  return s;
}

RatPoly subspace_charpoly(const std::vector<unsigned>& orbit_sizes) {
  RatPoly f = RatPoly::constant(1);
  for (unsigned k : orbit_sizes) f = f * (RatPoly::monomial(Rat(1), k) - RatPoly::constant(1));
  return f;
}

std::vector<Rat> newton_half(const std::vector<Rat>& traces, unsigned dim) {
  if (dim % 2) throw std::invalid_argument("dimension must be even");
  const unsigned h = dim / 2;
  if (traces.size() < h) throw std::invalid_argument("not enough traces for half the coefficients");
  std::vector<Rat> e(h + 1);
  e[0] = 1;
  for (unsigned k = 1; k <= h; ++k) {
    Rat s = 0;
    for (unsigned i = 1; i <= k; ++i) s += (i % 2 ? 1 : -1) * e[k - i] * traces[i - 1];
    e[k] = s / k;
  }
  std::vector<Rat> c(h + 1);
  for (unsigned k = 0; k <= h; ++k) c[k] = k % 2 ? -e[k] : e[k];
  return c;
}

std::vector<Rat> power_sums(const RatPoly& f_in, unsigned count) {
  if (f_in.is_zero()) throw std::invalid_argument("zero polynomial");
  const RatPoly f = f_in.monic();
  const std::size_t d = static_cast<std::size_t>(f.degree());
  // f = t^d + c_1 t^(d-1) + ... + c_d
  auto c = [&](std::size_t k) { return k <= d ? f.coeff(d - k) : Rat(0); };
  std::vector<Rat> p(count + 1);
  for (unsigned k = 1; k <= count; ++k) {
    Rat s = Rat(k) * c(k);
    for (unsigned i = 1; i < k; ++i) s += c(i) * p[k - i];
    p[k] = -s;
  }
  return std::vector<Rat>(p.begin() + 1, p.end());
}

CompletedPoly complete_functional_equation(const std::vector<Rat>& half, unsigned dim) {
  if (dim % 2 || half.size() != dim / 2 + 1) throw std::invalid_argument("half must hold c_0..c_{dim/2}");
  const unsigned h = dim / 2;
  CompletedPoly out;
  auto build = [&](int sign) {
    std::vector<Rat> c(dim + 1);
    for (unsigned k = 0; k <= h; ++k) {
      c[k] = half[k];
      c[dim - k] = sign * half[k];
    }
    // c_k multiplies t^(dim-k)
    std::vector<Rat> asc(dim + 1);
    for (unsigned k = 0; k <= dim; ++k) asc[dim - k] = c[k];
    return RatPoly(asc);
  };
  if (half[h] != 0) {
    out.candidates.push_back(build(1));
    out.signs.push_back(1);
  } else {
    out.ambiguous = true;
    out.candidates.push_back(build(1));
    out.signs.push_back(1);
    out.candidates.push_back(build(-1));
    out.signs.push_back(-1);
  }
  return out;
}

unsigned unit_root_count(const RatPoly& f) { return cyclotomic_multiplicity(f); }

ZetaResult picard_rank_bound(const PointCountSeries& counts, const std::vector<unsigned>& orbit_sizes,
                             unsigned dim_total) {
  unsigned known = 0;
  for (unsigned k : orbit_sizes) known += k;
  if (known > dim_total) throw std::invalid_argument("known subspace exceeds the total dimension");
  const unsigned dim = dim_total - known;
  ZetaResult r;
  const std::vector<Rat> t = twisted_h2_traces(counts);
  for (std::size_t i = 0; i < t.size(); ++i)
    r.quotient_traces.push_back(t[i] - subspace_trace(orbit_sizes, static_cast<unsigned>(i + 1)));
  r.quotient = complete_functional_equation(newton_half(r.quotient_traces, dim), dim);
  r.full = subspace_charpoly(orbit_sizes) * r.quotient.candidates.front();
  r.unit_roots = unit_root_count(r.full);
  r.rank_bound = r.unit_roots;
  for (const RatPoly& c : r.quotient.candidates)
    r.rank_bound = std::max(r.rank_bound, unit_root_count(subspace_charpoly(orbit_sizes) * c));
  return r;
}

VerificationResult verify_quotient_poly(const PointCountSeries& counts, const std::vector<unsigned>& orbit_sizes,
                                        const RatPoly& f) {
  const std::vector<Rat> t = twisted_h2_traces(counts);
  const std::vector<Rat> ps = power_sums(f, static_cast<unsigned>(t.size()));
  VerificationResult v;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const unsigned n = static_cast<unsigned>(i + 1);
    v.checked_n.push_back(n);
    if (t[i] - subspace_trace(orbit_sizes, n) != ps[i]) v.mismatched_n.push_back(n);
  }
  v.verified = v.mismatched_n.empty() && !v.checked_n.empty();
  return v;
}

std::vector<Int> predicted_counts(unsigned p, const std::vector<unsigned>& orbit_sizes, const RatPoly& f,
                                  unsigned count) {
  const std::vector<Rat> ps = power_sums(f, count);
  std::vector<Int> out;
  for (unsigned n = 1; n <= count; ++n) {
    const Int q = int_pow(p, n);
    const Rat tn = ps[n - 1] + subspace_trace(orbit_sizes, n);
    Rat N = Rat(q) * (tn + Rat(q) + Rat(Int(1), q));
    N.canonicalize();
    if (N.get_den() != 1) throw std::logic_error("predicted count is not an integer");
    out.push_back(N.get_num());
  }
  return out;
}

}  // namespace k3aut
