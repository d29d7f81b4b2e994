#include "k3aut/ffield.hpp"

#include <random>
#include <stdexcept>

namespace k3aut {

namespace {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

using Coeffs = std::vector<unsigned>;

// a * b mod (modulus, p), coefficient vectors of length n.
Coeffs mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m, unsigned p) {
  const std::size_t n = m.size() - 1;
  std::vector<unsigned long> t(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i + j] = (t[i + j] + static_cast<unsigned long>(a[i]) * b[j]) % p;
  for (std::size_t d = 2 * n - 1; d >= n && d < 2 * n; --d) {
    const unsigned long c = t[d] % p;
    if (c == 0) continue;
    t[d] = 0;
    for (std::size_t i = 0; i < n; ++i) t[d - n + i] = (t[d - n + i] + (p - m[i]) * c) % p;
  }
  Coeffs r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<unsigned>(t[i] % p);
  return r;
}

Coeffs powmod(Coeffs a, std::uint64_t e, const Coeffs& m, unsigned p) {
  Coeffs r(m.size() - 1, 0);
  r[0] = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, m, p);
    a = mulmod(a, a, m, p);
    e >>= 1;
  }
  return r;
}

// Trial division by every monic polynomial of degree 1..n/2.
bool irreducible(const Coeffs& f, unsigned p) {
  const std::size_t n = f.size() - 1;
  for (std::size_t d = 1; 2 * d <= n; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Coeffs g(d + 1);
      std::uint64_t t = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<unsigned>(t % p);
        t /= p;
      }
      g[d] = 1;
      std::vector<long> r(f.begin(), f.end());
      for (std::size_t k = n; k >= d && k <= n; --k) {
        const long c = r[k] % static_cast<long>(p);
        if (c == 0) continue;
        for (std::size_t i = 0; i <= d; ++i)
          r[k - d + i] = ((r[k - d + i] - c * static_cast<long>(g[i])) % static_cast<long>(p) + p) % p;
      }
      bool zero = true;
      for (std::size_t i = 0; i < d && zero; ++i) zero = r[i] % static_cast<long>(p) == 0;
      if (zero) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) out.push_back(m);
  return out;
}

}  // namespace

Fq::Fq(unsigned p, unsigned n) : p_(p), n_(n) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
  if (n == 0) throw std::invalid_argument("degree must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    q *= p;
    if (q > (1u << 24)) throw std::length_error("field exceeds the table budget of 2^24 elements");
  }
  q_ = static_cast<std::uint32_t>(q);
  order_ = q_ - 1;

  // Least irreducible monic modulus, comparing (c_{n-1}, ..., c_0) lexicographically.
  modulus_.assign(n + 1, 0);
  modulus_[n] = 1;
  bool found = false;
  for (std::uint64_t idx = 0; idx < q && !found; ++idx) {
    std::uint64_t t = idx;
    for (unsigned i = 0; i < n; ++i) {
      modulus_[i] = static_cast<unsigned>(t % p);
      t /= p;
    }
    if (n == 1 || irreducible(modulus_, p)) found = true;
  }
  if (!found) throw std::logic_error("no irreducible modulus found");

  auto to_coeffs = [&](std::uint64_t idx) {
    Coeffs c(n);
    for (unsigned i = 0; i < n; ++i) {
      c[i] = static_cast<unsigned>(idx % p);
      idx /= p;
    }
    return c;
  };
  auto to_idx = [&](const Coeffs& c) {
    std::uint32_t idx = 0;
    for (unsigned i = n; i-- > 0;) idx = idx * p + c[i];
    return idx;
  };

  // First element (by index) of multiplicative order q - 1.
  const std::vector<std::uint64_t> primes = prime_factors(order_);
  Coeffs gen;
  for (std::uint64_t idx = 1; idx < q; ++idx) {
    const Coeffs c = to_coeffs(idx);
    bool ok = true;
    for (std::uint64_t r : primes) {
      if (to_idx(powmod(c, order_ / r, modulus_, p)) == 1) {
        ok = false;
        break;
      }
    }
    if (ok && (order_ > 1 || idx == 1)) {
      gen = c;
      break;
    }
  }
  if (gen.empty()) throw std::logic_error("reducible modulus: no primitive element");

  exp_.assign(order_, 0);
  log_.assign(q_, 0);
  Coeffs cur(n, 0);
  cur[0] = 1;
  for (std::uint32_t k = 0; k < order_; ++k) {
    const std::uint32_t idx = to_idx(cur);
    if (idx == 0 || log_[idx] != 0) throw std::logic_error("reducible modulus: powers of the generator repeat");
    exp_[k] = idx;
    log_[idx] = k + 1;
    cur = mulmod(cur, gen, modulus_, p);
  }
  zech_.assign(order_, 0);
  for (std::uint32_t k = 0; k < order_; ++k) {
    Coeffs c = to_coeffs(exp_[k]);
    c[0] = (c[0] + 1) % p;
    zech_[k] = log_[to_idx(c)];
  }
  minus_one_ = from_int(-1);

  // Distributivity spot check.
  std::mt19937 rng(12345);
  std::uniform_int_distribution<std::uint32_t> pick(0, q_ - 1);
  for (int t = 0; t < 64; ++t) {
    const Elem a = pick(rng), b = pick(rng), c = pick(rng);
    if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) throw std::logic_error("field tables failed distributivity");
  }
}

Fq::Elem Fq::inv(Elem a) const {
  if (a == 0) throw std::domain_error("zero has no inverse");
  const std::uint32_t k = a - 1;
  return (k == 0 ? 0 : order_ - k) + 1;
}

Fq::Elem Fq::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return static_cast<Elem>((static_cast<std::uint64_t>(a - 1) * (e % order_)) % order_) + 1;
}

Fq::Elem Fq::from_int(long v) const {
  long r = v % static_cast<long>(p_);
  if (r < 0) r += p_;
  return log_[static_cast<std::uint32_t>(r)];
}

Fq::Elem Fq::from_index(std::uint32_t idx) const {
  if (idx >= q_) throw std::out_of_range("field index out of range");
  return log_[idx];
}

std::uint32_t Fq::to_index(Elem a) const { return a == 0 ? 0 : exp_[a - 1]; }

std::vector<Fq::Elem> Fq::elements() const { return log_; }

void trim(FqPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FqPoly poly_rem(const Fq& K, FqPoly a, const FqPoly& b) {
  if (b.empty()) throw std::invalid_argument("division by the zero polynomial");
  trim(a);
  const std::size_t db = b.size() - 1;
  const Fq::Elem lead_inv = K.inv(b.back());
  while (a.size() >= b.size()) {
    const Fq::Elem c = K.neg(K.mul(a.back(), lead_inv));
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < db; ++i) a[shift + i] = K.add(a[shift + i], K.mul(c, b[i]));
    a.pop_back();
    trim(a);
  }
  return a;
}

FqPoly poly_gcd(const Fq& K, FqPoly a, FqPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FqPoly r = poly_rem(K, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

namespace {

FqPoly mulmod_poly(const Fq& K, const FqPoly& a, const FqPoly& b, const FqPoly& m) {
  if (a.empty() || b.empty()) return {};
  FqPoly t(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) t[i + j] = K.add(t[i + j], K.mul(a[i], b[j]));
  }
  return poly_rem(K, std::move(t), m);
}

}  // namespace

unsigned count_distinct_roots(const FqPoly& f_in, const Fq& K) {
  FqPoly f = f_in;
  trim(f);
  if (f.empty()) throw std::invalid_argument("cannot count roots of the zero polynomial");
  const std::size_t d = f.size() - 1;
  if (d == 0) return 0;
  if (d == 1) return 1;
  // x^q mod f by square-and-multiply
  FqPoly x{0, 1};
  FqPoly base = poly_rem(K, x, f);
  FqPoly r{1};
  std::uint64_t e = K.size();
  while (e) {
    if (e & 1) r = mulmod_poly(K, r, base, f);
    e >>= 1;
    if (e) base = mulmod_poly(K, base, base, f);
  }
  // r - x
  if (r.size() < 2) r.resize(2, 0);
  r[1] = K.sub(r[1], 1);
  trim(r);
  if (r.empty()) return static_cast<unsigned>(d);
  const FqPoly g = poly_gcd(K, f, r);
  return static_cast<unsigned>(g.size() - 1);
}

}  // namespace k3aut
