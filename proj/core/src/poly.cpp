#include "k3aut/poly.hpp"

#include <numeric>
#include <sstream>

namespace k3aut {

RatPoly::RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
  for (auto& x : c_) x.canonicalize();
  trim();
}

RatPoly RatPoly::from_ints(std::initializer_list<long> ascending) {
  std::vector<Rat> c;
  for (long x : ascending) c.emplace_back(x);
  return RatPoly(std::move(c));
}

RatPoly RatPoly::monomial(const Rat& c, std::size_t degree) {
  std::vector<Rat> v(degree + 1);
  v[degree] = c;
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat RatPoly::eval(const Rat& t) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (is_zero() || o.is_zero()) return RatPoly();
  std::vector<Rat> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator*(const Rat& s) const {
  std::vector<Rat> r(c_);
  for (auto& x : r) x *= s;
  return RatPoly(std::move(r));
}

RatPoly RatPoly::pow(unsigned e) const {
  RatPoly r = constant(1), b = *this;
  while (e) {
    if (e & 1u) r = r * b;
    b = b * b;
    e >>= 1u;
  }
  return r;
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (degree() < d.degree()) return {RatPoly(), *this};
  std::vector<Rat> rem = c_;
  std::vector<Rat> q(c_.size() - d.c_.size() + 1);
  const Rat lead = d.c_.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    Rat f = rem[k + d.c_.size() - 1] / lead;
    q[k] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= f * d.c_[j];
  }
  rem.resize(d.c_.size() - 1);
  return {RatPoly(std::move(q)), RatPoly(std::move(rem))};
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rat(1) / leading());
}

bool RatPoly::divides(const RatPoly& f) const { return f.divmod(*this).second.is_zero(); }

std::string RatPoly::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Rat& a = c_[k];
    if (a == 0) continue;
    Rat mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) {
      os << mag.get_str();
      if (k > 0) os << "*";
    }
    if (k >= 1) os << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  while (!y.is_zero()) {
    RatPoly r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

RatPoly cyclotomic(unsigned m) {
  if (m == 0) throw std::invalid_argument("cyclotomic: m must be positive");
  RatPoly f = RatPoly::monomial(1, m) - RatPoly::constant(1);
  for (unsigned d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto [q, r] = f.divmod(cyclotomic(d));
    if (!r.is_zero()) throw std::logic_error("cyclotomic: inexact division");
    f = q;
  }
  return f;
}

unsigned long euler_phi(unsigned long m) {
  unsigned long result = m;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<std::pair<unsigned, unsigned>> cyclotomic_factorization(const RatPoly& f) {
  std::vector<std::pair<unsigned, unsigned>> out;
  if (f.is_zero() || f.degree() < 1) return out;
  RatPoly g = f;
  const auto deg = static_cast<unsigned long>(f.degree());
  // phi(m) >= sqrt(m / 2), so m <= 2 deg^2 covers every candidate.
  const unsigned long bound = 2 * deg * deg + 2;
  for (unsigned long m = 1; m <= bound && g.degree() > 0; ++m) {
    if (euler_phi(m) > deg) continue;
    RatPoly phi = cyclotomic(static_cast<unsigned>(m));
    unsigned mult = 0;
    for (;;) {
      auto [q, r] = g.divmod(phi);
      if (!r.is_zero()) break;
      g = q;
      ++mult;
    }
    if (mult) out.emplace_back(static_cast<unsigned>(m), mult);
  }
  return out;
}

unsigned cyclotomic_multiplicity(const RatPoly& f) {
  unsigned total = 0;
  for (auto [m, e] : cyclotomic_factorization(f)) total += e * static_cast<unsigned>(euler_phi(m));
  return total;
}

bool poly_is_finite_order_root_spectrum(const RatPoly& f) {
  if (f.is_zero()) return false;
  return static_cast<long>(cyclotomic_multiplicity(f)) == f.degree();
}

RatPoly characteristic_polynomial(const RatMat& A) {
  if (!A.square()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  const std::size_t n = A.rows();
  RatMat H = A;
  // Similarity transform to upper Hessenberg form.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && H(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      H.swap_rows(i, m);
      H.swap_cols(i, m);
    }
    for (std::size_t r = m + 1; r < n; ++r) {
      if (H(r, m - 1) == 0) continue;
      Rat u = H(r, m - 1) / H(m, m - 1);
      for (std::size_t j = 0; j < n; ++j) H(r, j) -= u * H(m, j);
      for (std::size_t j = 0; j < n; ++j) H(j, m) += u * H(j, r);
    }
  }
  // p_k(t) = characteristic polynomial of the leading k x k block.
  std::vector<RatPoly> p(n + 1);
  p[0] = RatPoly::constant(1);
  const RatPoly t = RatPoly::monomial(1, 1);
  for (std::size_t k = 1; k <= n; ++k) {
    p[k] = (t - RatPoly::constant(H(k - 1, k - 1))) * p[k - 1];
    Rat prod = 1;
    for (std::size_t i = 1; i < k; ++i) {
      prod *= H(k - i, k - i - 1);
      if (prod == 0) break;
      p[k] = p[k] - p[k - i - 1] * (prod * H(k - i - 1, k - 1));
    }
  }
  return p[n];
}

RatPoly characteristic_polynomial(const IntMat& A) { return characteristic_polynomial(to_rat(A)); }

PellSolution pell_fundamental(const Int& D, std::size_t max_iterations) {
  if (D <= 1) throw std::invalid_argument("pell_fundamental: D must exceed 1");
  Int a0 = sqrt(D);
  if (a0 * a0 == D) throw std::invalid_argument("pell_fundamental: D is a perfect square");
  // Continued fraction of sqrt(D): m, d, a recurrences; convergents h/k.
  Int m = 0, d = 1, a = a0;
  Int h_prev = 1, h = a0;
  Int k_prev = 0, k = 1;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    if (h * h - D * k * k == 1) return {h, k};
    m = d * a - m;
    d = (D - m * m) / d;
    a = (a0 + m) / d;
    Int h_next = a * h + h_prev;
    Int k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  throw std::runtime_error("pell_fundamental: iteration cap exceeded");
}

}  // namespace k3aut
