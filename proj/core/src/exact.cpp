#include "k3aut/exact.hpp"

#include <ostream>
#include <sstream>

namespace k3aut {

RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

bool is_integral(const RatMat& m) {
  for (const auto& x : m.data())
    if (x.get_den() != 1) return false;
  return true;
}

IntMat to_int(const RatMat& m) {
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw std::domain_error("matrix entry is not integral");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

IntVec to_int(const RatVec& v) {
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw std::domain_error("vector entry is not integral");
    r[i] = v[i].get_num();
  }
  return r;
}

IntVec vec(std::initializer_list<long> xs) {
  IntVec v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

Int pair(const IntVec& a, const IntMat& gram, const IntVec& b) {
  const std::size_t n = gram.rows();
  if (a.size() != n || b.size() != n) throw std::invalid_argument("pair: dimension mismatch");
  Int s = 0, t;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    t = 0;
    for (std::size_t j = 0; j < n; ++j) t += gram(i, j) * b[j];
    s += a[i] * t;
  }
  return s;
}

Rat pair(const RatVec& a, const RatMat& gram, const RatVec& b) {
  const std::size_t n = gram.rows();
  if (a.size() != n || b.size() != n) throw std::invalid_argument("pair: dimension mismatch");
  Rat s = 0, t;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    t = 0;
    for (std::size_t j = 0; j < n; ++j) t += gram(i, j) * b[j];
    s += a[i] * t;
  }
  return s;
}

IntVec row_times(const IntVec& v, const IntMat& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("row_times: dimension mismatch");
  IntVec r(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m(i, j);
  }
  return r;
}

RatVec row_times(const RatVec& v, const RatMat& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("row_times: dimension mismatch");
  RatVec r(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m(i, j);
  }
  return r;
}

IntVec operator+(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  IntVec r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

IntVec operator-(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  IntVec r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

IntVec operator*(const Int& s, const IntVec& a) {
  IntVec r(a);
  for (auto& x : r) x *= s;
  return r;
}

bool is_zero(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Int mod_pos(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Rat mod_rat(const Rat& a, const Int& m) {
  // a - m * floor(a / m)
  Rat q = a / Rat(m);
  Int f = floor_div(q);
  Rat r = a - Rat(m * f);
  r.canonicalize();
  return r;
}

Int floor_div(const Rat& a) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  return r;
}

Int ceil_div(const Rat& a) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  return r;
}

std::string to_string(const IntMat& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

std::string to_string(const IntVec& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ']';
  return os.str();
}

std::string to_string(const Rat& r) { return r.get_str(); }

std::ostream& operator<<(std::ostream& os, const IntMat& m) { return os << to_string(m); }

namespace {
inline std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
inline std::size_t hash_int(const Int& x) {
  if (x.fits_slong_p()) return std::hash<long>{}(x.get_si());
  std::size_t h = mpz_size(x.get_mpz_t());
  for (std::size_t i = 0; i < mpz_size(x.get_mpz_t()); ++i) h = mix(h, mpz_getlimbn(x.get_mpz_t(), i));
  return mix(h, static_cast<std::size_t>(mpz_sgn(x.get_mpz_t()) + 1));
}
}  // namespace

std::size_t IntMatHash::operator()(const IntMat& m) const noexcept {
  std::size_t h = mix(m.rows(), m.cols());
  for (const auto& x : m.data()) h = mix(h, hash_int(x));
  return h;
}

std::size_t IntVecHash::operator()(const IntVec& v) const noexcept {
  std::size_t h = v.size();
  for (const auto& x : v) h = mix(h, hash_int(x));
  return h;
}

}  // namespace k3aut
