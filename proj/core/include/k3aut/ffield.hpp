#pragma once

#include <cstdint>
#include <vector>

namespace k3aut {

/// F_{p^n} in Zech-logarithm form. An element is stored as 0 for zero and
/// 1 + k for g^k, where g is a fixed generator of the unit group.
class Fq {
 public:
  using Elem = std::uint32_t;

  /// Throws std::invalid_argument for a non-prime p or n = 0, and
  /// std::length_error when p^n exceeds 2^24.
  Fq(unsigned p, unsigned n);

  unsigned p() const { return p_; }
  unsigned degree() const { return n_; }
  std::uint32_t size() const { return q_; }
  /// Monic modulus, ascending coefficients (length n + 1).
  const std::vector<unsigned>& modulus() const { return modulus_; }

  static constexpr Elem zero() { return 0; }
  static constexpr Elem one() { return 1; }
  Elem generator() const { return q_ > 2 ? 2 : 1; }
  Elem minus_one() const { return minus_one_; }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = (a - 1) + (b - 1);
    if (s >= order_) s -= order_;
    return s + 1;
  }
  Elem add(Elem a, Elem b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    std::uint32_t d = b >= a ? b - a : b + order_ - a;
    const Elem z = zech_[d];
    return z == 0 ? 0 : mul(a, z);
  }
  Elem neg(Elem a) const { return mul(a, minus_one_); }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  /// Throws std::domain_error for a = 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }

  /// Image of an integer in the prime field.
  Elem from_int(long v) const;
  /// Element whose polynomial representation has base-p digits idx.
  Elem from_index(std::uint32_t idx) const;
  std::uint32_t to_index(Elem a) const;
  /// All elements, ordered by polynomial index (zero first).
  std::vector<Elem> elements() const;

 private:
  unsigned p_, n_;
  std::uint32_t q_, order_;
  std::vector<unsigned> modulus_;
  std::vector<Elem> zech_;             // zech_[k] = 1 + g^k
  std::vector<std::uint32_t> exp_;     // index of g^k
  std::vector<Elem> log_;              // index -> element
  Elem minus_one_ = 1;
};

/// Dense univariate polynomial over Fq, ascending coefficients, trimmed.
using FqPoly = std::vector<Fq::Elem>;

void trim(FqPoly& f);
/// Remainder of a modulo a nonzero b.
FqPoly poly_rem(const Fq& K, FqPoly a, const FqPoly& b);
FqPoly poly_gcd(const Fq& K, FqPoly a, FqPoly b);

/// deg gcd(f, x^q - x), the number of distinct roots of f in K. Throws
/// std::invalid_argument for the zero polynomial.
unsigned count_distinct_roots(const FqPoly& f, const Fq& K);

}  // namespace k3aut
