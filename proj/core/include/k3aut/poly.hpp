#pragma once

#include "k3aut/exact.hpp"

#include <string>
#include <utility>
#include <vector>

namespace k3aut {

/// Univariate polynomial over Q, coefficients in ascending degree. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is nonzero.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs);
  static RatPoly from_ints(std::initializer_list<long> ascending);
  static RatPoly monomial(const Rat& c, std::size_t degree);
  static RatPoly constant(const Rat& c) { return monomial(c, 0); }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }
  Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }
  Rat eval(const Rat& t) const;

  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly operator*(const Rat& s) const;
  RatPoly pow(unsigned e) const;
  /// Euclidean division; throws on division by zero.
  std::pair<RatPoly, RatPoly> divmod(const RatPoly& d) const;
  RatPoly monic() const;
  bool divides(const RatPoly& f) const;

  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const RatPoly& a, const RatPoly& b) { return !(a == b); }

  /// Human-readable form in the variable t, descending degree.
  std::string to_string(const char* var = "t") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

RatPoly gcd(const RatPoly& a, const RatPoly& b);

/// The m-th cyclotomic polynomial, by exact division of t^m - 1 by Phi_d for d | m, d < m.
RatPoly cyclotomic(unsigned m);

/// Euler's totient.
unsigned long euler_phi(unsigned long m);

/// Multiplicity of each cyclotomic factor Phi_m (m with phi(m) <= deg f) in f.
std::vector<std::pair<unsigned, unsigned>> cyclotomic_factorization(const RatPoly& f);

/// Total multiplicity of cyclotomic factors of f.
unsigned cyclotomic_multiplicity(const RatPoly& f);

/// True iff f (nonzero) is a constant times a product of cyclotomic polynomials.
bool poly_is_finite_order_root_spectrum(const RatPoly& f);

/// det(t I - A), via reduction to Hessenberg form over Q.
RatPoly characteristic_polynomial(const RatMat& A);
RatPoly characteristic_polynomial(const IntMat& A);

struct PellSolution {
  Int x;
  Int y;
};

/// Fundamental solution of x^2 - D y^2 = 1 from the continued fraction of sqrt(D).
/// Throws std::invalid_argument for D <= 1 or D a perfect square, and
/// std::runtime_error when the expansion exceeds the iteration cap.
PellSolution pell_fundamental(const Int& D, std::size_t max_iterations = 1000000);

}  // namespace k3aut
