#pragma once

#include <string>
#include <vector>

#include "etafano/rational.hpp"

namespace etafano {

// Dense univariate polynomial over Rat, coefficients stored lowest degree
// first. The zero polynomial is the empty coefficient vector and reports
// degree -1. Trailing zero coefficients are trimmed on construction, so
// equality of coefficient vectors is equality of polynomials.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);

  static Poly constant(const Rat& c);
  static Poly variable();  // the monomial x

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  // Coefficient of x^i; zero beyond the degree.
  Rat coeff(int i) const;
  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& leading() const;

  Rat eval(const Rat& x) const;
  Poly derivative() const;
  // Antiderivative with zero constant term.
  Poly antiderivative() const;
  // p(c0 + c1*x) as a polynomial in x.
  Poly compose_affine(const Rat& c0, const Rat& c1) const;
  // Divides every coefficient by leading(); zero polynomial is returned as is.
  Poly monic() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rat& s, Poly p);
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  // Euclidean division: n == q*d + r with deg r < deg d. Throws
  // ComputationError when d is zero.
  static void divmod(const Poly& n, const Poly& d, Poly& q, Poly& r);
  // Monic gcd; gcd(0, 0) = 0.
  static Poly gcd(Poly a, Poly b);
  // p / gcd(p, p'): same roots, all simple. Keeps p's scaling.
  Poly squarefree_part() const;

  // Human-readable rendering, e.g. "2x^2 - 4/3".
  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

// Exact definite integral of p over [a, b].
Rat poly_integral(const Poly& p, const Rat& a, const Rat& b);

// 1 + max |c_i| / |c_deg|: every real root lies in (-B, B).
Rat cauchy_root_bound(const Poly& p);

}  // namespace etafano
