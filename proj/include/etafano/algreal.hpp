#pragma once

#include <string>
#include <utility>
#include <vector>

#include "etafano/poly.hpp"
#include "etafano/rational.hpp"

namespace etafano {

enum class Sign { negative = -1, zero = 0, positive = 1 };

inline Sign sign_of_int(int s) {
  return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
}

// A real algebraic number: either an exact rational, or the unique root of a
// squarefree Rat polynomial inside an open isolating interval with rational
// endpoints where the polynomial does not vanish. Instances are immutable;
// refinement returns narrowed copies. Every query (sign, comparison) is
// decided exactly, by Sturm counts and interval bisection, never by floating
// point.
class AlgReal {
 public:
  AlgReal() : rational_(true), value_(0) {}
  AlgReal(Rat value) : rational_(true), value_(std::move(value)) {}

  // The unique root of p inside [lo, hi] (endpoints allowed). Throws
  // ComputationError when the interval holds no root or more than one root
  // of p's squarefree part.
  static AlgReal root_of(const Poly& p, const Rat& lo, const Rat& hi);

  bool is_rational() const { return rational_; }
  const Rat& rational() const;  // requires is_rational()

  // A polynomial vanishing at the value: x - v for rationals, the stored
  // squarefree polynomial otherwise.
  Poly defining_poly() const;
  // Enclosing interval; degenerate [v, v] for rationals.
  std::pair<Rat, Rat> interval() const;

  Sign sign() const;
  // Sign of (*this - c).
  int compare(const Rat& c) const;
  int compare(const AlgReal& o) const;
  bool operator==(const Rat& c) const { return compare(c) == 0; }
  bool operator==(const AlgReal& o) const { return compare(o) == 0; }
  bool operator<(const AlgReal& o) const { return compare(o) < 0; }
  bool operator<=(const AlgReal& o) const { return compare(o) <= 0; }

  // c0 + c1 * value, exactly.
  AlgReal affine(const Rat& c0, const Rat& c1) const;
  AlgReal operator-() const { return affine(Rat(0), Rat(-1)); }

  // A copy whose isolating interval is at most max_width wide.
  AlgReal refined(const Rat& max_width) const;
  double approx() const;
  // Fixed-point decimal approximation, correct to the last printed digit
  // up to rounding of the true value, e.g. "0.816496580928".
  std::string decimal_hint(int digits = 12) const;
  std::string str() const;

 private:
  AlgReal(Poly p, Rat lo, Rat hi)
      : rational_(false), poly_(std::move(p)), lo_(std::move(lo)), hi_(std::move(hi)) {}
  void refine_once();

  friend std::vector<AlgReal> isolate_roots(const Poly& p, const Rat& lo, const Rat& hi);

  bool rational_;
  Rat value_;  // rational case
  Poly poly_;  // algebraic case; squarefree with exactly one root in (lo_, hi_)
  Rat lo_, hi_;
};

// All real roots of p in the closed interval [lo, hi], ascending, each
// isolated from the others. Rational roots are recognized exactly when the
// squarefree part has degree <= 2; for higher degrees they are still found,
// but may come back in root-of-polynomial form unless they land on an
// endpoint or a bisection midpoint. Throws ComputationError for the zero
// polynomial or lo > hi.
std::vector<AlgReal> isolate_roots(const Poly& p, const Rat& lo, const Rat& hi);

// All real roots of p, using a Cauchy bound for the search interval.
std::vector<AlgReal> isolate_roots(const Poly& p);

// p evaluated at an algebraic point. Exact: reduces p modulo the defining
// polynomial; supported whenever the reduction has degree <= 1 (always the
// case for quadratic defining polynomials). Otherwise throws
// ComputationError.
AlgReal eval_at(const Poly& p, const AlgReal& x);

// Sum and difference, supported when at least one operand is rational (the
// other shifts affinely). Two independent algebraic operands throw
// ComputationError; the engine never needs that case.
AlgReal alg_add(const AlgReal& a, const AlgReal& b);
AlgReal alg_sub(const AlgReal& a, const AlgReal& b);

// Some rational strictly between a and b; requires a < b.
Rat rational_between(const AlgReal& a, const AlgReal& b);

}  // namespace etafano
