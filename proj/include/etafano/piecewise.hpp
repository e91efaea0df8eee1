#pragma once

#include <cstddef>
#include <vector>

#include "etafano/algreal.hpp"
#include "etafano/poly.hpp"

namespace etafano {

// Piecewise polynomial over consecutive closed intervals
// [b_0, b_1], ..., [b_{m-1}, b_m]. Breakpoints are exact and strictly
// increasing; they may be algebraic (volume profiles end at a possibly
// irrational threshold). With extend_zero set, evaluation past the last
// breakpoint returns 0 instead of failing, matching functions that vanish
// identically beyond a threshold.
class PiecewisePoly {
 public:
  PiecewisePoly(std::vector<AlgReal> breakpoints, std::vector<Poly> pieces,
                bool extend_zero = false);

  std::size_t piece_count() const { return pieces_.size(); }
  const std::vector<AlgReal>& breakpoints() const { return breaks_; }
  const Poly& piece(std::size_t i) const { return pieces_.at(i); }
  const AlgReal& domain_lo() const { return breaks_.front(); }
  const AlgReal& domain_hi() const { return breaks_.back(); }
  bool extends_zero() const { return extend_zero_; }

  // Index of the piece whose closed interval holds x (the leftmost match on
  // breakpoint ties). Throws ComputationError when x is outside the domain.
  std::size_t piece_index(const AlgReal& x) const;

  Rat eval(const Rat& x) const;
  // Adjacent pieces agree at every interior breakpoint.
  bool is_continuous() const;

 private:
  std::vector<AlgReal> breaks_;
  std::vector<Poly> pieces_;
  bool extend_zero_;
};

// Definite integral of p over [a, b] with algebraic endpoints. At most one
// endpoint may be irrational (see eval_at / alg_sub).
AlgReal poly_integral_alg(const Poly& p, const AlgReal& a, const AlgReal& b);

// Exact integral of f over [a, b], summed piece by piece. Requires a <= b
// and a within the domain; b may exceed it only when f extends by zero, in
// which case the excess contributes nothing.
AlgReal piecewise_integral(const PiecewisePoly& f, const AlgReal& a, const AlgReal& b);

}  // namespace etafano
