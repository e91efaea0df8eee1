#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "etafano/lattice.hpp"
#include "etafano/rational.hpp"

namespace etafano {

// Primitive integer vector spanning a fan ray.
struct RayVec {
  long x;
  long y;
};

long ray_det(const RayVec& a, const RayVec& b);

// A smooth complete toric surface given by the rays of its fan in
// counterclockwise order. Smoothness means consecutive rays span a
// unimodular cone (determinant 1); completeness means the rays wind around
// the origin exactly once. Intersection numbers of the torus-invariant ray
// divisors come straight from the fan: adjacent divisors meet in one point,
// non-adjacent ones are disjoint, and self-intersections are read off the
// wheel relation v_{i-1} + v_{i+1} = -(D_i . D_i) v_i.
class ToricSurface {
 public:
  static ToricSurface from_rays(std::vector<RayVec> rays);

  std::size_t ray_count() const { return rays_.size(); }
  const std::vector<RayVec>& rays() const { return rays_; }

  Rat ray_pair(std::size_t i, std::size_t j) const;

  // Class of the i-th ray divisor in the reduced basis {D_2, ..., D_{d-1}}
  // obtained by eliminating D_0 and D_1 through the two character relations
  // sum_j <u, v_j> D_j = 0.
  DivisorClass ray_divisor_class(std::size_t i) const;
  // Class of a divisor with the given coefficient per ray.
  DivisorClass to_class(const std::vector<Rat>& ray_coeffs) const;
  DivisorClass anti_canonical_class() const;

  // The same surface as lattice data over the reduced basis, with every
  // negative ray divisor in the curve list. The boundary class is supplied
  // by the caller (it need not be a single ray divisor).
  SurfaceData to_surface(const DivisorClass& boundary) const;

 private:
  explicit ToricSurface(std::vector<RayVec> rays) : rays_(std::move(rays)) {}
  std::vector<RayVec> rays_;
};

// Torus-invariant divisor sum a_i D_i, one coefficient per ray.
using RayDivisor = std::vector<Rat>;

// Number of global sections: lattice points u with <u, v_i> >= -floor(a_i)
// for every ray (the floor realizes the integral rounding of the divisor).
// Throws ComputationError when the region is unbounded, which signals a
// non-complete fan slipped past construction.
Int count_sections(const ToricSurface& t, const RayDivisor& a);

// Section counts of k*L - j*D for j = 0 .. floor(k * r_tau_beta), plus the
// two weight sums built from them: v_k adds the counts for j >= 1 and
// w_k = -k * r_tau_beta * h0_by_j[0] + v_k. w_k is rational because
// k * r_tau_beta need not be an integer.
struct WeightTable {
  long k;
  std::vector<Int> h0_by_j;
  Int v_k;
  Rat w_k;
};

// Builds the table at one k. k = 0 degenerates to the single count 1 with
// both sums zero. Throws ValidationError when k < 0 or when k*L has a
// non-integral coefficient (pick k in a coarser congruence class instead).
WeightTable weight_table(const ToricSurface& t, const RayDivisor& l_beta, const RayDivisor& d,
                         const Rat& r_tau_beta, long k);

// Leading coefficients of v(k) ~ v0 k^3 + v1 k^2 + ..., recovered by exact
// interpolation of a cubic through the four largest distinct k values.
// Callers should sample k from a single congruence class (the one clearing
// every denominator in L and r*tau_beta), since v(k) is only a polynomial
// along such a class. Throws ValidationError("insufficient data ...") with
// fewer than four distinct k or a largest k below 20.
struct LeadingFit {
  Rat v0;
  Rat v1;
};

LeadingFit fit_leading_coeffs(const std::vector<WeightTable>& tables);

}  // namespace etafano
