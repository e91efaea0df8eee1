#include "doctest.h"

#include <vector>

#include "testutil.hpp"

#include "etafano/errors.hpp"
#include "etafano/stability.hpp"
#include "etafano/toric.hpp"

using namespace etafano;
using namespace etafano::testing;

TEST_CASE("fan construction enforces smooth complete counterclockwise input") {
  CHECK_NOTHROW(blp_f1_fan());
  CHECK_NOTHROW(p2_fan());
  // Too few rays.
  CHECK_THROWS_AS(ToricSurface::from_rays({{1, 0}, {-1, 0}}), ValidationError);
  // Non-primitive ray.
  CHECK_THROWS_AS(ToricSurface::from_rays({{2, 0}, {0, 1}, {-1, -1}}), ValidationError);
  // Clockwise order breaks the determinant condition.
  CHECK_THROWS_AS(ToricSurface::from_rays({{1, 0}, {-1, -1}, {0, 1}}), ValidationError);
  // Singular cone: determinant 2.
  CHECK_THROWS_AS(ToricSurface::from_rays({{1, 0}, {-1, 2}, {0, -1}}), ValidationError);
  // Zero ray.
  CHECK_THROWS_AS(ToricSurface::from_rays({{1, 0}, {0, 0}, {0, 1}}), ValidationError);
}

TEST_CASE("ray intersection numbers read off the fan") {
  ToricSurface t = blp_f1_fan();
  std::vector<Rat> self = {Rat(-1), Rat(-1), Rat(0), Rat(0), Rat(-1)};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(t.ray_pair(i, i) == self[i]);
    CHECK(t.ray_pair(i, (i + 1) % 5) == 1);
    CHECK(t.ray_pair(i, (i + 2) % 5) == 0);
  }
  ToricSurface p2 = p2_fan();
  for (std::size_t i = 0; i < 3; ++i) CHECK(p2.ray_pair(i, i) == 1);
}

TEST_CASE("ray classes reduce consistently to the chosen basis") {
  ToricSurface t = blp_f1_fan();
  // Reduction must preserve every pairwise intersection number.
  std::vector<DivisorClass> cls;
  for (std::size_t i = 0; i < 5; ++i) cls.push_back(t.ray_divisor_class(i));
  SurfaceData s = t.to_surface(t.to_class(blp_f1_boundary_rays()));
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(s.pair(cls[i], cls[j]) == t.ray_pair(i, j));
    }
  }
  CHECK(t.anti_canonical_class() == dc({Rat(1), Rat(2), Rat(1)}));
  // On the plane every ray divisor is the hyperplane class.
  ToricSurface p2 = p2_fan();
  for (std::size_t i = 0; i < 3; ++i) CHECK(p2.ray_divisor_class(i) == dc({Rat(1)}));
}

TEST_CASE("fan surface data matches the hand-written lattice up to base change") {
  ToricSurface t = blp_f1_fan();
  SurfaceData fan_s = t.to_surface(t.to_class(blp_f1_boundary_rays()));
  CHECK_NOTHROW(fan_s.validate());
  CHECK(fan_s.lattice.gram ==
        Mat{{Rat(0), Rat(1), Rat(0)}, {Rat(1), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(-1)}});

  // Base change: D2 = F, D3 = Cbar - E, D4 = E, written as columns over the
  // rows Cbar, F, E. Transporting the hand-written pairing through it must
  // reproduce the fan Gram matrix entry by entry.
  SurfaceData doc_s = blp_f1_surface();
  Mat T = {{Rat(0), Rat(1), Rat(0)}, {Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(-1), Rat(1)}};
  auto transported = [&](std::size_t i, std::size_t j) {
    DivisorClass a{{T[0][i], T[1][i], T[2][i]}};
    DivisorClass b{{T[0][j], T[1][j], T[2][j]}};
    return doc_s.pair(a, b);
  };
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(fan_s.lattice.gram[i][j] == transported(i, j));
    }
  }

  // The invariant computed from the fan agrees with the hand-written basis.
  VolumeProfile fan_profile = build_profile(fan_s);
  VolumeProfile doc_profile = build_profile(doc_s);
  CHECK(fan_profile.tau == doc_profile.tau);
  CHECK(eta(fan_profile, Rat(1, 2)).value == eta(doc_profile, Rat(1, 2)).value);
}

TEST_CASE("section counts on small standard polygons") {
  ToricSurface p2 = p2_fan();
  // Hyperplane: the unit triangle has 3 lattice points.
  CHECK(count_sections(p2, {Rat(1), Rat(0), Rat(0)}) == 3);
  // Trivial divisor: the origin only.
  CHECK(count_sections(p2, {Rat(0), Rat(0), Rat(0)}) == 1);
  // Anti-canonical: 3x the unit triangle has 10.
  CHECK(count_sections(p2, {Rat(1), Rat(1), Rat(1)}) == 10);
  // Rounding: floors apply coefficientwise.
  CHECK(count_sections(p2, {Rat(3, 2), Rat(0), Rat(0)}) == 3);

  ToricSurface t = blp_f1_fan();
  CHECK(count_sections(t, {Rat(1), Rat(1), Rat(1), Rat(1), Rat(1)}) == 8);
}

TEST_CASE("counts match the exact quadratic for nef classes") {
  ToricSurface p2 = p2_fan();
  // h0(kH) = (k+1)(k+2)/2 on the plane.
  for (long k = 0; k <= 30; ++k) {
    RayDivisor a = {Rat(k), Rat(0), Rat(0)};
    CHECK(count_sections(p2, a) == Int((k + 1) * (k + 2) / 2));
  }
  // Degree-7 del Pezzo, anti-canonical: chi(k(-K)) = 7k(k+1)/2 + 1.
  ToricSurface t = blp_f1_fan();
  for (long k = 0; k <= 30; ++k) {
    RayDivisor a(5, Rat(k));
    CHECK(count_sections(t, a) == Int(7 * k * (k + 1) / 2 + 1));
  }
}

TEST_CASE("weight tables track the shifted filtration") {
  ToricSurface t = blp_f1_fan();
  // L = 2(-K) - D for the boundary ray D3 at beta = 1/2, r = 2.
  RayDivisor l_beta = {Rat(2), Rat(2), Rat(2), Rat(1), Rat(2)};
  RayDivisor d = blp_f1_boundary_rays();
  Rat r_tau_beta(3);

  WeightTable w0 = weight_table(t, l_beta, d, r_tau_beta, 0);
  CHECK(w0.h0_by_j == std::vector<Int>{Int(1)});
  CHECK(w0.v_k == 0);
  CHECK(w0.w_k == 0);

  WeightTable w1 = weight_table(t, l_beta, d, r_tau_beta, 1);
  REQUIRE(w1.h0_by_j.size() == 4);
  CHECK(w1.h0_by_j[0] == count_sections(t, l_beta));
  // Counts decrease as the boundary is subtracted off.
  for (std::size_t j = 1; j < w1.h0_by_j.size(); ++j) {
    CHECK(w1.h0_by_j[j] <= w1.h0_by_j[j - 1]);
  }
  Int sum = 0;
  for (std::size_t j = 1; j < w1.h0_by_j.size(); ++j) sum += w1.h0_by_j[j];
  CHECK(w1.v_k == sum);
  CHECK(w1.w_k == Rat(-3) * Rat(w1.h0_by_j[0]) + Rat(sum));

  CHECK_THROWS_AS(weight_table(t, l_beta, d, r_tau_beta, -1), ValidationError);
  // Non-integral k*L must be rejected, not floored silently.
  RayDivisor half = {Rat(1, 2), Rat(2), Rat(2), Rat(1), Rat(2)};
  CHECK_THROWS_AS(weight_table(t, half, d, r_tau_beta, 1), ValidationError);
}

TEST_CASE("leading coefficients recover the expansion data exactly") {
  ToricSurface t = blp_f1_fan();
  RayDivisor l_beta = {Rat(2), Rat(2), Rat(2), Rat(1), Rat(2)};
  RayDivisor d = blp_f1_boundary_rays();
  Rat r_tau_beta(3);

  std::vector<WeightTable> tables;
  for (long k : {18L, 19L, 20L, 21L}) {
    tables.push_back(weight_table(t, l_beta, d, r_tau_beta, k));
  }
  LeadingFit fit = fit_leading_coeffs(tables);
  // The counting function is an exact cubic here, so interpolation lands on
  // the coefficients of the expansion: v0 = 40/3, v1 = 15/2.
  CHECK(fit.v0 == Rat(40, 3));
  CHECK(fit.v1 == Rat(15, 2));

  std::vector<WeightTable> few(tables.begin(), tables.begin() + 3);
  CHECK_THROWS_AS(fit_leading_coeffs(few), ValidationError);
  std::vector<WeightTable> small;
  for (long k : {2L, 3L, 4L, 5L}) {
    small.push_back(weight_table(t, l_beta, d, r_tau_beta, k));
  }
  CHECK_THROWS_AS(fit_leading_coeffs(small), ValidationError);
}

TEST_CASE("empty section polygons count zero rather than erroring") {
  ToricSurface p2 = p2_fan();
  CHECK(count_sections(p2, {Rat(-1), Rat(0), Rat(0)}) == 0);
  CHECK(count_sections(p2, {Rat(-1), Rat(-1), Rat(-1)}) == 0);
}
