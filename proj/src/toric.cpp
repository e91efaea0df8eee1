#include "etafano/toric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "etafano/errors.hpp"
#include "etafano/linalg.hpp"

namespace etafano {

namespace {

// Strict angular order on nonzero lattice vectors, counterclockwise from
// the positive x-axis. half() is 0 on the closed upper half line starting
// at (1,0), 1 below it.
int half(const RayVec& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }

bool angular_before(const RayVec& a, const RayVec& b) {
  if (half(a) != half(b)) return half(a) < half(b);
  return ray_det(a, b) > 0;
}

}  // namespace

long ray_det(const RayVec& a, const RayVec& b) { return a.x * b.y - a.y * b.x; }

ToricSurface ToricSurface::from_rays(std::vector<RayVec> rays) {
  const std::size_t d = rays.size();
  if (d < 3) throw ValidationError("fan needs at least 3 rays");
  for (std::size_t i = 0; i < d; ++i) {
    if (rays[i].x == 0 && rays[i].y == 0) {
      throw ValidationError("ray " + std::to_string(i) + " is zero");
    }
    if (std::gcd(rays[i].x, rays[i].y) != 1) {
      throw ValidationError("ray " + std::to_string(i) + " is not primitive");
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t j = (i + 1) % d;
    if (ray_det(rays[i], rays[j]) != 1) {
      throw ValidationError("rays " + std::to_string(i) + " and " + std::to_string(j) +
                            " do not span a unimodular cone in counterclockwise order");
    }
  }
  // Every consecutive turn is positive and less than a half turn, so the
  // sequence winds monotonically; one winding means exactly one wraparound
  // in the global angular order.
  int wraps = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (!angular_before(rays[i], rays[(i + 1) % d])) ++wraps;
  }
  if (wraps != 1) throw ValidationError("rays do not wind around the origin exactly once");
  return ToricSurface(std::move(rays));
}

Rat ToricSurface::ray_pair(std::size_t i, std::size_t j) const {
  const std::size_t d = rays_.size();
  if (i >= d || j >= d) throw ValidationError("ray index out of range");
  if (i == j) {
    return Rat(-ray_det(rays_[(i + d - 1) % d], rays_[(i + 1) % d]));
  }
  if ((i + 1) % d == j || (j + 1) % d == i) return Rat(1);
  return Rat(0);
}

DivisorClass ToricSurface::ray_divisor_class(std::size_t i) const {
  std::vector<Rat> coeffs(rays_.size(), Rat(0));
  coeffs.at(i) = 1;
  return to_class(coeffs);
}

DivisorClass ToricSurface::to_class(const std::vector<Rat>& ray_coeffs) const {
  const std::size_t d = rays_.size();
  if (ray_coeffs.size() != d) {
    throw ValidationError("expected one coefficient per ray, got " +
                          std::to_string(ray_coeffs.size()));
  }
  // Eliminate D_0 and D_1 via the character relations: with det(v_0,v_1)=1,
  // D_0 = sum_{j>=2} det(v_1, v_j) D_j and D_1 = sum_{j>=2} det(v_j, v_0) D_j.
  DivisorClass out;
  out.coeffs.assign(d - 2, Rat(0));
  for (std::size_t j = 2; j < d; ++j) {
    out.coeffs[j - 2] = ray_coeffs[j] + ray_coeffs[0] * Rat(ray_det(rays_[1], rays_[j])) +
                        ray_coeffs[1] * Rat(ray_det(rays_[j], rays_[0]));
  }
  return out;
}

DivisorClass ToricSurface::anti_canonical_class() const {
  return to_class(std::vector<Rat>(rays_.size(), Rat(1)));
}

SurfaceData ToricSurface::to_surface(const DivisorClass& boundary) const {
  const std::size_t d = rays_.size();
  SurfaceData s;
  s.lattice.basis_labels.reserve(d - 2);
  for (std::size_t j = 2; j < d; ++j) s.lattice.basis_labels.push_back("D" + std::to_string(j));
  s.lattice.gram.assign(d - 2, std::vector<Rat>(d - 2));
  for (std::size_t a = 2; a < d; ++a) {
    for (std::size_t b = 2; b < d; ++b) s.lattice.gram[a - 2][b - 2] = ray_pair(a, b);
  }
  s.canonical = Rat(-1) * anti_canonical_class();
  s.boundary = boundary;
  for (std::size_t i = 0; i < d; ++i) {
    if (ray_pair(i, i) < 0) {
      s.negative_curves.push_back(ray_divisor_class(i));
      s.curve_labels.push_back("D" + std::to_string(i));
    }
  }
  s.validate();
  return s;
}

Int count_sections(const ToricSurface& t, const RayDivisor& a) {
  const std::vector<RayVec>& rays = t.rays();
  const std::size_t d = rays.size();
  if (a.size() != d) throw ValidationError("expected one coefficient per ray");

  std::vector<Int> b(d);
  for (std::size_t i = 0; i < d; ++i) b[i] = rat_floor(a[i]);

  // Candidate x-range: the polytope's vertices sit among the pairwise
  // intersections of the facet lines <u, v_i> = -b_i.
  std::optional<Rat> xmin, xmax;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      long det = ray_det(rays[i], rays[j]);
      if (det == 0) continue;
      Rat x = (Rat(-b[i]) * rays[j].y - Rat(-b[j]) * rays[i].y) / det;
      if (!xmin || x < *xmin) xmin = x;
      if (!xmax || x > *xmax) xmax = x;
    }
  }
  if (!xmin) throw ComputationError("section region is unbounded (fan not complete)");

  Int count(0);
  const Int xhi = rat_floor(*xmax);
  for (Int x = rat_ceil(*xmin); x <= xhi; ++x) {
    std::optional<Rat> ylo, yhi;
    bool empty = false;
    for (std::size_t i = 0; i < d && !empty; ++i) {
      Rat slack = Rat(-b[i]) - Rat(rays[i].x) * Rat(x);
      if (rays[i].y > 0) {
        Rat bound = slack / rays[i].y;
        if (!ylo || bound > *ylo) ylo = bound;
      } else if (rays[i].y < 0) {
        Rat bound = slack / rays[i].y;
        if (!yhi || bound < *yhi) yhi = bound;
      } else if (slack > 0) {
        empty = true;  // horizontal constraint x*v_x >= -b_i fails
      }
    }
    if (empty) continue;
    if (!ylo || !yhi) throw ComputationError("section region is unbounded (fan not complete)");
    Int lo = rat_ceil(*ylo), hi = rat_floor(*yhi);
    if (hi >= lo) count += hi - lo + 1;
  }
  return count;
}

WeightTable weight_table(const ToricSurface& t, const RayDivisor& l_beta, const RayDivisor& d,
                         const Rat& r_tau_beta, long k) {
  if (k < 0) throw ValidationError("k must be non-negative");
  if (l_beta.size() != t.ray_count() || d.size() != t.ray_count()) {
    throw ValidationError("expected one coefficient per ray");
  }
  WeightTable out;
  out.k = k;
  if (k == 0) {
    out.h0_by_j = {Int(1)};
    out.v_k = 0;
    out.w_k = 0;
    return out;
  }
  for (std::size_t i = 0; i < l_beta.size(); ++i) {
    Rat scaled = k * l_beta[i];
    if (scaled.get_den() != 1) {
      throw ValidationError("k times the polarization is non-integral at ray " +
                            std::to_string(i) + "; use a more divisible k");
    }
  }
  long jmax = rat_floor_long(k * r_tau_beta);
  out.v_k = 0;
  for (long j = 0; j <= jmax; ++j) {
    RayDivisor shifted(l_beta.size());
    for (std::size_t i = 0; i < l_beta.size(); ++i) shifted[i] = k * l_beta[i] - j * d[i];
    Int h0 = count_sections(t, shifted);
    if (j >= 1) out.v_k += h0;
    out.h0_by_j.push_back(std::move(h0));
  }
  out.w_k = Rat(-k) * r_tau_beta * out.h0_by_j.front() + out.v_k;
  return out;
}

LeadingFit fit_leading_coeffs(const std::vector<WeightTable>& tables) {
  std::map<long, Rat> by_k;
  for (const WeightTable& t : tables) {
    if (t.k > 0) by_k[t.k] = Rat(t.v_k);
  }
  if (by_k.size() < 4 || by_k.rbegin()->first < 20) {
    throw ValidationError("insufficient data: need 4 distinct k values, the largest at least 20");
  }

  // Cubic through the four largest samples; its top coefficients estimate
  // the k^3 and k^2 growth.
  std::vector<std::pair<long, Rat>> pts(by_k.rbegin(), std::next(by_k.rbegin(), 4));
  Mat vand(4, std::vector<Rat>(4));
  std::vector<Rat> rhs(4);
  for (std::size_t i = 0; i < 4; ++i) {
    Rat k(pts[i].first);
    vand[i][0] = 1;
    for (std::size_t m = 1; m < 4; ++m) vand[i][m] = vand[i][m - 1] * k;
    rhs[i] = pts[i].second;
  }
  auto sol = solve_linear(vand, rhs);
  if (!sol) throw ComputationError("interpolation system is singular");
  return LeadingFit{sol->at(3), sol->at(2)};
}

}  // namespace etafano
