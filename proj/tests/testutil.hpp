#pragma once

#include <random>
#include <vector>

#include "etafano/lattice.hpp"
#include "etafano/profile.hpp"
#include "etafano/toric.hpp"

namespace etafano::testing {

inline DivisorClass dc(std::vector<Rat> coeffs) { return DivisorClass{std::move(coeffs)}; }

// Degree-7 del Pezzo written in the basis {Cbar, F, E}: Cbar^2 = 1,
// Cbar.F = 1, F^2 = 0, E^2 = -1, the rest zero. The boundary is Cbar - E,
// and the three (-1)-curves are E, Fp = F - E, and S = Cbar - F.
inline SurfaceData blp_f1_surface() {
  SurfaceData s;
  s.lattice.basis_labels = {"Cbar", "F", "E"};
  s.lattice.gram = {{Rat(1), Rat(1), Rat(0)},
                    {Rat(1), Rat(0), Rat(0)},
                    {Rat(0), Rat(0), Rat(-1)}};
  s.canonical = dc({Rat(-2), Rat(-1), Rat(1)});
  s.boundary = dc({Rat(1), Rat(0), Rat(-1)});
  s.negative_curves = {dc({Rat(0), Rat(0), Rat(1)}), dc({Rat(0), Rat(1), Rat(-1)}),
                       dc({Rat(1), Rat(-1), Rat(0)})};
  s.curve_labels = {"E", "Fp", "S"};
  return s;
}

// Projective plane with a line as boundary: -K ~ 3D.
inline SurfaceData p2_surface() {
  SurfaceData s;
  s.lattice.basis_labels = {"H"};
  s.lattice.gram = {{Rat(1)}};
  s.canonical = dc({Rat(-3)});
  s.boundary = dc({Rat(1)});
  return s;
}

// Quadric with the diagonal as boundary: -K ~ 2D.
inline SurfaceData p1xp1_surface() {
  SurfaceData s;
  s.lattice.basis_labels = {"A", "B"};
  s.lattice.gram = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  s.canonical = dc({Rat(-2), Rat(-2)});
  s.boundary = dc({Rat(1), Rat(1)});
  return s;
}

// Anticanonically embedded cubic analogue: rank one, A^2 = 3, -K ~ D ~ A.
inline SurfaceData cubic_surface() {
  SurfaceData s;
  s.lattice.basis_labels = {"A"};
  s.lattice.gram = {{Rat(3)}};
  s.canonical = dc({Rat(-1)});
  s.boundary = dc({Rat(1)});
  return s;
}

// Rank-two pair whose pseudoeffective threshold is sqrt(5) - 1: the ray
// -K - tD stays nef against the single listed curve for every t, and its
// volume -2t^2 - 4t + 8 has no rational root. Exercises the irrational-tau
// fallbacks (no symbolic invariant, grid-certified destabilizing set).
inline SurfaceData irrational_tau_surface() {
  SurfaceData s;
  s.lattice.basis_labels = {"A", "B"};
  s.lattice.gram = {{Rat(2), Rat(1)}, {Rat(1), Rat(-2)}};
  s.canonical = dc({Rat(-2), Rat(0)});
  s.boundary = dc({Rat(0), Rat(1)});
  s.negative_curves = {dc({Rat(0), Rat(1)})};
  s.curve_labels = {"B"};
  return s;
}

// Fan of the degree-7 del Pezzo; ray 3 is the boundary divisor, matching
// blp_f1_surface under a change of basis.
inline ToricSurface blp_f1_fan() {
  return ToricSurface::from_rays({{1, 0}, {0, 1}, {-1, 1}, {0, -1}, {1, -1}});
}

inline RayDivisor blp_f1_boundary_rays() {
  return {Rat(0), Rat(0), Rat(0), Rat(1), Rat(0)};
}

inline ToricSurface p2_fan() { return ToricSurface::from_rays({{1, 0}, {0, 1}, {-1, -1}}); }

inline std::mt19937 seeded_rng(unsigned salt = 0) { return std::mt19937(0x5eed + salt); }

inline Rat random_rat(std::mt19937& gen, int lo, int hi, int max_den) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, max_den);
  Rat r(num(gen), den(gen));
  // mpq_class(int, int) stores the fraction as given; reduce it so that
  // equality (mpq_equal, which assumes canonical form) behaves.
  r.canonicalize();
  return r;
}

// Random structurally sound geography bundle: continuous piecewise
// polynomial volume vanishing at the right end, with s forced to match
// -vol'/n segment by segment. kappa is left empty.
inline GeographyBundle random_bundle(std::mt19937& gen, int dimension = 2) {
  std::uniform_int_distribution<int> seg_count(1, 4);
  std::uniform_int_distribution<int> deg(1, 3);

  GeographyBundle b;
  b.dimension = dimension;
  int m = seg_count(gen);
  std::vector<Rat> cuts{Rat(0)};
  for (int i = 0; i < m; ++i) {
    Rat step = random_rat(gen, 1, 3, 3);
    cuts.push_back(cuts.back() + step);
  }

  std::vector<Poly> vols;
  for (int i = 0; i < m; ++i) {
    std::vector<Rat> c;
    int d = deg(gen);
    for (int j = 0; j <= d; ++j) c.push_back(random_rat(gen, -4, 4, 3));
    Poly p(std::move(c));
    if (i > 0) {
      Rat joint = cuts[static_cast<std::size_t>(i)];
      p += Poly::constant(vols.back().eval(joint) - p.eval(joint));
    }
    vols.push_back(std::move(p));
  }
  Rat tail = vols.back().eval(cuts.back());
  for (Poly& p : vols) p -= Poly::constant(tail);

  for (int i = 0; i < m; ++i) {
    GeographySegment seg;
    seg.lo = cuts[static_cast<std::size_t>(i)];
    seg.hi = cuts[static_cast<std::size_t>(i) + 1];
    seg.vol = vols[static_cast<std::size_t>(i)];
    seg.s = Rat(-1, dimension) * vols[static_cast<std::size_t>(i)].derivative();
    b.segments.push_back(std::move(seg));
  }
  return b;
}

}  // namespace etafano::testing
