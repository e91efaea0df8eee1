#pragma once

#include <optional>
#include <string>
#include <vector>

#include "etafano/piecewise.hpp"
#include "etafano/zariski.hpp"

namespace etafano {

// One maximal interval [lo, hi] of the ray A_t = -K - t*D on which the
// Zariski support is constant. vol is (P_t)^2 there, s is P_t . D, and
// kappa is P_t . (K + D); all polynomials in t. contracted lists the labels
// of the support curves. Interior walls are rational; only the final hi
// (the pseudoeffective threshold) can be irrational.
struct Chamber {
  Rat lo;
  AlgReal hi;
  Poly vol;
  Poly s;
  std::optional<Poly> kappa;
  std::vector<std::string> contracted;
};

// The full volume geography of the pair: chambers covering [0, tau], the
// assembled piecewise volume function (extended by zero past tau), and the
// threshold itself.
struct VolumeProfile {
  int dimension;
  std::vector<Chamber> chambers;
  AlgReal tau;
  PiecewisePoly volume;

  bool rational_walls() const;  // every breakpoint including tau rational
};

// Walks the ray from t = 0, discovering chamber supports by exact sample
// decompositions and extending each symbolically until a wall (a support
// multiplicity or an excluded-curve pairing hits zero) or until the volume
// vanishes. Requires -K ample against the curve list with (-K)^2 > 0.
VolumeProfile build_profile(const SurfaceData& s);

// Assembles and cross-checks a profile from chamber data (shared by
// build_profile and the bundle ingestion path): contiguity, continuity,
// vanishing at tau, and monotonicity of the volume.
VolumeProfile assemble_profile(int dimension, std::vector<Chamber> chambers);

// (tau, tau_beta) with tau_beta = tau - (1 - beta).
std::pair<AlgReal, AlgReal> thresholds(const VolumeProfile& p, const Rat& beta);

// The profile re-based at a working parameter beta: segments in the shifted
// variable x = t - (1-beta) covering [0, tau_beta]. This is the exchange
// format consumed by the invariant formulas and by bundle input documents
// (where s and kappa come from the user instead of a surface).
struct GeographySegment {
  Rat lo;
  Rat hi;
  Poly vol;
  Poly s;
  std::optional<Poly> kappa;
  std::vector<std::string> contracted;
};

struct GeographyBundle {
  int dimension;
  std::vector<GeographySegment> segments;

  Rat tau_beta() const;
  // Structural checks: nonempty, starts at 0, contiguous strictly
  // increasing, volume continuous across joints and vanishing at the end.
  void validate() const;
};

// Shift the profile to x = t - (1-beta). Throws ComputationError when a
// breakpoint needed by the shift is irrational or when beta leaves no
// positive-volume range (1-beta >= tau).
GeographyBundle bundle_from_profile(const VolumeProfile& p, const Rat& beta);

}  // namespace etafano
