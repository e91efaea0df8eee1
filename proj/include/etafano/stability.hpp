#pragma once

#include <optional>
#include <vector>

#include "etafano/lattice.hpp"
#include "etafano/profile.hpp"

namespace etafano {

// Sign verdicts. A negative invariant certifies instability; zero and
// positive values only bound what can be concluded, so their labels say so.
enum class Verdict {
  not_log_k_semistable,
  not_log_k_stable_semistability_undecided,
  necessary_condition_passed_undecided,
};

const char* verdict_text(Verdict v);
Verdict verdict_from_sign(Sign s);

struct EtaResult {
  Rat beta;
  AlgReal value;      // eta_plus - eta_minus
  AlgReal eta_plus;   // beta * V(1-beta) - integral of V over [1-beta, min(1, tau)]
  AlgReal eta_minus;  // integral of V over [min(1, tau), tau]; zero when tau <= 1
  Sign sign;
  Verdict verdict;
  // Exact piecewise polynomial in beta over [0, 1]; present when every
  // profile breakpoint (tau included) is rational.
  std::optional<PiecewisePoly> eta_as_poly_in_beta;
};

// The invariant beta * V(1-beta) - integral_{1-beta}^{tau} V, split into the
// plus/minus parts. When 1-beta >= tau every term is zero (the profile
// extends by zero). Throws ValidationError for beta outside [0, 1].
EtaResult eta(const VolumeProfile& p, const Rat& beta);

// Same quantities computed from a single-beta geography bundle in the
// shifted variable x = t - (1-beta). The bundle must have been produced for
// this same beta.
EtaResult eta_from_bundle(const GeographyBundle& b, const Rat& beta);

// The invariant as an exact piecewise polynomial in beta on [0, 1], and the
// same for the plus part alone. Absent when a wall or tau is irrational.
std::optional<PiecewisePoly> eta_in_beta(const VolumeProfile& p);
std::optional<PiecewisePoly> eta_plus_in_beta(const VolumeProfile& p);
AlgReal eta_minus_value(const VolumeProfile& p);

// Rank-1 shortcut when -K ~ l*D: n/(n+1) * vol * (beta - (l-1)/n).
// Requires 1 <= l <= n+1.
Rat eta_closed_form(int n, const Rat& l, const Rat& vol_at_beta, const Rat& beta);

struct BetaInterval {
  AlgReal lo;
  bool lo_open;
  AlgReal hi;
  bool hi_open;
};

struct DestabilizingSet {
  // Exact root-isolated intervals when the symbolic polynomial exists;
  // otherwise certified-negative grid runs (endpoints are grid points where
  // the invariant was evaluated exactly; the true set may extend slightly
  // past them).
  bool exact;
  int grid_points;  // 0 on the exact path
  std::vector<BetaInterval> intervals;
};

// The set {beta in (0, 1] : eta_beta < 0}.
DestabilizingSet destabilizing_betas(const VolumeProfile& p, int grid_points = 64);

// Smallest positive integer r making r*(-K - (1-beta)D) integral in the
// given basis.
unsigned default_r(const SurfaceData& s, const Rat& beta);

// Intersection numbers of m = -K - (1-beta)D that seed the expansion
// coefficients: (m.m), (m.D), (m.-K).
struct DFInputs {
  Rat self;
  Rat with_boundary;
  Rat with_anti_k;
};

DFInputs df_inputs_from_surface(const SurfaceData& s, const Rat& beta);
// From bundle data alone: vol(0), s(0), and their combination.
DFInputs df_inputs_from_bundle(const GeographyBundle& b, const Rat& beta);

struct DFReport {
  int dimension;
  unsigned r;
  Rat beta;
  Rat tau_beta;
  Rat l_self;  // (L^n) for L = r*m
  Rat a0, a1, a0_tilde;
  Rat v0, v1;
  Rat b0, b1, b0_tilde;
  Rat df_value;
  Rat eta_beta;  // the invariant recomputed from the bundle
  bool proportionality_checked;
};

// Expansion coefficients and the resulting invariant:
//   a0 = r^n (m^n)/n!,  a1 = r^(n-1) (m^(n-1).-K)/(2(n-1)!),
//   a0_tilde = r^(n-1) (m^(n-1).D)/(n-1)!,
//   v0 = r^(n+1)/n! * sum of segment volume integrals,
//   v1 = -r^n/(2(n-1)!) * sum of segment kappa integrals,
//   b0 = v0 - r tau_beta a0,  b1 = v1 - r tau_beta a1,
//   b0_tilde = -r tau_beta a0_tilde,
//   df = 2(v0 a1 - v1 a0) + (1-beta)(a0 b0_tilde - b0 a0_tilde).
// proportionality_checked reports whether df equals
// r^n (L^n)/(n!)^2 * eta exactly, with eta recomputed from the bundle.
// Throws ComputationError when kappa data is missing.
DFReport df_invariant(const GeographyBundle& b, const DFInputs& in, const Rat& beta, unsigned r);

struct LemmaCheck {
  Rat integral_form;  // beta*vol(0) - sum integral vol
  Rat weighted_form;  // n * sum integral (beta - x) s(x) dx
  bool equal;
};

// Partial-integration identity between the two ways of writing the
// invariant; exact on every sound bundle.
LemmaCheck lemma_vol_check(const GeographyBundle& b, const Rat& beta);

}  // namespace etafano
