#include "etafano/stability.hpp"

#include <algorithm>
#include <utility>

#include "etafano/errors.hpp"

namespace etafano {

namespace {

void check_beta(const Rat& beta) {
  if (beta < 0 || beta > 1) throw ValidationError("beta must lie in [0, 1]");
}

// Prefix integrals of the chamber volumes: prefix[i] = integral of V over
// [0, lo_i], prefix[size] = integral over [0, tau]. Rational walls only.
std::vector<Rat> volume_prefix(const VolumeProfile& p) {
  std::vector<Rat> prefix{Rat(0)};
  for (const Chamber& c : p.chambers) {
    prefix.push_back(prefix.back() + poly_integral(c.vol, c.lo, c.hi.rational()));
  }
  return prefix;
}

// The invariant restricted to working parameters u = 1 - beta inside one
// chamber, as a polynomial in beta:
//   beta * V(1-beta) + prefix_lo + A(1-beta) - A(lo) - upper
// where A is the chamber antiderivative and upper is the integral of V over
// [0, cutoff] (cutoff = tau for the full invariant, min(1, tau) for the
// plus part).
Poly piece_in_beta(const Chamber& c, const Rat& prefix_lo, const Rat& upper) {
  Poly a = c.vol.antiderivative();
  Poly out = Poly::variable() * c.vol.compose_affine(Rat(1), Rat(-1));
  out += a.compose_affine(Rat(1), Rat(-1));
  out += Poly::constant(prefix_lo - a.eval(c.lo) - upper);
  return out;
}

std::optional<PiecewisePoly> invariant_in_beta(const VolumeProfile& p, bool plus_part) {
  if (!p.rational_walls()) return std::nullopt;
  const std::vector<Rat> prefix = volume_prefix(p);
  const Rat tau = p.tau.rational();

  Rat upper = prefix.back();  // integral over [0, tau]
  if (plus_part && tau > 1) {
    // Clip at 1: subtract the tail of the chamber containing it.
    upper = 0;
    for (std::size_t i = 0; i < p.chambers.size(); ++i) {
      const Chamber& c = p.chambers[i];
      if (c.hi.rational() <= 1) {
        upper = prefix[i + 1];
      } else {
        upper = prefix[i] + poly_integral(c.vol, c.lo, Rat(1));
        break;
      }
    }
  }

  // Breakpoints in beta: 0 and 1, the images 1 - w of interior walls, and
  // 1 - tau when the threshold sits inside (0, 1).
  std::vector<Rat> breaks{Rat(0), Rat(1)};
  for (const Chamber& c : p.chambers) {
    Rat w = c.hi.rational();
    if (w > 0 && w < 1) breaks.push_back(1 - w);
  }
  if (tau < 1) breaks.push_back(1 - tau);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<AlgReal> bks;
  std::vector<Poly> pieces;
  bks.reserve(breaks.size());
  for (const Rat& b : breaks) bks.emplace_back(b);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Rat mid = (breaks[i] + breaks[i + 1]) / 2;
    Rat u = 1 - mid;
    if (u >= tau) {
      pieces.emplace_back();  // no positive volume left, identically zero
      continue;
    }
    std::size_t ci = p.chambers.size();
    for (std::size_t j = 0; j < p.chambers.size(); ++j) {
      if (u >= p.chambers[j].lo && u < p.chambers[j].hi.rational()) {
        ci = j;
        break;
      }
    }
    if (ci == p.chambers.size()) throw ComputationError("no chamber covers u = " + rat_str(u));
    pieces.push_back(piece_in_beta(p.chambers[ci], prefix[ci], upper));
  }
  return PiecewisePoly(std::move(bks), std::move(pieces));
}

Sign rat_to_sign(const Rat& v) {
  int s = rat_sign(v);
  return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
}

}  // namespace

const char* verdict_text(Verdict v) {
  switch (v) {
    case Verdict::not_log_k_semistable:
      return "NOT_LOG_K_SEMISTABLE";
    case Verdict::not_log_k_stable_semistability_undecided:
      return "NOT_LOG_K_STABLE_SEMISTABILITY_UNDECIDED";
    case Verdict::necessary_condition_passed_undecided:
      return "NECESSARY_CONDITION_PASSED_UNDECIDED";
  }
  throw ComputationError("unreachable verdict value");
}

Verdict verdict_from_sign(Sign s) {
  switch (s) {
    case Sign::negative:
      return Verdict::not_log_k_semistable;
    case Sign::zero:
      return Verdict::not_log_k_stable_semistability_undecided;
    case Sign::positive:
      return Verdict::necessary_condition_passed_undecided;
  }
  throw ComputationError("unreachable sign value");
}

EtaResult eta(const VolumeProfile& p, const Rat& beta) {
  check_beta(beta);
  const Rat u = 1 - beta;

  EtaResult out;
  out.beta = beta;
  out.eta_minus = eta_minus_value(p);

  if (p.tau.compare(u) <= 0) {
    // The shifted class is no longer big: every term vanishes.
    out.eta_plus = AlgReal(Rat(0));
    out.value = AlgReal(Rat(0));
  } else {
    AlgReal m1 = p.tau.compare(Rat(1)) <= 0 ? p.tau : AlgReal(Rat(1));
    Rat v_at_u = p.volume.eval(u);
    AlgReal head = piecewise_integral(p.volume, AlgReal(u), m1);
    out.eta_plus = alg_sub(AlgReal(beta * v_at_u), head);
    out.value = alg_sub(out.eta_plus, out.eta_minus);
  }

  out.sign = out.value.sign();
  out.verdict = verdict_from_sign(out.sign);
  out.eta_as_poly_in_beta = eta_in_beta(p);
  return out;
}

EtaResult eta_from_bundle(const GeographyBundle& b, const Rat& beta) {
  check_beta(beta);
  b.validate();
  const Rat tb = b.tau_beta();
  const Rat m = std::min(beta, tb);

  Rat vol0 = b.segments.front().vol.eval(Rat(0));
  Rat head(0), tail(0);
  for (const GeographySegment& seg : b.segments) {
    Rat cut = std::clamp(m, seg.lo, seg.hi);
    head += poly_integral(seg.vol, seg.lo, cut);
    tail += poly_integral(seg.vol, cut, seg.hi);
  }

  EtaResult out;
  out.beta = beta;
  out.eta_plus = AlgReal(beta * vol0 - head);
  out.eta_minus = AlgReal(tail);
  out.value = AlgReal(beta * vol0 - head - tail);
  out.sign = out.value.sign();
  out.verdict = verdict_from_sign(out.sign);
  return out;
}

std::optional<PiecewisePoly> eta_in_beta(const VolumeProfile& p) {
  return invariant_in_beta(p, /*plus_part=*/false);
}

std::optional<PiecewisePoly> eta_plus_in_beta(const VolumeProfile& p) {
  return invariant_in_beta(p, /*plus_part=*/true);
}

AlgReal eta_minus_value(const VolumeProfile& p) {
  if (p.tau.compare(Rat(1)) <= 0) return AlgReal(Rat(0));
  return piecewise_integral(p.volume, AlgReal(Rat(1)), p.tau);
}

Rat eta_closed_form(int n, const Rat& l, const Rat& vol_at_beta, const Rat& beta) {
  if (n < 1) throw ValidationError("dimension must be at least 1");
  if (l < 1 || l > n + 1) throw ValidationError("closed form needs 1 <= l <= n + 1");
  return Rat(n) / (n + 1) * vol_at_beta * (beta - (l - 1) / Rat(n));
}

DestabilizingSet destabilizing_betas(const VolumeProfile& p, int grid_points) {
  DestabilizingSet out;
  std::optional<PiecewisePoly> f = eta_in_beta(p);

  if (!f) {
    // Irrational threshold: certify a grid. Runs of consecutive negative
    // grid values become closed intervals with exactly evaluated endpoints.
    if (grid_points < 2) throw ValidationError("grid needs at least 2 points");
    out.exact = false;
    out.grid_points = grid_points;
    std::optional<Rat> run_lo;
    Rat prev(0);
    for (int i = 1; i <= grid_points; ++i) {
      Rat b = Rat(i) / grid_points;
      bool neg = eta(p, b).sign == Sign::negative;
      if (neg && !run_lo) run_lo = b;
      if (!neg && run_lo) {
        out.intervals.push_back(BetaInterval{AlgReal(*run_lo), false, AlgReal(prev), false});
        run_lo.reset();
      }
      prev = b;
    }
    if (run_lo) {
      out.intervals.push_back(BetaInterval{AlgReal(*run_lo), false, AlgReal(Rat(1)), false});
    }
    return out;
  }

  out.exact = true;
  out.grid_points = 0;

  // Nodes: domain ends, piece breakpoints, and all interior roots. Between
  // consecutive nodes the sign is constant; at a node the value is either
  // zero (roots) or directly evaluable (rational breakpoints).
  std::vector<AlgReal> nodes;
  for (const AlgReal& b : f->breakpoints()) nodes.push_back(b);
  for (std::size_t i = 0; i < f->piece_count(); ++i) {
    const Poly& q = f->piece(i);
    if (q.is_zero()) continue;
    Rat lo = f->breakpoints()[i].rational();
    Rat hi = f->breakpoints()[i + 1].rational();
    for (AlgReal& r : isolate_roots(q, lo, hi)) nodes.push_back(std::move(r));
  }
  std::sort(nodes.begin(), nodes.end(), [](const AlgReal& a, const AlgReal& b) { return a < b; });
  nodes.erase(std::unique(nodes.begin(), nodes.end(),
                          [](const AlgReal& a, const AlgReal& b) { return a == b; }),
              nodes.end());

  auto sign_at_node = [&](const AlgReal& x) {
    if (x.is_rational()) return rat_to_sign(f->eval(x.rational()));
    return Sign::zero;  // irrational nodes only arise as isolated roots
  };
  auto sign_between = [&](const AlgReal& a, const AlgReal& b) {
    return rat_to_sign(f->eval(rational_between(a, b)));
  };

  // Sweep left to right merging negative segments through negative nodes.
  std::optional<AlgReal> run_lo;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    bool seg_neg = sign_between(nodes[i], nodes[i + 1]) == Sign::negative;
    if (seg_neg && !run_lo) run_lo = nodes[i];
    if (run_lo) {
      bool node_neg = sign_at_node(nodes[i + 1]) == Sign::negative;
      bool next_neg =
          i + 2 < nodes.size() && sign_between(nodes[i + 1], nodes[i + 2]) == Sign::negative;
      if (!seg_neg) {
        run_lo.reset();
        continue;
      }
      if (!(node_neg && next_neg)) {
        // Run ends at nodes[i+1]. The right end is closed only when it is
        // beta = 1 with a strictly negative value there.
        bool closed_end = nodes[i + 1] == Rat(1) && node_neg;
        out.intervals.push_back(BetaInterval{*run_lo, true, nodes[i + 1], !closed_end});
        run_lo.reset();
      }
    }
  }
  return out;
}

unsigned default_r(const SurfaceData& s, const Rat& beta) {
  check_beta(beta);
  DivisorClass m = s.anti_canonical() - (1 - beta) * s.boundary;
  Int acc(1);
  for (const Rat& c : m.coeffs) {
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), c.get_den().get_mpz_t());
  }
  if (!acc.fits_ulong_p()) throw ComputationError("integrality scale exceeds machine range");
  return static_cast<unsigned>(acc.get_ui());
}

DFInputs df_inputs_from_surface(const SurfaceData& s, const Rat& beta) {
  check_beta(beta);
  DivisorClass antik = s.anti_canonical();
  DivisorClass m = antik - (1 - beta) * s.boundary;
  return DFInputs{s.pair(m, m), s.pair(m, s.boundary), s.pair(m, antik)};
}

DFInputs df_inputs_from_bundle(const GeographyBundle& b, const Rat& beta) {
  check_beta(beta);
  b.validate();
  // m = -K - (1-beta)D, so m.m = vol(0), m.D = s(0), and
  // m.(-K) = m.(m + (1-beta)D) = vol(0) + (1-beta) s(0).
  Rat vol0 = b.segments.front().vol.eval(Rat(0));
  Rat s0 = b.segments.front().s.eval(Rat(0));
  return DFInputs{vol0, s0, vol0 + (1 - beta) * s0};
}

DFReport df_invariant(const GeographyBundle& b, const DFInputs& in, const Rat& beta, unsigned r) {
  check_beta(beta);
  b.validate();
  if (r == 0) throw ValidationError("scaling factor r must be positive");
  const int n = b.dimension;
  if (n < 2) throw ValidationError("expansion coefficients need dimension at least 2");

  Rat iv(0), ik(0);
  for (const GeographySegment& seg : b.segments) {
    if (!seg.kappa) {
      throw ComputationError("segment lacks kappa data needed for the weight expansion");
    }
    iv += poly_integral(seg.vol, seg.lo, seg.hi);
    ik += poly_integral(*seg.kappa, seg.lo, seg.hi);
  }

  const Rat rn = rat_pow(Rat(r), static_cast<unsigned>(n));
  const Rat rn1 = rat_pow(Rat(r), static_cast<unsigned>(n - 1));
  const Rat nfac = rat_factorial(static_cast<unsigned>(n));
  const Rat n1fac = rat_factorial(static_cast<unsigned>(n - 1));

  DFReport rep;
  rep.dimension = n;
  rep.r = r;
  rep.beta = beta;
  rep.tau_beta = b.tau_beta();
  rep.l_self = rn * in.self;

  rep.a0 = rn * in.self / nfac;
  rep.a1 = rn1 * in.with_anti_k / (2 * n1fac);
  rep.a0_tilde = rn1 * in.with_boundary / n1fac;
  rep.v0 = rn * Rat(r) * iv / nfac;
  rep.v1 = -rn * ik / (2 * n1fac);
  rep.b0 = rep.v0 - r * rep.tau_beta * rep.a0;
  rep.b1 = rep.v1 - r * rep.tau_beta * rep.a1;
  rep.b0_tilde = -(r * rep.tau_beta * rep.a0_tilde);
  rep.df_value = 2 * (rep.v0 * rep.a1 - rep.v1 * rep.a0) +
                 (1 - beta) * (rep.a0 * rep.b0_tilde - rep.b0 * rep.a0_tilde);

  // Recompute the invariant from the bundle's own volume data so the
  // proportionality flag catches inconsistent hand-written inputs.
  rep.eta_beta = beta * b.segments.front().vol.eval(Rat(0)) - iv;
  rep.proportionality_checked =
      rep.df_value == rn * rep.l_self / (nfac * nfac) * rep.eta_beta;
  return rep;
}

LemmaCheck lemma_vol_check(const GeographyBundle& b, const Rat& beta) {
  check_beta(beta);
  b.validate();
  Rat vol0 = b.segments.front().vol.eval(Rat(0));

  Rat iv(0), weighted(0);
  const Poly weight(std::vector<Rat>{beta, Rat(-1)});
  for (const GeographySegment& seg : b.segments) {
    iv += poly_integral(seg.vol, seg.lo, seg.hi);
    weighted += poly_integral(weight * seg.s, seg.lo, seg.hi);
  }

  LemmaCheck out;
  out.integral_form = beta * vol0 - iv;
  out.weighted_form = b.dimension * weighted;
  out.equal = out.integral_form == out.weighted_form;
  return out;
}

}  // namespace etafano
