#include "etafano/profile.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "etafano/errors.hpp"

namespace etafano {

namespace {

struct SymbolicChamber {
  std::vector<std::size_t> supp;   // ascending curve indices
  std::vector<Poly> mult;          // multiplicity a_i(t), aligned with supp
  std::vector<Poly> p_coords;      // coordinates of P_t
  Poly vol, s, kappa;
  std::vector<Poly> constraints;   // everything that must stay >= 0
};

DivisorClass ray_class(const SurfaceData& s, const Rat& t) {
  return s.anti_canonical() - t * s.boundary;
}

// <u(t), c> where u has polynomial coordinates and c is a fixed class.
Poly pair_poly(const SurfaceData& s, const std::vector<Poly>& u, const DivisorClass& c) {
  Poly acc;
  for (std::size_t i = 0; i < u.size(); ++i) {
    Rat w(0);
    for (std::size_t j = 0; j < c.coeffs.size(); ++j) w += s.lattice.gram[i][j] * c.coeffs[j];
    acc += w * u[i];
  }
  return acc;
}

Poly self_pair_poly(const SurfaceData& s, const std::vector<Poly>& u) {
  Poly acc;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (s.lattice.gram[i][j] == 0) continue;
      acc += s.lattice.gram[i][j] * (u[i] * u[j]);
    }
  }
  return acc;
}

// Exact decomposition data over a fixed support, as polynomials in t.
// Solving M a = rhs0 + t*rhs1 for constant M reduces to two rational solves.
SymbolicChamber solve_chamber(const SurfaceData& s, const std::set<std::size_t>& supp) {
  SymbolicChamber out;
  out.supp.assign(supp.begin(), supp.end());
  const std::size_t k = out.supp.size();
  const DivisorClass antik = s.anti_canonical();

  Mat gram(k, std::vector<Rat>(k));
  std::vector<Rat> rhs0(k), rhs1(k);
  for (std::size_t i = 0; i < k; ++i) {
    const DivisorClass& ci = s.negative_curves[out.supp[i]];
    for (std::size_t j = 0; j < k; ++j) {
      gram[i][j] = s.pair(ci, s.negative_curves[out.supp[j]]);
    }
    rhs0[i] = s.pair(antik, ci);
    rhs1[i] = -s.pair(s.boundary, ci);
  }
  auto x0 = solve_linear(gram, rhs0);
  auto x1 = solve_linear(gram, rhs1);
  if (!x0 || !x1) throw SingularSupportError("singular support system in chamber solve");

  out.mult.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.mult.push_back(Poly(std::vector<Rat>{x0->at(i), x1->at(i)}));
  }

  const std::size_t rank = s.lattice.rank();
  out.p_coords.assign(rank, Poly());
  for (std::size_t j = 0; j < rank; ++j) {
    Poly c(std::vector<Rat>{antik.coeffs[j], -s.boundary.coeffs[j]});
    for (std::size_t i = 0; i < k; ++i) {
      c -= s.negative_curves[out.supp[i]].coeffs[j] * out.mult[i];
    }
    out.p_coords[j] = c;
  }

  out.vol = self_pair_poly(s, out.p_coords);
  out.s = pair_poly(s, out.p_coords, s.boundary);
  out.kappa = pair_poly(s, out.p_coords, s.canonical + s.boundary);

  out.constraints = out.mult;
  for (std::size_t j = 0; j < s.negative_curves.size(); ++j) {
    if (supp.count(j)) continue;  // identically zero pairing by construction
    out.constraints.push_back(pair_poly(s, out.p_coords, s.negative_curves[j]));
  }
  return out;
}

bool constraints_hold_at(const SymbolicChamber& c, const Rat& t) {
  for (const Poly& f : c.constraints) {
    if (f.eval(t) < 0) return false;
  }
  return true;
}

std::vector<std::string> contracted_labels(const SurfaceData& s,
                                           const std::vector<std::size_t>& supp) {
  std::vector<std::string> out;
  out.reserve(supp.size());
  for (std::size_t i : supp) {
    out.push_back(s.curve_labels.empty() ? "curve" + std::to_string(i) : s.curve_labels[i]);
  }
  return out;
}

}  // namespace

bool VolumeProfile::rational_walls() const {
  for (const AlgReal& b : volume.breakpoints()) {
    if (!b.is_rational()) return false;
  }
  return true;
}

VolumeProfile build_profile(const SurfaceData& s) {
  s.validate();
  if (s.boundary.is_zero()) throw ValidationError("boundary divisor must be nonzero");
  const DivisorClass antik = s.anti_canonical();
  if (!(s.pair(antik, antik) > 0)) {
    throw ComputationError("(-K)^2 must be positive for a log Fano profile");
  }
  for (std::size_t i = 0; i < s.negative_curves.size(); ++i) {
    if (!(s.pair(antik, s.negative_curves[i]) > 0)) {
      throw ComputationError("-K fails to be positive against listed curve " + std::to_string(i));
    }
  }

  std::vector<Chamber> chambers;
  Rat t_lo(0);
  while (true) {
    // Find the support governing (t_lo, t_lo + delta] by honest sample
    // decompositions, shrinking delta past any wall or threshold we may
    // have jumped over.
    SymbolicChamber sc;
    Rat t_sample;
    bool found = false;
    Rat delta(1);
    for (int attempt = 0; attempt < 200 && !found; ++attempt, delta /= 2) {
      Rat t_s = t_lo + delta;
      std::set<std::size_t> supp;
      try {
        ZariskiResult z = zariski_decompose(s, ray_class(s, t_s));
        for (const auto& [idx, m] : z.negative) supp.insert(idx);
      } catch (const ComputationError&) {
        continue;  // past the threshold; come closer
      }
      SymbolicChamber cand = solve_chamber(s, supp);
      if (!(cand.vol.eval(t_s) > 0)) continue;
      if (!constraints_hold_at(cand, t_lo) || !constraints_hold_at(cand, t_s)) continue;
      sc = std::move(cand);
      t_sample = t_s;
      found = true;
    }
    if (!found) {
      throw ComputationError("chamber search failed to stabilize near t = " + rat_str(t_lo));
    }

    // The chamber extends until a decreasing constraint hits zero...
    std::optional<Rat> wall;
    for (const Poly& f : sc.constraints) {
      if (f.degree() == 1 && f.coeff(1) < 0) {
        Rat root = -f.coeff(0) / f.coeff(1);
        if (root > t_lo && (!wall || root < *wall)) wall = root;
      }
    }
    // ...or until the volume polynomial vanishes (the pseudoeffective
    // threshold, possibly irrational).
    std::optional<AlgReal> vanish;
    if (sc.vol.degree() >= 1) {
      Rat bound = cauchy_root_bound(sc.vol);
      if (bound <= t_sample) bound = t_sample + 1;
      std::vector<AlgReal> roots = isolate_roots(sc.vol, t_sample, bound);
      if (!roots.empty()) vanish = roots.front();
    }

    bool last;
    AlgReal hi;
    if (vanish && (!wall || vanish->compare(*wall) <= 0)) {
      last = true;
      hi = *vanish;
    } else if (wall) {
      last = false;
      hi = AlgReal(*wall);
    } else {
      throw ComputationError("volume never vanishes along the ray; data inconsistent");
    }

    chambers.push_back(Chamber{t_lo, hi, sc.vol, sc.s, sc.kappa, contracted_labels(s, sc.supp)});
    if (last) break;
    t_lo = *wall;
    if (chambers.size() > s.negative_curves.size() * s.negative_curves.size() + 4) {
      throw ComputationError("chamber walk exceeded the expected wall count");
    }
  }
  return assemble_profile(2, std::move(chambers));
}

VolumeProfile assemble_profile(int dimension, std::vector<Chamber> chambers) {
  if (chambers.empty()) throw ComputationError("profile with no chambers");
  if (chambers.front().lo != 0) throw ComputationError("profile must start at t = 0");

  std::vector<AlgReal> breaks;
  std::vector<Poly> pieces;
  breaks.emplace_back(chambers.front().lo);
  for (std::size_t i = 0; i < chambers.size(); ++i) {
    const Chamber& c = chambers[i];
    if (i + 1 < chambers.size()) {
      if (!c.hi.is_rational() || c.hi.rational() != chambers[i + 1].lo) {
        throw ComputationError("chambers are not contiguous");
      }
    }
    breaks.push_back(c.hi);
    pieces.push_back(c.vol);
  }

  PiecewisePoly volume(breaks, pieces, /*extend_zero=*/true);
  if (!volume.is_continuous()) throw ComputationError("volume profile is discontinuous");

  AlgReal tau = chambers.back().hi;
  if (eval_at(chambers.back().vol, tau).sign() != Sign::zero) {
    throw ComputationError("volume does not vanish at the profile end");
  }

  for (const Chamber& c : chambers) {
    // dV/dt = -n*s in every chamber; fails only on inconsistent data.
    Poly expect = Rat(-dimension) * c.s;
    if (!(c.vol.derivative() == expect)) {
      throw ComputationError("volume derivative disagrees with boundary pairing data");
    }
    if (c.s.eval(c.lo) < 0 || eval_at(c.s, c.hi).sign() == Sign::negative) {
      throw ComputationError("volume profile fails to be non-increasing; curve list incomplete?");
    }
  }
  for (std::size_t i = 0; i + 1 < chambers.size(); ++i) {
    if (chambers[i].contracted == chambers[i + 1].contracted) {
      throw ComputationError("adjacent chambers share a contracted set");
    }
  }

  return VolumeProfile{dimension, std::move(chambers), std::move(tau), std::move(volume)};
}

std::pair<AlgReal, AlgReal> thresholds(const VolumeProfile& p, const Rat& beta) {
  if (beta < 0 || beta > 1) throw ValidationError("beta must lie in [0, 1]");
  return {p.tau, p.tau.affine(-(1 - beta), Rat(1))};
}

Rat GeographyBundle::tau_beta() const {
  if (segments.empty()) throw ComputationError("empty bundle has no threshold");
  return segments.back().hi;
}

void GeographyBundle::validate() const {
  if (dimension < 1) throw ValidationError("bundle: dimension must be at least 1");
  if (segments.empty()) throw ValidationError("bundle: no segments");
  if (segments.front().lo != 0) throw ValidationError("bundle: segments must start at x = 0");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!(segments[i].lo < segments[i].hi)) {
      throw ValidationError("bundle: segment " + std::to_string(i) + " has empty range");
    }
    if (i + 1 < segments.size() && segments[i].hi != segments[i + 1].lo) {
      throw ValidationError("bundle: segments " + std::to_string(i) + " and " +
                            std::to_string(i + 1) + " are not contiguous");
    }
  }
  for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
    if (segments[i].vol.eval(segments[i].hi) != segments[i + 1].vol.eval(segments[i].hi)) {
      throw ValidationError("bundle: volume is discontinuous at x = " + rat_str(segments[i].hi));
    }
  }
  if (segments.back().vol.eval(segments.back().hi) != 0) {
    throw ValidationError("bundle: volume must vanish at the final breakpoint");
  }
}

GeographyBundle bundle_from_profile(const VolumeProfile& p, const Rat& beta) {
  if (beta < 0 || beta > 1) throw ValidationError("beta must lie in [0, 1]");
  const Rat u = 1 - beta;
  if (p.tau.compare(u) <= 0) {
    throw ComputationError("no positive-volume range at this beta (1-beta >= tau)");
  }
  GeographyBundle out;
  out.dimension = p.dimension;
  for (const Chamber& c : p.chambers) {
    if (!c.hi.is_rational()) {
      throw ComputationError("bundle export needs rational walls; threshold is irrational");
    }
    Rat hi = c.hi.rational();
    if (hi <= u) continue;
    Rat lo = std::max(c.lo, u);
    GeographySegment seg;
    seg.lo = lo - u;
    seg.hi = hi - u;
    seg.vol = c.vol.compose_affine(u, Rat(1));
    seg.s = c.s.compose_affine(u, Rat(1));
    if (c.kappa) seg.kappa = c.kappa->compose_affine(u, Rat(1));
    seg.contracted = c.contracted;
    out.segments.push_back(std::move(seg));
  }
  out.validate();
  return out;
}

}  // namespace etafano
