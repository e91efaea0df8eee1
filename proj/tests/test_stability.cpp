#include "doctest.h"

#include <string>
#include <vector>

#include "testutil.hpp"

#include "etafano/errors.hpp"
#include "etafano/stability.hpp"

using namespace etafano;
using namespace etafano::testing;

namespace {
Poly P(std::vector<Rat> c) { return Poly(std::move(c)); }
}  // namespace

TEST_CASE("invariant on the degree-7 del Pezzo at beta = 1/2") {
  VolumeProfile p = build_profile(blp_f1_surface());
  EtaResult r = eta(p, Rat(1, 2));
  CHECK(r.value == Rat(-5, 6));
  CHECK(r.eta_plus == Rat(1, 2));
  CHECK(r.eta_minus == Rat(4, 3));
  CHECK(r.sign == Sign::negative);
  CHECK(r.verdict == Verdict::not_log_k_semistable);
  CHECK(std::string(verdict_text(r.verdict)) == "NOT_LOG_K_SEMISTABLE");
}

TEST_CASE("invariant as an exact polynomial in beta") {
  VolumeProfile p = build_profile(blp_f1_surface());
  auto sym = eta_in_beta(p);
  REQUIRE(sym.has_value());
  REQUIRE(sym->piece_count() == 1);
  CHECK(sym->piece(0) == P({Rat(-4, 3), Rat(0), Rat(2)}));
  CHECK(sym->domain_lo() == Rat(0));
  CHECK(sym->domain_hi() == Rat(1));

  auto plus = eta_plus_in_beta(p);
  REQUIRE(plus.has_value());
  CHECK(plus->piece(0) == P({Rat(0), Rat(0), Rat(2)}));
  CHECK(eta_minus_value(p) == Rat(4, 3));

  // Pointwise agreement between the symbolic polynomial and direct
  // evaluation, on and off the breakpoints.
  for (const Rat& beta : {Rat(0), Rat(1, 7), Rat(1, 3), Rat(1, 2), Rat(9, 10), Rat(1)}) {
    EtaResult r = eta(p, beta);
    CHECK(r.value == sym->eval(beta));
    REQUIRE(r.eta_as_poly_in_beta.has_value());
    CHECK(r.eta_as_poly_in_beta->eval(beta) == sym->eval(beta));
  }
}

TEST_CASE("plus and minus parts recombine") {
  for (const SurfaceData& s :
       {blp_f1_surface(), p2_surface(), p1xp1_surface(), cubic_surface()}) {
    VolumeProfile p = build_profile(s);
    for (const Rat& beta : {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)}) {
      EtaResult r = eta(p, beta);
      CHECK(alg_sub(r.eta_plus, r.eta_minus) == r.value);
      CHECK(r.verdict == verdict_from_sign(r.sign));
    }
  }
}

TEST_CASE("thresholds at most one mean no negative tail") {
  // tau = 1 for the cubic pair, so the minus part vanishes identically.
  VolumeProfile p = build_profile(cubic_surface());
  CHECK(eta_minus_value(p) == Rat(0));
  EtaResult r = eta(p, Rat(1, 2));
  CHECK(r.eta_minus == Rat(0));
  CHECK(r.value == Rat(1, 4));
  CHECK(r.sign == Sign::positive);
  CHECK(r.verdict == Verdict::necessary_condition_passed_undecided);
  // At beta = 0 the starting class sits exactly at the threshold.
  EtaResult zero = eta(p, Rat(0));
  CHECK(zero.value == Rat(0));
  CHECK(zero.verdict == Verdict::not_log_k_stable_semistability_undecided);
}

TEST_CASE("invariant with an irrational threshold stays exact") {
  VolumeProfile p = build_profile(irrational_tau_surface());
  CHECK(!eta_in_beta(p).has_value());
  EtaResult r = eta(p, Rat(1, 2));
  // eta = (93 - 40 sqrt(5)) / 6, the small root of 36x^2 - 1116x + 649.
  CHECK(r.value == AlgReal::root_of(P({Rat(649), Rat(-1116), Rat(36)}), Rat(0), Rat(1)));
  CHECK(r.sign == Sign::positive);
  AlgReal minus = eta_minus_value(p);
  CHECK(!minus.is_rational());
  CHECK(minus.sign() == Sign::positive);
}

TEST_CASE("closed form matches the engine on proportional pairs") {
  struct Config {
    SurfaceData surface;
    Rat l;
  };
  std::vector<Config> configs = {{p2_surface(), Rat(3)}, {p1xp1_surface(), Rat(2)},
                                 {cubic_surface(), Rat(1)}};
  for (const Config& cfg : configs) {
    VolumeProfile p = build_profile(cfg.surface);
    for (int i = 0; i <= 10; ++i) {
      Rat beta(i, 10);
      Rat vol_at = p.volume.eval(Rat(1) - beta);
      Rat closed = eta_closed_form(2, cfg.l, vol_at, beta);
      EtaResult r = eta(p, beta);
      CHECK(r.value == closed);
    }
    // Sign change exactly at (l-1)/n.
    Rat flip = (cfg.l - 1) / 2;
    if (flip > 0) {
      CHECK(eta(p, flip).sign == Sign::zero);
      CHECK(eta(p, flip - Rat(1, 100)).sign == Sign::negative);
    }
    if (flip < 1) {
      CHECK(eta(p, flip + Rat(1, 100)).sign == Sign::positive);
    }
  }
  CHECK_THROWS_AS(eta_closed_form(0, Rat(1), Rat(1), Rat(1, 2)), ValidationError);
  CHECK_THROWS_AS(eta_closed_form(2, Rat(4), Rat(1), Rat(1, 2)), ValidationError);
}

TEST_CASE("destabilizing set on the degree-7 del Pezzo is one exact interval") {
  VolumeProfile p = build_profile(blp_f1_surface());
  DestabilizingSet d = destabilizing_betas(p);
  CHECK(d.exact);
  REQUIRE(d.intervals.size() == 1);
  const BetaInterval& iv = d.intervals[0];
  CHECK(iv.lo == Rat(0));
  CHECK(iv.lo_open);
  CHECK(iv.hi == AlgReal::root_of(P({Rat(-2, 3), Rat(0), Rat(1)}), Rat(0), Rat(1)));
  CHECK(iv.hi_open);
  auto enclosure = iv.hi.refined(Rat(1, 100000)).interval();
  CHECK(enclosure.first > Rat(1631, 2000));
  CHECK(enclosure.second < Rat(327, 400));
}

TEST_CASE("destabilizing sets of the rank-one pairs") {
  VolumeProfile p2 = build_profile(p2_surface());
  DestabilizingSet d2 = destabilizing_betas(p2);
  CHECK(d2.exact);
  REQUIRE(d2.intervals.size() == 1);
  CHECK(d2.intervals[0].lo == Rat(0));
  CHECK(d2.intervals[0].hi == Rat(1));
  // eta vanishes at 1 itself, so the interval stays open there.
  CHECK(d2.intervals[0].hi_open);

  VolumeProfile quadric = build_profile(p1xp1_surface());
  DestabilizingSet dq = destabilizing_betas(quadric);
  REQUIRE(dq.intervals.size() == 1);
  CHECK(dq.intervals[0].hi == Rat(1, 2));
  CHECK(dq.intervals[0].hi_open);

  VolumeProfile cubic = build_profile(cubic_surface());
  CHECK(destabilizing_betas(cubic).intervals.empty());
}

TEST_CASE("grid fallback certifies negative runs") {
  VolumeProfile p = build_profile(irrational_tau_surface());
  DestabilizingSet d = destabilizing_betas(p, 64);
  CHECK(!d.exact);
  CHECK(d.grid_points == 64);
  REQUIRE(!d.intervals.empty());
  const BetaInterval& iv = d.intervals[0];
  // Certified-negative endpoints: the invariant is truly negative there.
  REQUIRE(iv.lo.is_rational());
  REQUIRE(iv.hi.is_rational());
  CHECK(eta(p, iv.lo.rational()).sign == Sign::negative);
  CHECK(eta(p, iv.hi.rational()).sign == Sign::negative);
  // And positive somewhere past the run.
  CHECK(eta(p, Rat(1, 2)).sign == Sign::positive);
}

TEST_CASE("default scaling clears the shifted class denominators") {
  SurfaceData s = blp_f1_surface();
  CHECK(default_r(s, Rat(1, 2)) == 2);
  CHECK(default_r(s, Rat(1)) == 1);
  CHECK(default_r(s, Rat(1, 3)) == 3);
  CHECK(default_r(s, Rat(2, 3)) == 3);
}

TEST_CASE("expansion inputs agree between surface and bundle data") {
  SurfaceData s = blp_f1_surface();
  VolumeProfile p = build_profile(s);
  for (const Rat& beta : {Rat(1, 4), Rat(1, 2), Rat(3, 4)}) {
    DFInputs a = df_inputs_from_surface(s, beta);
    DFInputs b = df_inputs_from_bundle(bundle_from_profile(p, beta), beta);
    CHECK(a.self == b.self);
    CHECK(a.with_boundary == b.with_boundary);
    CHECK(a.with_anti_k == b.with_anti_k);
  }
  DFInputs half = df_inputs_from_surface(s, Rat(1, 2));
  CHECK(half.self == 5);
  CHECK(half.with_boundary == 2);
  CHECK(half.with_anti_k == 6);
}

TEST_CASE("expansion coefficients on the degree-7 del Pezzo") {
  SurfaceData s = blp_f1_surface();
  VolumeProfile p = build_profile(s);
  GeographyBundle b = bundle_from_profile(p, Rat(1, 2));
  DFReport rep = df_invariant(b, df_inputs_from_surface(s, Rat(1, 2)), Rat(1, 2), 2);
  CHECK(rep.r == 2);
  CHECK(rep.tau_beta == Rat(3, 2));
  CHECK(rep.l_self == 20);
  CHECK(rep.a0 == 10);
  CHECK(rep.a1 == 6);
  CHECK(rep.a0_tilde == 4);
  CHECK(rep.v0 == Rat(40, 3));
  CHECK(rep.v1 == Rat(15, 2));
  CHECK(rep.b0 == Rat(-50, 3));
  CHECK(rep.b1 == Rat(-21, 2));
  CHECK(rep.b0_tilde == -12);
  CHECK(rep.df_value == Rat(-50, 3));
  CHECK(rep.eta_beta == Rat(-5, 6));
  CHECK(rep.proportionality_checked);

  // Doubling r rescales the expansion but keeps the sign and the
  // proportionality identity.
  DFReport rep4 = df_invariant(b, df_inputs_from_surface(s, Rat(1, 2)), Rat(1, 2), 4);
  CHECK(rep4.df_value == Rat(-800, 3));
  CHECK(rep4.proportionality_checked);
  CHECK(rat_sign(rep4.df_value) == rat_sign(rep.df_value));
}

TEST_CASE("expansion coefficients on the cubic pair") {
  SurfaceData s = cubic_surface();
  VolumeProfile p = build_profile(s);
  GeographyBundle b = bundle_from_profile(p, Rat(1, 2));
  DFReport rep = df_invariant(b, df_inputs_from_surface(s, Rat(1, 2)), Rat(1, 2), 2);
  CHECK(rep.df_value == Rat(3, 4));
  CHECK(rep.eta_beta == Rat(1, 4));
  CHECK(rep.proportionality_checked);
  CHECK(rat_sign(rep.df_value) == 1);
}

TEST_CASE("df computation requires kappa data") {
  VolumeProfile p = build_profile(blp_f1_surface());
  GeographyBundle b = bundle_from_profile(p, Rat(1, 2));
  for (GeographySegment& seg : b.segments) seg.kappa.reset();
  CHECK_THROWS_AS(df_invariant(b, DFInputs{Rat(5), Rat(2), Rat(6)}, Rat(1, 2), 2),
                  ComputationError);
}

TEST_CASE("bundle evaluation reproduces the profile invariant") {
  VolumeProfile p = build_profile(blp_f1_surface());
  for (const Rat& beta : {Rat(1, 4), Rat(1, 2), Rat(3, 4)}) {
    GeographyBundle b = bundle_from_profile(p, beta);
    EtaResult from_bundle = eta_from_bundle(b, beta);
    EtaResult direct = eta(p, beta);
    CHECK(from_bundle.value == direct.value);
    CHECK(from_bundle.eta_plus == direct.eta_plus);
    CHECK(from_bundle.eta_minus == direct.eta_minus);
    CHECK(from_bundle.verdict == direct.verdict);
  }
}

TEST_CASE("partial-integration identity holds on walked and random bundles") {
  VolumeProfile p = build_profile(blp_f1_surface());
  GeographyBundle b = bundle_from_profile(p, Rat(1, 2));
  LemmaCheck lc = lemma_vol_check(b, Rat(1, 2));
  CHECK(lc.equal);
  CHECK(lc.integral_form == Rat(-5, 6));
  CHECK(lc.weighted_form == Rat(-5, 6));

  std::mt19937 gen = seeded_rng(2);
  for (int trial = 0; trial < 25; ++trial) {
    GeographyBundle rb = random_bundle(gen);
    Rat beta = random_rat(gen, 0, 5, 5);
    if (beta > 1) beta = Rat(1);
    LemmaCheck check = lemma_vol_check(rb, beta);
    CHECK(check.equal);
    CHECK(check.integral_form == check.weighted_form);
  }
}
