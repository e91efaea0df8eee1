#include "etafano/io.hpp"

#include <future>
#include <numeric>
#include <sstream>
#include <utility>

#include "etafano/errors.hpp"

namespace etafano {

namespace {

const char* kRCaveat =
    "the sufficient-divisibility hypothesis behind the weight expansion is assumed "
    "for this r, not verified";
const char* kCurveListCaveat =
    "nefness, pseudoeffectivity, and all downstream numbers are relative to the "
    "supplied negative-curve list; a missing curve invalidates them";
const char* kBundleTrustCaveat =
    "bundle input: polynomial data is taken as given, only structural consistency "
    "was checked";

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// ---- JSON access helpers -------------------------------------------------

const Json& need(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(path + "." + key + ": required");
  return *it;
}

std::string need_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError(path + ": expected a string");
  return j.get<std::string>();
}

long need_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError(path + ": expected an integer");
  return j.get<long>();
}

std::vector<Rat> rat_vec(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path + ": expected an array of rationals");
  std::vector<Rat> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(rat_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::string> string_vec(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path + ": expected an array of strings");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(need_string(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// ---- document parsing ----------------------------------------------------

void parse_surface(const Json& s, InputDocument& doc) {
  SurfaceData sd;
  sd.lattice.basis_labels = string_vec(need(s, "basis", "surface"), "surface.basis");
  const Json& gram = need(s, "gram", "surface");
  if (!gram.is_array()) throw ValidationError("surface.gram: expected a matrix");
  for (std::size_t i = 0; i < gram.size(); ++i) {
    sd.lattice.gram.push_back(rat_vec(gram[i], "surface.gram[" + std::to_string(i) + "]"));
  }
  sd.canonical.coeffs = rat_vec(need(s, "canonical", "surface"), "surface.canonical");
  sd.boundary.coeffs = rat_vec(need(s, "boundary", "surface"), "surface.boundary");
  const Json& curves = need(s, "negative_curves", "surface");
  if (!curves.is_array()) throw ValidationError("surface.negative_curves: expected an array");
  for (std::size_t i = 0; i < curves.size(); ++i) {
    std::string path = "surface.negative_curves[" + std::to_string(i) + "]";
    const Json& c = curves[i];
    if (c.is_array()) {
      sd.negative_curves.push_back(DivisorClass{rat_vec(c, path)});
      sd.curve_labels.push_back("C" + std::to_string(i));
    } else if (c.is_object()) {
      sd.curve_labels.push_back(need_string(need(c, "label", path), path + ".label"));
      sd.negative_curves.push_back(DivisorClass{rat_vec(need(c, "coeffs", path), path + ".coeffs")});
    } else {
      throw ValidationError(path + ": expected coefficient array or {label, coeffs}");
    }
  }
  try {
    sd.validate();
  } catch (const ValidationError& e) {
    doc.diagnostics.push_back(std::string("surface: ") + e.what());
  }
  doc.surface = std::move(sd);
}

void parse_toric(const Json& t, InputDocument& doc) {
  const Json& rays = need(t, "rays", "toric");
  if (!rays.is_array()) throw ValidationError("toric.rays: expected an array of [x, y] pairs");
  std::vector<RayVec> rv;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    std::string path = "toric.rays[" + std::to_string(i) + "]";
    if (!rays[i].is_array() || rays[i].size() != 2) {
      throw ValidationError(path + ": expected [x, y]");
    }
    rv.push_back(RayVec{need_integer(rays[i][0], path + "[0]"),
                        need_integer(rays[i][1], path + "[1]")});
  }
  std::optional<RayDivisor> rc;
  std::optional<std::vector<Rat>> bc;
  if (t.contains("boundary_ray_coeffs")) {
    rc = rat_vec(t["boundary_ray_coeffs"], "toric.boundary_ray_coeffs");
  }
  if (t.contains("boundary_class")) {
    bc = rat_vec(t["boundary_class"], "toric.boundary_class");
  }
  if (!rc && !bc) {
    throw ValidationError("toric: boundary_ray_coeffs or boundary_class required");
  }

  try {
    doc.fan = ToricSurface::from_rays(std::move(rv));
  } catch (const ValidationError& e) {
    doc.diagnostics.push_back(std::string("toric: ") + e.what());
    return;
  }
  try {
    DivisorClass boundary;
    if (rc) {
      boundary = doc.fan->to_class(*rc);
      if (bc && !(boundary == DivisorClass{*bc})) {
        doc.diagnostics.push_back("toric: boundary_ray_coeffs and boundary_class disagree");
      }
    } else {
      boundary.coeffs = *bc;
    }
    doc.surface = doc.fan->to_surface(boundary);
    doc.boundary_rays = std::move(rc);
  } catch (const ValidationError& e) {
    doc.diagnostics.push_back(std::string("toric: ") + e.what());
  }
}

void parse_bundle(const Json& b, InputDocument& doc) {
  GeographyBundle gb;
  gb.dimension = static_cast<int>(need_integer(need(b, "n", "bundle"), "bundle.n"));
  const Json& segs = need(b, "segments", "bundle");
  if (!segs.is_array()) throw ValidationError("bundle.segments: expected an array");
  for (std::size_t i = 0; i < segs.size(); ++i) {
    std::string path = "bundle.segments[" + std::to_string(i) + "]";
    const Json& sj = segs[i];
    GeographySegment seg;
    seg.lo = rat_from_json(need(sj, "lo", path), path + ".lo");
    seg.hi = rat_from_json(need(sj, "hi", path), path + ".hi");
    seg.vol = poly_from_json(need(sj, "vol", path), path + ".vol");
    seg.s = poly_from_json(need(sj, "s", path), path + ".s");
    if (sj.contains("kappa")) seg.kappa = poly_from_json(sj["kappa"], path + ".kappa");
    if (sj.contains("contracted")) seg.contracted = string_vec(sj["contracted"], path + ".contracted");
    gb.segments.push_back(std::move(seg));
  }
  try {
    gb.validate();
  } catch (const ValidationError& e) {
    doc.diagnostics.push_back(std::string("bundle: ") + e.what());
  }
  doc.bundle = std::move(gb);
  if (b.contains("eta_in_beta")) {
    const Json& poly = b["eta_in_beta"];
    if (!poly.is_object() || !poly.contains("breakpoints") || !poly.contains("pieces")) {
      throw ValidationError("bundle.eta_in_beta: expected {breakpoints, pieces}");
    }
    doc.bundle_eta_polynomial = poly;
  }
}

}  // namespace

std::vector<Rat> parse_scan_range(const std::string& range, const std::string& path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= range.size(); ++i) {
    if (i == range.size() || range[i] == ':') {
      parts.push_back(range.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 3) throw ValidationError(path + ": expected \"lo:hi:step\"");
  Rat lo, hi, step;
  try {
    lo = rat_parse(parts[0]);
    hi = rat_parse(parts[1]);
    step = rat_parse(parts[2]);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  if (step <= 0) throw ValidationError(path + ": step must be positive");
  if (lo > hi) throw ValidationError(path + ": lo exceeds hi");
  std::vector<Rat> out;
  for (Rat b = lo; b <= hi; b += step) {
    out.push_back(b);
    if (out.size() > 4096) throw ValidationError(path + ": more than 4096 scan points");
  }
  return out;
}

namespace {

void parse_options(const Json& o, InputDocument& doc) {
  if (!o.is_object()) throw ValidationError("options: expected an object");
  if (o.contains("beta")) doc.options.beta = rat_from_json(o["beta"], "options.beta");
  if (o.contains("beta_scan")) {
    const Json& sc = o["beta_scan"];
    if (sc.is_string()) {
      doc.options.beta_scan = parse_scan_range(sc.get<std::string>(), "options.beta_scan");
    } else {
      doc.options.beta_scan = rat_vec(sc, "options.beta_scan");
    }
  }
  if (o.contains("r")) {
    const Json& r = o["r"];
    if (r.is_string() && r.get<std::string>() == "auto") {
      // explicit request for the computed default
    } else {
      long v = need_integer(r, "options.r");
      if (v < 1) {
        doc.diagnostics.push_back("options.r: must be a positive integer");
      } else {
        doc.options.r = static_cast<unsigned>(v);
      }
    }
  }
  if (o.contains("verify_toric")) {
    doc.options.verify_toric = need_integer(o["verify_toric"], "options.verify_toric");
  }
}

}  // namespace

// ---- serialization -------------------------------------------------------

Json rat_json(const Rat& v) { return Json(rat_str(v)); }

Json poly_json(const Poly& p) {
  Json out = Json::array();
  if (p.is_zero()) {
    out.push_back("0");
    return out;
  }
  for (const Rat& c : p.coeffs()) out.push_back(rat_str(c));
  return out;
}

Json algreal_json(const AlgReal& v) {
  // Canonical integer scaling of the defining polynomial: clear
  // denominators, divide out the content, make the leading coefficient
  // positive. Keeps serialized output independent of internal scaling.
  Poly p = v.defining_poly();
  Int lcm(1), gcd(0);
  for (const Rat& c : p.coeffs()) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  std::vector<Rat> scaled;
  for (const Rat& c : p.coeffs()) {
    Rat sc = c * Rat(lcm);
    scaled.push_back(sc);
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), sc.get_num().get_mpz_t());
  }
  if (gcd == 0) gcd = 1;
  if (scaled.back() < 0) gcd = -gcd;
  Json poly = Json::array();
  for (Rat& c : scaled) poly.push_back(rat_str(c / Rat(gcd)));

  AlgReal tight = v.refined(Rat(1, 1000000));
  auto [lo, hi] = tight.interval();
  Json out = Json::object();
  out["defining_poly"] = std::move(poly);
  out["interval"] = Json::array({rat_str(lo), rat_str(hi)});
  out["decimal_hint"] = v.decimal_hint();
  return out;
}

Rat rat_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return rat_parse(j.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return rat_parse(std::to_string(j.get<long long>()));
  throw ValidationError(path + ": expected a rational as \"p/q\" string or integer");
}

Poly poly_from_json(const Json& j, const std::string& path) {
  return Poly(rat_vec(j, path));
}

// ---- parse / validate ----------------------------------------------------

InputDocument parse_document(const Json& j) {
  if (!j.is_object()) throw ValidationError("document: expected a JSON object");
  int blocks = int(j.contains("surface")) + int(j.contains("toric")) + int(j.contains("bundle"));
  if (blocks != 1) {
    throw ValidationError("document: exactly one of surface, toric, bundle required");
  }
  InputDocument doc;
  if (j.contains("surface")) {
    doc.kind = InputKind::surface;
    parse_surface(j["surface"], doc);
  } else if (j.contains("toric")) {
    doc.kind = InputKind::toric;
    parse_toric(j["toric"], doc);
  } else {
    doc.kind = InputKind::bundle;
    parse_bundle(j["bundle"], doc);
  }
  if (j.contains("options")) parse_options(j["options"], doc);
  return doc;
}

InputDocument parse_document_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("input is not valid JSON: ") + e.what());
  }
  return parse_document(j);
}

std::vector<std::string> validate_document(const InputDocument& doc) {
  std::vector<std::string> out = doc.diagnostics;
  const RunOptions& o = doc.options;

  bool beta_ok = false;
  if (!o.beta) {
    out.push_back("options.beta: required (set it in the document or with --beta)");
  } else if (*o.beta < 0 || *o.beta > 1) {
    out.push_back("options.beta: must lie in [0, 1], got " + rat_str(*o.beta));
  } else {
    beta_ok = true;
  }
  for (const Rat& b : o.beta_scan) {
    if (b < 0 || b > 1) {
      out.push_back("options.beta_scan: entry " + rat_str(b) + " outside [0, 1]");
    }
  }

  if (doc.kind == InputKind::bundle) {
    if (!o.beta_scan.empty()) {
      out.push_back("options.beta_scan: needs a surface or toric input (bundle data is single-beta)");
    }
    if (o.verify_toric) {
      out.push_back("options.verify_toric: needs a toric input");
    }
    return out;
  }

  if (doc.kind == InputKind::surface && o.verify_toric) {
    out.push_back("options.verify_toric: needs a toric input");
  }
  if (doc.kind == InputKind::toric && o.verify_toric) {
    if (*o.verify_toric < 20) {
      out.push_back("options.verify_toric: need a bound of at least 20 for a stable fit");
    }
    if (!doc.boundary_rays) {
      out.push_back(
          "options.verify_toric: needs boundary_ray_coeffs (a class alone does not pin "
          "the torus-invariant representative)");
    }
  }

  // Deeper geometry checks only once the block itself parsed cleanly.
  if (!doc.diagnostics.empty() || !doc.surface) return out;
  const SurfaceData& s = *doc.surface;
  if (s.boundary.is_zero()) {
    out.push_back("boundary: must be a nonzero divisor class");
  } else if (beta_ok) {
    DivisorClass m = s.anti_canonical() - (1 - *o.beta) * s.boundary;
    if (!(s.pair(m, m) > 0)) {
      out.push_back("the class -K - (1-beta)D has non-positive self-intersection at beta = " +
                    rat_str(*o.beta));
    }
    for (std::size_t i = 0; i < s.negative_curves.size(); ++i) {
      if (!(s.pair(m, s.negative_curves[i]) > 0)) {
        out.push_back("the class -K - (1-beta)D is not positive against " + s.curve_labels[i] +
                      " at beta = " + rat_str(*o.beta));
      }
    }
  }
  return out;
}

// ---- report assembly -----------------------------------------------------

namespace {

Json piecewise_json(const PiecewisePoly& f) {
  Json out = Json::object();
  Json breaks = Json::array();
  for (const AlgReal& b : f.breakpoints()) breaks.push_back(rat_str(b.rational()));
  Json pieces = Json::array();
  for (std::size_t i = 0; i < f.piece_count(); ++i) pieces.push_back(poly_json(f.piece(i)));
  out["breakpoints"] = std::move(breaks);
  out["pieces"] = std::move(pieces);
  return out;
}

Json eta_json(const EtaResult& er, const Json& transported_polynomial) {
  Json e = Json::object();
  e["beta"] = rat_json(er.beta);
  e["value"] = algreal_json(er.value);
  e["eta_plus"] = algreal_json(er.eta_plus);
  e["eta_minus"] = algreal_json(er.eta_minus);
  e["sign"] = static_cast<int>(er.sign);
  e["verdict"] = verdict_text(er.verdict);
  if (er.eta_as_poly_in_beta) {
    e["beta_polynomial"] = piecewise_json(*er.eta_as_poly_in_beta);
  } else if (!transported_polynomial.is_null()) {
    e["beta_polynomial"] = transported_polynomial;
  }
  return e;
}

Json df_json(const DFReport& rep) {
  Json d = Json::object();
  d["dimension"] = rep.dimension;
  d["r"] = rep.r;
  d["beta"] = rat_json(rep.beta);
  d["tau_beta"] = rat_json(rep.tau_beta);
  d["l_self"] = rat_json(rep.l_self);
  d["a0"] = rat_json(rep.a0);
  d["a1"] = rat_json(rep.a1);
  d["a0_tilde"] = rat_json(rep.a0_tilde);
  d["v0"] = rat_json(rep.v0);
  d["v1"] = rat_json(rep.v1);
  d["b0"] = rat_json(rep.b0);
  d["b1"] = rat_json(rep.b1);
  d["b0_tilde"] = rat_json(rep.b0_tilde);
  d["df_value"] = rat_json(rep.df_value);
  d["eta_beta"] = rat_json(rep.eta_beta);
  d["proportionality_checked"] = rep.proportionality_checked;
  d["r_caveat"] = kRCaveat;
  return d;
}

Json bundle_json(const GeographyBundle& b) {
  Json out = Json::object();
  out["n"] = b.dimension;
  out["tau_beta"] = rat_json(b.tau_beta());
  Json segs = Json::array();
  for (const GeographySegment& seg : b.segments) {
    Json sj = Json::object();
    sj["lo"] = rat_json(seg.lo);
    sj["hi"] = rat_json(seg.hi);
    sj["vol"] = poly_json(seg.vol);
    sj["s"] = poly_json(seg.s);
    if (seg.kappa) sj["kappa"] = poly_json(*seg.kappa);
    if (!seg.contracted.empty()) {
      sj["contracted"] = Json(seg.contracted);
    }
    segs.push_back(std::move(sj));
  }
  out["segments"] = std::move(segs);
  return out;
}

Json profile_json(const VolumeProfile& p, const Rat& beta) {
  Json out = Json::object();
  out["dimension"] = p.dimension;
  out["rational_walls"] = p.rational_walls();
  auto [tau, tau_beta] = thresholds(p, beta);
  out["tau"] = algreal_json(tau);
  out["tau_beta"] = algreal_json(tau_beta);
  Json chambers = Json::array();
  for (const Chamber& c : p.chambers) {
    Json cj = Json::object();
    cj["lo"] = rat_json(c.lo);
    cj["hi"] = algreal_json(c.hi);
    cj["vol"] = poly_json(c.vol);
    cj["s"] = poly_json(c.s);
    if (c.kappa) cj["kappa"] = poly_json(*c.kappa);
    cj["contracted"] = Json(c.contracted);
    chambers.push_back(std::move(cj));
  }
  out["chambers"] = std::move(chambers);
  return out;
}

Json destabilizing_json(const DestabilizingSet& ds) {
  Json out = Json::object();
  out["exact"] = ds.exact;
  out["grid_points"] = ds.grid_points;
  Json ivs = Json::array();
  for (const BetaInterval& iv : ds.intervals) {
    Json ij = Json::object();
    ij["lo"] = algreal_json(iv.lo);
    ij["lo_open"] = iv.lo_open;
    ij["hi"] = algreal_json(iv.hi);
    ij["hi_open"] = iv.hi_open;
    ivs.push_back(std::move(ij));
  }
  out["intervals"] = std::move(ivs);
  return out;
}

Json lemma_json(const LemmaCheck& lc) {
  Json out = Json::object();
  out["integral_form"] = rat_json(lc.integral_form);
  out["weighted_form"] = rat_json(lc.weighted_form);
  out["equal"] = lc.equal;
  return out;
}

Json scan_json(const VolumeProfile& p, const std::vector<Rat>& betas) {
  std::vector<std::future<EtaResult>> futures;
  futures.reserve(betas.size());
  for (const Rat& b : betas) {
    futures.push_back(std::async(std::launch::async, [&p, b] { return eta(p, b); }));
  }
  Json out = Json::array();
  for (std::future<EtaResult>& f : futures) {
    EtaResult er = f.get();
    Json row = Json::object();
    row["beta"] = rat_json(er.beta);
    row["value"] = algreal_json(er.value);
    row["sign"] = static_cast<int>(er.sign);
    row["verdict"] = verdict_text(er.verdict);
    out.push_back(std::move(row));
  }
  return out;
}

Rat relative_error(const Rat& fit, const Rat& exact) {
  Rat err = fit - exact;
  if (err < 0) err = -err;
  Rat mag = exact < 0 ? -exact : exact;
  return mag == 0 ? err : Rat(err / mag);
}

Json toric_verification(const InputDocument& doc, const GeographyBundle& gb, const DFReport& rep,
                        const Rat& beta, unsigned r, long kmax) {
  const ToricSurface& fan = *doc.fan;
  const RayDivisor& rc = *doc.boundary_rays;
  RayDivisor l(rc.size());
  for (std::size_t i = 0; i < rc.size(); ++i) l[i] = Rat(r) * (1 - (1 - beta) * rc[i]);
  Rat r_tau_beta = Rat(r) * gb.tau_beta();

  // Minimal congruence class clearing every denominator, so the section
  // counts grow polynomially along the sampled k.
  Int step(1);
  mpz_lcm(step.get_mpz_t(), step.get_mpz_t(), r_tau_beta.get_den().get_mpz_t());
  for (const Rat& c : l) {
    mpz_lcm(step.get_mpz_t(), step.get_mpz_t(), c.get_den().get_mpz_t());
  }
  if (!step.fits_slong_p()) throw ComputationError("congruence step exceeds machine range");
  long m = step.get_si();

  std::vector<WeightTable> tables;
  for (long k = (kmax / m) * m; k >= m && tables.size() < 4; k -= m) {
    tables.push_back(weight_table(fan, l, rc, r_tau_beta, k));
  }
  LeadingFit fit = fit_leading_coeffs(tables);

  Rat v0_err = relative_error(fit.v0, rep.v0);
  Rat v1_err = relative_error(fit.v1, rep.v1);
  Json out = Json::object();
  out["k_max"] = kmax;
  out["k_congruence"] = m;
  Json ks = Json::array();
  for (auto it = tables.rbegin(); it != tables.rend(); ++it) ks.push_back(it->k);
  out["k_values"] = std::move(ks);
  out["v0_exact"] = rat_json(rep.v0);
  out["v0_fit"] = rat_json(fit.v0);
  out["v0_rel_err"] = rat_json(v0_err);
  out["v1_exact"] = rat_json(rep.v1);
  out["v1_fit"] = rat_json(fit.v1);
  out["v1_rel_err"] = rat_json(v1_err);
  out["within_default_tolerance"] = v0_err <= Rat(1, 100) && v1_err <= Rat(1, 10);
  return out;
}

const char* kind_name(InputKind k) {
  switch (k) {
    case InputKind::surface:
      return "surface";
    case InputKind::toric:
      return "toric";
    case InputKind::bundle:
      return "bundle";
  }
  throw ComputationError("unreachable input kind");
}

Json make_bundle_document(const Json& bundle_block, const Json& eta_block, const Rat& beta,
                          unsigned r) {
  Json doc = Json::object();
  Json b = bundle_block;
  if (eta_block.contains("beta_polynomial")) {
    b["eta_in_beta"] = eta_block["beta_polynomial"];
  }
  doc["bundle"] = std::move(b);
  Json opts = Json::object();
  opts["beta"] = rat_json(beta);
  opts["r"] = r;
  doc["options"] = std::move(opts);
  return doc;
}

}  // namespace

RunOutput run_document(const InputDocument& doc) {
  std::vector<std::string> diags = validate_document(doc);
  if (!diags.empty()) throw ValidationError(join(diags, "; "));
  const Rat beta = *doc.options.beta;

  Json report = Json::object();
  report["input_kind"] = kind_name(doc.kind);
  report["beta"] = rat_json(beta);

  if (doc.kind == InputKind::bundle) {
    const GeographyBundle& gb = *doc.bundle;
    std::vector<std::string> caveats{kBundleTrustCaveat,
                                     "destabilizing set not computed: bundle data describes a "
                                     "single beta"};
    unsigned r = 1;
    if (doc.options.r) {
      r = *doc.options.r;
    } else {
      caveats.push_back("r defaulted to 1; pass options.r for the intended scaling");
    }
    report["r"] = r;
    report["caveats"] = Json(caveats);
    Json bundle_block = bundle_json(gb);
    report["bundle"] = bundle_block;
    EtaResult er = eta_from_bundle(gb, beta);
    Json eta_block = eta_json(er, doc.bundle_eta_polynomial);
    report["eta"] = eta_block;
    try {
      DFReport rep = df_invariant(gb, df_inputs_from_bundle(gb, beta), beta, r);
      report["df"] = df_json(rep);
    } catch (const ComputationError& e) {
      report["df"] = Json{{"skipped", e.what()}};
    }
    Json verification = Json::object();
    verification["lemma_vol_check"] = lemma_json(lemma_vol_check(gb, beta));
    report["verification"] = std::move(verification);
    return RunOutput{report, make_bundle_document(bundle_block, eta_block, beta, r)};
  }

  const SurfaceData& s = *doc.surface;
  VolumeProfile p = build_profile(s);
  unsigned r = doc.options.r ? *doc.options.r : default_r(s, beta);

  std::vector<std::string> caveats{kCurveListCaveat};
  if (!doc.options.r) {
    caveats.push_back("r chosen automatically as the smallest scaling making the shifted class "
                      "integral");
  }
  std::optional<GeographyBundle> gb;
  try {
    gb = bundle_from_profile(p, beta);
  } catch (const ComputationError& e) {
    caveats.push_back(std::string("bundle export unavailable: ") + e.what());
  }

  report["r"] = r;
  report["caveats"] = Json(caveats);
  report["profile"] = profile_json(p, beta);
  if (gb) report["bundle"] = bundle_json(*gb);

  EtaResult er = eta(p, beta);
  Json eta_block = eta_json(er, Json());
  report["eta"] = eta_block;

  std::optional<DFReport> rep;
  if (gb) {
    try {
      rep = df_invariant(*gb, df_inputs_from_surface(s, beta), beta, r);
      report["df"] = df_json(*rep);
    } catch (const ComputationError& e) {
      report["df"] = Json{{"skipped", e.what()}};
    }
  } else {
    report["df"] = Json{{"skipped", "needs the working geography bundle"}};
  }

  report["destabilizing_betas"] = destabilizing_json(destabilizing_betas(p));
  if (!doc.options.beta_scan.empty()) {
    report["beta_scan"] = scan_json(p, doc.options.beta_scan);
  }

  Json verification = Json::object();
  if (gb) {
    verification["lemma_vol_check"] = lemma_json(lemma_vol_check(*gb, beta));
  } else {
    verification["lemma_vol_check"] = Json{{"skipped", "needs the working geography bundle"}};
  }
  if (doc.options.verify_toric && doc.kind == InputKind::toric) {
    if (gb && rep) {
      verification["toric"] = toric_verification(doc, *gb, *rep, beta, r, *doc.options.verify_toric);
    } else {
      verification["toric"] = Json{{"skipped", "needs the working geography bundle"}};
    }
  }
  report["verification"] = std::move(verification);

  Json bundle_doc;
  if (gb) bundle_doc = make_bundle_document(report["bundle"], eta_block, beta, r);
  return RunOutput{std::move(report), std::move(bundle_doc)};
}

// ---- text rendering --------------------------------------------------------

namespace {

std::string poly_text(const Json& coeffs, const std::string& var) {
  return poly_from_json(coeffs, "render").str(var);
}

std::string algreal_text(const Json& a) {
  const Json& iv = a.at("interval");
  if (iv[0] == iv[1]) return iv[0].get<std::string>();
  return "root of " + poly_text(a.at("defining_poly"), "x") + " in [" +
         iv[0].get<std::string>() + ", " + iv[1].get<std::string>() + "] ~ " +
         a.at("decimal_hint").get<std::string>();
}

void render_eta(const Json& e, std::ostringstream& out) {
  out << "eta at beta = " << e.at("beta").get<std::string>() << "\n";
  out << "  value     = " << algreal_text(e.at("value")) << "\n";
  out << "  eta_plus  = " << algreal_text(e.at("eta_plus")) << "\n";
  out << "  eta_minus = " << algreal_text(e.at("eta_minus")) << "\n";
  out << "  sign      = " << e.at("sign").get<int>() << "\n";
  out << "  verdict   = " << e.at("verdict").get<std::string>() << "\n";
  if (e.contains("beta_polynomial")) {
    const Json& bp = e["beta_polynomial"];
    const Json& breaks = bp.at("breakpoints");
    const Json& pieces = bp.at("pieces");
    out << "  as a polynomial in beta:\n";
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      out << "    " << poly_text(pieces[i], "b") << " on [" << breaks[i].get<std::string>()
          << ", " << breaks[i + 1].get<std::string>() << "]\n";
    }
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  out << "input: " << report.at("input_kind").get<std::string>() << "\n";
  out << "beta: " << report.at("beta").get<std::string>()
      << "   r: " << report.at("r").get<unsigned>() << "\n";
  for (const Json& c : report.at("caveats")) {
    out << "note: " << c.get<std::string>() << "\n";
  }
  out << "\n";

  if (report.contains("profile")) {
    const Json& p = report["profile"];
    out << "volume profile (dimension " << p.at("dimension").get<int>() << ")\n";
    out << "  tau      = " << algreal_text(p.at("tau")) << "\n";
    out << "  tau_beta = " << algreal_text(p.at("tau_beta")) << "\n";
    for (const Json& c : p.at("chambers")) {
      out << "  chamber [" << c.at("lo").get<std::string>() << ", "
          << algreal_text(c.at("hi")) << "]: vol = " << poly_text(c.at("vol"), "t")
          << " | s = " << poly_text(c.at("s"), "t");
      if (c.contains("kappa")) out << " | kappa = " << poly_text(c.at("kappa"), "t");
      out << " | contracted {";
      const Json& labels = c.at("contracted");
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out << ", ";
        out << labels[i].get<std::string>();
      }
      out << "}\n";
    }
    out << "\n";
  }

  if (report.contains("bundle") && !report.contains("profile")) {
    const Json& b = report["bundle"];
    out << "geography bundle (dimension " << b.at("n").get<int>() << ", tau_beta = "
        << b.at("tau_beta").get<std::string>() << ")\n";
    for (const Json& seg : b.at("segments")) {
      out << "  segment [" << seg.at("lo").get<std::string>() << ", "
          << seg.at("hi").get<std::string>() << "]: vol = " << poly_text(seg.at("vol"), "x")
          << " | s = " << poly_text(seg.at("s"), "x");
      if (seg.contains("kappa")) out << " | kappa = " << poly_text(seg["kappa"], "x");
      out << "\n";
    }
    out << "\n";
  }

  render_eta(report.at("eta"), out);
  out << "\n";

  const Json& d = report.at("df");
  if (d.contains("skipped")) {
    out << "df invariant: skipped (" << d["skipped"].get<std::string>() << ")\n";
  } else {
    out << "df invariant (r = " << d.at("r").get<unsigned>() << ", tau_beta = "
        << d.at("tau_beta").get<std::string>() << ")\n";
    out << "  a0 = " << d.at("a0").get<std::string>() << "   a1 = " << d.at("a1").get<std::string>()
        << "   a0~ = " << d.at("a0_tilde").get<std::string>() << "\n";
    out << "  v0 = " << d.at("v0").get<std::string>() << "   v1 = " << d.at("v1").get<std::string>()
        << "\n";
    out << "  b0 = " << d.at("b0").get<std::string>() << "   b1 = " << d.at("b1").get<std::string>()
        << "   b0~ = " << d.at("b0_tilde").get<std::string>() << "\n";
    out << "  df = " << d.at("df_value").get<std::string>() << "\n";
    out << "  proportional to eta: " << (d.at("proportionality_checked").get<bool>() ? "yes" : "NO")
        << "\n";
    out << "  note: " << d.at("r_caveat").get<std::string>() << "\n";
  }
  out << "\n";

  if (report.contains("destabilizing_betas")) {
    const Json& ds = report["destabilizing_betas"];
    out << "destabilizing betas ("
        << (ds.at("exact").get<bool>() ? "exact" : "grid-certified") << ")\n";
    const Json& ivs = ds.at("intervals");
    if (ivs.empty()) out << "  none found\n";
    for (const Json& iv : ivs) {
      out << "  " << (iv.at("lo_open").get<bool>() ? "(" : "[") << algreal_text(iv.at("lo"))
          << ", " << algreal_text(iv.at("hi")) << (iv.at("hi_open").get<bool>() ? ")" : "]")
          << "\n";
    }
    out << "\n";
  }

  if (report.contains("beta_scan")) {
    out << "beta scan\n";
    for (const Json& row : report["beta_scan"]) {
      out << "  beta = " << row.at("beta").get<std::string>() << ": eta = "
          << algreal_text(row.at("value")) << "  [" << row.at("verdict").get<std::string>()
          << "]\n";
    }
    out << "\n";
  }

  const Json& v = report.at("verification");
  out << "verification\n";
  const Json& lemma = v.at("lemma_vol_check");
  if (lemma.contains("skipped")) {
    out << "  partial-integration identity: skipped (" << lemma["skipped"].get<std::string>()
        << ")\n";
  } else {
    out << "  partial-integration identity: " << lemma.at("integral_form").get<std::string>()
        << " vs " << lemma.at("weighted_form").get<std::string>() << " ("
        << (lemma.at("equal").get<bool>() ? "pass" : "FAIL") << ")\n";
  }
  if (v.contains("toric")) {
    const Json& t = v["toric"];
    if (t.contains("skipped")) {
      out << "  toric section-count fit: skipped (" << t["skipped"].get<std::string>() << ")\n";
    } else {
      out << "  toric section-count fit (k up to " << t.at("k_max").get<long>() << ")\n";
      out << "    v0: fit " << t.at("v0_fit").get<std::string>() << " vs exact "
          << t.at("v0_exact").get<std::string>() << " (rel err "
          << t.at("v0_rel_err").get<std::string>() << ")\n";
      out << "    v1: fit " << t.at("v1_fit").get<std::string>() << " vs exact "
          << t.at("v1_exact").get<std::string>() << " (rel err "
          << t.at("v1_rel_err").get<std::string>() << ")\n";
      out << "    within default tolerance: "
          << (t.at("within_default_tolerance").get<bool>() ? "yes" : "NO") << "\n";
    }
  }
  return std::move(out).str();
}

}  // namespace etafano
