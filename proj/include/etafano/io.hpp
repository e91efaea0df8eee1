#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "etafano/profile.hpp"
#include "etafano/stability.hpp"
#include "etafano/toric.hpp"

namespace etafano {

// Insertion-ordered JSON so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

struct RunOptions {
  std::optional<Rat> beta;
  std::vector<Rat> beta_scan;
  std::optional<unsigned> r;  // absent means choose the smallest integral scaling
  std::optional<long> verify_toric;
};

enum class InputKind { surface, toric, bundle };

// A parsed input document. Structural problems (wrong JSON types, missing
// required keys, several geometry blocks) throw at parse time; semantic
// problems (asymmetric gram, bad fan, zero boundary) are collected into
// diagnostics so validate_document can report them all at once.
struct InputDocument {
  InputKind kind;
  std::optional<SurfaceData> surface;       // surface and toric inputs
  std::optional<ToricSurface> fan;          // toric inputs
  std::optional<RayDivisor> boundary_rays;  // toric inputs with per-ray boundary data
  std::optional<GeographyBundle> bundle;    // bundle inputs
  Json bundle_eta_polynomial;               // transported symbolic invariant, may be null
  RunOptions options;
  std::vector<std::string> diagnostics;     // semantic problems found while parsing
};

InputDocument parse_document(const Json& j);
InputDocument parse_document_text(const std::string& text);

// All diagnostics for the document: parse-time semantic problems plus
// option-level checks (beta present and in range, boundary nonzero, the
// shifted class positive against the supplied curves, toric verification
// prerequisites). Empty means run_document will not raise a validation
// error.
std::vector<std::string> validate_document(const InputDocument& doc);

struct RunOutput {
  Json report;
  // A complete input document reproducing the eta and df blocks through
  // the bundle path (written by --emit-bundle).
  Json bundle_document;
};

// Runs the full pipeline deterministically: identical documents yield
// byte-identical reports. Throws ValidationError on diagnostics and
// ComputationError on failures in the mathematical layers.
RunOutput run_document(const InputDocument& doc);

// Plain-text rendering of a machine report.
std::string render_text(const Json& report);

// Expands a "lo:hi:step" range (inclusive endpoints where the step lands)
// into explicit scan points. Shared by the document parser and the CLI.
std::vector<Rat> parse_scan_range(const std::string& range, const std::string& path);

// Shared serialization helpers.
Json rat_json(const Rat& v);
Json poly_json(const Poly& p);
Json algreal_json(const AlgReal& v);
Rat rat_from_json(const Json& j, const std::string& path);
Poly poly_from_json(const Json& j, const std::string& path);

}  // namespace etafano
