#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "etafano/errors.hpp"
#include "etafano/io.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw etafano::ValidationError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact destabilization invariants of log Fano surface pairs: volume profiles, "
      "eta and its expansion coefficients, with a toric section-count cross-check"};

  std::string input_path;
  std::string beta, beta_scan, r_opt, format = "text", emit_bundle;
  long verify_toric = -1;

  app.add_option("input", input_path, "input JSON document")->required();
  app.add_option("--beta", beta, "cone-angle parameter as p/q, overrides options.beta");
  app.add_option("--beta-scan", beta_scan, "scan range lo:hi:step, overrides options.beta_scan");
  app.add_option("--r", r_opt, "integral scaling (positive integer or 'auto')");
  app.add_option("--verify-toric", verify_toric,
                 "run the section-count cross-check up to this k (toric inputs)");
  app.add_option("--format", format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--emit-bundle", emit_bundle,
                 "write the working geography bundle as a reusable input document");

  CLI11_PARSE(app, argc, argv);

  try {
    etafano::InputDocument doc = etafano::parse_document_text(read_file(input_path));

    // Command-line flags override the document's own options.
    if (!beta.empty()) doc.options.beta = etafano::rat_parse(beta);
    if (!beta_scan.empty()) {
      doc.options.beta_scan = etafano::parse_scan_range(beta_scan, "--beta-scan");
    }
    if (!r_opt.empty()) {
      if (r_opt == "auto") {
        doc.options.r.reset();
      } else {
        long v = 0;
        try {
          std::size_t used = 0;
          v = std::stol(r_opt, &used);
          if (used != r_opt.size()) v = 0;
        } catch (const std::exception&) {
          v = 0;
        }
        if (v < 1) throw etafano::ValidationError("--r: must be a positive integer or 'auto'");
        doc.options.r = static_cast<unsigned>(v);
      }
    }
    if (verify_toric >= 0) doc.options.verify_toric = verify_toric;

    etafano::RunOutput out = etafano::run_document(doc);

    if (!emit_bundle.empty()) {
      if (out.bundle_document.is_null()) {
        throw etafano::ComputationError("bundle export unavailable for this input");
      }
      std::ofstream f(emit_bundle, std::ios::binary);
      if (!f) throw etafano::ValidationError("cannot write bundle file: " + emit_bundle);
      f << out.bundle_document.dump(2) << '\n';
    }

    if (format == "json") {
      std::cout << out.report.dump(2) << '\n';
    } else {
      std::cout << etafano::render_text(out.report);
    }
    return 0;
  } catch (const etafano::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const etafano::ComputationError& e) {
    std::cerr << "computation error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
