// boundrank: upper bounds on the geometric middle Picard number of a smooth
// hypersurface (surface mode), or on the Tate / endomorphism rank of a curve
// Jacobian (jacobian / tensor modes), via the crystalline obstruction map.
//
// Single run:   boundrank --poly "x^3+y^3+z^3+w^3" --mode surface --p 11
// Batch mode:   boundrank --batch jobs.jsonl   (one JSON config per line)
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "cobs/pipeline.hpp"

namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const cobs::SingularReduction*>(&e)) return 3;
  if (dynamic_cast<const cobs::PrecisionExhausted*>(&e)) return 4;
  if (dynamic_cast<const cobs::InconsistentLift*>(&e)) return 5;
  if (dynamic_cast<const cobs::ResourceLimit*>(&e)) return 6;
  if (dynamic_cast<const cobs::BadInput*>(&e)) return 2;  // incl. schema/invariant
  return 1;
}

std::string error_class(const std::exception& e) {
  if (dynamic_cast<const cobs::SingularReduction*>(&e)) return "SingularReduction";
  if (dynamic_cast<const cobs::PrecisionExhausted*>(&e)) return "PrecisionExhausted";
  if (dynamic_cast<const cobs::InconsistentLift*>(&e)) return "InconsistentLift";
  if (dynamic_cast<const cobs::ResourceLimit*>(&e)) return "ResourceLimit";
  if (dynamic_cast<const cobs::SchemaError*>(&e)) return "SchemaError";
  if (dynamic_cast<const cobs::InvariantViolation*>(&e)) return "InvariantViolation";
  if (dynamic_cast<const cobs::BadInput*>(&e)) return "BadInput";
  return "Error";
}

void write_report(const nlohmann::json& report, const std::string& json_out) {
  if (json_out.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(json_out);
  if (!out) throw cobs::BadInput("cannot write " + json_out);
  out << report.dump(2) << "\n";
}

int run_batch(const std::string& path, const std::string& json_out) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "boundrank: cannot open " << path << "\n";
    return 2;
  }
  std::ostream* out = &std::cout;
  std::ofstream file_out;
  if (!json_out.empty()) {
    file_out.open(json_out);
    if (!file_out) {
      std::cerr << "boundrank: cannot write " << json_out << "\n";
      return 2;
    }
    out = &file_out;
  }
  // Per-item failures become error records; the batch itself succeeds.
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json report;
    try {
      auto cfg = cobs::run_config_from_json(nlohmann::json::parse(line));
      report = cobs::run(cfg);
    } catch (const nlohmann::json::exception& e) {
      report = {{"error", "SchemaError"}, {"message", e.what()}};
    } catch (const std::exception& e) {
      report = {{"error", error_class(e)}, {"message", e.what()}};
    }
    *out << report.dump() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crystalline obstruction bounds for Picard and endomorphism ranks"};
  cobs::RunConfig cfg;
  std::string json_out;
  std::string batch;
  bool tensor = false;
  app.add_option("--poly", cfg.poly, "Inline polynomial (homogeneous in x,y,z[,w], or f(x) for y^2 = f)");
  app.add_option("--file", cfg.poly_file, "File containing the polynomial");
  app.add_option("--frobenius", cfg.frobenius_file, "Imported Frobenius matrix (JSON)");
  app.add_option("--mode", cfg.mode, "auto | surface | jacobian | tensor")
      ->check(CLI::IsMember({"auto", "surface", "jacobian", "tensor"}));
  app.add_option("--p", cfg.p, "Prime (default: first good prime)");
  app.add_option("--precision", cfg.precision, "Requested p-adic digits (default 3)");
  app.add_option("--char-bound", cfg.char_bound, "Never pick primes <= this (default 3)");
  app.add_flag("--vanilla", cfg.vanilla, "Single-pass bound without the per-factor refinement");
  app.add_flag("--tensor", tensor, "Shorthand for --mode tensor");
  app.add_option("--emit-frobenius", cfg.emit_frobenius, "Write the computed Frobenius JSON here");
  app.add_flag("--recheck", cfg.recheck, "Recompute at truncation+1 / precision+1 and compare");
  app.add_option("--json-out", json_out, "Write the report here instead of stdout");
  app.add_option("--batch", batch, "Newline-delimited JSON configs; one report line each");
  CLI11_PARSE(app, argc, argv);

  // COBS_THREADS is accepted for forward compatibility; current backends are
  // sequential, so any positive value is valid and ignored.
  if (const char* t = std::getenv("COBS_THREADS")) {
    if (std::atol(t) < 1) {
      std::cerr << "boundrank: COBS_THREADS must be a positive integer\n";
      return 2;
    }
  }

  if (tensor) cfg.mode = "tensor";
  if (!batch.empty()) return run_batch(batch, json_out);
  try {
    write_report(cobs::run(cfg), json_out);
  } catch (const std::exception& e) {
    std::cerr << "boundrank: " << error_class(e) << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
