#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "laxcyc/io.hpp"

namespace laxcyc::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "laxcyc.report/1";

enum class Outcome { Pass, Fail, Unknown };
std::string to_string(Outcome o);

struct Check {
  std::string name;
  Outcome verdict = Outcome::Unknown;
  std::string mode;  // "exact" or "float"
  std::optional<double> tolerance;
  io::json input;   // parameters (and derived seed) reproducing this check alone
  io::json detail;  // counterexample on failure
  double seconds = 0.0;
};

struct SuiteConfig {
  std::string suite;
  int p = 2;
  int q = 2;
  int dprime = 1;
  std::string e = "omega";  // "omega", "zero" or comma-separated residues
  std::vector<std::string> phi;  // c'_0..c'_{d'+1}; empty = x^{d'+1}
  std::uint64_t seed = 1;
  int samples = 20;
  int triples = 200;
  double tolerance = 1e-8;
  std::string out;
  bool timings = false;

  io::json to_json() const;
};

struct Report {
  std::string suite;
  std::string mode;
  std::uint64_t seed = 0;
  io::json config;
  std::vector<Check> checks;
  io::json data;  // command output (classes, certificates, ...); omitted when null

  Outcome overall() const;
  /// Timings go under a separate "timings" key, only when requested, so
  /// reports are byte-identical across runs.
  io::json to_json(bool with_timings) const;
  void print_summary(std::ostream& os) const;
};

/// "omega", "zero" or a comma-separated residue list, reduced mod p.
EVector parse_e(const std::string& selector, int p);

/// Suites: symmetry, poisson, reduction, flows, spectral.
Report run_suite(const SuiteConfig& cfg);

/// Exit codes: 0 all PASS, 1 some FAIL/UNKNOWN, 2 bad input, 3 internal error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace laxcyc::cli
