#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qes/spectra.hpp"

namespace qes::cli {

/// Process exit codes shared by all subcommands.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  ///< a verification or residual check failed
  kExitUsage = 2,    ///< bad flags or unreadable input
  kExitPhysics = 3,  ///< physically rejected parameters
};

struct VerifyAlgebraOptions {
  std::optional<std::string> n;  ///< rational value; symbolic when empty
  std::string mode = "both";     ///< faithful | corrected | both
  std::string relations = "printed";
  bool json = false;
  std::string out;  ///< empty: standard output
};

struct SolveOptions {
  double m = 1.0;
  double zalpha = 0.0;
  int l = 0;
  int n = 0;
  spectra::ScanConfig scan;
  bool csv = false;
  bool timestamp = false;
  std::string out;
};

struct CheckOptions {
  std::string in;
  bool strict = false;
};

struct WavefunctionOptions {
  std::string in;
  std::size_t index = 0;
  std::optional<double> rmax;  ///< defaults to 10 lB of the chosen point
  std::size_t samples = 200;
  std::string out;
};

int run_verify_algebra(const VerifyAlgebraOptions& opt, std::ostream& out, std::ostream& err);
int run_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err);
int run_check(const CheckOptions& opt, std::ostream& out, std::ostream& err);
int run_wavefunction(const WavefunctionOptions& opt, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and dispatches.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes through a sibling temporary file and a rename, so readers never
/// observe a partial artifact. Throws std::runtime_error on I/O failure.
void write_atomically(const std::string& path, const std::string& content);

}  // namespace qes::cli
