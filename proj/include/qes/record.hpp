#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qes/spectra.hpp"

namespace qes::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// Malformed or schema-incompatible solution file.
class RecordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RecordContext {
  double m = 1.0;
  double zalpha = 0.0;
  int l = 0;
  int n = 0;
};

/// Scan settings that shape the result. The worker count is left out on
/// purpose: partitioning never changes the output.
struct ScanProvenance {
  double x0_min = 0.0;
  double x0_max = 0.0;
  std::size_t grid_points = 0;
  double tol_accept = 0.0;
  double tol_refine = 0.0;
  double exclusion = 0.0;
};

struct Provenance {
  ScanProvenance scan;
  std::string tool_version = kToolVersion;
  std::optional<std::string> timestamp;  ///< null unless requested
};

struct SolutionRecord {
  int schema_version = kSchemaVersion;
  RecordContext context;
  spectra::SpectralPoint point;
  Provenance provenance;
};

ScanProvenance to_provenance(const spectra::ScanConfig& scan);

/// Pretty-printed JSON array, LF line endings, trailing newline.
std::string emit_records(const std::vector<SolutionRecord>& records);

/// Inverse of emit_records. Throws RecordError on any deviation from schema v1.
std::vector<SolutionRecord> parse_records(std::string_view text);

}  // namespace qes::cli
