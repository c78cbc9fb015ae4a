// State files in, run reports out. Both are JSON documents; complex entries
// are two-element [re, im] arrays.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qae/pipeline.hpp"
#include "qae/search.hpp"

namespace qae {

inline constexpr const char* kToolName = "qae-compress";
inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kStateFormatVersion = 1;

/// Structurally malformed input (bad JSON, missing or mistyped keys).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StateFile {
  int format_version = kStateFormatVersion;
  std::optional<std::string> label;
  BipartiteDims dims;
  std::optional<DensityMatrix> matrix;
  std::optional<std::vector<double>> spectrum;  // descending, sums to 1

  /// The spectrum given directly, or the eigenvalues of the matrix.
  std::vector<double> probabilities() const;
};

/// Throws ParseError for structural problems and ValidationError when the
/// content is not a valid state. Totals within 1e-8 of one are renormalized.
StateFile parse_state_file(const std::string& text);
std::string serialize_state_file(const StateFile& f);

std::string sha256_hex(const std::string& bytes);

enum class EntropyUnit { Nats, Bits };
std::string to_string(EntropyUnit u);
double in_unit(double nats, EntropyUnit u);

struct RunReport {
  std::string tool = kToolName;
  std::string version = kVersion;
  std::string command;
  std::string input_digest;
  std::string unit = "nats";
  // config echo
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t n_depth = 0;
  std::uint64_t seed = 0;
  std::string threshold;
  // result
  std::string method;
  double best_mi = 0.0;
  double start_mi = 0.0;
  std::vector<int> best_tableau;
  std::size_t d_a = 0;
  std::size_t d_b = 0;
  std::uint64_t evaluations = 0;
  std::vector<double> trajectory;
  std::optional<std::size_t> seed_index;
  std::optional<CompressionReport> compression;
  // runtime: excluded from determinism comparisons
  double wall_seconds = 0.0;
  std::size_t jobs = 1;

  bool operator==(const RunReport& other) const;
};

RunReport make_run_report(const std::string& command, const std::string& input_digest,
                          const SearchConfig& config, const BipartiteDims& dims,
                          const OptimizationResult& result,
                          const std::optional<CompressionReport>& compression, EntropyUnit unit);

nlohmann::json to_json(const RunReport& r);
RunReport run_report_from_json(const nlohmann::json& j);

/// Strips the "runtime" object so reports from repeated runs compare equal.
nlohmann::json without_runtime(nlohmann::json j);

}  // namespace qae
