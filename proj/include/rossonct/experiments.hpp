#pragma once

// The experiment catalog behind the command line runner. Each experiment is a
// pure function of its config: same config, same CSV bytes.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rossonct/scalar.hpp"

namespace rossonct {

struct ExperimentConfig {
  // Unset fields fall back to per-experiment defaults.
  std::optional<Field> field;
  std::optional<int> d;
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0;
  std::optional<double> radius;
  std::optional<long long> n_max;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct ExperimentResult {
  std::string id;
  int criterion = 0;
  bool pass = false;
  /// One line, no trailing newline.
  std::string summary;
  Table table;
  /// Headline numbers, keyed by name.
  std::map<std::string, double> metrics;
};

struct ExperimentInfo {
  std::string id;
  int criterion = 0;
  std::string description;
};

class UnknownExperiment : public std::invalid_argument {
 public:
  explicit UnknownExperiment(const std::string& id) : std::invalid_argument("unknown experiment: " + id) {}
};

const std::vector<ExperimentInfo>& catalog();
const ExperimentInfo& lookup_experiment(const std::string& id);

/// Throws UnknownExperiment before doing any work. Module errors are rethrown
/// as std::runtime_error with the id prepended.
ExperimentResult run_experiment(const std::string& id, const ExperimentConfig& cfg);

/// 17 significant digits, shortest exact form for integers.
std::string format_real(double x);
/// Header row plus data rows, comma-separated, LF line endings.
std::string to_csv(const Table& t);
/// Write through a temporary file in the same directory, then rename.
void write_atomic(const std::string& path, const std::string& content);

// Constants pinned from oracle runs.
inline constexpr double kCRips = 0.89;      // dense-sampling sup 0.8814 = log(1 + sqrt 2)
inline constexpr double kC44 = 1.3863;      // sup 2 log 2, at a = 0 and |v| large
inline constexpr double kCR = 1.39;         // measured 1.3855 on the radius-100 ball
inline constexpr double kDeltaSpread = 0.05;

}  // namespace rossonct
