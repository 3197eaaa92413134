#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "elab/curve.hpp"

namespace elab::harness {

enum class Family { fourier, ellipse, dumbbell };
enum class Execution { parallel, serial };

Family parse_family(std::string_view name);
std::string family_name(Family family);

inline constexpr double kSlack = 1e-9;
inline constexpr double kConvexThreshold = -1e-9;

/// One failed inequality check. `seed` is the per-sample seed.
struct Violation {
  std::uint64_t seed = 0;
  std::string quantity;
  double value = 0.0;
  double bound = 0.0;
};

/// Everything the report needs from one generated shape.
struct SampleRecord {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  double parameter = 0.0;  ///< aspect, neck length or amplitude
  curve::ShapeMetrics metrics;
  bool convex = false;
  std::vector<Violation> violations;
  std::vector<Violation> grazing;
};

struct Report {
  std::string family;
  int n_samples = 0;
  std::uint64_t seed = 0;
  double min_EEA = 0.0;
  std::uint64_t min_EEA_seed = 0;
  std::vector<Violation> violations;
  std::vector<Violation> grazing;
  double min_gage_ratio = 0.0;
  std::uint64_t min_gage_ratio_seed = 0;
  int convex_samples = 0;
  double runtime = 0.0;
};

struct SweepOptions {
  Execution execution = Execution::parallel;
  /// Fixes a/b for the ellipse family instead of drawing it.
  std::optional<double> ellipse_aspect;
};

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

/// Generates sample `index` of an n-sample sweep and runs every check on it.
SampleRecord evaluate_sample(Family family, std::uint64_t seed, std::uint64_t index,
                             int n_samples, const SweepOptions& opts = {});

/// Checks a finished metrics bundle; appends to the record's lists.
void check_sample(SampleRecord& record);

/// Order-independent reduction of per-sample records.
Report merge(Family family, std::uint64_t seed, std::vector<SampleRecord> records);

Report verify_family(Family family, int n_samples, std::uint64_t seed,
                     const SweepOptions& opts = {});

nlohmann::ordered_json to_json(const Report& report, bool with_runtime = false);

enum class Counterexample { ring, gaussian, dumbbell };
Counterexample parse_counterexample(std::string_view name);

struct SweepRow {
  double param = 0.0;
  double E = 0.0;
  double A = 0.0;
  double EEA = 0.0;
  std::optional<double> L;  ///< dumbbell only
  std::optional<double> gage_ratio;
};

std::vector<SweepRow> counterexample_sweep(Counterexample kind, const std::vector<double>& params);
bool eea_strictly_decreasing(const std::vector<SweepRow>& rows);

}  // namespace elab::harness
