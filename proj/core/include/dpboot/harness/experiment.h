//
// Copyright 2026 The dpboot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPBOOT_HARNESS_EXPERIMENT_H_
#define DPBOOT_HARNESS_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpboot/blb.h"
#include "dpboot/estimators.h"
#include "dpboot/rng.h"
#include "dpboot/sample.h"

namespace dpboot::harness {

enum class Task { kMean, kMedian, kLogReg };
enum class Method { kNonprivate, kBlbQuant, kBlbVar, kLaplaceVariance };

std::string_view TaskName(Task task);
std::string_view MethodName(Method method);
absl::StatusOr<Task> ParseTask(std::string_view name);
absl::StatusOr<Method> ParseMethod(std::string_view name);

struct DataSpec {
  // "truncated_gaussian", "synthetic_logistic", or "csv" (prepared Adult).
  std::string kind = "truncated_gaussian";
  double mu = 0.0;
  double var = 4.0;
  double lo = -6.0;
  double hi = 4.0;
  std::vector<double> theta_star;  // synthetic_logistic; empty -> default
  std::string path;                // csv
};

struct ExperimentConfig {
  std::string name = "custom";
  Task task = Task::kMean;
  std::vector<std::size_t> n_grid = {1000};
  double eps_total = 8.0;  // split evenly: estimator / interval
  double alpha = 0.05;
  std::size_t trials = 100;
  std::size_t resamp = 625;  // noise redraws per coverage evaluation
  std::vector<Method> methods = {Method::kBlbQuant};
  BlbConfig blb;              // epsilon is overwritten with eps_total / 2
  std::optional<double> R;    // sigma_max^2 = R^2 sigma^2 when set
  DataSpec data;
  std::uint64_t master_seed = 1;
  bool noiseless = false;  // point estimator without privacy noise
  std::optional<double> clip_bound;    // default max(|lo|, |hi|)
  std::optional<double> param_bound;   // I_T reaches sqrt(n) * param_bound
  std::optional<double> median_rho;    // default 1 / n
  std::size_t coordinate = 3;          // reported logistic coefficient
  double radius = 0.0;                 // ||x||_2 bound; 0 -> sqrt(dim)
  std::size_t threads = 1;

  absl::Status Validate() const;
};

struct TrialRecord {
  std::size_t trial_id = 0;
  Method method = Method::kBlbQuant;
  std::size_t n = 0;
  double eps_total = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double width = 0.0;
  double coverage_freq = 0.0;
  bool failed = false;
  std::uint64_t seed = 0;
};

struct WidthBin {
  double lo = 0.0;
  std::size_t count = 0;
};

struct CoverageGroup {
  Task task = Task::kMean;
  Method method = Method::kBlbQuant;
  std::size_t n = 0;
  double eps_total = 0.0;
  std::size_t trials = 0;
  double mean_coverage = 0.0;     // failed trials count as 0
  double mean_width = 0.0;        // over non-failed trials
  double median_width = 0.0;
  double failure_rate = 0.0;
  double catastrophic_rate = 0.0;  // width > 5x median width
  std::vector<WidthBin> width_histogram;  // bins of width 0.05
};

struct CoverageReport {
  std::string config_name;
  std::uint64_t master_seed = 0;
  std::vector<CoverageGroup> groups;
  // Interval-family size used per n (BLBquant), for provenance.
  std::vector<std::pair<std::size_t, std::size_t>> interval_counts;
};

inline constexpr double kHistogramBinWidth = 0.05;
inline constexpr double kCatastrophicWidthFactor = 5.0;

// Groups records by (method, n, eps_total) in first-appearance order and
// recomputes every aggregate from scratch.
std::vector<CoverageGroup> Aggregate(Task task,
                                     const std::vector<TrialRecord>& records);

// Fraction of `redraws` fresh draws theta~* = priv_point(sample) for which
// theta_true lies in theta~* + [lo - center, hi - center]. Failed intervals
// score 0.
absl::StatusOr<double> EvaluateCoverage(const ConfidenceInterval& interval,
                                        double theta_true,
                                        const PrivateEstimator& priv_point,
                                        const Sample& sample,
                                        std::size_t redraws, RngStream& rng);

struct ExperimentResult {
  std::vector<TrialRecord> records;  // ordered by (n, trial_id, method)
  CoverageReport report;
};

// Runs every (n, method) cell for config.trials trials. Fully determined by
// the config (including master_seed); the thread count never changes the
// output. Per-trial failures are recorded, never fatal.
absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentConfig& config);

// Named built-in configurations ("mean_small", "mean", "median", ...).
std::vector<std::string> PresetNames();
std::optional<ExperimentConfig> Preset(std::string_view name);

}  // namespace dpboot::harness

#endif  // DPBOOT_HARNESS_EXPERIMENT_H_
