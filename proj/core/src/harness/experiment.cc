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

#include "dpboot/harness/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <thread>
#include <utility>

#include "absl/strings/str_cat.h"
#include "dpboot/harness/datasets.h"
#include "dpboot/harness/truncated_gaussian.h"
#include "dpboot/logistic.h"
#include "dpboot/stats.h"

namespace dpboot::harness {

namespace {

// Child-stream keys under each trial's stream.
constexpr std::uint64_t kDataKey = 1;
constexpr std::uint64_t kCenterKey = 2;
constexpr std::uint64_t kMethodKey = 100;
constexpr std::uint64_t kCoverageKey = 200;

constexpr double kDefaultLogisticParamBound = 10.0;

std::uint64_t MethodKeyOffset(Method method) {
  return static_cast<std::uint64_t>(method);
}

// Everything a trial needs to know about the task at one sample size.
struct TaskModel {
  PointEstimator theta_fn;
  PrivateEstimator priv_fn;
  std::function<absl::StatusOr<Sample>(RngStream&)> draw_sample;
  double theta_true = 0.0;
  double clip_bound = 0.0;
  double param_bound = 0.0;
  std::optional<double> asymptotic_variance;
};

// Data shared across sample sizes: the population law or the CSV pool.
struct Population {
  std::optional<TruncatedGaussian> gaussian;
  std::optional<Sample> pool;
  std::vector<double> theta_star;  // logistic population minimizer
};

absl::StatusOr<Population> LoadPopulation(const ExperimentConfig& config) {
  Population pop;
  const DataSpec& data = config.data;
  if (data.kind == "truncated_gaussian") {
    absl::StatusOr<TruncatedGaussian> dist =
        TruncatedGaussian::Create(data.mu, data.var, data.lo, data.hi);
    if (!dist.ok()) return dist.status();
    pop.gaussian = *dist;
    return pop;
  }
  if (data.kind == "synthetic_logistic") {
    pop.theta_star =
        data.theta_star.empty() ? DefaultSyntheticTheta() : data.theta_star;
    return pop;
  }
  if (data.kind == "csv") {
    absl::StatusOr<Sample> pool = LoadAdultCsv(data.path);
    if (!pool.ok()) return pool.status();
    // The full-pool ERM is the ground truth when trials sample from the pool.
    absl::StatusOr<LogRegSolution> fit = LogRegFit(*pool, 0.0, {});
    if (!fit.ok()) return fit.status();
    pop.theta_star = fit->theta.value;
    pop.pool = *std::move(pool);
    return pop;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown data kind '", data.kind, "'"));
}

Theta Project(const Theta& theta, std::size_t coordinate) {
  return Theta{{theta.value[coordinate]}};
}

absl::StatusOr<TaskModel> BuildTask(const ExperimentConfig& config,
                                    const Population& pop, std::size_t n) {
  const double eps = config.eps_total / 2.0;
  const auto nn = static_cast<double>(n);
  TaskModel model;

  if (config.task == Task::kMean || config.task == Task::kMedian) {
    if (!pop.gaussian.has_value()) {
      return absl::InvalidArgumentError(
          "mean and median tasks need data.kind = truncated_gaussian");
    }
    const TruncatedGaussian dist = *pop.gaussian;
    const TruncatedMoments moments = dist.Moments();
    const double b = config.clip_bound.value_or(
        std::max(std::fabs(config.data.lo), std::fabs(config.data.hi)));
    model.clip_bound = b;
    model.param_bound = config.param_bound.value_or(b);
    model.draw_sample = [dist, n](RngStream& rng) {
      return dist.DrawSample(n, rng);
    };
    if (config.task == Task::kMean) {
      model.theta_fn = MeanPlugin;
      model.theta_true = moments.mean;
      if (config.noiseless) {
        model.priv_fn = [](const Sample& s, RngStream&) { return MeanPlugin(s); };
        model.asymptotic_variance = moments.variance;
      } else {
        model.priv_fn = [b, eps](const Sample& s, RngStream& rng) {
          return LaplaceMeanMech(s, b, eps, rng);
        };
        const double scale = 2.0 * b / (nn * eps);
        model.asymptotic_variance = moments.variance + 2.0 * nn * scale * scale;
      }
    } else {
      model.theta_fn = MedianPlugin;
      model.theta_true = moments.median;
      const double f = dist.Density(moments.median);
      model.asymptotic_variance = 1.0 / (4.0 * f * f);
      if (config.noiseless) {
        model.priv_fn = [](const Sample& s, RngStream&) {
          return MedianPlugin(s);
        };
      } else {
        const MedianConfig median_config{
            eps, config.median_rho.value_or(1.0 / nn), -b, b};
        model.priv_fn = [median_config](const Sample& s, RngStream& rng) {
          return InvSensMedianMech(s, median_config, rng);
        };
      }
    }
    return model;
  }

  // Logistic regression, reporting one coordinate.
  if (pop.theta_star.empty()) {
    return absl::InvalidArgumentError(
        "logreg task needs data.kind = synthetic_logistic or csv");
  }
  const std::size_t dim = pop.theta_star.size();
  const std::size_t coord = config.coordinate;
  if (coord >= dim) {
    return absl::InvalidArgumentError(absl::StrCat(
        "coordinate ", coord, " out of range for dimension ", dim));
  }
  const double radius =
      config.radius > 0.0 ? config.radius : std::sqrt(static_cast<double>(dim));
  const ObjPertConfig obj = ObjPertConfig::ForLogistic(
      radius, dim, eps, std::pow(nn, -1.1));
  const double lambda = config.noiseless ? 0.0 : obj.Regularization(n);
  model.theta_true = pop.theta_star[coord];
  model.param_bound = config.param_bound.value_or(kDefaultLogisticParamBound);
  model.theta_fn = [lambda, coord](const Sample& s) -> absl::StatusOr<Theta> {
    absl::StatusOr<LogRegSolution> fit = LogRegFit(s, lambda, {});
    if (!fit.ok()) return fit.status();
    return Project(fit->theta, coord);
  };
  if (config.noiseless) {
    model.priv_fn = [coord](const Sample& s,
                            RngStream&) -> absl::StatusOr<Theta> {
      absl::StatusOr<LogRegSolution> fit = LogRegFit(s, 0.0, {});
      if (!fit.ok()) return fit.status();
      return Project(fit->theta, coord);
    };
  } else {
    model.priv_fn = [obj, coord](const Sample& s,
                                 RngStream& rng) -> absl::StatusOr<Theta> {
      absl::StatusOr<Theta> theta = ObjPertLogReg(s, obj, rng);
      if (!theta.ok()) return theta.status();
      return Project(*theta, coord);
    };
  }
  if (pop.pool.has_value()) {
    const Sample* pool = &*pop.pool;
    model.draw_sample = [pool, n](RngStream& rng) {
      return ResampleWithReplacement(*pool, n, rng);
    };
  } else {
    const std::vector<double> theta_star = pop.theta_star;
    model.draw_sample = [theta_star, n](RngStream& rng) {
      return GenerateSyntheticLogistic(n, theta_star, rng);
    };
  }
  return model;
}

std::size_t IntervalCount(const ExperimentConfig& config,
                          const TaskModel& model, std::size_t n) {
  // I_T must reach sqrt(n) * param_bound on the sqrt(n)-scaled axis, and
  // h = c / sqrt(n), so T = ceil(n * param_bound / c).
  return static_cast<std::size_t>(std::max(
      1.0, std::ceil(static_cast<double>(n) * model.param_bound / config.blb.c)));
}

BlbConfig BlbFor(const ExperimentConfig& config, const TaskModel& model) {
  BlbConfig blb = config.blb;
  blb.epsilon = config.eps_total / 2.0;
  blb.alpha = config.alpha;
  if (!blb.sigma_max_sq.has_value() && config.R.has_value() &&
      model.asymptotic_variance.has_value()) {
    blb.sigma_max_sq = *config.R * *config.R * *model.asymptotic_variance;
  }
  return blb;
}

absl::StatusOr<ConfidenceInterval> BuildInterval(
    Method method, const ExperimentConfig& config, const TaskModel& model,
    const Sample& sample, double center, std::size_t interval_count,
    RngStream& rng) {
  const std::size_t n = sample.size();
  const BlbConfig blb = BlbFor(config, model);
  switch (method) {
    case Method::kNonprivate:
      return NonprivateBootstrapCi(center, sample, model.theta_fn,
                                   model.priv_fn, config.alpha,
                                   MonteCarloCount(n, 1), rng);
    case Method::kBlbQuant: {
      absl::StatusOr<IntervalFamily> family = IntervalFamily::Create(
          blb.c / std::sqrt(static_cast<double>(n)), interval_count);
      if (!family.ok()) return family.status();
      absl::StatusOr<BlbQuantResult> result =
          BlbQuant(model.theta_fn, model.priv_fn, sample, *family, blb, rng);
      if (!result.ok()) return result.status();
      return PercentileCi(center, *family, result->t_hat, n);
    }
    case Method::kBlbVar: {
      absl::StatusOr<BlbVarResult> result =
          BlbVar(model.theta_fn, model.priv_fn, sample, blb, rng);
      if (!result.ok()) return result.status();
      return NormalCi(center, result->variance, n, config.alpha);
    }
    case Method::kLaplaceVariance: {
      absl::StatusOr<PrivateVariance> variance = LaplaceVarianceMech(
          sample, model.clip_bound, config.eps_total / 2.0, rng);
      if (!variance.ok()) return variance.status();
      return NormalCi(center, variance->variance, n, config.alpha);
    }
  }
  return absl::InternalError("unhandled method");
}

TrialRecord FailedRecord(TrialRecord record, double center) {
  record.lo = record.hi = center;
  record.width = 0.0;
  record.coverage_freq = 0.0;
  record.failed = true;
  return record;
}

std::vector<TrialRecord> RunTrial(const ExperimentConfig& config,
                                  const TaskModel& model, std::size_t n,
                                  std::size_t trial_id,
                                  std::size_t interval_count,
                                  const RngStream& trial_rng) {
  std::vector<TrialRecord> out;
  out.reserve(config.methods.size());
  TrialRecord base;
  base.trial_id = trial_id;
  base.n = n;
  base.eps_total = config.eps_total;
  base.seed = trial_rng.stream_id();

  RngStream data_rng = trial_rng.Split(kDataKey);
  absl::StatusOr<Sample> sample = model.draw_sample(data_rng);
  RngStream center_rng = trial_rng.Split(kCenterKey);
  absl::StatusOr<Theta> center = sample.ok()
                                     ? model.priv_fn(*sample, center_rng)
                                     : absl::StatusOr<Theta>(sample.status());
  for (Method method : config.methods) {
    TrialRecord record = base;
    record.method = method;
    if (!center.ok()) {
      out.push_back(FailedRecord(record, 0.0));
      continue;
    }
    RngStream method_rng = trial_rng.Split(kMethodKey + MethodKeyOffset(method));
    absl::StatusOr<ConfidenceInterval> ci =
        BuildInterval(method, config, model, *sample, center->scalar(),
                      interval_count, method_rng);
    if (!ci.ok() || ci->failed) {
      out.push_back(FailedRecord(record, center->scalar()));
      continue;
    }
    RngStream coverage_rng =
        trial_rng.Split(kCoverageKey + MethodKeyOffset(method));
    absl::StatusOr<double> coverage =
        EvaluateCoverage(*ci, model.theta_true, model.priv_fn, *sample,
                         config.resamp, coverage_rng);
    if (!coverage.ok()) {
      out.push_back(FailedRecord(record, center->scalar()));
      continue;
    }
    record.lo = ci->lo;
    record.hi = ci->hi;
    record.width = ci->width();
    record.coverage_freq = *coverage;
    out.push_back(record);
  }
  return out;
}

double MedianOf(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size();
  return k % 2 == 1 ? values[k / 2] : 0.5 * (values[k / 2 - 1] + values[k / 2]);
}

}  // namespace

std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kMean:
      return "mean";
    case Task::kMedian:
      return "median";
    case Task::kLogReg:
      return "logreg";
  }
  return "unknown";
}

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kNonprivate:
      return "nonprivate";
    case Method::kBlbQuant:
      return "blbquant";
    case Method::kBlbVar:
      return "blbvar";
    case Method::kLaplaceVariance:
      return "laplace_variance";
  }
  return "unknown";
}

absl::StatusOr<Task> ParseTask(std::string_view name) {
  for (Task t : {Task::kMean, Task::kMedian, Task::kLogReg}) {
    if (TaskName(t) == name) return t;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown task '", std::string(name), "'"));
}

absl::StatusOr<Method> ParseMethod(std::string_view name) {
  for (Method m : {Method::kNonprivate, Method::kBlbQuant, Method::kBlbVar,
                   Method::kLaplaceVariance}) {
    if (MethodName(m) == name) return m;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown method '", std::string(name), "'"));
}

absl::Status ExperimentConfig::Validate() const {
  if (n_grid.empty()) {
    return absl::InvalidArgumentError("n_grid must list at least one size");
  }
  for (std::size_t n : n_grid) {
    if (n < 2) return absl::InvalidArgumentError("sample sizes must be >= 2");
  }
  if (trials == 0) return absl::InvalidArgumentError("trials must be >= 1");
  if (resamp == 0) return absl::InvalidArgumentError("resamp must be >= 1");
  if (!(eps_total > 0.0)) {
    return absl::InvalidArgumentError("eps_total must be positive");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    return absl::InvalidArgumentError("alpha must lie in (0, 1)");
  }
  if (methods.empty()) {
    return absl::InvalidArgumentError("methods must list at least one method");
  }
  for (Method m : methods) {
    if (m == Method::kLaplaceVariance && task != Task::kMean) {
      return absl::InvalidArgumentError(
          "laplace_variance applies to the mean task only");
    }
  }
  if (R.has_value() && !(*R > 0.0)) {
    return absl::InvalidArgumentError("R must be positive");
  }
  if (clip_bound.has_value() && !(*clip_bound > 0.0)) {
    return absl::InvalidArgumentError("clip_bound must be positive");
  }
  if (param_bound.has_value() && !(*param_bound > 0.0)) {
    return absl::InvalidArgumentError("param_bound must be positive");
  }
  if (threads == 0) return absl::InvalidArgumentError("threads must be >= 1");
  BlbConfig blb_check = blb;
  blb_check.epsilon = eps_total / 2.0;
  blb_check.alpha = alpha;
  return blb_check.Validate();
}

absl::StatusOr<double> EvaluateCoverage(const ConfidenceInterval& interval,
                                        double theta_true,
                                        const PrivateEstimator& priv_point,
                                        const Sample& sample,
                                        std::size_t redraws, RngStream& rng) {
  if (interval.failed) return 0.0;
  if (redraws == 0) {
    return absl::InvalidArgumentError("EvaluateCoverage: redraws must be >= 1");
  }
  const double lo_offset = interval.lo - interval.center;
  const double hi_offset = interval.hi - interval.center;
  std::size_t covered = 0;
  for (std::size_t r = 0; r < redraws; ++r) {
    absl::StatusOr<Theta> redraw = priv_point(sample, rng);
    if (!redraw.ok()) return redraw.status();
    const double c = redraw->scalar();
    if (c + lo_offset <= theta_true && theta_true <= c + hi_offset) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(redraws);
}

std::vector<CoverageGroup> Aggregate(Task task,
                                     const std::vector<TrialRecord>& records) {
  using Key = std::tuple<Method, std::size_t, double>;
  std::vector<Key> order;
  std::map<Key, std::vector<const TrialRecord*>> buckets;
  for (const TrialRecord& r : records) {
    const Key key{r.method, r.n, r.eps_total};
    auto [it, inserted] = buckets.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }

  std::vector<CoverageGroup> groups;
  for (const Key& key : order) {
    const auto& members = buckets[key];
    CoverageGroup g;
    g.task = task;
    g.method = std::get<0>(key);
    g.n = std::get<1>(key);
    g.eps_total = std::get<2>(key);
    g.trials = members.size();
    double coverage_sum = 0.0;
    std::size_t failures = 0;
    std::vector<double> widths;
    for (const TrialRecord* r : members) {
      coverage_sum += r->coverage_freq;
      if (r->failed) {
        ++failures;
      } else {
        widths.push_back(r->width);
      }
    }
    const auto trials = static_cast<double>(g.trials);
    g.mean_coverage = coverage_sum / trials;
    g.failure_rate = static_cast<double>(failures) / trials;
    if (!widths.empty()) {
      double width_sum = 0.0;
      for (double w : widths) width_sum += w;
      g.mean_width = width_sum / static_cast<double>(widths.size());
      g.median_width = MedianOf(widths);
      std::size_t catastrophic = 0;
      std::map<long long, std::size_t> bins;
      for (double w : widths) {
        if (w > kCatastrophicWidthFactor * g.median_width) ++catastrophic;
        ++bins[static_cast<long long>(std::floor(w / kHistogramBinWidth))];
      }
      g.catastrophic_rate = static_cast<double>(catastrophic) / trials;
      for (const auto& [index, count] : bins) {
        g.width_histogram.push_back(
            {static_cast<double>(index) * kHistogramBinWidth, count});
      }
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentConfig& config) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  absl::StatusOr<Population> pop = LoadPopulation(config);
  if (!pop.ok()) return pop.status();

  ExperimentResult result;
  result.report.config_name = config.name;
  result.report.master_seed = config.master_seed;
  const RngStream root(config.master_seed, 0);

  for (std::size_t n : config.n_grid) {
    absl::StatusOr<TaskModel> model = BuildTask(config, *pop, n);
    if (!model.ok()) return model.status();
    const std::size_t interval_count = IntervalCount(config, *model, n);
    result.report.interval_counts.emplace_back(n, interval_count);
    const RngStream n_rng = root.Split(n);

    std::vector<std::vector<TrialRecord>> per_trial(config.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t t = next++; t < config.trials; t = next++) {
        per_trial[t] = RunTrial(config, *model, n, t, interval_count,
                                n_rng.Split(t));
      }
    };
    const std::size_t threads = std::min(config.threads, config.trials);
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    for (auto& records : per_trial) {
      for (TrialRecord& r : records) result.records.push_back(r);
    }
  }
  result.report.groups = Aggregate(config.task, result.records);
  return result;
}

std::vector<std::string> PresetNames() {
  return {"mean_small", "mean", "median", "logreg_synthetic", "logreg_adult"};
}

std::optional<ExperimentConfig> Preset(std::string_view name) {
  ExperimentConfig c;
  c.name = std::string(name);
  c.alpha = 0.05;
  c.eps_total = 8.0;
  c.blb.K = 10.0;
  c.blb.c = 1.0;
  c.R = 50.0;
  if (name == "mean_small") {
    c.task = Task::kMean;
    c.n_grid = {300, 1000};
    c.trials = 20;
    c.resamp = 100;
    c.methods = {Method::kNonprivate, Method::kBlbQuant, Method::kBlbVar,
                 Method::kLaplaceVariance};
    return c;
  }
  if (name == "mean") {
    c.task = Task::kMean;
    c.n_grid = {300, 1000, 3000};
    c.trials = 160;
    c.resamp = 625;
    c.methods = {Method::kNonprivate, Method::kBlbQuant, Method::kBlbVar,
                 Method::kLaplaceVariance};
    return c;
  }
  if (name == "median") {
    c.task = Task::kMedian;
    c.n_grid = {300, 1000, 3000};
    c.trials = 80;
    c.resamp = 625;
    c.methods = {Method::kNonprivate, Method::kBlbQuant, Method::kBlbVar};
    return c;
  }
  if (name == "logreg_synthetic" || name == "logreg_adult") {
    c.task = Task::kLogReg;
    c.n_grid = {2000, 4000, 8000};
    c.trials = 80;
    c.resamp = 625;
    c.methods = {Method::kNonprivate, Method::kBlbQuant, Method::kBlbVar};
    c.R.reset();
    c.coordinate = kAdultSexCoordinate;
    if (name == "logreg_adult") {
      c.data.kind = "csv";
      c.data.path = "data/adult.csv";
    } else {
      c.data.kind = "synthetic_logistic";
    }
    return c;
  }
  return std::nullopt;
}

}  // namespace dpboot::harness
