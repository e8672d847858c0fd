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

#include "dpboot/blb.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "dpboot/noise.h"
#include "dpboot/private_median.h"
#include "dpboot/stats.h"

namespace dpboot {

namespace {

// Child-stream keys. Subsample i draws from Split(kSubsamples).Split(i), so
// changing one record never perturbs the randomness of another subsample.
constexpr std::uint64_t kPartition = 1;
constexpr std::uint64_t kSubsamples = 2;
constexpr std::uint64_t kAggregation = 3;

double SquaredDistance(const Theta& a, const Theta& b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.value.size(); ++j) {
    const double d = a.value[j] - b.value[j];
    sum += d * d;
  }
  return sum;
}

absl::Status CheckSameShape(const Theta& a, const Theta& b) {
  if (a.value.size() != b.value.size() || a.value.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "estimators disagree on parameter dimension: ", a.value.size(), " vs ",
        b.value.size()));
  }
  return absl::OkStatus();
}

absl::Status WithSubsampleContext(const absl::Status& status, std::size_t i) {
  return absl::Status(status.code(),
                      absl::StrCat("subsample ", i, ": ", status.message()));
}

struct Subsamples {
  std::vector<Sample> samples;
  std::size_t size = 0;
};

absl::StatusOr<Subsamples> DrawSubsamples(const Sample& sample,
                                          const BlbConfig& config,
                                          RngStream& rng) {
  const std::size_t n = sample.size();
  absl::StatusOr<std::size_t> s = config.SubsampleCount(n);
  if (!s.ok()) return s.status();
  Subsamples out;
  if (config.upsampled) {
    out.samples.assign(*s, sample);
    out.size = n;
    return out;
  }
  RngStream partition_rng = rng.Split(kPartition);
  absl::StatusOr<Partition> partition =
      PartitionDisjoint(sample, n / *s, partition_rng);
  if (!partition.ok()) return partition.status();
  out.samples = std::move(partition->subsamples);
  out.size = n / *s;
  return out;
}

}  // namespace

absl::StatusOr<IntervalFamily> IntervalFamily::Create(double h,
                                                      std::size_t count) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    return absl::InvalidArgumentError(
        absl::StrCat("IntervalFamily: resolution must be positive, got ", h));
  }
  if (count == 0) {
    return absl::InvalidArgumentError("IntervalFamily: need at least one set");
  }
  return IntervalFamily(h, count);
}

absl::Status BlbConfig::Validate() const {
  if (!(K > 0.0)) return absl::InvalidArgumentError("BlbConfig: K must be > 0");
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError("BlbConfig: epsilon must be > 0");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    return absl::InvalidArgumentError("BlbConfig: alpha must lie in (0, 1)");
  }
  if (!(c > 0.0)) return absl::InvalidArgumentError("BlbConfig: c must be > 0");
  if (rho.has_value() && !(*rho > 0.0)) {
    return absl::InvalidArgumentError("BlbConfig: rho must be > 0");
  }
  if (sigma_max_sq.has_value() && !(*sigma_max_sq > 0.0)) {
    return absl::InvalidArgumentError("BlbConfig: sigma_max_sq must be > 0");
  }
  if (n_mc.has_value() && *n_mc == 0) {
    return absl::InvalidArgumentError("BlbConfig: n_mc must be >= 1");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::size_t> BlbConfig::SubsampleCount(std::size_t n) const {
  if (absl::Status st = Validate(); !st.ok()) return st;
  if (n < 2) {
    return absl::InvalidArgumentError("BLB needs a sample of size >= 2");
  }
  const double raw = std::floor(K * std::log(static_cast<double>(n)) / epsilon);
  if (raw < 1.0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "BLB: floor(K log n / epsilon) = 0 subsamples for n = ", n));
  }
  return std::min(static_cast<std::size_t>(raw), n);
}

double BlbConfig::Rho(std::size_t n) const {
  return rho.value_or(1.0 / static_cast<double>(n));
}

double BlbConfig::SigmaMaxSq(std::size_t n) const {
  const auto nn = static_cast<double>(n);
  return sigma_max_sq.value_or(nn * nn);
}

std::size_t BlbConfig::MonteCarlo(std::size_t n, std::size_t s) const {
  return n_mc.value_or(MonteCarloCount(n, s));
}

std::size_t MonteCarloCount(std::size_t n, std::size_t s) {
  const auto nn = static_cast<double>(n);
  const double raw =
      std::pow(nn, 1.5) / (static_cast<double>(s) * std::log(nn));
  return static_cast<std::size_t>(std::min(10000.0, std::max(100.0, raw)));
}

std::string_view MethodName(ConfidenceInterval::Method method) {
  switch (method) {
    case ConfidenceInterval::Method::kPercentile:
      return "percentile";
    case ConfidenceInterval::Method::kNormal:
      return "normal";
    case ConfidenceInterval::Method::kNonprivate:
      return "nonprivate";
  }
  return "unknown";
}

absl::StatusOr<double> BootVar(const PointEstimator& theta_fn,
                               const PrivateEstimator& priv_fn,
                               const Sample& subsample, std::size_t n,
                               std::size_t n_mc, RngStream& rng) {
  if (n == 0 || n_mc == 0) {
    return absl::InvalidArgumentError("BootVar: n and n_mc must be >= 1");
  }
  absl::StatusOr<Theta> theta_hat = theta_fn(subsample);
  if (!theta_hat.ok()) return theta_hat.status();
  double total = 0.0;
  for (std::size_t j = 0; j < n_mc; ++j) {
    absl::StatusOr<Sample> resample = ResampleWithReplacement(subsample, n, rng);
    if (!resample.ok()) return resample.status();
    absl::StatusOr<Theta> theta_j = priv_fn(*resample, rng);
    if (!theta_j.ok()) return theta_j.status();
    if (absl::Status s = CheckSameShape(*theta_hat, *theta_j); !s.ok()) {
      return s;
    }
    total += static_cast<double>(n) * SquaredDistance(*theta_j, *theta_hat);
  }
  return total / static_cast<double>(n_mc);
}

absl::StatusOr<BlbVarResult> BlbVarWithStatistic(
    const SubsampleStatistic& statistic, const Sample& sample,
    const BlbConfig& config, RngStream& rng) {
  absl::StatusOr<Subsamples> subsamples = DrawSubsamples(sample, config, rng);
  if (!subsamples.ok()) return subsamples.status();
  const std::size_t n = sample.size();
  const double upper = config.SigmaMaxSq(n);

  BlbVarResult result;
  result.subsamples = subsamples->samples.size();
  result.subsample_size = subsamples->size;
  result.n_mc = config.MonteCarlo(n, result.subsamples);
  result.subsample_values.reserve(result.subsamples);
  const RngStream subsample_root = rng.Split(kSubsamples);
  for (std::size_t i = 0; i < subsamples->samples.size(); ++i) {
    RngStream stream = subsample_root.Split(i);
    absl::StatusOr<double> v = statistic(subsamples->samples[i], n, stream);
    if (!v.ok()) return WithSubsampleContext(v.status(), i);
    const double clipped = std::isnan(*v) ? upper : std::clamp(*v, 0.0, upper);
    result.subsample_values.push_back(clipped);
  }

  if (!config.private_aggregation) {
    absl::StatusOr<double> median = LowerMedian(result.subsample_values);
    if (!median.ok()) return median.status();
    result.variance = *median;
    return result;
  }
  MedianConfig median_config{config.epsilon, config.Rho(n), 0.0, upper};
  RngStream aggregation_rng = rng.Split(kAggregation);
  absl::StatusOr<double> median =
      PrivMedian(result.subsample_values, median_config, aggregation_rng);
  if (!median.ok()) return median.status();
  result.variance = *median;
  return result;
}

absl::StatusOr<BlbVarResult> BlbVar(const PointEstimator& theta_fn,
                                    const PrivateEstimator& priv_fn,
                                    const Sample& sample,
                                    const BlbConfig& config, RngStream& rng) {
  absl::StatusOr<std::size_t> s = config.SubsampleCount(sample.size());
  if (!s.ok()) return s.status();
  const std::size_t n_mc = config.MonteCarlo(sample.size(), *s);
  return BlbVarWithStatistic(
      [&](const Sample& subsample, std::size_t n, RngStream& stream) {
        return BootVar(theta_fn, priv_fn, subsample, n, n_mc, stream);
      },
      sample, config, rng);
}

CoverageCurve::CoverageCurve(std::vector<double> abs_deviations)
    : sorted_(std::move(abs_deviations)) {
  std::sort(sorted_.begin(), sorted_.end());
}

double CoverageCurve::Coverage(double radius) const {
  if (sorted_.empty()) return 0.0;
  const auto inside = std::upper_bound(sorted_.begin(), sorted_.end(), radius) -
                      sorted_.begin();
  return static_cast<double>(inside) / static_cast<double>(sorted_.size());
}

absl::StatusOr<CoverageCurve> BootstrapCoverage(
    const PointEstimator& theta_fn, const PrivateEstimator& priv_fn,
    const Sample& subsample, std::size_t n, std::size_t n_mc, RngStream& rng) {
  if (n == 0 || n_mc == 0) {
    return absl::InvalidArgumentError(
        "BootstrapCoverage: n and n_mc must be >= 1");
  }
  absl::StatusOr<Theta> theta_hat = theta_fn(subsample);
  if (!theta_hat.ok()) return theta_hat.status();
  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> deviations;
  deviations.reserve(n_mc);
  for (std::size_t j = 0; j < n_mc; ++j) {
    absl::StatusOr<Sample> resample = ResampleWithReplacement(subsample, n, rng);
    if (!resample.ok()) return resample.status();
    absl::StatusOr<Theta> theta_j = priv_fn(*resample, rng);
    if (!theta_j.ok()) return theta_j.status();
    if (absl::Status s = CheckSameShape(*theta_hat, *theta_j); !s.ok()) {
      return s;
    }
    deviations.push_back(root_n *
                         std::sqrt(SquaredDistance(*theta_hat, *theta_j)));
  }
  return CoverageCurve(std::move(deviations));
}

std::optional<std::size_t> SelectIndex(const std::vector<CoverageCurve>& curves,
                                       const IntervalFamily& family,
                                       double alpha,
                                       const AboveThrNoise& noise) {
  return AboveThrLazy(
      family.count(), curves.size(),
      [&](std::size_t t, std::vector<double>& out) {
        const double radius = family.HalfWidth(t);
        for (std::size_t i = 0; i < curves.size(); ++i) {
          out[i] = curves[i].Coverage(radius);
        }
      },
      1.0 - alpha, noise);
}

absl::StatusOr<BlbQuantResult> BlbQuant(const PointEstimator& theta_fn,
                                        const PrivateEstimator& priv_fn,
                                        const Sample& sample,
                                        const IntervalFamily& family,
                                        const BlbConfig& config,
                                        RngStream& rng) {
  absl::StatusOr<Subsamples> subsamples = DrawSubsamples(sample, config, rng);
  if (!subsamples.ok()) return subsamples.status();
  const std::size_t n = sample.size();

  BlbQuantResult result;
  result.subsamples = subsamples->samples.size();
  result.subsample_size = subsamples->size;
  result.n_mc = config.MonteCarlo(n, result.subsamples);
  result.curves.reserve(result.subsamples);
  const RngStream subsample_root = rng.Split(kSubsamples);
  for (std::size_t i = 0; i < subsamples->samples.size(); ++i) {
    RngStream stream = subsample_root.Split(i);
    absl::StatusOr<CoverageCurve> curve = BootstrapCoverage(
        theta_fn, priv_fn, subsamples->samples[i], n, result.n_mc, stream);
    if (!curve.ok()) return WithSubsampleContext(curve.status(), i);
    result.curves.push_back(*std::move(curve));
  }

  AboveThrNoise noise;
  if (config.private_aggregation) {
    // Location k/2 with k = s, the length of each query vector.
    RngStream noise_rng = rng.Split(kAggregation);
    absl::StatusOr<AboveThrNoise> drawn = DrawAboveThrNoise(
        result.subsamples, family.count(), config.epsilon, noise_rng);
    if (!drawn.ok()) return drawn.status();
    noise = *std::move(drawn);
  } else {
    noise = AboveThrNoise::AtLowerMedian(result.subsamples, family.count());
  }
  result.t_hat = SelectIndex(result.curves, family, config.alpha, noise);
  return result;
}

ConfidenceInterval PercentileCi(double theta_tilde,
                                const IntervalFamily& family,
                                std::optional<std::size_t> t_hat,
                                std::size_t n) {
  ConfidenceInterval ci;
  ci.method = ConfidenceInterval::Method::kPercentile;
  ci.center = theta_tilde;
  if (!t_hat.has_value() || *t_hat == 0 || *t_hat > family.count()) {
    ci.failed = true;
    ci.lo = ci.hi = theta_tilde;
    return ci;
  }
  const double half = family.HalfWidth(*t_hat) / std::sqrt(static_cast<double>(n));
  ci.lo = theta_tilde - half;
  ci.hi = theta_tilde + half;
  ci.index_or_var = static_cast<double>(*t_hat);
  return ci;
}

absl::StatusOr<ConfidenceInterval> NormalCi(double theta_tilde, double sigma2,
                                            std::size_t n, double alpha) {
  if (!(sigma2 >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("NormalCi: variance must be >= 0, got ", sigma2));
  }
  if (!(alpha > 0.0 && alpha < 1.0) || n == 0) {
    return absl::InvalidArgumentError("NormalCi: need alpha in (0,1), n >= 1");
  }
  const double z = NormalQuantile(1.0 - alpha / 2.0);
  const double half = z * std::sqrt(sigma2 / static_cast<double>(n));
  ConfidenceInterval ci;
  ci.method = ConfidenceInterval::Method::kNormal;
  ci.center = theta_tilde;
  ci.lo = theta_tilde - half;
  ci.hi = theta_tilde + half;
  ci.index_or_var = sigma2;
  return ci;
}

absl::StatusOr<ConfidenceInterval> NonprivateBootstrapCi(
    double theta_tilde, const Sample& sample, const PointEstimator& theta_fn,
    const PrivateEstimator& priv_fn, double alpha, std::size_t n_mc,
    RngStream& rng) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    return absl::InvalidArgumentError(
        "NonprivateBootstrapCi: alpha must lie in (0, 1)");
  }
  if (n_mc < 100) {
    return absl::InvalidArgumentError(
        "NonprivateBootstrapCi: need at least 100 resamples");
  }
  absl::StatusOr<Theta> theta_n = theta_fn(sample);
  if (!theta_n.ok()) return theta_n.status();
  const std::size_t n = sample.size();
  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> stats;
  stats.reserve(n_mc);
  for (std::size_t j = 0; j < n_mc; ++j) {
    absl::StatusOr<Sample> resample = ResampleWithReplacement(sample, n, rng);
    if (!resample.ok()) return resample.status();
    absl::StatusOr<Theta> theta_star = priv_fn(*resample, rng);
    if (!theta_star.ok()) return theta_star.status();
    stats.push_back(root_n * (theta_n->scalar() - theta_star->scalar()));
  }
  absl::StatusOr<double> q_lo = Quantile(stats, alpha / 2.0);
  if (!q_lo.ok()) return q_lo.status();
  absl::StatusOr<double> q_hi = Quantile(stats, 1.0 - alpha / 2.0);
  if (!q_hi.ok()) return q_hi.status();
  ConfidenceInterval ci;
  ci.method = ConfidenceInterval::Method::kNonprivate;
  ci.center = theta_tilde;
  ci.lo = theta_tilde + *q_lo / root_n;
  ci.hi = theta_tilde + *q_hi / root_n;
  return ci;
}

}  // namespace dpboot
