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

#ifndef DPBOOT_BLB_H_
#define DPBOOT_BLB_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpboot/above_threshold.h"
#include "dpboot/estimators.h"
#include "dpboot/rng.h"
#include "dpboot/sample.h"

namespace dpboot {

// Nested symmetric sets I_t = [-h t, h t], t = 1..count.
class IntervalFamily {
 public:
  static absl::StatusOr<IntervalFamily> Create(double h, std::size_t count);

  double h() const { return h_; }
  std::size_t count() const { return count_; }
  double HalfWidth(std::size_t t) const { return h_ * static_cast<double>(t); }

 private:
  IntervalFamily(double h, std::size_t count) : h_(h), count_(count) {}

  double h_;
  std::size_t count_;
};

// Hyperparameters shared by the private bag-of-little-bootstraps routines.
// Unset optionals take their n-dependent defaults.
struct BlbConfig {
  double K = 10.0;           // s = floor(K log(n) / epsilon)
  double epsilon = 1.0;      // budget of the interval mechanism
  double alpha = 0.05;
  double c = 1.0;            // BLBquant resolution: h = c / sqrt(n)
  std::optional<double> rho;           // default 1 / n
  std::optional<double> sigma_max_sq;  // default n^2
  std::optional<std::size_t> n_mc;     // default MonteCarloCount(n, s)

  // Ablation switches. Either one voids the privacy guarantee.
  bool private_aggregation = true;  // false: exact median / order statistic
  bool upsampled = false;           // true: every "subsample" is all of P_n

  absl::Status Validate() const;
  absl::StatusOr<std::size_t> SubsampleCount(std::size_t n) const;
  double Rho(std::size_t n) const;
  double SigmaMaxSq(std::size_t n) const;
  std::size_t MonteCarlo(std::size_t n, std::size_t s) const;
};

// min{10000, max{100, n^1.5 / (s log n)}}.
std::size_t MonteCarloCount(std::size_t n, std::size_t s);

struct ConfidenceInterval {
  enum class Method { kPercentile, kNormal, kNonprivate };

  double lo = 0.0;
  double hi = 0.0;
  double center = 0.0;  // the private point estimate
  Method method = Method::kPercentile;
  double index_or_var = 0.0;  // t_hat (percentile) or sigma~^2 (normal)
  bool failed = false;

  double width() const { return hi - lo; }
};

std::string_view MethodName(ConfidenceInterval::Method method);

// BootVar: with theta_hat = theta_fn(subsample), draws n_mc resamples of size
// n from the subsample and returns mean_j ||sqrt(n) (priv_fn(P*_j) -
// theta_hat)||^2.
absl::StatusOr<double> BootVar(const PointEstimator& theta_fn,
                               const PrivateEstimator& priv_fn,
                               const Sample& subsample, std::size_t n,
                               std::size_t n_mc, RngStream& rng);

struct BlbVarResult {
  double variance = 0.0;                 // the private aggregate
  std::vector<double> subsample_values;  // v_1..v_s after clipping
  std::size_t subsamples = 0;
  std::size_t subsample_size = 0;
  std::size_t n_mc = 0;
};

// Per-subsample statistic hook for BlbVar: (subsample, n, stream) -> v_i.
using SubsampleStatistic = std::function<absl::StatusOr<double>(
    const Sample&, std::size_t, RngStream&)>;

// BLBvar: v_i = BootVar on each of s disjoint subsamples, clipped into
// [0, sigma_max^2], aggregated by PrivMedian(v, eps, rho, [0, sigma_max^2]).
// epsilon-DP: one record touches one v_i.
absl::StatusOr<BlbVarResult> BlbVar(const PointEstimator& theta_fn,
                                    const PrivateEstimator& priv_fn,
                                    const Sample& sample,
                                    const BlbConfig& config, RngStream& rng);

// BlbVar with an arbitrary per-subsample statistic in place of BootVar.
absl::StatusOr<BlbVarResult> BlbVarWithStatistic(
    const SubsampleStatistic& statistic, const Sample& sample,
    const BlbConfig& config, RngStream& rng);

// Bootstrap deviations of one subsample: sorted |sqrt(n)(theta_hat - theta_j)|.
// Coverage(r) is the fraction with deviation <= r, so p_hat_i(t) =
// Coverage(h t) is nondecreasing in t by construction.
class CoverageCurve {
 public:
  explicit CoverageCurve(std::vector<double> abs_deviations);

  double Coverage(double radius) const;
  std::size_t draws() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

// Draws n_mc resamples of size n from `subsample` and records
// |sqrt(n) (theta_fn(subsample) - priv_fn(P*_j))|_2 for each.
absl::StatusOr<CoverageCurve> BootstrapCoverage(
    const PointEstimator& theta_fn, const PrivateEstimator& priv_fn,
    const Sample& subsample, std::size_t n, std::size_t n_mc, RngStream& rng);

// The AboveThr scan over p_hat(t) = (curve_i.Coverage(h t))_i against
// tau = 1 - alpha.
std::optional<std::size_t> SelectIndex(const std::vector<CoverageCurve>& curves,
                                       const IntervalFamily& family,
                                       double alpha,
                                       const AboveThrNoise& noise);

struct BlbQuantResult {
  std::optional<std::size_t> t_hat;  // nullopt: no set reached 1 - alpha
  std::vector<CoverageCurve> curves;
  std::size_t subsamples = 0;
  std::size_t subsample_size = 0;
  std::size_t n_mc = 0;
};

// BLBquant: per-subsample coverage curves, then AboveThr with
// xi0 ~ Laplace(s/2, 2/eps), xi_t ~ Laplace(0, 4/eps). epsilon-DP.
absl::StatusOr<BlbQuantResult> BlbQuant(const PointEstimator& theta_fn,
                                        const PrivateEstimator& priv_fn,
                                        const Sample& sample,
                                        const IntervalFamily& family,
                                        const BlbConfig& config,
                                        RngStream& rng);

// theta~ + n^{-1/2} I_{t_hat}; a failed interval when t_hat is nullopt.
ConfidenceInterval PercentileCi(double theta_tilde,
                                const IntervalFamily& family,
                                std::optional<std::size_t> t_hat,
                                std::size_t n);

// theta~ -/+ z_{1 - alpha/2} sqrt(sigma2 / n).
absl::StatusOr<ConfidenceInterval> NormalCi(double theta_tilde, double sigma2,
                                            std::size_t n, double alpha);

// Full-sample bootstrap of U* = sqrt(n)(theta(P_n) - theta~(P*_n)):
// theta~ + n^{-1/2} [q_{alpha/2}(U*), q_{1-alpha/2}(U*)]. Not private.
absl::StatusOr<ConfidenceInterval> NonprivateBootstrapCi(
    double theta_tilde, const Sample& sample, const PointEstimator& theta_fn,
    const PrivateEstimator& priv_fn, double alpha, std::size_t n_mc,
    RngStream& rng);

}  // namespace dpboot

#endif  // DPBOOT_BLB_H_
