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

#include "dpboot/logistic.h"

#include <algorithm>
#include <cmath>

#include "Eigen/Cholesky"
#include "absl/strings/str_cat.h"
#include "dpboot/noise.h"

namespace dpboot {

namespace {

// log(1 + e^z) without overflow.
double Softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

LogisticObjective::LogisticObjective(const Sample& sample, double lambda,
                                     std::span<const double> tilt)
    : sample_(sample),
      dim_(sample.dim()),
      lambda_(lambda),
      tilt_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sample.dim()))) {
  for (std::size_t j = 0; j < tilt.size() && j < dim_; ++j) {
    tilt_[static_cast<Eigen::Index>(j)] = tilt[j];
  }
}

double LogisticObjective::Value(const Eigen::VectorXd& theta) const {
  const std::size_t n = sample_.size();
  const auto labels = sample_.labels();
  double risk = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = sample_.row(i);
    const double z =
        Eigen::Map<const Eigen::VectorXd>(x.data(),
                                          static_cast<Eigen::Index>(dim_))
            .dot(theta);
    risk += Softplus(z) - labels[i] * z;
  }
  return risk / static_cast<double>(n) + 0.5 * lambda_ * theta.squaredNorm() +
         tilt_.dot(theta);
}

Eigen::VectorXd LogisticObjective::Gradient(
    const Eigen::VectorXd& theta) const {
  const std::size_t n = sample_.size();
  const auto labels = sample_.labels();
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(theta.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Map<const Eigen::VectorXd> x(
        sample_.row(i).data(), static_cast<Eigen::Index>(dim_));
    grad.noalias() += (Sigmoid(x.dot(theta)) - labels[i]) * x;
  }
  grad /= static_cast<double>(n);
  grad.noalias() += lambda_ * theta + tilt_;
  return grad;
}

Eigen::MatrixXd LogisticObjective::Hessian(
    const Eigen::VectorXd& theta) const {
  const std::size_t n = sample_.size();
  const auto d = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Map<const Eigen::VectorXd> x(sample_.row(i).data(), d);
    const double p = Sigmoid(x.dot(theta));
    hess.selfadjointView<Eigen::Lower>().rankUpdate(x, p * (1.0 - p));
  }
  hess = hess.selfadjointView<Eigen::Lower>();
  hess /= static_cast<double>(n);
  hess.diagonal().array() += lambda_;
  return hess;
}

absl::StatusOr<LogRegSolution> LogRegFit(const Sample& sample, double lambda,
                                         std::span<const double> tilt,
                                         const NewtonOptions& options) {
  if (sample.kind() != Sample::Kind::kRegression) {
    return absl::InvalidArgumentError("LogRegFit: requires a regression sample");
  }
  if (!(lambda >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("LogRegFit: lambda must be >= 0, got ", lambda));
  }
  if (!(options.tolerance > 0.0)) {
    return absl::InvalidArgumentError("LogRegFit: tolerance must be positive");
  }
  if (!tilt.empty() && tilt.size() != sample.dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "LogRegFit: tilt has length ", tilt.size(), ", expected ",
        sample.dim()));
  }

  const LogisticObjective objective(sample, lambda, tilt);
  Eigen::VectorXd theta =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sample.dim()));
  double value = objective.Value(theta);
  Eigen::VectorXd grad = objective.Gradient(theta);
  double grad_norm = grad.norm();

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (grad_norm <= options.tolerance) {
      return LogRegSolution{
          Theta{std::vector<double>(theta.data(), theta.data() + theta.size())},
          iter, grad_norm};
    }
    Eigen::VectorXd step;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(objective.Hessian(theta));
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
      step = -ldlt.solve(grad);
    }
    double slope = step.size() > 0 ? grad.dot(step) : 0.0;
    if (step.size() == 0 || !step.allFinite() || !(slope < 0.0)) {
      step = -grad;  // singular Hessian (e.g. separable data, lambda = 0)
      slope = -grad_norm * grad_norm;
    }

    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
      const Eigen::VectorXd candidate = theta + t * step;
      const double candidate_value = objective.Value(candidate);
      if (candidate_value <= value + options.armijo * t * slope) {
        theta = candidate;
        value = candidate_value;
        accepted = true;
        break;
      }
      // Near the optimum the predicted decrease drops below the resolution
      // of F; fall back to requiring a smaller gradient.
      if (std::fabs(t * slope) < 1e-13 * (1.0 + std::fabs(value))) {
        const Eigen::VectorXd candidate_grad = objective.Gradient(candidate);
        if (candidate_grad.norm() < grad_norm) {
          theta = candidate;
          value = candidate_value;
          accepted = true;
        }
        break;
      }
    }
    if (!accepted) break;
    grad = objective.Gradient(theta);
    grad_norm = grad.norm();
  }
  if (grad_norm <= options.tolerance) {
    return LogRegSolution{
        Theta{std::vector<double>(theta.data(), theta.data() + theta.size())},
        options.max_iterations, grad_norm};
  }
  return absl::AbortedError(absl::StrCat(
      "LogRegFit: Newton did not converge; last gradient norm ", grad_norm));
}

ObjPertConfig ObjPertConfig::ForLogistic(double radius, std::size_t dim,
                                         double epsilon, double delta) {
  ObjPertConfig config;
  config.epsilon = epsilon;
  config.delta = delta;
  config.lip0 = radius;
  config.lip1 = radius * radius / 4.0;
  config.hessian_rank = 1;
  config.dim = dim;
  return config;
}

absl::Status ObjPertConfig::Validate() const {
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError("ObjPertConfig: epsilon must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("ObjPertConfig: delta must lie in (0, 1)");
  }
  if (!(lip0 > 0.0) || !(lip1 >= 0.0) || !(calib_const > 0.0)) {
    return absl::InvalidArgumentError(
        "ObjPertConfig: Lipschitz and calibration constants must be positive");
  }
  if (dim == 0 || hessian_rank == 0) {
    return absl::InvalidArgumentError(
        "ObjPertConfig: dim and hessian_rank must be >= 1");
  }
  return absl::OkStatus();
}

double ObjPertConfig::NoiseVariance(std::size_t n) const {
  const auto nn = static_cast<double>(n);
  return calib_const * lip0 * lip0 *
         (static_cast<double>(dim) + std::log(1.0 / delta)) /
         (nn * nn * epsilon * epsilon);
}

double ObjPertConfig::Regularization(std::size_t n) const {
  return calib_const * static_cast<double>(std::min(hessian_rank, dim)) *
         lip1 / (static_cast<double>(n) * epsilon);
}

absl::StatusOr<Theta> ObjPertLogReg(const Sample& sample,
                                    const ObjPertConfig& config,
                                    RngStream& rng,
                                    const NewtonOptions& options) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  if (sample.kind() != Sample::Kind::kRegression ||
      sample.dim() != config.dim) {
    return absl::InvalidArgumentError(absl::StrCat(
        "ObjPertLogReg: expected a regression sample of dimension ",
        config.dim));
  }
  const std::size_t n = sample.size();
  absl::StatusOr<std::vector<double>> tilt = GaussianVectorSample(
      config.dim, std::sqrt(config.NoiseVariance(n)), rng);
  if (!tilt.ok()) return tilt.status();
  absl::StatusOr<LogRegSolution> fit =
      LogRegFit(sample, config.Regularization(n), *tilt, options);
  if (!fit.ok()) return fit.status();
  return std::move(fit->theta);
}

}  // namespace dpboot
