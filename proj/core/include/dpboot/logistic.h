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

#ifndef DPBOOT_LOGISTIC_H_
#define DPBOOT_LOGISTIC_H_

#include <cstddef>
#include <span>
#include <vector>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpboot/estimators.h"
#include "dpboot/rng.h"
#include "dpboot/sample.h"

namespace dpboot {

// The tilted, ridge-regularized empirical logistic risk
//   F(theta) = P_n [log(1 + exp(<x, theta>)) - y <x, theta>]
//              + (lambda / 2) ||theta||^2 + <w, theta>.
// Holds a reference to the sample, which must outlive it.
class LogisticObjective {
 public:
  LogisticObjective(const Sample& sample, double lambda,
                    std::span<const double> tilt);

  std::size_t dim() const { return dim_; }

  double Value(const Eigen::VectorXd& theta) const;
  Eigen::VectorXd Gradient(const Eigen::VectorXd& theta) const;
  // P_n [p (1 - p) x x^T] + lambda I, with p = sigmoid(<x, theta>).
  Eigen::MatrixXd Hessian(const Eigen::VectorXd& theta) const;

 private:
  const Sample& sample_;
  std::size_t dim_;
  double lambda_;
  Eigen::VectorXd tilt_;
};

struct NewtonOptions {
  double tolerance = 1e-10;  // on ||grad F||_2
  int max_iterations = 100;
  double armijo = 1e-4;
};

struct LogRegSolution {
  Theta theta;
  int iterations = 0;
  double gradient_norm = 0.0;
};

// Damped Newton with Armijo backtracking. An empty `tilt` means w = 0.
// Returns an Aborted status carrying the last gradient norm if the tolerance
// is not reached within max_iterations.
absl::StatusOr<LogRegSolution> LogRegFit(const Sample& sample, double lambda,
                                         std::span<const double> tilt,
                                         const NewtonOptions& options = {});

// Objective perturbation for a loss with Lipschitz constants lip0 (value)
// and lip1 (gradient) and Hessian rank at most hessian_rank:
//   sigma_n^2 = C lip0^2 (d + log(1/delta)) / (n^2 eps^2),
//   lambda_n  = C min(r, d) lip1 / (n eps).
// For logistic loss with ||x||_2 <= rad: lip0 = rad, lip1 = rad^2 / 4, r = 1.
struct ObjPertConfig {
  double epsilon = 1.0;
  double delta = 1e-6;
  double lip0 = 1.0;
  double lip1 = 0.25;
  std::size_t hessian_rank = 1;
  double calib_const = 2.0;
  std::size_t dim = 1;

  static ObjPertConfig ForLogistic(double radius, std::size_t dim,
                                   double epsilon, double delta);

  absl::Status Validate() const;
  double NoiseVariance(std::size_t n) const;
  double Regularization(std::size_t n) const;
};

// Draws W ~ N(0, sigma_n^2 I_d) and returns the minimizer of F with
// lambda = lambda_n and tilt W. (epsilon, delta)-DP.
absl::StatusOr<Theta> ObjPertLogReg(const Sample& sample,
                                    const ObjPertConfig& config,
                                    RngStream& rng,
                                    const NewtonOptions& options = {});

}  // namespace dpboot

#endif  // DPBOOT_LOGISTIC_H_
