// Copyright 2026 The MONFG Opponent Modelling Authors
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

#ifndef MONFG_GP_H_
#define MONFG_GP_H_

// Zero-mean Gaussian-process regression for vector-valued targets.
//
// Outputs are indexed by task e. With the multi-task kernel
//   k(<x, e>, <x', e'>) = k_SE(x, x') F[e, e'],
// the covariance of all N*E training outputs is C = K_x (x) F + s^2 I, where
// (x) is the Kronecker product and output (i, e) sits at row i*E + e. The
// plain SE kernel is the special case F = I (independent tasks sharing one
// input kernel).
//
// F is stored through a lower-triangular factor L_F with F = L_F L_F^T so it
// stays positive semidefinite while the evidence is maximised.

#include <vector>

#include <Eigen/Dense>

namespace monfg {

inline constexpr double kDefaultGpNoise = 1e-4;
inline constexpr double kInitialJitter = 1e-8;
inline constexpr int kDefaultEvidenceIters = 10;
inline constexpr double kMinLogNoise = -13.815510557964274;  // log 1e-6
inline constexpr double kMaxLogNoise = 9.210340371976184;    // log 1e4

enum class KernelKind { kSquaredExponential, kMultiTask };

struct Kernel {
  KernelKind kind = KernelKind::kMultiTask;
  Eigen::VectorXd length_scales;
  Eigen::MatrixXd task_factor;  // L_F; identity for kSquaredExponential

  // l_d = 1, F = I.
  static Kernel SquaredExponential(int input_dim, int num_tasks = 1);
  static Kernel MultiTask(int input_dim, int num_tasks);

  int input_dim() const { return static_cast<int>(length_scales.size()); }
  int num_tasks() const { return static_cast<int>(task_factor.rows()); }
  Eigen::MatrixXd TaskCovariance() const;

  double Se(const Eigen::VectorXd& x, const Eigen::VectorXd& x2) const;
  // k_SE(x, x') F[e, e'] for kMultiTask; k_SE(x, x') for
  // kSquaredExponential, whose tasks do not interact.
  double Eval(const Eigen::VectorXd& x, const Eigen::VectorXd& x2, int e,
              int e2) const;

  // Hyperparameters in optimisation coordinates: log l_d, then the lower
  // triangle of L_F row by row (kMultiTask only).
  Eigen::VectorXd Pack() const;
  Kernel Unpack(const Eigen::VectorXd& packed) const;
};

class GpModel {
 public:
  // Throws InvalidArgument on an empty or ragged training set and
  // NumericDomainError when C cannot be factorised even after raising the
  // jitter tenfold three times. No jitter is added when C is well
  // conditioned without it.
  static GpModel Fit(Kernel kernel, double noise,
                     const std::vector<std::vector<double>>& inputs,
                     const std::vector<std::vector<double>>& outputs);
  static GpModel Fit(Kernel kernel, double noise, Eigen::MatrixXd inputs,
                     Eigen::MatrixXd outputs);

  const Kernel& kernel() const { return kernel_; }
  double noise() const { return noise_; }
  double jitter() const { return jitter_; }
  int num_points() const { return static_cast<int>(inputs_.rows()); }
  int input_dim() const { return static_cast<int>(inputs_.cols()); }
  int num_tasks() const { return static_cast<int>(outputs_.cols()); }

  // Input-kernel Gram matrix K_x and full covariance C (with noise and
  // jitter).
  Eigen::MatrixXd InputGram() const { return gram_; }
  Eigen::MatrixXd Covariance() const;

  Eigen::VectorXd PosteriorMean(const Eigen::VectorXd& x) const;
  // Per task, clipped below at zero.
  Eigen::VectorXd PosteriorVariance(const Eigen::VectorXd& x) const;
  // d mean_e / d x_d, tasks by input dimensions.
  Eigen::MatrixXd PosteriorMeanInputGradient(const Eigen::VectorXd& x) const;

  double LogEvidence() const { return log_evidence_; }
  // Gradient of LogEvidence() in Kernel::Pack() coordinates.
  Eigen::VectorXd LogEvidenceGradient() const;

  // d log p(y) / d log s^2.
  double LogEvidenceNoiseGradient() const;

  // Ascent on the log marginal likelihood over the kernel hyperparameters,
  // and over log s^2 (clamped to [kMinLogNoise, kMaxLogNoise]) when
  // `learn_noise` is set. Proposed length scales are raised to at least
  // `min_length_scale`. Steps are only accepted when they raise the
  // evidence, so the result never has lower evidence than *this. Needs at
  // least two points.
  GpModel OptimizeEvidence(int max_iters, bool learn_noise = false,
                           double min_length_scale = 0.0067379469990854670)
      const;

 private:
  GpModel() = default;

  Eigen::MatrixXd ComputeInputGram() const;
  Eigen::MatrixXd InverseCovariance() const;
  Eigen::VectorXd LogEvidenceGradient(const Eigen::MatrixXd& inverse) const;
  double LogEvidenceNoiseGradient(const Eigen::MatrixXd& inverse) const;
  Eigen::MatrixXd NoiselessCovariance() const;
  Eigen::VectorXd CrossInputKernel(const Eigen::VectorXd& x) const;

  Kernel kernel_;
  double noise_ = kDefaultGpNoise;
  double jitter_ = kInitialJitter;
  Eigen::MatrixXd inputs_;   // N x D
  Eigen::MatrixXd outputs_;  // N x E
  Eigen::MatrixXd task_cov_;
  Eigen::MatrixXd gram_;     // K_x
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::MatrixXd weights_;  // C^{-1} y reshaped to N x E
  double log_evidence_ = 0.0;
};

}  // namespace monfg

#endif  // MONFG_GP_H_
