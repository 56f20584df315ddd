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

#include "monfg/gp.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <spdlog/spdlog.h>

#include "monfg/errors.h"

namespace monfg {
namespace {

constexpr int kJitterRetries = 3;
// Length scales are kept within [e^-5, e^5] during evidence ascent.
constexpr double kMaxLogLengthScale = 5.0;

}  // namespace

Kernel Kernel::SquaredExponential(int input_dim, int num_tasks) {
  if (input_dim < 1 || num_tasks < 1) {
    throw InvalidArgument("kernel dimensions must be positive");
  }
  return Kernel{KernelKind::kSquaredExponential,
                Eigen::VectorXd::Ones(input_dim),
                Eigen::MatrixXd::Identity(num_tasks, num_tasks)};
}

Kernel Kernel::MultiTask(int input_dim, int num_tasks) {
  Kernel k = SquaredExponential(input_dim, num_tasks);
  k.kind = KernelKind::kMultiTask;
  return k;
}

Eigen::MatrixXd Kernel::TaskCovariance() const {
  if (kind == KernelKind::kSquaredExponential) {
    return Eigen::MatrixXd::Identity(num_tasks(), num_tasks());
  }
  const Eigen::MatrixXd lower = task_factor.triangularView<Eigen::Lower>();
  return lower * lower.transpose();
}

double Kernel::Se(const Eigen::VectorXd& x, const Eigen::VectorXd& x2) const {
  if (x.size() != length_scales.size() || x2.size() != length_scales.size()) {
    throw InvalidArgument("kernel input dimension mismatch");
  }
  const double r2 =
      ((x - x2).array() / length_scales.array()).square().sum();
  return std::exp(-0.5 * r2);
}

double Kernel::Eval(const Eigen::VectorXd& x, const Eigen::VectorXd& x2,
                    int e, int e2) const {
  if (e < 0 || e2 < 0 || e >= num_tasks() || e2 >= num_tasks()) {
    throw InvalidArgument("task index out of range");
  }
  const double k = Se(x, x2);
  if (kind == KernelKind::kSquaredExponential) return k;
  return k * TaskCovariance()(e, e2);
}

Eigen::VectorXd Kernel::Pack() const {
  const int d = input_dim();
  const int t = num_tasks();
  const int extra = kind == KernelKind::kMultiTask ? t * (t + 1) / 2 : 0;
  Eigen::VectorXd packed(d + extra);
  packed.head(d) = length_scales.array().log();
  int k = d;
  if (kind == KernelKind::kMultiTask) {
    for (int r = 0; r < t; ++r) {
      for (int c = 0; c <= r; ++c) packed[k++] = task_factor(r, c);
    }
  }
  return packed;
}

Kernel Kernel::Unpack(const Eigen::VectorXd& packed) const {
  Kernel out = *this;
  const int d = input_dim();
  out.length_scales =
      packed.head(d)
          .array()
          .max(-kMaxLogLengthScale)
          .min(kMaxLogLengthScale)
          .exp();
  if (kind == KernelKind::kMultiTask) {
    int k = d;
    out.task_factor.setZero();
    for (int r = 0; r < num_tasks(); ++r) {
      for (int c = 0; c <= r; ++c) out.task_factor(r, c) = packed[k++];
    }
  }
  return out;
}

GpModel GpModel::Fit(Kernel kernel, double noise,
                     const std::vector<std::vector<double>>& inputs,
                     const std::vector<std::vector<double>>& outputs) {
  if (inputs.empty() || inputs.size() != outputs.size()) {
    throw InvalidArgument("GP training set must be nonempty and paired");
  }
  Eigen::MatrixXd x(inputs.size(), inputs[0].size());
  Eigen::MatrixXd y(outputs.size(), outputs[0].size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].size() != inputs[0].size() ||
        outputs[i].size() != outputs[0].size()) {
      throw InvalidArgument("ragged GP training set");
    }
    x.row(i) = Eigen::Map<const Eigen::RowVectorXd>(inputs[i].data(),
                                                    inputs[i].size());
    y.row(i) = Eigen::Map<const Eigen::RowVectorXd>(outputs[i].data(),
                                                    outputs[i].size());
  }
  return Fit(std::move(kernel), noise, std::move(x), std::move(y));
}

GpModel GpModel::Fit(Kernel kernel, double noise, Eigen::MatrixXd inputs,
                     Eigen::MatrixXd outputs) {
  if (inputs.rows() == 0 || inputs.rows() != outputs.rows()) {
    throw InvalidArgument("GP training set must be nonempty and paired");
  }
  if (inputs.cols() != kernel.input_dim()) {
    throw InvalidArgument("GP inputs do not match kernel length scales");
  }
  if (outputs.cols() != kernel.num_tasks()) {
    throw InvalidArgument("GP outputs do not match kernel task count");
  }
  if (!(noise >= 0.0)) throw InvalidArgument("GP noise must be >= 0");
  if (!inputs.allFinite() || !outputs.allFinite()) {
    throw NumericDomainError("GP training data must be finite");
  }

  GpModel model;
  model.kernel_ = std::move(kernel);
  model.noise_ = noise;
  model.inputs_ = std::move(inputs);
  model.outputs_ = std::move(outputs);
  model.task_cov_ = model.kernel_.TaskCovariance();

  const int n = model.num_points();
  const int t = model.num_tasks();
  model.gram_ = model.ComputeInputGram();
  const Eigen::MatrixXd noiseless = model.NoiselessCovariance();
  // A jitter-free factorisation is kept only if it is well conditioned, so
  // noiseless data is interpolated exactly; otherwise jitter starts at
  // kInitialJitter and grows tenfold.
  const double scale = std::max(noiseless.diagonal().maxCoeff() + noise, 1e-300);
  double jitter = 0.0;
  for (int attempt = -1; attempt <= kJitterRetries; ++attempt) {
    Eigen::MatrixXd c = noiseless;
    c.diagonal().array() += noise + jitter;
    model.llt_.compute(c);
    const double floor = attempt < 0 ? std::sqrt(kInitialJitter * scale) : 0.0;
    if (model.llt_.info() == Eigen::Success &&
        model.llt_.matrixLLT().diagonal().minCoeff() > floor) {
      model.jitter_ = jitter;
      break;
    }
    if (attempt == kJitterRetries) {
      throw NumericDomainError("GP covariance is not positive definite");
    }
    jitter = attempt < 0 ? kInitialJitter : jitter * 10.0;
  }

  // Row-major flattening puts output (i, e) at i*E + e.
  Eigen::MatrixXd yt = model.outputs_.transpose();
  const Eigen::Map<const Eigen::VectorXd> y(yt.data(), n * t);
  const Eigen::VectorXd w = model.llt_.solve(y);
  model.weights_ = Eigen::Map<const Eigen::MatrixXd>(w.data(), t, n).transpose();

  const double log_det =
      2.0 * model.llt_.matrixLLT().diagonal().array().log().sum();
  model.log_evidence_ = -0.5 * y.dot(w) - 0.5 * log_det -
                        0.5 * n * t * std::log(2.0 * std::numbers::pi);
  return model;
}

Eigen::MatrixXd GpModel::ComputeInputGram() const {
  const int n = num_points();
  const int d = input_dim();
  const Eigen::ArrayXd inv_l2 =
      kernel_.length_scales.array().square().inverse();
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (int j = 0; j < i; ++j) {
      double r2 = 0.0;
      for (int dim = 0; dim < d; ++dim) {
        const double diff = inputs_(i, dim) - inputs_(j, dim);
        r2 += diff * diff * inv_l2[dim];
      }
      k(i, j) = k(j, i) = std::exp(-0.5 * r2);
    }
  }
  return k;
}

Eigen::MatrixXd GpModel::Covariance() const {
  Eigen::MatrixXd c = NoiselessCovariance();
  c.diagonal().array() += noise_ + jitter_;
  return c;
}

Eigen::MatrixXd GpModel::NoiselessCovariance() const {
  const Eigen::MatrixXd& kx = gram_;
  const int n = num_points();
  const int t = num_tasks();
  Eigen::MatrixXd c(n * t, n * t);
  for (int j = 0; j < n; ++j) {
    for (int b = 0; b < t; ++b) {
      double* col = &c(0, j * t + b);
      for (int i = 0; i < n; ++i) {
        const double k = kx(i, j);
        for (int a = 0; a < t; ++a) col[i * t + a] = k * task_cov_(a, b);
      }
    }
  }
  return c;
}

Eigen::VectorXd GpModel::CrossInputKernel(const Eigen::VectorXd& x) const {
  if (x.size() != input_dim()) {
    throw InvalidArgument("GP query has wrong input dimension");
  }
  Eigen::VectorXd k(num_points());
  for (int i = 0; i < num_points(); ++i) {
    k[i] = kernel_.Se(x, inputs_.row(i).transpose());
  }
  return k;
}

Eigen::VectorXd GpModel::PosteriorMean(const Eigen::VectorXd& x) const {
  return task_cov_ * (weights_.transpose() * CrossInputKernel(x));
}

Eigen::VectorXd GpModel::PosteriorVariance(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd kx = CrossInputKernel(x);
  const int n = num_points();
  const int t = num_tasks();
  Eigen::VectorXd var(t);
  for (int e = 0; e < t; ++e) {
    Eigen::VectorXd v(n * t);
    for (int i = 0; i < n; ++i) {
      v.segment(i * t, t) = kx[i] * task_cov_.col(e);
    }
    const Eigen::VectorXd w = llt_.matrixL().solve(v);
    var[e] = std::max(0.0, task_cov_(e, e) - w.squaredNorm());
  }
  return var;
}

Eigen::MatrixXd GpModel::PosteriorMeanInputGradient(
    const Eigen::VectorXd& x) const {
  const Eigen::VectorXd kx = CrossInputKernel(x);
  const Eigen::ArrayXd inv_l2 = kernel_.length_scales.array().square().inverse();
  Eigen::MatrixXd dk(num_points(), input_dim());
  for (int i = 0; i < num_points(); ++i) {
    dk.row(i) = (-kx[i] * (x - inputs_.row(i).transpose()).array() * inv_l2)
                    .matrix()
                    .transpose();
  }
  return task_cov_ * weights_.transpose() * dk;
}

Eigen::MatrixXd GpModel::InverseCovariance() const {
  const int m = num_points() * num_tasks();
  Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(m, m);
  llt_.solveInPlace(inv);
  return inv;
}

Eigen::VectorXd GpModel::LogEvidenceGradient() const {
  return LogEvidenceGradient(InverseCovariance());
}

Eigen::VectorXd GpModel::LogEvidenceGradient(
    const Eigen::MatrixXd& inverse) const {
  const int n = num_points();
  const int t = num_tasks();
  const int d = input_dim();
  Eigen::MatrixXd wt = weights_.transpose();
  const Eigen::Map<const Eigen::VectorXd> alpha(wt.data(), n * t);
  Eigen::MatrixXd inner = -inverse;
  inner.noalias() += alpha * alpha.transpose();
  const Eigen::MatrixXd& kx = gram_;

  // d/dh log p(y) = 0.5 tr(inner dC/dh); see the header for the layout.
  Eigen::MatrixXd block_trace(n, n);   // tr(inner_ij F)
  Eigen::MatrixXd task_sum = Eigen::MatrixXd::Zero(t, t);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double tr = 0.0;
      for (int b = 0; b < t; ++b) {
        for (int a = 0; a < t; ++a) {
          const double v = inner(i * t + a, j * t + b);
          tr += v * task_cov_(b, a);
          task_sum(a, b) += kx(i, j) * v;
        }
      }
      block_trace(i, j) = tr;
    }
  }

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(kernel_.Pack().size());
  for (int dim = 0; dim < d; ++dim) {
    const double inv_l2 = 1.0 / (kernel_.length_scales[dim] *
                                 kernel_.length_scales[dim]);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double diff = inputs_(i, dim) - inputs_(j, dim);
        total += block_trace(i, j) * kx(i, j) * diff * diff * inv_l2;
      }
    }
    grad[dim] = 0.5 * total;
  }
  if (kernel_.kind == KernelKind::kMultiTask) {
    const Eigen::MatrixXd lower = kernel_.task_factor.triangularView<Eigen::Lower>();
    const Eigen::MatrixXd g =
        0.5 * (task_sum + task_sum.transpose()) * lower;
    int k = d;
    for (int r = 0; r < t; ++r) {
      for (int c = 0; c <= r; ++c) grad[k++] = g(r, c);
    }
  }
  return grad;
}

double GpModel::LogEvidenceNoiseGradient() const {
  return LogEvidenceNoiseGradient(InverseCovariance());
}

double GpModel::LogEvidenceNoiseGradient(const Eigen::MatrixXd& inverse) const {
  // dC / d log s^2 = s^2 I.
  return 0.5 * noise_ * (weights_.squaredNorm() - inverse.trace());
}

GpModel GpModel::OptimizeEvidence(int max_iters, bool learn_noise,
                                  double min_length_scale) const {
  if (num_points() < 2) {
    throw InvalidArgument("evidence maximisation needs at least 2 points");
  }
  if (!(min_length_scale > 0.0)) {
    throw InvalidArgument("minimum length scale must be > 0");
  }
  const double min_log_l = std::log(min_length_scale);
  const int d = input_dim();
  const int k = static_cast<int>(kernel_.Pack().size());
  auto pack = [&](const GpModel& m) {
    Eigen::VectorXd v(k + (learn_noise ? 1 : 0));
    v.head(k) = m.kernel_.Pack();
    if (learn_noise) v[k] = std::log(m.noise_);
    return v;
  };
  GpModel best = *this;
  double step = 0.1;
  for (int iter = 0; iter < max_iters; ++iter) {
    Eigen::VectorXd grad(k + (learn_noise ? 1 : 0));
    const Eigen::MatrixXd inverse = best.InverseCovariance();
    grad.head(k) = best.LogEvidenceGradient(inverse);
    if (learn_noise) grad[k] = best.LogEvidenceNoiseGradient(inverse);
    if (!grad.allFinite() || !std::isfinite(best.log_evidence_)) {
      spdlog::warn("GP evidence gradient is not finite; keeping "
                   "hyperparameters");
      return best;
    }
    const double norm = grad.norm();
    if (norm < 1e-12) break;
    Eigen::VectorXd proposal =
        pack(best) + (step / std::max(1.0, norm)) * grad;
    proposal.head(d) = proposal.head(d).cwiseMax(min_log_l);
    const double noise =
        learn_noise ? std::exp(std::clamp(proposal[k], kMinLogNoise,
                                          kMaxLogNoise))
                    : noise_;
    try {
      GpModel candidate = Fit(best.kernel_.Unpack(proposal.head(k)), noise,
                              inputs_, outputs_);
      if (std::isfinite(candidate.log_evidence_) &&
          candidate.log_evidence_ > best.log_evidence_) {
        best = std::move(candidate);
        step *= 1.5;
        continue;
      }
    } catch (const NumericDomainError&) {
      // Rejected like any other non-improving step.
    }
    step *= 0.5;
  }
  return best;
}

}  // namespace monfg
