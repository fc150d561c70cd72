// Copyright 2026 The rkwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rkwave/model.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "rkwave/errors.hpp"
#include "rkwave/resolvent.hpp"

namespace rkwave {

struct PerturbationModel::Cache {
  explicit Cache(int n)
      : n(n), flags(new std::once_flag[n * (n + 1) / 2]),
        tables(n * (n + 1) / 2) {}
  int n;
  std::unique_ptr<std::once_flag[]> flags;
  std::vector<CorrelationTable> tables;
};

namespace {

void require_same_dimension(const std::vector<PotentialProfile>& ps) {
  if (ps.empty()) throw DomainError("model needs at least one profile");
  for (const auto& p : ps) {
    if (p.dim() != ps.front().dim()) {
      throw DomainError("all profiles of a model must share one dimension");
    }
  }
  require_pipeline_dimension(ps.front().dim());
}

}  // namespace

PerturbationModel PerturbationModel::rank_one(double alpha,
                                              PotentialProfile phi) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError("rank-one coupling alpha must be >= 0");
  }
  PerturbationModel m;
  m.rank_one_ = true;
  m.alpha_ = alpha;
  m.base_.push_back(std::move(phi));
  require_same_dimension(m.base_);
  m.mixing_ = Eigen::MatrixXd::Identity(1, 1);
  m.cache_ = std::make_shared<Cache>(1);
  return m;
}

PerturbationModel PerturbationModel::finite_rank(
    std::vector<PotentialProfile> profiles) {
  require_same_dimension(profiles);
  PerturbationModel m;
  m.rank_one_ = false;
  m.alpha_ = 1.0;
  m.base_ = std::move(profiles);
  const int n = m.size();
  m.mixing_ = Eigen::MatrixXd::Identity(n, n);
  m.cache_ = std::make_shared<Cache>(n);
  return m;
}

PerturbationModel PerturbationModel::with_mixing(
    const Eigen::MatrixXd& q) const {
  if (q.rows() != size() || q.cols() != size()) {
    throw DomainError("mixing matrix has the wrong shape");
  }
  PerturbationModel m = *this;
  m.mixing_ = q;
  return m;
}

PerturbationModel PerturbationModel::with_alpha(double alpha) const {
  if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0");
  PerturbationModel m = *this;
  m.alpha_ = alpha;
  return m;
}

Eigen::VectorXd PerturbationModel::masses() const {
  Eigen::VectorXd base(size());
  for (int j = 0; j < size(); ++j) base[j] = base_[j].mass();
  return mixing_ * base;
}

int PerturbationModel::k0() const {
  int k = 0;
  const auto m = masses();
  for (int a = 0; a < size(); ++a) {
    if (std::fabs(m[a]) > 1e-10) ++k;
  }
  return k;
}

double PerturbationModel::sigma() const { return masses().norm(); }

double PerturbationModel::value(int a, const double* x) const {
  double s = 0.0;
  for (int j = 0; j < size(); ++j) {
    if (mixing_(a, j) != 0.0) s += mixing_(a, j) * base_[j](x);
  }
  return s;
}

cplx PerturbationModel::fourier(int a, double xi) const {
  cplx s = 0.0;
  for (int j = 0; j < size(); ++j) {
    if (mixing_(a, j) != 0.0) s += mixing_(a, j) * base_[j].fourier(xi);
  }
  return s;
}

double PerturbationModel::radial_fourier(int a, double k) const {
  double s = 0.0;
  for (int j = 0; j < size(); ++j) {
    if (base_[j].center() != base_.front().center()) {
      throw DomainError("radial transform needs profiles with one center");
    }
    if (mixing_(a, j) != 0.0) s += mixing_(a, j) * base_[j].radial_fourier(k);
  }
  return s;
}

const CorrelationTable& PerturbationModel::correlation(int i, int j) const {
  if (i > j) std::swap(i, j);
  const int idx = j * (j + 1) / 2 + i;
  std::call_once(cache_->flags[idx], [&] {
    cache_->tables[idx] = CorrelationTable::build(base_[i], base_[j]);
  });
  return cache_->tables[idx];
}

Eigen::MatrixXd PerturbationModel::gram() const {
  const int n = size();
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      g(i, j) = g(j, i) = correlation(i, j).overlap();
    }
  }
  return mixing_ * g * mixing_.transpose();
}

Eigen::MatrixXcd PerturbationModel::pair_matrix(KernelFamily family, Sign sign,
                                                double lambda,
                                                const QuadConfig& cfg) const {
  const int n = size();
  const int d = dim();
  if (family != KernelFamily::fundamental && !(lambda > 0.0)) {
    throw DomainError("lambda must be > 0");
  }
  std::function<cplx(double)> kernel;
  double omega = lambda;
  switch (family) {
    case KernelFamily::full:
      kernel = [=](double r) { return free_kernel(d, sign, lambda, r); };
      break;
    case KernelFamily::remainder:
      kernel = [=](double r) { return remainder(d, sign, lambda, r); };
      break;
    case KernelFamily::fundamental:
      kernel = [=](double r) { return cplx(fundamental_kernel(d, r), 0.0); };
      omega = 0.0;
      break;
  }
  Eigen::MatrixXcd b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const auto r = integrate_against(correlation(i, j), kernel, omega, cfg);
      require_converged(r, "pair integral");
      b(i, j) = b(j, i) = r.value;
    }
  }
  const Eigen::MatrixXcd q = mixing_.cast<cplx>();
  return q * b * q.transpose();
}

void PerturbationModel::validate() const {
  for (const auto& p : base_) p.validate();
  if (!rank_one_) {
    const auto g = gram();
    for (int i = 0; i < size(); ++i) {
      for (int j = 0; j < size(); ++j) {
        const double want = i == j ? 1.0 : 0.0;
        if (std::fabs(g(i, j) - want) > 1e-8) {
          std::ostringstream os;
          os << "finite-rank profiles are not orthonormal: <psi_" << i
             << ", psi_" << j << "> = " << g(i, j);
          throw DomainError(os.str());
        }
      }
    }
  }
}

std::string PerturbationModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << (rank_one_ ? "rank_one" : "finite_rank") << "(alpha=" << alpha_;
  for (const auto& p : base_) os << "," << p.describe();
  os << ",mixing=[";
  for (int i = 0; i < mixing_.rows(); ++i) {
    for (int j = 0; j < mixing_.cols(); ++j) {
      os << (i || j ? "," : "") << mixing_(i, j);
    }
  }
  os << "])";
  return os.str();
}

}  // namespace rkwave
