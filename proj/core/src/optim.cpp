// SPDX-License-Identifier: Apache-2.0
#include "mimodiag/optim.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace mimodiag {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double trace_real(const Matrix& m) { return m.trace().real(); }

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

IcScenario::IcScenario(std::array<std::array<Matrix, 2>, 2> channels,
                       double power)
    : IcScenario(std::move(channels), power,
                 {Matrix(), Matrix()}) {}

IcScenario::IcScenario(std::array<std::array<Matrix, 2>, 2> channels,
                       double power, std::array<Matrix, 2> noise)
    : h(std::move(channels)), power_budget(power), noise_cov(std::move(noise)) {
  if (power_budget <= 0.0) {
    throw std::domain_error("IcScenario: power budget must be positive");
  }
  for (int j = 0; j < 2; ++j) {
    const Eigen::Index n = h[j][0].rows();
    if (h[j][1].rows() != n) {
      throw std::domain_error("IcScenario: inconsistent receive dimensions");
    }
    if (noise_cov[j].size() == 0) {
      noise_cov[j] = Matrix::Identity(n, n);
    } else if (noise_cov[j].rows() != n || noise_cov[j].cols() != n) {
      throw std::domain_error("IcScenario: noise covariance dimension mismatch");
    }
  }
  for (int k = 0; k < 2; ++k) {
    if (h[0][k].cols() != h[1][k].cols()) {
      throw std::domain_error("IcScenario: inconsistent transmit dimensions");
    }
  }
}

RealVector waterfill(const RealVector& channel_power_gains, double total_power) {
  const Eigen::Index n = channel_power_gains.size();
  if (n == 0) throw std::domain_error("waterfill: empty gain vector");
  if (channel_power_gains.minCoeff() <= 0.0) {
    throw std::domain_error("waterfill: gains must be strictly positive");
  }
  if (total_power <= 0.0) {
    throw std::domain_error("waterfill: total power must be positive");
  }
  // Sort inverse gains ascending; channels fill until the water level
  // drops below the next inverse gain.
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return channel_power_gains(a) > channel_power_gains(b);
  });
  double inv_sum = 0.0;
  double mu = 0.0;
  Eigen::Index active = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    inv_sum += 1.0 / channel_power_gains(idx[static_cast<std::size_t>(k)]);
    const double level = (total_power + inv_sum) / static_cast<double>(k + 1);
    const double next_inv =
        k + 1 < n ? 1.0 / channel_power_gains(idx[static_cast<std::size_t>(k + 1)])
                  : std::numeric_limits<double>::infinity();
    if (level <= next_inv) {
      mu = level;
      active = k + 1;
      break;
    }
  }
  RealVector p = RealVector::Zero(n);
  for (Eigen::Index k = 0; k < active; ++k) {
    const Eigen::Index i = idx[static_cast<std::size_t>(k)];
    p(i) = mu - 1.0 / channel_power_gains(i);
  }
  return p;
}

namespace {

// Precoder update of the WMMSE sweep: V = (J + mu I)^{-1} B with mu >= 0
// chosen so trace(V V^H) <= power, by bisection on the monotone power curve.
Matrix wmmse_precoder(const Matrix& j_mat, const Matrix& b, double power) {
  const Eigen::Index m = j_mat.rows();
  auto solve = [&](double mu) {
    return Matrix((j_mat + mu * Matrix::Identity(m, m)).ldlt().solve(b));
  };
  auto tx_power = [&](const Matrix& v) { return v.squaredNorm(); };

  // mu = 0 may already be feasible (J PD from the noise term).
  const double floor_mu = 1e-14 * std::max(1.0, j_mat.norm());
  Matrix v = solve(floor_mu);
  if (tx_power(v) <= power) return v;

  double lo = floor_mu;
  double hi = std::max(1.0, b.norm() / std::sqrt(power));
  while (tx_power(solve(hi)) > power) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tx_power(solve(mid)) > power) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * hi) break;
  }
  return solve(hi);
}

double ic_sum_rate(const IcScenario& sc, const std::array<Matrix, 2>& v) {
  return ic_user_capacity(sc, 0, v[0], v[1]) +
         ic_user_capacity(sc, 1, v[1], v[0]);
}

}  // namespace

Matrix ic_interference_cov(const IcScenario& sc, int k, const Matrix& v_other) {
  if (k != 0 && k != 1) {
    throw std::domain_error("ic_interference_cov: user index must be 0 or 1");
  }
  const int j = 1 - k;
  const Matrix cross = sc.h[k][j] * v_other;
  return hermitize(cross * cross.adjoint() + sc.noise_cov[k]);
}

double ic_user_capacity(const IcScenario& sc, int k, const Matrix& v_self,
                        const Matrix& v_other) {
  const Matrix s_z = ic_interference_cov(sc, k, v_other);
  const Matrix h_eff = inv_sqrt(s_z) * sc.h[k][k];
  return capacity(h_eff, TransmitCovariance(hermitize(v_self * v_self.adjoint())));
}

WmmseResult wmmse_ic(const IcScenario& sc, int max_iters, double conv_tol,
                     std::uint64_t seed) {
  if (max_iters < 1) throw std::domain_error("wmmse_ic: max_iters must be >= 1");
  if (conv_tol <= 0.0) throw std::domain_error("wmmse_ic: conv_tol must be > 0");

  std::array<Matrix, 2> v;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < 2; ++k) {
    const Eigen::Index m = sc.h[k][k].cols();
    const Eigen::Index n = sc.h[k][k].rows();
    const Eigen::Index d = std::min(m, n);
    Matrix init = Matrix::Identity(m, d);
    // Small seeded perturbation breaks symmetric fixed points.
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        init(r, c) += 0.01 * Complex(gauss(rng), gauss(rng));
      }
    }
    v[k] = init * std::sqrt(sc.power_budget / init.squaredNorm());
  }

  WmmseResult out;
  out.trace.objective_history.reserve(static_cast<std::size_t>(max_iters) + 1);
  double prev_obj = ic_sum_rate(sc, v);
  out.trace.objective_history.push_back(prev_obj);

  std::array<Matrix, 2> u, w;
  for (int it = 0; it < max_iters; ++it) {
    // MMSE receivers and weights at the current precoders.
    for (int k = 0; k < 2; ++k) {
      const int j = 1 - k;
      const Matrix hv = sc.h[k][k] * v[k];
      const Matrix hv_cross = sc.h[k][j] * v[j];
      const Matrix rx = hermitize(hv * hv.adjoint() +
                                  hv_cross * hv_cross.adjoint() +
                                  sc.noise_cov[k]);
      u[k] = rx.ldlt().solve(hv);
      const Matrix mse =
          Matrix::Identity(v[k].cols(), v[k].cols()) - u[k].adjoint() * hv;
      w[k] = hermitize(mse).inverse();
      w[k] = hermitize(w[k]);
    }
    // Precoders under the per-user power constraint.
    for (int k = 0; k < 2; ++k) {
      Matrix j_mat = Matrix::Zero(sc.h[k][k].cols(), sc.h[k][k].cols());
      for (int r = 0; r < 2; ++r) {
        const Matrix hu = sc.h[r][k].adjoint() * u[r];
        j_mat.noalias() += hu * w[r] * hu.adjoint();
      }
      j_mat = hermitize(j_mat);
      const Matrix b = sc.h[k][k].adjoint() * u[k] * w[k];
      v[k] = wmmse_precoder(j_mat, b, sc.power_budget);
    }

    const double obj = ic_sum_rate(sc, v);
    out.trace.objective_history.push_back(obj);
    out.trace.iterations = it + 1;
    const double delta = obj - prev_obj;
    prev_obj = obj;
    if (std::abs(delta) < conv_tol) {
      out.trace.converged = true;
      out.trace.final_residual = std::abs(delta);
      break;
    }
    out.trace.final_residual = std::abs(delta);
  }
  out.precoders = v;
  return out;
}

namespace {

// Closed-form maximizer of log2 det(I + H S H^H) - trace((lambda I +
// nu G^H G) S): water-filling in the coordinates whitened by the dual
// matrix A = lambda I + nu G^H G.
Matrix cr_inner_solution(const Matrix& h, const Matrix& gtg, double lambda,
                         double nu) {
  const Eigen::Index m = h.cols();
  const Matrix a =
      hermitize(lambda * Matrix::Identity(m, m) + nu * gtg);
  const Matrix a_inv_sqrt = inv_sqrt(a);
  Eigen::JacobiSVD<Matrix> svd(h * a_inv_sqrt,
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sigma = svd.singularValues();
  RealVector p(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    const double s2 = sigma(i) * sigma(i);
    p(i) = s2 > 0.0 ? std::max(0.0, 1.0 / kLn2 - 1.0 / s2) : 0.0;
  }
  const Matrix t = svd.matrixV() * p.asDiagonal() * svd.matrixV().adjoint();
  return hermitize(a_inv_sqrt * t * a_inv_sqrt);
}

}  // namespace

TransmitCovariance cr_capacity_opt(const CrScenario& sc, double tol) {
  if (sc.power_budget <= 0.0 || sc.it_limit <= 0.0) {
    throw std::domain_error(
        "cr_capacity_opt: power budget and IT limit must be positive");
  }
  if (tol <= 0.0) throw std::domain_error("cr_capacity_opt: tol must be > 0");
  const Matrix& h = sc.h_secondary;
  if (h.norm() == 0.0) {
    throw std::domain_error("cr_capacity_opt: zero secondary channel");
  }
  if (sc.g_cross.cols() != h.cols()) {
    throw std::domain_error("cr_capacity_opt: channel dimension mismatch");
  }
  const Matrix gtg = hermitize(sc.g_cross.adjoint() * sc.g_cross);
  const double power = sc.power_budget;
  const double it_cap = sc.it_limit;
  const double lambda_floor = 1e-13;

  auto it_power = [&](const Matrix& s) {
    return trace_real(sc.g_cross * s * sc.g_cross.adjoint());
  };

  // For fixed nu, the transmit power is decreasing in lambda; pick the
  // lambda that meets the power budget (or the floor when the budget is
  // slack because the dual matrix is already positive definite).
  auto solve_for_nu = [&](double nu) {
    Matrix s = cr_inner_solution(h, gtg, lambda_floor, nu);
    if (trace_real(s) <= power * (1.0 + 1e-12)) return s;
    double lo = lambda_floor;
    double hi = 1.0;
    while (trace_real(cr_inner_solution(h, gtg, hi, nu)) > power) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      s = cr_inner_solution(h, gtg, mid, nu);
      if (trace_real(s) > power) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo <= 1e-14 * hi) break;
    }
    return cr_inner_solution(h, gtg, hi, nu);
  };

  // Interference constraint slack at nu = 0 means plain water-filling.
  Matrix s = solve_for_nu(0.0);
  if (it_power(s) > it_cap * (1.0 + 1e-12)) {
    double lo = 0.0;
    double hi = 1.0;
    while (it_power(solve_for_nu(hi)) > it_cap) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      s = solve_for_nu(mid);
      if (it_power(s) > it_cap) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo <= 1e-14 * std::max(hi, 1.0)) break;
    }
    s = solve_for_nu(hi);
  }

  // Both dual bisections terminate on the feasible side; the remaining
  // constraint residuals are at the bisection resolution, well below tol.
  const double feas = std::max(
      {trace_real(s) - power, it_power(s) - it_cap, 0.0});
  if (feas > tol * std::max(1.0, power)) {
    throw std::runtime_error("cr_capacity_opt: failed to reach feasibility");
  }
  return TransmitCovariance(hermitize(s));
}

}  // namespace mimodiag
