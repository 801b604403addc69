#pragma once

// Smoothing operators H_{n,q} = sum_{k=q}^{2q-1} h_k^q (sqrt(n)/(sqrt(n)-A))^k
// with exact integer coefficients, plus a numerical rate study.

#include "rkm/operators.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rkm {

inline constexpr int kMaxSmootherOrder = 12;

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct SmootherCoefficients {
  int q = 0;
  std::vector<std::int64_t> coefficients;  // h_k^q for k = q..2q-1

  std::int64_t at(int k) const { return coefficients.at(k - q); }
};

/// h_k^q = C(2q-1,k) C(k-1,k-q) (-1)^{k-q}, k = q..2q-1, exact integers.
inline SmootherCoefficients h_coefficients(int q) {
  if (q < 1 || q > kMaxSmootherOrder)
    throw std::invalid_argument("h_coefficients: q out of supported range");
  SmootherCoefficients s;
  s.q = q;
  for (int k = q; k <= 2 * q - 1; ++k) {
    const std::int64_t sign = ((k - q) % 2 == 0) ? 1 : -1;
    s.coefficients.push_back(sign * binomial(2 * q - 1, k) *
                             binomial(k - 1, k - q));
  }
  return s;
}

/// First `count` Taylor coefficients at z = 0 of
/// 1 - sum_k h_k^q (1-z)^{-k}, all integers. The holomorphy condition of
/// the smoother symbol is that the first q of these vanish.
inline std::vector<std::int64_t> smoother_symbol_taylor(int q, int count) {
  const SmootherCoefficients s = h_coefficients(q);
  std::vector<std::int64_t> a(count, 0);
  for (int m = 0; m < count; ++m) {
    std::int64_t c = (m == 0) ? 1 : 0;
    for (int k = q; k <= 2 * q - 1; ++k)
      c -= s.at(k) * binomial(m + k - 1, m);  // (1-z)^{-k} expansion
    a[m] = c;
  }
  return a;
}

/// H_{n,q} v via 2q-1 incremental shifted solves with gamma = sqrt(n).
template <class Scalar>
Eigen::VectorX<Scalar> apply_smoother(const LinearOperator<Scalar>& op,
                                      const InnerProductSpace<Scalar>&,
                                      const Eigen::VectorX<Scalar>& v, int n,
                                      int q, const SolverConfig& cfg = {}) {
  if (n < 1) throw std::invalid_argument("apply_smoother: n must be >= 1");
  const SmootherCoefficients coef = h_coefficients(q);
  const double root = std::sqrt(static_cast<double>(n));
  Eigen::VectorX<Scalar> power = v;
  Eigen::VectorX<Scalar> result = Eigen::VectorX<Scalar>::Zero(v.size());
  for (int k = 1; k <= 2 * q - 1; ++k) {
    power = root * op.solve_shifted(root, 1.0, power, cfg);
    if (k >= q) result += static_cast<double>(coef.at(k)) * power;
  }
  return result;
}

/// Scaled smoothing errors n^{q/2} ||H_{n,q} v - v|| / ||A^q v|| over the
/// given n grid. The lemma bound says these stay O(1).
template <class Scalar>
std::vector<std::pair<int, double>> smoothing_rate_study(
    const LinearOperator<Scalar>& op, const InnerProductSpace<Scalar>& space,
    const Eigen::VectorX<Scalar>& v, int q, const std::vector<int>& n_values,
    const SolverConfig& cfg = {}) {
  Eigen::VectorX<Scalar> aqv = v;
  for (int i = 0; i < q; ++i) aqv = op.apply(aqv);
  const double denom = space.norm(aqv);
  if (denom == 0.0)
    throw std::invalid_argument("smoothing_rate_study: A^q v vanishes");
  std::vector<std::pair<int, double>> out;
  out.reserve(n_values.size());
  for (int n : n_values) {
    const Eigen::VectorX<Scalar> hv = apply_smoother(op, space, v, n, q, cfg);
    const double err = space.norm(Eigen::VectorX<Scalar>(hv - v));
    out.emplace_back(n, std::pow(static_cast<double>(n), 0.5 * q) * err / denom);
  }
  return out;
}

/// Power-iteration estimate of ||H_{n,q}|| in the designated norm.
template <class Scalar>
double smoother_norm_estimate(const LinearOperator<Scalar>& op,
                              const InnerProductSpace<Scalar>& space, int n,
                              int q, const SolverConfig& cfg = {},
                              int steps = 50, unsigned seed = 0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  Eigen::VectorX<Scalar> x(space.dim());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Scalar(dist(rng));
  x /= space.norm(x);
  double estimate = 0.0;
  for (int s = 0; s < steps; ++s) {
    // for self-adjoint A the smoother is self-adjoint and this is its norm
    Eigen::VectorX<Scalar> y = apply_smoother(op, space, x, n, q, cfg);
    const double ny = space.norm(y);
    if (ny == 0.0) return 0.0;
    estimate = ny;
    x = y / ny;
  }
  return estimate;
}

}  // namespace rkm
