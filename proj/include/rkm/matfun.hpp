#pragma once

// Dense kernels for e^H and phi_j(H) on small matrices, plus a truncated
// Taylor oracle kept independent of the main evaluation path.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace rkm {

inline constexpr int kMaxPhiIndex = 16;

namespace detail {

template <class Scalar>
double inf_norm(const Eigen::MatrixX<Scalar>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace detail

/// Scaling and squaring with a fixed-length Taylor core: scale so that
/// ||H||/2^s <= 0.5, sum 30 terms, square s times.
template <class Scalar>
Eigen::MatrixX<Scalar> expm_dense(const Eigen::MatrixX<Scalar>& h) {
  using Mat = Eigen::MatrixX<Scalar>;
  if (h.rows() != h.cols())
    throw std::invalid_argument("expm_dense: matrix must be square");
  const Eigen::Index m = h.rows();
  const double norm = detail::inf_norm(h);
  if (!std::isfinite(norm))
    throw std::invalid_argument("expm_dense: non-finite entries");
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Mat b = h / std::pow(2.0, s);
  Mat result = Mat::Identity(m, m);
  Mat term = Mat::Identity(m, m);
  for (int k = 1; k <= 30; ++k) {
    term = (term * b) / Scalar(k);
    result += term;
  }
  for (int k = 0; k < s; ++k) result = result * result;
  return result;
}

/// phi_j(H) via one exponential of the block-augmented matrix
/// [[H, I, 0...], [0, block shift]] of size m*(j+1): the top block row of
/// the exponential carries phi_1(H), ..., phi_j(H).
template <class Scalar>
Eigen::MatrixX<Scalar> phi_dense(const Eigen::MatrixX<Scalar>& h, int j) {
  using Mat = Eigen::MatrixX<Scalar>;
  if (h.rows() != h.cols())
    throw std::invalid_argument("phi_dense: matrix must be square");
  if (j < 0 || j > kMaxPhiIndex)
    throw std::invalid_argument("phi_dense: unsupported phi index");
  if (j == 0) return expm_dense(h);
  const Eigen::Index m = h.rows();
  Mat aug = Mat::Zero(m * (j + 1), m * (j + 1));
  aug.topLeftCorner(m, m) = h;
  for (int b = 0; b < j; ++b)
    aug.block(b * m, (b + 1) * m, m, m) = Mat::Identity(m, m);
  return expm_dense(aug).topRightCorner(m, m);
}

/// Partial sum sum_{k=0}^{terms} H^k/(k+j)!. Only guaranteed for
/// ||H|| <= 2 with terms >= 40.
template <class Scalar>
Eigen::MatrixX<Scalar> phi_series_oracle(const Eigen::MatrixX<Scalar>& h,
                                         int j, int terms) {
  using Mat = Eigen::MatrixX<Scalar>;
  if (h.rows() != h.cols())
    throw std::invalid_argument("phi_series_oracle: matrix must be square");
  if (j < 0 || terms < 40)
    throw std::invalid_argument("phi_series_oracle: need j >= 0, terms >= 40");
  if (detail::inf_norm(h) > 2.0)
    throw std::domain_error("phi_series_oracle: ||H|| > 2 outside oracle range");
  const Eigen::Index m = h.rows();
  double jfact = 1.0;
  for (int k = 2; k <= j; ++k) jfact *= k;
  Mat term = Mat::Identity(m, m) / Scalar(jfact);
  Mat sum = term;
  for (int k = 1; k <= terms; ++k) {
    term = (term * h) / Scalar(k + j);
    sum += term;
  }
  return sum;
}

/// Scalar phi_j(z): series near the origin, upward recurrence
/// phi_{k+1} = (phi_k - 1/k!)/z elsewhere. 1e-14 relative accuracy.
inline std::complex<double> phi_scalar(std::complex<double> z, int j) {
  if (j < 0 || j > kMaxPhiIndex)
    throw std::invalid_argument("phi_scalar: unsupported phi index");
  if (j == 0) return std::exp(z);
  if (std::abs(z) <= 1.0) {
    double jfact = 1.0;
    for (int k = 2; k <= j; ++k) jfact *= k;
    std::complex<double> term = 1.0 / jfact;
    std::complex<double> sum = term;
    for (int k = 1; k <= 60; ++k) {
      term *= z / static_cast<double>(k + j);
      sum += term;
    }
    return sum;
  }
  std::complex<double> phi = std::exp(z);
  double kfact = 1.0;
  for (int k = 0; k < j; ++k) {
    phi = (phi - 1.0 / kfact) / z;
    kfact *= (k + 1);
  }
  return phi;
}

}  // namespace rkm
