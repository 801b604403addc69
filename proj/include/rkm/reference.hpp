#pragma once

// Reference solutions: componentwise phi of diagonal operators, exact
// DST-based wave propagation, and the implicit-Euler baseline.

#include "rkm/matfun.hpp"
#include "rkm/operators.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace rkm {

/// Componentwise phi_j(tau * a_k) v_k for a diagonal operator.
inline Eigen::VectorXcd exact_diagonal_phi(const Eigen::VectorXcd& entries,
                                           double tau,
                                           const Eigen::VectorXcd& v, int j) {
  if (entries.size() != v.size())
    throw std::invalid_argument("exact_diagonal_phi: size mismatch");
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k)
    out(k) = phi_scalar(tau * entries(k), j) * v(k);
  return out;
}

/// Propagates the wave system y' = [[0,I],[L,0]] y exactly for time tau by
/// expanding in the sine eigenbasis of the 2D FD Laplacian and rotating
/// each mode: [cos(t w), sin(t w)/w; -w sin(t w), cos(t w)], w = sqrt(-lambda).
/// Preserves the energy norm.
inline Eigen::VectorXd exact_wave_dst(const FdLaplacian& laplacian, double tau,
                                      const Eigen::VectorXd& y0) {
  if (laplacian.spatial_dims() != 2)
    throw std::invalid_argument("exact_wave_dst: expects the 2D Laplacian");
  const int d = laplacian.grid_size();
  const Eigen::Index n = laplacian.dim();
  if (y0.size() != 2 * n)
    throw std::invalid_argument("exact_wave_dst: block size mismatch");
  const double h = laplacian.mesh_width();
  const double scale = std::sqrt(2.0 * h);
  Eigen::MatrixXd sine(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      sine(r, c) = scale * std::sin((r + 1) * (c + 1) * M_PI * h);

  Eigen::Map<const Eigen::MatrixXd> U(y0.data(), d, d);
  Eigen::Map<const Eigen::MatrixXd> V(y0.data() + n, d, d);
  Eigen::MatrixXd a = sine * U * sine;  // position modes
  Eigen::MatrixXd b = sine * V * sine;  // velocity modes
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      const double omega = std::sqrt(-laplacian.eigenvalue(r + 1, c + 1));
      const double cs = std::cos(tau * omega);
      const double sn = std::sin(tau * omega);
      const double a0 = a(r, c);
      const double b0 = b(r, c);
      a(r, c) = cs * a0 + sn / omega * b0;
      b(r, c) = -omega * sn * a0 + cs * b0;
    }
  Eigen::MatrixXd unew = sine * a * sine;
  Eigen::MatrixXd vnew = sine * b * sine;
  Eigen::VectorXd out(2 * n);
  out.head(n) = Eigen::Map<Eigen::VectorXd>(unew.data(), n);
  out.tail(n) = Eigen::Map<Eigen::VectorXd>(vnew.data(), n);
  return out;
}

/// (I - (tau/n) A)^{-n} v via n successive shifted solves.
template <class Scalar>
Eigen::VectorX<Scalar> implicit_euler(const LinearOperator<Scalar>& op,
                                      const Eigen::VectorX<Scalar>& v,
                                      double tau, int n,
                                      const SolverConfig& cfg = {}) {
  if (n < 1) throw std::invalid_argument("implicit_euler: n must be >= 1");
  Eigen::VectorX<Scalar> x = v;
  for (int i = 0; i < n; ++i) x = op.solve_shifted(1.0, tau / n, x, cfg);
  return x;
}

}  // namespace rkm
