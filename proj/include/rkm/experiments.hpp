#pragma once

// Problem setups (Schroedinger pseudospectral, FD wave), smoothness-indexed
// initial data, the convergence runner, and rate estimation.

#include "rkm/krylov.hpp"
#include "rkm/operators.hpp"
#include "rkm/reference.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace rkm {

enum class ProblemKind { Schrodinger, WaveFd };
enum class MethodKind { ResolventKrylov, ImplicitEuler };

inline const char* to_string(ProblemKind p) {
  return p == ProblemKind::Schrodinger ? "schrodinger" : "wave_fd";
}
inline const char* to_string(MethodKind m) {
  return m == MethodKind::ResolventKrylov ? "krylov" : "euler";
}

struct ProblemSetup {
  ProblemKind problem = ProblemKind::Schrodinger;
  int size = 4096;  // N (Schroedinger, even) or d (wave grid)
  double tau = 0.02;
  double gamma = 1.0;
  int q = 2;
  SolverConfig solver;
};

struct ConvergenceRecord {
  MethodKind method;
  ProblemKind problem;
  Eigen::Index dim;
  double tau;
  double gamma;
  int q;
  int n;  // subspace dimension or step count
  double error;
};

struct RateEstimate {
  double slope = 0.0;
  int n_lo = 0;
  int n_hi = 0;
  double residual = 0.0;
};

/// Diagonal generator of the pseudospectral Schroedinger semidiscretization:
/// entries -i k^2 for k = -N/2..N/2-1 (mode index = array index - N/2).
inline Eigen::VectorXcd schrodinger_entries(int n_modes) {
  if (n_modes < 2 || n_modes % 2 != 0)
    throw std::invalid_argument("schrodinger_entries: N must be even");
  Eigen::VectorXcd entries(n_modes);
  for (int idx = 0; idx < n_modes; ++idx) {
    const double k = idx - n_modes / 2;
    entries(idx) = std::complex<double>(0.0, -k * k);
  }
  return entries;
}

/// Piecewise-polynomial initial value with exactly q weak derivative pairs:
/// (2/pi)^{4q} (x-pi)^{2q} x^{2q} on (0,pi], (x-pi)^{2q} (x-2pi)^{2q} after.
inline double schrodinger_u0(double x, int q) {
  const double c = std::pow(2.0 / M_PI, 4 * q);
  if (x <= 0.0) return 0.0;
  if (x <= M_PI)
    return c * std::pow(x - M_PI, 2 * q) * std::pow(x, 2 * q);
  return c * std::pow(x - M_PI, 2 * q) * std::pow(x - 2.0 * M_PI, 2 * q);
}

/// Fourier coefficients psi_k = (1/N) sum_m u0(x_m) e^{-ik x_m} of the
/// sampled initial value, k = -N/2..N/2-1.
inline Eigen::VectorXcd schrodinger_initial_data(int n_modes, int q) {
  if (n_modes < 8 || n_modes % 2 != 0)
    throw std::invalid_argument("schrodinger_initial_data: N must be even, >= 8");
  const int n = n_modes;
  Eigen::VectorXd samples(n);
  for (int m = 0; m < n; ++m)
    samples(m) = schrodinger_u0(2.0 * M_PI * m / n, q);
  Eigen::VectorXcd twiddle(n);
  for (int r = 0; r < n; ++r)
    twiddle(r) = std::exp(std::complex<double>(0.0, -2.0 * M_PI * r / n));
  Eigen::VectorXcd psi(n);
  for (int idx = 0; idx < n; ++idx) {
    const long long k = idx - n / 2;
    std::complex<double> acc = 0.0;
    for (long long m = 0; m < n; ++m)
      acc += samples(m) * twiddle(((k * m) % n + n) % n);
    psi(idx) = acc / static_cast<double>(n);
  }
  return psi;
}

/// g_0^q(x,y) = x^{2q}(1-x)^{2q} y^{2q}(1-y)^{2q} sampled on the grid,
/// stacked as [g; g] and normalized in the discrete energy norm.
inline Eigen::VectorXd wave_initial_data(const FdLaplacian& laplacian, int q) {
  if (laplacian.spatial_dims() != 2)
    throw std::invalid_argument("wave_initial_data: expects the 2D Laplacian");
  const int d = laplacian.grid_size();
  if (d < 2) throw std::invalid_argument("wave_initial_data: d must be >= 2");
  const double h = laplacian.mesh_width();
  const Eigen::Index n = laplacian.dim();
  Eigen::VectorXd g(n);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      const double x = (r + 1) * h;
      const double y = (c + 1) * h;
      g(c * d + r) = std::pow(x * (1.0 - x), 2 * q) * std::pow(y * (1.0 - y), 2 * q);
    }
  Eigen::VectorXd psi(2 * n);
  psi.head(n) = g;
  psi.tail(n) = g;
  WaveBlockOperator wave(std::shared_ptr<const FdLaplacian>(
      std::shared_ptr<const void>(), &laplacian));
  const double norm = wave.energy_space().norm(psi);
  return psi / norm;
}

inline Eigen::VectorXd wave_initial_data(int d, int q) {
  return wave_initial_data(*assemble_fd_laplacian(d), q);
}

/// Error curve of one method on one setup against the exact reference.
/// The Krylov curve reuses prefixes of a single depth-max(n) decomposition.
inline std::vector<ConvergenceRecord> run_convergence(
    const ProblemSetup& setup, const std::vector<int>& n_values,
    MethodKind method) {
  if (n_values.empty())
    throw std::invalid_argument("run_convergence: empty n list");
  std::vector<ConvergenceRecord> records;
  records.reserve(n_values.size());
  std::vector<int> ns = n_values;
  std::sort(ns.begin(), ns.end());

  auto run = [&](const auto& op, const auto& space, const auto& v,
                 const auto& ref) {
    using Scalar = typename std::decay_t<decltype(v)>::Scalar;
    if (method == MethodKind::ResolventKrylov) {
      auto dec = rational_arnoldi<Scalar>(op, space, v, ns.back(), setup.gamma,
                                          setup.tau, setup.solver);
      for (int n : ns) {
        const auto approx = krylov_phi_approx(dec, 0, n);
        records.push_back({method, setup.problem, op.dim(), setup.tau,
                           setup.gamma, setup.q, n,
                           space.norm(decltype(approx)(approx - ref))});
      }
    } else {
      for (int n : ns) {
        const auto approx =
            implicit_euler<Scalar>(op, v, setup.tau, n, setup.solver);
        records.push_back({method, setup.problem, op.dim(), setup.tau,
                           setup.gamma, setup.q, n,
                           space.norm(decltype(approx)(approx - ref))});
      }
    }
  };

  if (setup.problem == ProblemKind::Schrodinger) {
    const Eigen::VectorXcd entries = schrodinger_entries(setup.size);
    DiagonalOperator<std::complex<double>> op(entries);
    auto space = InnerProductSpace<std::complex<double>>::scaled_euclidean(
        setup.size);
    const Eigen::VectorXcd v = schrodinger_initial_data(setup.size, setup.q);
    const Eigen::VectorXcd ref = exact_diagonal_phi(entries, setup.tau, v, 0);
    run(op, space, v, ref);
  } else {
    auto lap = assemble_fd_laplacian(setup.size);
    WaveBlockOperator op(lap);
    auto space = op.energy_space();
    const Eigen::VectorXd v = wave_initial_data(*lap, setup.q);
    const Eigen::VectorXd ref = exact_wave_dst(*lap, setup.tau, v);
    run(op, space, v, ref);
  }
  return records;
}

/// Least-squares slope of log(error) vs log(n) over [n_lo, n_hi].
inline RateEstimate estimate_rate(const std::vector<ConvergenceRecord>& records,
                                  int n_lo, int n_hi) {
  const double floor = 10.0 * std::numeric_limits<double>::epsilon();
  std::vector<double> xs, ys;
  for (const auto& r : records)
    if (r.n >= n_lo && r.n <= n_hi && r.error > floor) {
      xs.push_back(std::log(static_cast<double>(r.n)));
      ys.push_back(std::log(r.error));
    }
  if (xs.size() < 5)
    throw std::invalid_argument(
        "estimate_rate: fewer than 5 usable points in window");
  const auto m = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = m * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("estimate_rate: degenerate fit");
  RateEstimate est;
  est.slope = (m * sxy - sx * sy) / det;
  est.n_lo = n_lo;
  est.n_hi = n_hi;
  const double intercept = (sy - est.slope * sx) / m;
  double ss = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + est.slope * xs[i]);
    ss += r * r;
  }
  est.residual = std::sqrt(ss / m);
  return est;
}

/// Max over n of (largest error / smallest error) across several error
/// curves sharing the same n grid; entries below 1e-12 are skipped.
inline double grid_independence_check(
    const std::vector<std::vector<ConvergenceRecord>>& curves, int n_lo = 1) {
  if (curves.size() < 2)
    throw std::invalid_argument("grid_independence_check: need >= 2 curves");
  double worst = 1.0;
  for (const auto& base : curves.front()) {
    if (base.n < n_lo) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& curve : curves)
      for (const auto& r : curve)
        if (r.n == base.n && r.error >= 1e-12) {
          lo = std::min(lo, r.error);
          hi = std::max(hi, r.error);
        }
    if (hi > 0.0 && std::isfinite(lo)) worst = std::max(worst, hi / lo);
  }
  return worst;
}

}  // namespace rkm
