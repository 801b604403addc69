#pragma once

// Rational Arnoldi process for the resolvent Krylov subspace
// K_n((gamma - tau A)^{-1}, v) and evaluation of the Galerkin
// approximations beta * V * phi_j(H) * e1.

#include "rkm/matfun.hpp"
#include "rkm/operators.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace rkm {

template <class Scalar>
struct RationalKrylovDecomposition {
  using Mat = Eigen::MatrixX<Scalar>;

  Mat basis;      // dim x m, orthonormal in the designated inner product
  Mat projected;  // m x m, H = V* (tau A) V
  double shift = 1.0;
  double tau = 1.0;
  double beta = 0.0;  // ||v||
  bool breakdown = false;
  int breakdown_step = -1;  // step at which the subspace became invariant
  InnerProductSpace<Scalar> space;

  Eigen::Index size() const { return basis.cols(); }
};

/// Builds an orthonormal basis by modified Gram-Schmidt with one
/// unconditional reorthogonalization pass. Candidate k+1 is the shifted
/// solve applied to basis vector k. Stops early on lucky breakdown
/// (candidate norm drops below 1e-12 of its pre-orthogonalization norm).
template <class Scalar>
RationalKrylovDecomposition<Scalar> rational_arnoldi(
    const LinearOperator<Scalar>& op, const InnerProductSpace<Scalar>& space,
    const Eigen::VectorX<Scalar>& v, int n, double gamma, double tau,
    const SolverConfig& cfg = {}) {
  using Vec = Eigen::VectorX<Scalar>;
  if (n < 1) throw std::invalid_argument("rational_arnoldi: n must be >= 1");
  if (!(gamma > 0.0))
    throw std::domain_error("rational_arnoldi: gamma must be positive");
  const double beta = space.norm(v);
  if (beta == 0.0)
    throw std::invalid_argument("rational_arnoldi: zero initial vector");

  RationalKrylovDecomposition<Scalar> dec;
  dec.shift = gamma;
  dec.tau = tau;
  dec.beta = beta;
  dec.space = space;
  dec.basis.resize(v.size(), n);
  dec.basis.col(0) = v / beta;

  int m = 1;
  for (int k = 1; k < n; ++k) {
    Vec w = op.solve_shifted(gamma, tau, dec.basis.col(k - 1), cfg);
    const double norm_before = space.norm(w);
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < m; ++i)
        w -= space.inner(Vec(dec.basis.col(i)), w) * dec.basis.col(i);
    const double norm_after = space.norm(w);
    if (norm_after <= 1e-12 * norm_before) {
      dec.breakdown = true;
      dec.breakdown_step = m;
      break;
    }
    dec.basis.col(k) = w / norm_after;
    ++m;
  }
  dec.basis.conservativeResize(Eigen::NoChange, m);

  // H by direct projection: H(i,j) = <v_i, tau A v_j>.
  Eigen::MatrixX<Scalar> applied(v.size(), m);
  for (int j = 0; j < m; ++j)
    applied.col(j) = tau * op.apply(dec.basis.col(j));
  dec.projected.resize(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      dec.projected(i, j) =
          space.inner(Vec(dec.basis.col(i)), Vec(applied.col(j)));
  return dec;
}

/// beta * V * phi_j(H) * e1, optionally on the leading prefix of the
/// decomposition (nested Galerkin spaces share their leading blocks).
template <class Scalar>
Eigen::VectorX<Scalar> krylov_phi_approx(
    const RationalKrylovDecomposition<Scalar>& dec, int j,
    Eigen::Index prefix = -1) {
  const Eigen::Index m = prefix < 0 ? dec.size() : std::min(prefix, dec.size());
  if (m < 1) throw std::invalid_argument("krylov_phi_approx: empty prefix");
  Eigen::MatrixX<Scalar> phi = phi_dense<Scalar>(
      dec.projected.topLeftCorner(m, m), j);
  return dec.beta * (dec.basis.leftCols(m) * phi.col(0));
}

/// Relative error of the projected resolvent power against the true one:
/// ||(gamma - tau A)^{-k} v - beta V (gamma I - H)^{-k} e1|| / ||lhs||.
/// Zero (to roundoff) for all k <= m-1 by rational exactness.
template <class Scalar>
double check_rational_exactness(const RationalKrylovDecomposition<Scalar>& dec,
                                const LinearOperator<Scalar>& op, int k,
                                const SolverConfig& cfg = {}) {
  using Vec = Eigen::VectorX<Scalar>;
  using Mat = Eigen::MatrixX<Scalar>;
  const Eigen::Index m = dec.size();
  if (k < 0 || k > m)  // k = m allowed to demonstrate sharpness
    throw std::invalid_argument("check_rational_exactness: k out of range");
  Vec truth = dec.beta * dec.basis.col(0);
  for (int i = 0; i < k; ++i)
    truth = op.solve_shifted(dec.shift, dec.tau, truth, cfg);

  Mat shifted = -dec.projected;
  shifted.diagonal().array() += Scalar(dec.shift);
  Eigen::PartialPivLU<Mat> lu(shifted);
  Eigen::VectorX<Scalar> small = Eigen::VectorX<Scalar>::Zero(m);
  small(0) = Scalar(dec.beta);
  for (int i = 0; i < k; ++i) small = lu.solve(small);
  const Vec projected = dec.basis * small;
  const double denom = dec.space.norm(truth);
  if (denom == 0.0) return 0.0;
  return dec.space.norm(Vec(truth - projected)) / denom;
}

}  // namespace rkm
