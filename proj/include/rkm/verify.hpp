#pragma once

// Randomized property suites shared by the CLI `verify` subcommand and the
// test binaries: rational exactness, phi-function identities, smoothing
// coefficients. All randomness is seeded for reproducibility.

#include "rkm/krylov.hpp"
#include "rkm/matfun.hpp"
#include "rkm/operators.hpp"
#include "rkm/smoothing.hpp"

#include <Eigen/Dense>

#include <complex>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace rkm {

/// Random matrix with Re(Ax, x) <= 0: skew part plus a negative
/// semidefinite part, scaled to unit-order norm.
template <class Scalar>
Eigen::MatrixX<Scalar> random_dissipative_matrix(int dim,
                                                 std::mt19937_64& rng,
                                                 double norm_target = 2.0) {
  std::normal_distribution<double> dist;
  auto draw = [&]() -> Scalar {
    if constexpr (std::is_same_v<Scalar, std::complex<double>>)
      return Scalar(dist(rng), dist(rng));
    else
      return Scalar(dist(rng));
  };
  Eigen::MatrixX<Scalar> g(dim, dim), b(dim, dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) {
      g(r, c) = draw();
      b(r, c) = draw();
    }
  Eigen::MatrixX<Scalar> a =
      0.5 * (g - g.adjoint()) - (b * b.adjoint()) / static_cast<double>(dim);
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  if (norm > 0.0) a *= norm_target / norm;
  return a;
}

struct PropertyResult {
  std::string name;
  bool pass = false;
  double observed = 0.0;  // worst value seen, for diagnostics
};

/// Rational exactness on random dissipative matrices: the projected
/// resolvent powers reproduce the true ones for all k <= n-1.
inline std::vector<PropertyResult> verify_exactness(unsigned seed,
                                                    int trials = 20,
                                                    int n = 12) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dims(20, 100);
  std::normal_distribution<double> dist;
  double worst = 0.0;
  double worst_past = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const int dim = dims(rng);
    DenseOperator<std::complex<double>> op(
        random_dissipative_matrix<std::complex<double>>(dim, rng));
    auto space =
        InnerProductSpace<std::complex<double>>::scaled_euclidean(dim);
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = {dist(rng), dist(rng)};
    auto dec = rational_arnoldi<std::complex<double>>(op, space, v, n, 1.0,
                                                      1.0, {});
    for (int k = 1; k < static_cast<int>(dec.size()); ++k)
      worst = std::max(worst, check_rational_exactness(dec, op, k));
    if (!dec.breakdown)
      worst_past = std::min(worst_past,
                            check_rational_exactness(dec, op, n));
  }
  return {
      {"exactness: rel. error <= 1e-10 for k <= n-1", worst <= 1e-10, worst},
      {"exactness: sharp at k = n (error above 1e-10)", worst_past > 1e-10,
       worst_past},
  };
}

/// phi identities: recurrence, Taylor remainder, series-oracle agreement.
inline std::vector<PropertyResult> verify_phi(unsigned seed, int trials = 10) {
  std::mt19937_64 rng(seed);
  std::vector<PropertyResult> out;
  using Mat = Eigen::MatrixXcd;

  double worst_rec = 0.0;
  double worst_split = 0.0;
  double worst_series = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int dim = 6 + static_cast<int>(rng() % 6);
    Mat h = random_dissipative_matrix<std::complex<double>>(dim, rng, 5.0);
    const Mat eye = Mat::Identity(dim, dim);
    // z phi_{k+1}(z) = phi_k(z) - 1/k!
    double kfact = 1.0;
    for (int k = 0; k <= 6; ++k) {
      const Mat lhs = h * phi_dense(h, k + 1);
      const Mat rhs = phi_dense(h, k) - eye / kfact;
      worst_rec = std::max(worst_rec, (lhs - rhs).cwiseAbs().maxCoeff());
      kfact *= (k + 1);
    }
    // phi_j(z) - sum_{k<q} z^k/(j+k)! = z^q phi_{j+q}(z)
    for (int j = 0; j <= 2; ++j)
      for (int q = 1; q <= 4; ++q) {
        Mat sum = Mat::Zero(dim, dim);
        Mat pw = eye;
        double fact = 1.0;
        for (int i = 2; i <= j; ++i) fact *= i;
        for (int k = 0; k < q; ++k) {
          sum += pw / fact;
          pw *= h;
          fact *= (j + k + 1);
        }
        const Mat lhs = phi_dense(h, j) - sum;
        const Mat rhs = pw * phi_dense(h, j + q);
        worst_split = std::max(worst_split,
                               (lhs - rhs).cwiseAbs().maxCoeff());
      }
    // series oracle on a contracted copy
    Mat small = h / 6.0;
    for (int j = 0; j <= 3; ++j) {
      const Mat a = phi_dense(small, j);
      const Mat b = phi_series_oracle(small, j, 60);
      worst_series = std::max(worst_series, (a - b).cwiseAbs().maxCoeff());
    }
  }
  out.push_back({"phi: recurrence z phi_{k+1} = phi_k - 1/k! (1e-11)",
                 worst_rec <= 1e-11, worst_rec});
  out.push_back({"phi: Taylor remainder split (1e-10)", worst_split <= 1e-10,
                 worst_split});
  out.push_back({"phi: series-oracle agreement (1e-13)",
                 worst_series <= 1e-13, worst_series});
  return out;
}

/// Exact integer checks on the smoother coefficients.
inline std::vector<PropertyResult> verify_smoothing(int max_q = 8) {
  bool holo = true;
  bool sums = true;
  bool formulas = true;
  for (int q = 1; q <= max_q; ++q) {
    const auto taylor = smoother_symbol_taylor(q, q + 1);
    for (int m = 0; m < q; ++m) holo = holo && taylor[m] == 0;
    holo = holo && taylor[q] != 0;
    std::int64_t sum = 0;
    for (auto c : h_coefficients(q).coefficients) sum += c;
    sums = sums && sum == 1;
    // closed product form vs the alternating-sum form
    for (int k = q; k <= 2 * q - 1; ++k) {
      std::int64_t alt = 0;
      for (int l = 0; l <= k - q; ++l)
        alt += ((l % 2 == 0) ? 1 : -1) * binomial(k, l);
      alt *= binomial(2 * q - 1, k);
      formulas = formulas && alt == h_coefficients(q).at(k);
    }
  }
  return {
      {"smoothing: holomorphy (first q Taylor coefficients vanish)", holo, 0},
      {"smoothing: coefficient sum equals 1", sums, 0},
      {"smoothing: closed and sum formulas agree", formulas, 0},
  };
}

}  // namespace rkm
