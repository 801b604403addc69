#include "rkm/smoothing.hpp"
#include "rkm/verify.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <complex>

using namespace rkm;

TEST_CASE("coefficient sequences for small q") {
  CHECK(h_coefficients(1).coefficients == std::vector<std::int64_t>{1});
  CHECK(h_coefficients(2).coefficients == std::vector<std::int64_t>{3, -2});
  CHECK(h_coefficients(3).coefficients ==
        std::vector<std::int64_t>{10, -15, 6});
  CHECK_THROWS_AS(h_coefficients(0), std::invalid_argument);
  CHECK_THROWS_AS(h_coefficients(13), std::invalid_argument);
}

TEST_CASE("holomorphy condition holds exactly up to q = 12") {
  for (int q = 1; q <= 12; ++q) {
    const auto a = smoother_symbol_taylor(q, q + 1);
    for (int m = 0; m < q; ++m) CHECK(a[m] == 0);
    CHECK(a[q] != 0);
  }
}

TEST_CASE("coefficients sum to one for all supported q") {
  for (int q = 1; q <= 12; ++q) {
    std::int64_t sum = 0;
    for (auto c : h_coefficients(q).coefficients) sum += c;
    CHECK(sum == 1);
  }
}

TEST_CASE("closed binomial product equals the alternating-sum formula") {
  for (int q = 1; q <= 12; ++q)
    for (int k = q; k <= 2 * q - 1; ++k) {
      std::int64_t alt = 0;
      for (int l = 0; l <= k - q; ++l)
        alt += ((l % 2 == 0) ? 1 : -1) * binomial(k, l);
      CHECK(binomial(2 * q - 1, k) * alt == h_coefficients(q).at(k));
    }
}

TEST_CASE("scalar smoother values") {
  // q=1, a=-1, n=4: sqrt(n)/(sqrt(n)-a) = 2/3
  Eigen::VectorXcd entries(1);
  entries << std::complex<double>(-1.0, 0.0);
  DiagonalOperator<std::complex<double>> op(entries);
  auto space = InnerProductSpace<std::complex<double>>::scaled_euclidean(1);
  Eigen::VectorXcd v(1);
  v << 1.0;
  auto r1 = apply_smoother(op, space, v, 4, 1);
  CHECK(std::abs(r1(0) - 2.0 / 3.0) < 1e-15);
  // q=2: 3(2/3)^2 - 2(2/3)^3 = 20/27
  auto r2 = apply_smoother(op, space, v, 4, 2);
  CHECK(std::abs(r2(0) - 20.0 / 27.0) < 1e-14);
}

TEST_CASE("kernel vectors are reproduced exactly") {
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
  DenseOperator<double> op(zero);
  auto space = InnerProductSpace<double>::scaled_euclidean(3);
  Eigen::VectorXd v(3);
  v << 1.0, -2.0, 0.5;
  for (int q = 1; q <= 4; ++q) {
    const Eigen::VectorXd r = apply_smoother(op, space, v, 7, q);
    CHECK((r - v).norm() < 1e-13 * v.norm());
  }
}

TEST_CASE("rate study rejects vectors annihilated by A^q") {
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 2);
  DenseOperator<double> op(zero);
  auto space = InnerProductSpace<double>::scaled_euclidean(2);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(smoothing_rate_study(op, space, v, 1, {4, 16}),
                  std::invalid_argument);
}

TEST_CASE("scalar rate study matches closed-form rational evaluation") {
  const double a = -3.0;
  Eigen::VectorXcd entries(1);
  entries << std::complex<double>(a, 0.0);
  DiagonalOperator<std::complex<double>> op(entries);
  auto space = InnerProductSpace<std::complex<double>>::scaled_euclidean(1);
  Eigen::VectorXcd v(1);
  v << 1.0;
  for (int q : {1, 2, 3})
    for (int n : {4, 16, 64}) {
      const auto coef = h_coefficients(q);
      const double root = std::sqrt(static_cast<double>(n));
      double hval = 0.0;
      for (int k = q; k <= 2 * q - 1; ++k)
        hval += coef.at(k) * std::pow(root / (root - a), k);
      const auto smoothed = apply_smoother(op, space, v, n, q);
      CHECK(std::abs(smoothed(0).real() - hval) < 1e-13);
    }
}

TEST_CASE("scaled smoothing error stays bounded on the 1D Laplacian") {
  auto lap = assemble_fd_laplacian_1d(255);
  auto space = InnerProductSpace<double>::scaled_euclidean(255);
  const double h = lap->mesh_width();
  for (int q : {1, 2, 3}) {
    // sample x^{2q}(1-x)^{2q}, whose q-fold discrete Laplacian has no
    // boundary spikes
    Eigen::VectorXd v(255);
    for (int i = 0; i < 255; ++i) {
      const double x = (i + 1) * h;
      v(i) = std::pow(x * (1.0 - x), 2 * q);
    }
    const auto rows =
        smoothing_rate_study<double>(*lap, space, v, q, {4, 16, 64, 256, 1024});
    double lo = rows.front().second, hi = rows.front().second;
    for (const auto& [n, val] : rows) {
      lo = std::min(lo, val);
      hi = std::max(hi, val);
    }
    CHECK_MESSAGE(hi <= 10.0 * lo, "q=", q, " scaled error varies by ",
                  hi / lo);
  }
}

TEST_CASE("smoother operator norms stay of one order over the n grid") {
  auto lap = assemble_fd_laplacian_1d(127);
  auto space = InnerProductSpace<double>::scaled_euclidean(127);
  for (int q : {1, 2}) {
    double lo = 1e300, hi = 0.0;
    for (int n : {4, 16, 64, 256, 1024}) {
      const double est = smoother_norm_estimate<double>(*lap, space, n, q);
      lo = std::min(lo, est);
      hi = std::max(hi, est);
    }
    CHECK_MESSAGE(hi <= 10.0 * lo, "q=", q, " norm estimate varies by ",
                  hi / lo);
  }
}

TEST_CASE("verify_smoothing suite passes") {
  for (const auto& r : verify_smoothing()) CHECK_MESSAGE(r.pass, r.name);
}
