// Acceptance suite: one test case per criterion, each printing a summary
// line. Run via ctest or directly.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rkm/rkm.hpp"
#include "test_support.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>
#include <random>
#include <vector>

using namespace rkm;
using Cplx = std::complex<double>;

namespace {

void report(int criterion, const char* what, bool pass) {
  std::printf("criterion %d (%s): %s\n", criterion, what,
              pass ? "PASS" : "FAIL");
  std::fflush(stdout);
}

std::vector<int> iota_n(int n_max) {
  std::vector<int> ns(n_max);
  std::iota(ns.begin(), ns.end(), 1);
  return ns;
}

double error_at(const std::vector<ConvergenceRecord>& records, int n) {
  for (const auto& r : records)
    if (r.n == n) return r.error;
  REQUIRE(false);
  return -1.0;
}

}  // namespace

TEST_CASE("criterion 1: rational exactness") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dims(20, 100);
  std::normal_distribution<double> dist;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int dim = dims(rng);
    DenseOperator<Cplx> op(random_dissipative_matrix<Cplx>(dim, rng));
    auto space = InnerProductSpace<Cplx>::scaled_euclidean(dim);
    Eigen::VectorXcd v = rkm_test::random_vector<Cplx>(dim, rng);
    auto dec = rational_arnoldi<Cplx>(op, space, v, 12, 1.0, 1.0);
    for (int k = 1; k < static_cast<int>(dec.size()); ++k)
      worst = std::max(worst, check_rational_exactness(dec, op, k));
  }
  const bool pass = worst <= 1e-10;
  report(1, "rational exactness", pass);
  CHECK_MESSAGE(pass, "worst relative error ", worst);
}

TEST_CASE("criterion 2: smoothness-adaptive rates") {
  const std::vector<int> ns = iota_n(60);
  std::vector<std::vector<ConvergenceRecord>> runs;
  for (int q : {2, 4, 8}) {
    ProblemSetup setup{ProblemKind::Schrodinger, 4096, 0.02, 1.0, q, {}};
    runs.push_back(run_convergence(setup, ns, MethodKind::ResolventKrylov));
  }
  const double slope_q2 = estimate_rate(runs[0], 10, 60).slope;
  const double slope_q4 = estimate_rate(runs[1], 10, 60).slope;
  const double e2 = error_at(runs[0], 40);
  const double e4 = error_at(runs[1], 40);
  const double e8 = error_at(runs[2], 40);
  const bool pass =
      slope_q2 <= -0.7 && slope_q4 <= -1.7 && e8 <= e4 && e4 <= e2;
  report(2, "smoothness-adaptive rates", pass);
  CHECK_MESSAGE(pass, "slope(q=2)=", slope_q2, " slope(q=4)=", slope_q4,
                " e(q=2)=", e2, " e(q=4)=", e4, " e(q=8)=", e8);
}

TEST_CASE("criterion 3: grid independence") {
  const std::vector<int> ns = iota_n(40);
  std::vector<std::vector<ConvergenceRecord>> schroe;
  for (int n_modes : {1024, 8192}) {
    ProblemSetup setup{ProblemKind::Schrodinger, n_modes, 0.02, 1.0, 2, {}};
    schroe.push_back(run_convergence(setup, ns, MethodKind::ResolventKrylov));
  }
  const double ratio_s = grid_independence_check(schroe, 10);

  std::vector<std::vector<ConvergenceRecord>> wave;
  for (int d : {31, 63}) {
    ProblemSetup setup{ProblemKind::WaveFd, d, 0.5, 1.0, 2, {}};
    wave.push_back(run_convergence(setup, ns, MethodKind::ResolventKrylov));
  }
  const double ratio_w = grid_independence_check(wave, 10);

  const bool pass = ratio_s <= 3.0 && ratio_w <= 3.0;
  report(3, "grid independence", pass);
  CHECK_MESSAGE(pass, "schrodinger ratio ", ratio_s, ", wave ratio ", ratio_w);
}

TEST_CASE("criterion 4: implicit-Euler baseline rate") {
  const std::vector<int> ns = iota_n(60);
  ProblemSetup setup{ProblemKind::Schrodinger, 4096, 0.02, 1.0, 4, {}};
  const auto euler = run_convergence(setup, ns, MethodKind::ImplicitEuler);
  const auto krylov = run_convergence(setup, ns, MethodKind::ResolventKrylov);
  const double slope = estimate_rate(euler, 10, 60).slope;
  const double ek = error_at(krylov, 40);
  const double ee = error_at(euler, 40);
  const bool pass = slope >= -1.3 && slope <= -0.7 && ek < ee;
  report(4, "implicit-Euler baseline rate", pass);
  CHECK_MESSAGE(pass, "euler slope ", slope, ", krylov error ", ek,
                ", euler error ", ee, " at n=40");
}

TEST_CASE("criterion 5: phi-function identities") {
  bool pass = true;
  for (const auto& r : verify_phi(2024)) {
    pass = pass && r.pass;
    CHECK_MESSAGE(r.pass, r.name, " observed ", r.observed);
  }
  report(5, "phi-function identities", pass);
}

TEST_CASE("criterion 6: smoothing coefficients and scaled error") {
  bool pass = true;
  for (const auto& r : verify_smoothing(8)) {
    pass = pass && r.pass;
    CHECK_MESSAGE(r.pass, r.name);
  }
  auto lap = assemble_fd_laplacian_1d(255);
  auto space = InnerProductSpace<double>::scaled_euclidean(255);
  const double h = lap->mesh_width();
  for (int q : {1, 2}) {
    // x^{2q}(1-x)^{2q} vanishes to order 2q at the boundary, so the q-fold
    // discrete Laplacian of its samples stays free of boundary spikes.
    Eigen::VectorXd v(255);
    for (int i = 0; i < 255; ++i) {
      const double x = (i + 1) * h;
      v(i) = std::pow(x * (1.0 - x), 2 * q);
    }
    const auto rows = smoothing_rate_study<double>(*lap, space, v, q,
                                                   {4, 16, 64, 256, 1024});
    double lo = rows.front().second, hi = rows.front().second;
    for (const auto& [n, val] : rows) {
      lo = std::min(lo, val);
      hi = std::max(hi, val);
    }
    const bool bounded = hi <= 10.0 * lo;
    pass = pass && bounded;
    CHECK_MESSAGE(bounded, "q=", q, " scaled error varies by ", hi / lo);
  }
  report(6, "smoothing coefficients and scaled error", pass);
}

TEST_CASE("criterion 7: structural invariants") {
  bool pass = true;
  std::mt19937_64 rng(7);

  // orthonormality and projected dissipativity on a random dissipative build
  {
    const int dim = 80;
    DenseOperator<Cplx> op(random_dissipative_matrix<Cplx>(dim, rng));
    auto space = InnerProductSpace<Cplx>::scaled_euclidean(dim);
    Eigen::VectorXcd v = rkm_test::random_vector<Cplx>(dim, rng);
    auto dec = rational_arnoldi<Cplx>(op, space, v, 15, 1.0, 1.0);
    Eigen::MatrixXcd gram(dec.size(), dec.size());
    for (int i = 0; i < dec.size(); ++i)
      for (int j = 0; j < dec.size(); ++j)
        gram(i, j) = space.inner(Eigen::VectorXcd(dec.basis.col(i)),
                                 Eigen::VectorXcd(dec.basis.col(j)));
    gram -= Eigen::MatrixXcd::Identity(dec.size(), dec.size());
    const bool ortho = gram.cwiseAbs().maxCoeff() <= 1e-12;
    pass = pass && ortho;
    CHECK_MESSAGE(ortho, "orthonormality defect ", gram.cwiseAbs().maxCoeff());

    bool dissip = true;
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXcd c = rkm_test::random_vector<Cplx>(dec.size(), rng);
      c.normalize();
      dissip = dissip && (c.adjoint() * dec.projected * c)(0).real() <= 1e-12;
    }
    pass = pass && dissip;
    CHECK_MESSAGE(dissip, "projected dissipativity violated");
  }

  // wave build: orthonormality in the energy inner product
  {
    auto lap = assemble_fd_laplacian(15);
    WaveBlockOperator wave(lap);
    auto space = wave.energy_space();
    const Eigen::VectorXd v = wave_initial_data(*lap, 2);
    auto dec = rational_arnoldi<double>(wave, space, v, 12, 1.0, 0.5);
    double defect = 0.0;
    for (int i = 0; i < dec.size(); ++i)
      for (int j = 0; j < dec.size(); ++j) {
        const double g = space.inner(Eigen::VectorXd(dec.basis.col(i)),
                                     Eigen::VectorXd(dec.basis.col(j)));
        defect = std::max(defect, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    pass = pass && defect <= 1e-12;
    CHECK_MESSAGE(defect <= 1e-12, "wave orthonormality defect ", defect);
  }

  // energy conservation of the exact propagator
  {
    auto lap = assemble_fd_laplacian(20);
    WaveBlockOperator wave(lap);
    auto space = wave.energy_space();
    Eigen::VectorXd y0 = rkm_test::random_vector<double>(2 * 400, rng);
    const double drift =
        std::abs(space.norm(exact_wave_dst(*lap, 0.7, y0)) - space.norm(y0));
    const bool conserved = drift <= 1e-11 * space.norm(y0);
    pass = pass && conserved;
    CHECK_MESSAGE(conserved, "energy drift ", drift);
  }

  // full-dimension runs hit the reference
  {
    ProblemSetup setup{ProblemKind::Schrodinger, 64, 0.05, 1.0, 2, {}};
    const auto records =
        run_convergence(setup, {64}, MethodKind::ResolventKrylov);
    const bool exact = records.front().error <= 1e-10;
    pass = pass && exact;
    CHECK_MESSAGE(exact, "full-dimension error ", records.front().error);
  }

  report(7, "structural invariants", pass);
}
