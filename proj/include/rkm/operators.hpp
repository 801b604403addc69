#pragma once

// Stiff operators with shifted-resolvent solvers: diagonal symbols,
// finite-difference Laplacians on tensor grids (sine-diagonalizable),
// the first-order wave block operator, and dense matrices for testing.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace rkm {

using Index = Eigen::Index;

struct SolverConfig {
  enum class Method { DirectElementwise, FastSineTransform, ConjugateGradient };
  Method method = Method::FastSineTransform;
  double tolerance = 1e-12;  // relative residual
  int max_iterations = 10000;
};

class solver_error : public std::runtime_error {
 public:
  solver_error(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

namespace detail {

template <class Scalar>
double real_part(Scalar z) {
  if constexpr (std::is_same_v<Scalar, std::complex<double>>)
    return z.real();
  else
    return z;
}

}  // namespace detail

/// Inner product defining the Hilbert space the method works in.
/// Either a scaled Euclidean form or the wave energy form
/// ([v1;v2],[w1;w2]) = weight*((-L v1, w1) + (v2, w2)).
template <class Scalar>
class InnerProductSpace {
 public:
  using Vec = Eigen::VectorX<Scalar>;

  static InnerProductSpace scaled_euclidean(Index dim, double weight = 1.0) {
    InnerProductSpace s;
    s.dim_ = dim;
    s.weight_ = weight;
    return s;
  }

  static InnerProductSpace wave_energy(
      std::shared_ptr<const Eigen::SparseMatrix<double>> laplacian,
      double weight) {
    static_assert(std::is_same_v<Scalar, double>,
                  "energy form is defined on real block vectors");
    InnerProductSpace s;
    s.dim_ = 2 * laplacian->rows();
    s.weight_ = weight;
    s.laplacian_ = std::move(laplacian);
    return s;
  }

  Index dim() const { return dim_; }

  // conjugate-linear in the first argument
  Scalar inner(const Vec& v, const Vec& w) const {
    if (v.size() != dim_ || w.size() != dim_)
      throw std::invalid_argument("InnerProductSpace: dimension mismatch");
    if (!laplacian_) return weight_ * v.dot(w);
    const Index n = dim_ / 2;
    Eigen::VectorXd lv1;
    if constexpr (std::is_same_v<Scalar, double>)
      lv1 = (*laplacian_) * v.head(n);
    return weight_ * (-(lv1.dot(w.head(n))) + v.tail(n).dot(w.tail(n)));
  }

  double norm(const Vec& v) const {
    return std::sqrt(std::abs(detail::real_part(inner(v, v))));
  }

 private:
  Index dim_ = 0;
  double weight_ = 1.0;
  std::shared_ptr<const Eigen::SparseMatrix<double>> laplacian_;
};

/// Abstract operator A: supports y = A x and the shifted solve
/// (gamma - tau A) x = w. Immutable after construction.
template <class Scalar>
class LinearOperator {
 public:
  using Vec = Eigen::VectorX<Scalar>;

  virtual ~LinearOperator() = default;
  virtual Index dim() const = 0;
  virtual Vec apply(const Vec& v) const = 0;
  virtual Vec solve_shifted(double gamma, double tau, const Vec& w,
                            const SolverConfig& cfg) const = 0;

 protected:
  static void check_shift(double gamma) {
    if (!(gamma > 0.0))
      throw std::domain_error("solve_shifted: shift gamma must be positive");
  }
};

template <class Scalar>
class DiagonalOperator final : public LinearOperator<Scalar> {
 public:
  using Vec = Eigen::VectorX<Scalar>;

  explicit DiagonalOperator(Vec entries) : entries_(std::move(entries)) {}

  Index dim() const override { return entries_.size(); }
  const Vec& entries() const { return entries_; }

  Vec apply(const Vec& v) const override {
    return entries_.cwiseProduct(v);
  }

  Vec solve_shifted(double gamma, double tau, const Vec& w,
                    const SolverConfig&) const override {
    this->check_shift(gamma);
    return w.array() / (gamma - tau * entries_.array());
  }

 private:
  Vec entries_;
};

namespace detail {

// CG for SPD systems given as a matvec functor.
template <class MatVec>
Eigen::VectorXd conjugate_gradient(const MatVec& mv, const Eigen::VectorXd& b,
                                   const SolverConfig& cfg) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  Eigen::VectorXd r = b;
  Eigen::VectorXd p = r;
  const double bnorm = b.norm();
  if (bnorm == 0.0) return x;
  double rr = r.squaredNorm();
  for (int it = 0; it < cfg.max_iterations; ++it) {
    if (std::sqrt(rr) <= cfg.tolerance * bnorm) return x;
    Eigen::VectorXd ap = mv(p);
    const double alpha = rr / p.dot(ap);
    x += alpha * p;
    r -= alpha * ap;
    const double rr_new = r.squaredNorm();
    p = r + (rr_new / rr) * p;
    rr = rr_new;
  }
  if (std::sqrt(rr) <= cfg.tolerance * bnorm) return x;
  throw solver_error("conjugate gradient did not converge",
                     std::sqrt(rr) / bnorm);
}

}  // namespace detail

/// Five-point (2D) or three-point (1D) FD Laplacian on the unit
/// square/interval with Dirichlet boundary, h = 1/(d+1). Diagonalized
/// exactly by the type-I discrete sine transform.
class FdLaplacian final : public LinearOperator<double> {
 public:
  using Vec = Eigen::VectorXd;

  static FdLaplacian square_2d(int d) { return FdLaplacian(d, 2); }
  static FdLaplacian interval_1d(int d) { return FdLaplacian(d, 1); }

  Index dim() const override { return mat_.rows(); }
  int grid_size() const { return d_; }
  int spatial_dims() const { return dims_; }
  double mesh_width() const { return h_; }
  const Eigen::SparseMatrix<double>& matrix() const { return mat_; }

  Vec apply(const Vec& v) const override { return mat_ * v; }

  /// Eigenvalue of the mode with index j (and k in 2D), 1-based.
  double eigenvalue(int j, int k = 0) const {
    const double s = [this](int m) {
      const double t = std::sin(0.5 * m * M_PI * h_);
      return t * t;
    }(j);
    if (dims_ == 1) return -4.0 / (h_ * h_) * s;
    const double t = std::sin(0.5 * k * M_PI * h_);
    return -4.0 / (h_ * h_) * (s + t * t);
  }

  Vec solve_shifted(double gamma, double tau, const Vec& w,
                    const SolverConfig& cfg) const override {
    check_shift(gamma);
    if (w.size() != dim())
      throw std::invalid_argument("solve_shifted: dimension mismatch");
    switch (cfg.method) {
      case SolverConfig::Method::ConjugateGradient:
        return detail::conjugate_gradient(
            [&](const Vec& p) { return gamma * p - tau * (mat_ * p); }, w, cfg);
      case SolverConfig::Method::FastSineTransform:
      case SolverConfig::Method::DirectElementwise:
        return solve_dst(gamma, tau, w);
    }
    throw std::invalid_argument("solve_shifted: unknown method");
  }

  // Expands w in the sine eigenbasis, divides by (gamma - tau*lambda),
  // transforms back. Exact up to roundoff on the tensor grid.
  Vec solve_dst(double gamma, double tau, const Vec& w) const {
    if (dims_ == 1) {
      Vec c = sine_ * w;
      for (int j = 0; j < d_; ++j) c[j] /= gamma - tau * eigenvalue(j + 1);
      return sine_ * c;
    }
    Eigen::Map<const Eigen::MatrixXd> W(w.data(), d_, d_);
    Eigen::MatrixXd C = sine_ * W * sine_;
    for (int cidx = 0; cidx < d_; ++cidx)
      for (int r = 0; r < d_; ++r)
        C(r, cidx) /= gamma - tau * eigenvalue(r + 1, cidx + 1);
    Eigen::MatrixXd X = sine_ * C * sine_;
    return Eigen::Map<Vec>(X.data(), dim());
  }

 private:
  FdLaplacian(int d, int dims) : d_(d), dims_(dims), h_(1.0 / (d + 1)) {
    if (d < 1) throw std::invalid_argument("FdLaplacian: d must be >= 1");
    assemble();
    sine_.resize(d_, d_);
    const double scale = std::sqrt(2.0 * h_);  // orthonormal DST-I
    for (int r = 0; r < d_; ++r)
      for (int c = 0; c < d_; ++c)
        sine_(r, c) = scale * std::sin((r + 1) * (c + 1) * M_PI * h_);
  }

  void assemble() {
    const double ih2 = 1.0 / (h_ * h_);
    std::vector<Eigen::Triplet<double>> trip;
    if (dims_ == 1) {
      trip.reserve(3 * d_);
      for (int i = 0; i < d_; ++i) {
        trip.emplace_back(i, i, -2.0 * ih2);
        if (i > 0) trip.emplace_back(i, i - 1, ih2);
        if (i + 1 < d_) trip.emplace_back(i, i + 1, ih2);
      }
      mat_.resize(d_, d_);
    } else {
      trip.reserve(5 * d_ * d_);
      auto idx = [this](int r, int c) { return c * d_ + r; };
      for (int c = 0; c < d_; ++c)
        for (int r = 0; r < d_; ++r) {
          const int i = idx(r, c);
          trip.emplace_back(i, i, -4.0 * ih2);
          if (r > 0) trip.emplace_back(i, idx(r - 1, c), ih2);
          if (r + 1 < d_) trip.emplace_back(i, idx(r + 1, c), ih2);
          if (c > 0) trip.emplace_back(i, idx(r, c - 1), ih2);
          if (c + 1 < d_) trip.emplace_back(i, idx(r, c + 1), ih2);
        }
      mat_.resize(d_ * d_, d_ * d_);
    }
    mat_.setFromTriplets(trip.begin(), trip.end());
    mat_.makeCompressed();
  }

  int d_;
  int dims_;
  double h_;
  Eigen::SparseMatrix<double> mat_;
  Eigen::MatrixXd sine_;
};

inline std::shared_ptr<FdLaplacian> assemble_fd_laplacian(int d) {
  return std::make_shared<FdLaplacian>(FdLaplacian::square_2d(d));
}

inline std::shared_ptr<FdLaplacian> assemble_fd_laplacian_1d(int d) {
  return std::make_shared<FdLaplacian>(FdLaplacian::interval_1d(d));
}

/// First-order wave operator A = [[0, I], [L, 0]] over the energy space.
/// The shifted solve reduces to one SPD Poisson-type solve:
/// (gamma^2 - tau^2 L) x1 = gamma b1 + tau b2, x2 = (gamma x1 - b1)/tau.
class WaveBlockOperator final : public LinearOperator<double> {
 public:
  using Vec = Eigen::VectorXd;

  explicit WaveBlockOperator(std::shared_ptr<const FdLaplacian> laplacian)
      : lap_(std::move(laplacian)) {}

  Index dim() const override { return 2 * lap_->dim(); }
  const FdLaplacian& laplacian() const { return *lap_; }

  InnerProductSpace<double> energy_space() const {
    auto mat = std::shared_ptr<const Eigen::SparseMatrix<double>>(
        lap_, &lap_->matrix());
    const double h = lap_->mesh_width();
    return InnerProductSpace<double>::wave_energy(mat, h * h);
  }

  Vec apply(const Vec& v) const override {
    const Index n = lap_->dim();
    if (v.size() != 2 * n)
      throw std::invalid_argument("WaveBlockOperator: dimension mismatch");
    Vec out(2 * n);
    out.head(n) = v.tail(n);
    out.tail(n) = lap_->apply(v.head(n));
    return out;
  }

  Vec solve_shifted(double gamma, double tau, const Vec& w,
                    const SolverConfig& cfg) const override {
    check_shift(gamma);
    const Index n = lap_->dim();
    if (w.size() != 2 * n)
      throw std::invalid_argument("solve_shifted: dimension mismatch");
    Vec rhs = gamma * w.head(n) + tau * w.tail(n);
    Vec x1 = lap_->solve_shifted(gamma * gamma, tau * tau, rhs, cfg);
    Vec out(2 * n);
    out.head(n) = x1;
    out.tail(n) = (gamma * x1 - w.head(n)) / tau;
    return out;
  }

 private:
  std::shared_ptr<const FdLaplacian> lap_;
};

inline WaveBlockOperator make_wave_block_operator(
    std::shared_ptr<const FdLaplacian> laplacian) {
  if (laplacian->spatial_dims() != 2)
    throw std::invalid_argument("wave block operator expects the 2D Laplacian");
  return WaveBlockOperator(std::move(laplacian));
}

/// Dense matrix operator; shifted solves go through a partial-pivot LU.
template <class Scalar>
class DenseOperator final : public LinearOperator<Scalar> {
 public:
  using Vec = Eigen::VectorX<Scalar>;
  using Mat = Eigen::MatrixX<Scalar>;

  explicit DenseOperator(Mat m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols())
      throw std::invalid_argument("DenseOperator: matrix must be square");
  }

  Index dim() const override { return mat_.rows(); }
  const Mat& matrix() const { return mat_; }

  Vec apply(const Vec& v) const override { return mat_ * v; }

  Vec solve_shifted(double gamma, double tau, const Vec& w,
                    const SolverConfig&) const override {
    this->check_shift(gamma);
    Mat shifted = -tau * mat_;
    shifted.diagonal().array() += Scalar(gamma);
    return Eigen::PartialPivLU<Mat>(shifted).solve(w);
  }

 private:
  Mat mat_;
};

}  // namespace rkm
