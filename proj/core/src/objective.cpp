#include "adastep/objective.hpp"

#include <cmath>
#include <memory>

#include "adastep/errors.hpp"
#include "adastep/rng.hpp"

namespace adastep {
namespace {

void require_finite(const GradSample& sample, const std::string& name) {
  if (!std::isfinite(sample.value)) {
    throw NumericError(name + ": objective value is not finite");
  }
  for (Eigen::Index i = 0; i < sample.grad.size(); ++i) {
    if (!std::isfinite(sample.grad[i])) {
      throw NumericError(name + ": gradient coordinate " + std::to_string(i) +
                         " is not finite");
    }
  }
}

// log(1 + exp(t)) without overflow for large |t|.
double softplus(double t) {
  if (t > 0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

// 1 / (1 + exp(-t)) without overflow for large |t|.
double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

template <class Matrix>
SpectralEstimate spectral_bound_impl(const Matrix& a, std::uint64_t seed) {
  SpectralEstimate est;
  const Eigen::Index n = a.cols();
  if (n == 0 || a.rows() == 0) {
    est.zero_input = true;
    est.converged = true;
    return est;
  }
  constexpr int kMaxIterations = 100000;
  constexpr int kMaxRestarts = 4;
  constexpr double kRelTol = 1e-10;
  Rng rng(seed);
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    Point v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
    double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;
    double rayleigh = 0.0;
    bool dead_direction = false;
    while (est.iterations < kMaxIterations) {
      Point w = a.transpose() * (a * v);
      ++est.iterations;
      const double next = v.dot(w);
      const double wnorm = w.norm();
      if (wnorm == 0.0) {
        dead_direction = true;
        break;
      }
      v = w / wnorm;
      if (std::abs(next - rayleigh) <= kRelTol * std::max(next, 1e-300)) {
        est.value = next;
        est.converged = true;
        return est;
      }
      rayleigh = next;
    }
    if (!dead_direction) {
      est.value = rayleigh;
      return est;  // iteration cap; best estimate, converged stays false
    }
  }
  // Every start was annihilated: treat as the zero matrix.
  est.value = 0.0;
  est.zero_input = true;
  est.converged = true;
  return est;
}

template <class Matrix>
Objective least_squares_impl(Matrix a, Eigen::VectorXd b,
                             bool with_smoothness) {
  if (a.rows() != b.size()) {
    throw UsageError("least_squares: A has " + std::to_string(a.rows()) +
                     " rows but b has " + std::to_string(b.size()) +
                     " entries");
  }
  if (a.rows() == 0) throw UsageError("least_squares: A has no rows");
  const double inv_m = 1.0 / static_cast<double>(a.rows());
  auto shared_a = std::make_shared<Matrix>(std::move(a));
  auto shared_b = std::make_shared<Eigen::VectorXd>(std::move(b));
  Objective objective(
      shared_a->cols(),
      [shared_a, shared_b, inv_m](const Point& x, Point& grad) {
        Eigen::VectorXd residual = (*shared_a) * x - (*shared_b);
        grad = 2.0 * inv_m * (shared_a->transpose() * residual);
        return inv_m * residual.squaredNorm();
      },
      "least_squares");
  if (with_smoothness) {
    objective.set_known_smoothness(2.0 * inv_m * spectral_bound(*shared_a).value);
  }
  return objective;
}

template <class Matrix>
Objective logistic_impl(Matrix a, Eigen::VectorXd labels, double gamma,
                        bool with_smoothness) {
  if (a.rows() != labels.size()) {
    throw UsageError("logistic: A has " + std::to_string(a.rows()) +
                     " rows but labels has " + std::to_string(labels.size()) +
                     " entries");
  }
  if (a.rows() == 0) throw UsageError("logistic: A has no rows");
  if (gamma < 0) throw UsageError("logistic: negative regularizer");
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0.0 && labels[i] != 1.0) {
      throw DataError("logistic: label at row " + std::to_string(i) +
                      " is " + std::to_string(labels[i]) +
                      ", expected 0 or 1");
    }
  }
  const double inv_m = 1.0 / static_cast<double>(a.rows());
  auto shared_a = std::make_shared<Matrix>(std::move(a));
  auto shared_y = std::make_shared<Eigen::VectorXd>(std::move(labels));
  Objective objective(
      shared_a->cols(),
      [shared_a, shared_y, inv_m, gamma](const Point& x, Point& grad) {
        Eigen::VectorXd t = (*shared_a) * x;
        double value = 0.0;
        Eigen::VectorXd weight(t.size());
        for (Eigen::Index i = 0; i < t.size(); ++i) {
          // y log s(t) + (1-y) log(1-s(t)) = -(softplus(-t) + (1-y) t)
          value += softplus(-t[i]) + (1.0 - (*shared_y)[i]) * t[i];
          weight[i] = sigmoid(t[i]) - (*shared_y)[i];
        }
        grad = inv_m * (shared_a->transpose() * weight) + gamma * x;
        return inv_m * value + 0.5 * gamma * x.squaredNorm();
      },
      "logistic");
  if (with_smoothness) {
    objective.set_known_smoothness(0.25 * spectral_bound(*shared_a).value +
                                   gamma);
  }
  return objective;
}

}  // namespace

GradSample Objective::evaluate(const Point& x) const {
  if (x.size() != dim_) {
    throw UsageError(name_ + ": expected dimension " + std::to_string(dim_) +
                     ", got " + std::to_string(x.size()));
  }
  GradSample sample;
  sample.x = x;
  sample.grad.resize(dim_);
  sample.value = eval_(x, sample.grad);
  require_finite(sample, name_);
  return sample;
}

SpectralEstimate spectral_bound(const SparseMatrix& a, std::uint64_t seed) {
  return spectral_bound_impl(a, seed);
}

SpectralEstimate spectral_bound(const Eigen::MatrixXd& a, std::uint64_t seed) {
  return spectral_bound_impl(a, seed);
}

Objective least_squares(const SparseMatrix& a, const Eigen::VectorXd& b,
                        bool with_smoothness) {
  return least_squares_impl(a, b, with_smoothness);
}

Objective least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                        bool with_smoothness) {
  return least_squares_impl(a, b, with_smoothness);
}

Objective logistic(const SparseMatrix& a, const Eigen::VectorXd& labels,
                   double gamma, bool with_smoothness) {
  return logistic_impl(a, labels, gamma, with_smoothness);
}

Objective logistic(const Eigen::MatrixXd& a, const Eigen::VectorXd& labels,
                   double gamma, bool with_smoothness) {
  return logistic_impl(a, labels, gamma, with_smoothness);
}

Objective quadratic(const Eigen::MatrixXd& q, const Point& center) {
  if (q.rows() != q.cols()) throw UsageError("quadratic: Q is not square");
  if (q.rows() != center.size()) {
    throw UsageError("quadratic: Q and center dimensions differ");
  }
  const double asym = (q - q.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * (1.0 + q.cwiseAbs().maxCoeff())) {
    throw UsageError("quadratic: Q is not symmetric");
  }
  auto shared_q = std::make_shared<Eigen::MatrixXd>(q);
  auto shared_c = std::make_shared<Point>(center);
  Objective objective(
      q.rows(),
      [shared_q, shared_c](const Point& x, Point& grad) {
        Eigen::VectorXd d = x - *shared_c;
        grad = (*shared_q) * d;
        return 0.5 * d.dot(grad);
      },
      "quadratic");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigensolver(q);
  objective.set_known_smoothness(eigensolver.eigenvalues().maxCoeff());
  objective.set_known_optimum({0.0, center});
  return objective;
}

Objective random_quadratic(Eigen::Index dim, std::uint64_t seed) {
  if (dim <= 0) throw UsageError("random_quadratic: dimension must be positive");
  Rng rng(seed);
  Eigen::MatrixXd gaussian(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double u1 = 1.0 - rng.uniform();
      const double u2 = rng.uniform();
      gaussian(i, j) =
          std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
  Eigen::MatrixXd basis = qr.householderQ();
  Eigen::VectorXd spectrum(dim);
  for (Eigen::Index i = 0; i < dim; ++i) spectrum[i] = rng.uniform(0.1, 10.0);
  Eigen::MatrixXd q = basis * spectrum.asDiagonal() * basis.transpose();
  q = 0.5 * (q + q.transpose());  // kill rounding asymmetry
  Point center(dim);
  for (Eigen::Index i = 0; i < dim; ++i) center[i] = rng.uniform(-1.0, 1.0);
  Objective objective = quadratic(q, center);
  objective.set_known_smoothness(spectrum.maxCoeff());
  return objective;
}

SyntheticLeastSquares synthetic_least_squares(Eigen::Index rows,
                                              Eigen::Index cols,
                                              std::uint64_t seed) {
  if (rows <= 0 || cols <= 0) {
    throw UsageError("synthetic_least_squares: dimensions must be positive");
  }
  Rng rng(seed);
  Eigen::MatrixXd a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = rng.uniform();
  }
  Point direction(cols);
  for (Eigen::Index i = 0; i < cols; ++i) {
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    direction[i] =
        std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  const double norm = direction.norm();
  if (norm > 0) direction /= norm;
  const double radius =
      std::exp(std::log(std::max(rng.uniform(), 0x1.0p-53)) /
               static_cast<double>(cols));
  Point x_star = radius * direction;
  Eigen::VectorXd b = a * x_star;
  Objective objective = least_squares(a, b);
  objective.set_known_optimum({0.0, x_star});
  return {std::move(objective), std::move(x_star)};
}

}  // namespace adastep
