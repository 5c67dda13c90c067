#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <optional>

namespace adastep {

// Dense iterate. All solver state lives in these.
using Point = Eigen::VectorXd;

// Row-major compressed sparse matrix; column indices are strictly
// increasing within each row once compressed.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// One oracle call: the query point with its value and gradient.
struct GradSample {
  Point x;
  double value = 0.0;
  Point grad;

  double grad_norm_sq() const { return grad.squaredNorm(); }
};

// Known minimum of an objective; the minimizer itself may be unknown.
struct Optimum {
  double f_star = 0.0;
  std::optional<Point> x_star;
};

}  // namespace adastep
