#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "adastep/types.hpp"

namespace adastep {

// Deterministic first-order oracle over a fixed dimension. Evaluation is a
// pure function of the point: repeated calls give bit-identical results
// within a process.
class Objective {
 public:
  // Fills `grad` (already sized to dim) and returns the value.
  using EvalFn = std::function<double(const Point& x, Point& grad)>;

  Objective(Eigen::Index dim, EvalFn eval, std::string name = "objective")
      : dim_(dim), eval_(std::move(eval)), name_(std::move(name)) {}

  Eigen::Index dim() const { return dim_; }
  const std::string& name() const { return name_; }

  // Global smoothness bound, when one is known for the family.
  const std::optional<double>& known_smoothness() const { return smoothness_; }
  void set_known_smoothness(double value) { smoothness_ = value; }

  const std::optional<Optimum>& known_optimum() const { return optimum_; }
  void set_known_optimum(Optimum opt) { optimum_ = std::move(opt); }

  // Validates the query dimension and the finiteness of the outputs.
  GradSample evaluate(const Point& x) const;

 private:
  Eigen::Index dim_;
  EvalFn eval_;
  std::string name_;
  std::optional<double> smoothness_;
  std::optional<Optimum> optimum_;
};

inline GradSample evaluate(const Objective& objective, const Point& x) {
  return objective.evaluate(x);
}

// Largest eigenvalue of A^T A by power iteration.
struct SpectralEstimate {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  bool zero_input = false;
};

SpectralEstimate spectral_bound(const SparseMatrix& a,
                                std::uint64_t seed = 0x5eedULL);
SpectralEstimate spectral_bound(const Eigen::MatrixXd& a,
                                std::uint64_t seed = 0x5eedULL);

// f(x) = (1/m) ||Ax - b||^2. Smoothness bound (2/m) lambda_max(A^T A) is
// attached unless `with_smoothness` is false.
Objective least_squares(const SparseMatrix& a, const Eigen::VectorXd& b,
                        bool with_smoothness = true);
Objective least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                        bool with_smoothness = true);

// Regularized logistic loss over labels in {0,1}:
//   f(x) = -(1/m) sum_i [y_i log s(a_i.x) + (1-y_i) log(1 - s(a_i.x))]
//          + (gamma/2) ||x||^2.
// Attached smoothness bound: (1/4) lambda_max(A^T A) + gamma.
Objective logistic(const SparseMatrix& a, const Eigen::VectorXd& labels,
                   double gamma, bool with_smoothness = true);
Objective logistic(const Eigen::MatrixXd& a, const Eigen::VectorXd& labels,
                   double gamma, bool with_smoothness = true);

// f(x) = 0.5 (x-c)^T Q (x-c) for symmetric PSD Q; minimum 0 at c.
Objective quadratic(const Eigen::MatrixXd& q, const Point& center);

// Random quadratic with spectrum drawn from [0.1, 10]; the exact largest
// eigenvalue is attached as the smoothness bound.
Objective random_quadratic(Eigen::Index dim, std::uint64_t seed);

// Least squares with U[0,1] entries and a planted minimizer in the unit
// ball, so f* = 0 exactly.
struct SyntheticLeastSquares {
  Objective objective;
  Point x_star;
};
SyntheticLeastSquares synthetic_least_squares(Eigen::Index rows,
                                              Eigen::Index cols,
                                              std::uint64_t seed);

}  // namespace adastep
