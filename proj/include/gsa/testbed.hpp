#pragma once

#include "gsa/types.hpp"

#include <functional>
#include <string>

namespace gsa {

/// Deterministic model with a fixed output length and, when available,
/// closed-form Sobol' values for validation. exact_index honors the
/// set's kind (closed, total, second_order).
struct AnalyticModel {
  std::string name;
  InputSpace space;
  Index output_dim = 1;
  std::function<Vector(const Vector&)> evaluate;
  std::function<double(const IndexSet&)> exact_index;  // may be empty
};

/// Evaluates the model on each row of `inputs`, one output row per input row.
Matrix evaluate_rows(const AnalyticModel& model, const Matrix& inputs);

/// Uniform spatial grid, row-major flattening: pixel = i * ny + j with
/// z1 = coord_x(i), z2 = coord_y(j), endpoints included.
struct GridSpec {
  double lo = -90.0;
  double hi = 90.0;
  Index nx = 64;
  Index ny = 64;

  Index pixel_count() const { return nx * ny; }
  double coord_x(Index i) const;
  double coord_y(Index j) const;
};

/// Campbell2D field on the grid, eight inputs in [-1, 5]. Formula
/// transcribed from Marrel, Iooss, Jullien, Laurent and Volkova, "Global
/// sensitivity analysis for models with spatially dependent outputs",
/// Environmetrics 22(3), 2011. Out-of-range inputs throw.
Vector campbell2d(const Vector& x, const GridSpec& grid);

AnalyticModel campbell2d_model(const GridSpec& grid = {});

/// f(X) = sum_j w_j X_j on independent uniforms; scalar output with exact
/// indices S_I = sum_{i in I} w_i^2 var_i / sum_j w_j^2 var_j and zero
/// interactions.
AnalyticModel additive_oracle(const Vector& weights, const InputSpace& space);

/// f = X1 * X2 on uniform(-1,1)^2: S_1 = S_2 = 0, S_{1,2} = 1.
AnalyticModel product_model();

/// Parses CLI model names: "campbell2d", "product",
/// "additive:w=1,2[:bounds=0,1]".
AnalyticModel model_by_name(const std::string& text);

/// Closed Sobol' index by nested Gauss-Legendre quadrature (inner mean
/// over the complement, outer variance over the set), d <= 3, output
/// component 0. Total and second-order sets go through the complement and
/// combination identities. The point count doubles until the relative
/// change drops below `tol`; non-convergence throws.
double brute_force_sobol(const AnalyticModel& model, const IndexSet& set,
                         int quad_points = 64, double tol = 1e-6);

/// Nodes and weights of the n-point Gauss-Legendre rule on [a, b].
void gauss_legendre(int n, double a, double b, Vector& nodes, Vector& weights);

}  // namespace gsa
