#include "gsa/testbed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gsa {

Matrix evaluate_rows(const AnalyticModel& model, const Matrix& inputs) {
  if (inputs.cols() != model.space.dim_count()) {
    throw ConfigError("input width does not match model dimension");
  }
  Matrix out(inputs.rows(), model.output_dim);
  for (Index r = 0; r < inputs.rows(); ++r) {
    out.row(r) = model.evaluate(inputs.row(r).transpose()).transpose();
  }
  return out;
}

double GridSpec::coord_x(Index i) const {
  return lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(nx - 1);
}

double GridSpec::coord_y(Index j) const {
  return lo + static_cast<double>(j) * (hi - lo) / static_cast<double>(ny - 1);
}

Vector campbell2d(const Vector& x, const GridSpec& grid) {
  if (x.size() != 8) throw ConfigError("campbell2d takes 8 inputs");
  for (Index i = 0; i < 8; ++i) {
    if (!(x(i) >= -1.0 && x(i) <= 5.0)) {
      std::ostringstream msg;
      msg << "campbell2d input " << (i + 1) << " = " << x(i)
          << " outside [-1, 5]";
      throw ConfigError(msg.str());
    }
  }
  const double x1 = x(0), x2 = x(1), x3 = x(2), x4 = x(3);
  const double x5 = x(4), x6 = x(5), x7 = x(6), x8 = x(7);
  Vector out(grid.pixel_count());
  for (Index i = 0; i < grid.nx; ++i) {
    const double z1 = grid.coord_x(i);
    for (Index j = 0; j < grid.ny; ++j) {
      const double z2 = grid.coord_y(j);
      // Bump prefactors vanish with x1 (resp. x5), so the x=0 limit is 0.
      double t1 = 0.0;
      if (x1 != 0.0) {
        const double u = 0.8 * z1 + 0.2 * z2 - 10.0 * x2;
        t1 = x1 * std::exp(-u * u / (60.0 * x1 * x1));
      }
      const double t2 = (x2 + x4) * std::exp((0.5 * z1 + 0.5 * z2) * x1 / 500.0);
      double t3 = 0.0;
      if (x5 != 0.0) {
        const double u = 0.4 * z1 + 0.6 * z2 - 20.0 * x6;
        t3 = x5 * (x3 - 2.0) * std::exp(-u * u / (40.0 * x5 * x5));
      }
      const double t4 = (x6 + x8) * std::exp((0.3 * z1 + 0.7 * z2) * x7 / 250.0);
      out(i * grid.ny + j) = t1 + t2 + t3 + t4;
    }
  }
  return out;
}

AnalyticModel campbell2d_model(const GridSpec& grid) {
  AnalyticModel model;
  model.name = "campbell2d";
  model.space = uniform_space(8, -1.0, 5.0);
  model.output_dim = grid.pixel_count();
  model.evaluate = [grid](const Vector& x) { return campbell2d(x, grid); };
  return model;
}

AnalyticModel additive_oracle(const Vector& weights, const InputSpace& space) {
  validate(space);
  if (weights.size() != space.dim_count()) {
    throw ConfigError("weight count does not match input dimension");
  }
  if ((weights.array() == 0.0).all()) {
    throw ConfigError("additive oracle needs at least one nonzero weight");
  }
  Vector contributions(weights.size());
  for (Index j = 0; j < weights.size(); ++j) {
    const auto& d = space.dims[static_cast<size_t>(j)];
    const double width = d.upper - d.lower;
    contributions(j) = weights(j) * weights(j) * width * width / 12.0;
  }
  const double total = contributions.sum();

  AnalyticModel model;
  model.name = "additive";
  model.space = space;
  model.output_dim = 1;
  const Vector w = weights;
  model.evaluate = [w](const Vector& x) {
    Vector out(1);
    out(0) = w.dot(x);
    return out;
  };
  model.exact_index = [contributions, total](const IndexSet& set) {
    if (set.kind == SobolKind::second_order) return 0.0;
    double sum = 0.0;
    for (int j : set.members) sum += contributions(j);
    return sum / total;  // closed == total: no interactions
  };
  return model;
}

AnalyticModel product_model() {
  AnalyticModel model;
  model.name = "product";
  model.space = uniform_space(2, -1.0, 1.0);
  model.output_dim = 1;
  model.evaluate = [](const Vector& x) {
    Vector out(1);
    out(0) = x(0) * x(1);
    return out;
  };
  model.exact_index = [](const IndexSet& set) {
    const bool both = set.members.size() == 2;
    switch (set.kind) {
      case SobolKind::closed:
        return both ? 1.0 : 0.0;
      case SobolKind::total:
        return 1.0;  // every subset touches the interaction
      case SobolKind::second_order:
        return 1.0;
    }
    return 0.0;
  };
  return model;
}

namespace {

Vector parse_number_list(const std::string& text) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + item + "' in model spec");
    }
  }
  if (values.empty()) throw ConfigError("empty number list in model spec");
  return Eigen::Map<const Vector>(values.data(),
                                  static_cast<Index>(values.size()));
}

}  // namespace

AnalyticModel model_by_name(const std::string& text) {
  if (text == "campbell2d") return campbell2d_model();
  if (text == "product") return product_model();
  if (text.rfind("additive:", 0) == 0) {
    std::string rest = text.substr(9);
    Vector weights;
    double lo = 0.0, hi = 1.0;
    std::istringstream in(rest);
    std::string part;
    bool have_w = false;
    while (std::getline(in, part, ':')) {
      if (part.rfind("w=", 0) == 0) {
        weights = parse_number_list(part.substr(2));
        have_w = true;
      } else if (part.rfind("bounds=", 0) == 0) {
        const Vector b = parse_number_list(part.substr(7));
        if (b.size() != 2) throw ConfigError("bounds= takes two numbers");
        lo = b(0);
        hi = b(1);
      } else {
        throw ConfigError("unknown additive model option '" + part + "'");
      }
    }
    if (!have_w) throw ConfigError("additive model needs w=...");
    return additive_oracle(
        weights, uniform_space(static_cast<int>(weights.size()), lo, hi));
  }
  throw ConfigError("unknown model '" + text +
                    "' (try campbell2d, product, additive:w=...)");
}

void gauss_legendre(int n, double a, double b, Vector& nodes, Vector& weights) {
  if (n < 1) throw ConfigError("quadrature order must be >= 1");
  nodes.resize(n);
  weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int half_count = (n + 1) / 2;
  for (int i = 0; i < half_count; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k + 1.0) * z * p2 - k * p3) / (k + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    nodes(i) = mid - half * z;
    nodes(n - 1 - i) = mid + half * z;
    weights(i) = 2.0 * half / ((1.0 - z * z) * pp * pp);
    weights(n - 1 - i) = weights(i);
  }
}

namespace {

// Closed index of output component 0 by nested quadrature at a fixed order.
double closed_index_quadrature(const AnalyticModel& model,
                               const std::vector<int>& set_members, int q) {
  const int d = static_cast<int>(model.space.dim_count());
  std::vector<Vector> nodes(static_cast<size_t>(d)),
      weights(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    const auto& dist = model.space.dims[static_cast<size_t>(j)];
    gauss_legendre(q, dist.lower, dist.upper, nodes[static_cast<size_t>(j)],
                   weights[static_cast<size_t>(j)]);
    // normalize to the uniform density
    weights[static_cast<size_t>(j)] /= dist.upper - dist.lower;
  }

  std::vector<int> inner_dims;  // complement of the set
  for (int j = 0; j < d; ++j) {
    if (!std::binary_search(set_members.begin(), set_members.end(), j)) {
      inner_dims.push_back(j);
    }
  }
  const auto& outer_dims = set_members;

  Vector x(d);
  // walks a tensor grid over `dims`, calling body(weight) at each point
  const auto tensor_walk = [&](const std::vector<int>& dims, auto&& body) {
    std::vector<int> odo(dims.size(), 0);
    for (;;) {
      double w = 1.0;
      for (size_t t = 0; t < dims.size(); ++t) {
        const auto j = static_cast<size_t>(dims[t]);
        x(dims[t]) = nodes[j](odo[t]);
        w *= weights[j](odo[t]);
      }
      body(w);
      size_t t = 0;
      for (; t < dims.size(); ++t) {
        if (++odo[t] < q) break;
        odo[t] = 0;
      }
      if (t == dims.size()) break;
    }
  };

  double g_mean = 0.0;     // E[g] with g = E[f | X_set]; equals E[f]
  double g_mean_sq = 0.0;  // E[g^2]
  double mean_sq = 0.0;    // E[f^2]
  tensor_walk(outer_dims, [&](double w_outer) {
    double g = 0.0, f_sq = 0.0;
    tensor_walk(inner_dims, [&](double w_inner) {
      const double f = model.evaluate(x)(0);
      g += w_inner * f;
      f_sq += w_inner * f * f;
    });
    g_mean += w_outer * g;
    g_mean_sq += w_outer * g * g;
    mean_sq += w_outer * f_sq;
  });

  const double variance = mean_sq - g_mean * g_mean;
  if (!(variance > 0.0)) {
    throw ConfigError("model output has zero variance under quadrature");
  }
  return (g_mean_sq - g_mean * g_mean) / variance;
}

double converged_closed(const AnalyticModel& model,
                        const std::vector<int>& members, int q0, double tol) {
  double prev = closed_index_quadrature(model, members, q0);
  for (int q = q0 * 2; q <= 1024; q *= 2) {
    const double next = closed_index_quadrature(model, members, q);
    if (std::abs(next - prev) <= tol * std::max(1.0, std::abs(next))) {
      return next;
    }
    prev = next;
  }
  throw ConfigError("quadrature did not converge after doubling to 1024 points");
}

}  // namespace

double brute_force_sobol(const AnalyticModel& model, const IndexSet& set,
                         int quad_points, double tol) {
  const int d = static_cast<int>(model.space.dim_count());
  if (d > 3) throw ConfigError("brute-force quadrature supports d <= 3");
  for (int j : set.members) {
    if (j < 0 || j >= d) throw ConfigError("index set member out of range");
  }
  switch (set.kind) {
    case SobolKind::closed:
      return converged_closed(model, set.members, quad_points, tol);
    case SobolKind::total: {
      const IndexSet comp = complement(set, d);
      return 1.0 - converged_closed(model, comp.members, quad_points, tol);
    }
    case SobolKind::second_order: {
      if (set.members.size() != 2) {
        throw ConfigError("second-order set needs two members");
      }
      const double s_ij =
          converged_closed(model, set.members, quad_points, tol);
      const double s_i =
          converged_closed(model, {set.members[0]}, quad_points, tol);
      const double s_j =
          converged_closed(model, {set.members[1]}, quad_points, tol);
      return s_ij - s_i - s_j;
    }
  }
  throw ConfigError("unknown index kind");
}

}  // namespace gsa
