#include "gsa/sensmap.hpp"

#include "gsa/detail/pf_kernels.hpp"
#include "gsa/reduce.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gsa {

namespace {

void check_map_kind(SobolKind kind) {
  if (kind == SobolKind::second_order) {
    throw ConfigError(
        "second-order maps need the three-set overloads of sm_*");
  }
}

SensitivityMap blank_map(Index l, SobolKind kind, IndexSet set,
                         SmMethod method) {
  SensitivityMap map;
  map.values = Vector::Zero(l);
  map.flags.assign(static_cast<size_t>(l), 0);
  map.kind = kind;
  map.index_set = std::move(set);
  map.method = method;
  return map;
}

double quadratic_form(const Matrix& a, const Vector& v) {
  return v.dot(a * v);
}

void set_pixel(SensitivityMap& map, Index ell, double num, double den,
               double pixel_f0) {
  if (detail::degenerate_pixel(den, pixel_f0)) {
    map.flags[static_cast<size_t>(ell)] = 1;
    map.values(ell) = 0.0;
  } else {
    map.values(ell) = num / den;
  }
}

}  // namespace

Index SensitivityMap::flagged_count() const {
  Index count = 0;
  for (char f : flags) count += (f != 0);
  return count;
}

SensitivityMap sm_dimension_wise(const BasisExpansion& basis,
                                 const PairedOutputSample& coeff_pairs,
                                 SobolKind kind, int threads) {
  check_map_kind(kind);
  if (coeff_pairs.width() != basis.m()) {
    throw ConfigError("coefficient width does not match basis m");
  }
  const Index l = basis.l();
  const Index n = coeff_pairs.n();
  SensitivityMap map =
      blank_map(l, kind, {}, SmMethod::dimension_wise);
  parallel_for(l, threads, [&](Index ell) {
    const Vector v = basis.components.col(ell);
    Vector y = coeff_pairs.y * v;
    Vector ys = coeff_pairs.y_star * v;
    y.array() += basis.mean(ell);
    ys.array() += basis.mean(ell);
    const auto m = detail::scalar_moments(y, ys, n);
    const double num = (kind == SobolKind::closed) ? m.num : m.jansen;
    set_pixel(map, ell, num, m.den, m.f0);
  });
  return map;
}

SensitivityMap sm_basis_derived(const BasisExpansion& basis,
                                const SobolMatrixSet& matrices,
                                SobolKind kind, int threads) {
  check_map_kind(kind);
  if (matrices.cov.rows() != basis.m()) {
    throw ConfigError("matrix set width does not match basis m");
  }
  const Index l = basis.l();
  const Matrix& d = (kind == SobolKind::closed) ? matrices.d_closed
                                                : matrices.d_total;
  SensitivityMap map = blank_map(l, kind, {}, SmMethod::basis_derived);
  parallel_for(l, threads, [&](Index ell) {
    const Vector v = basis.components.col(ell);
    const double den = quadratic_form(matrices.cov, v);
    const double num = quadratic_form(d, v);
    const double pixel_f0 = basis.mean(ell) + v.dot(matrices.f0);
    set_pixel(map, ell, num, den, pixel_f0);
  });
  return map;
}

SensitivityMap sm_basis_derived_second_order(
    const BasisExpansion& basis, const SobolMatrixSet& pair_set,
    const SobolMatrixSet& single_i, const SobolMatrixSet& single_j,
    IndexSet set, int threads) {
  const Index m = basis.m();
  if (pair_set.cov.rows() != m || single_i.cov.rows() != m ||
      single_j.cov.rows() != m) {
    throw ConfigError("matrix set width does not match basis m");
  }
  if (single_i.n != pair_set.n || single_j.n != pair_set.n) {
    throw ConfigError("matrix sets come from different sample sizes");
  }
  for (const auto* s : {&single_i, &single_j}) {
    if (s->design_id != 0 && pair_set.design_id != 0 &&
        s->design_id != pair_set.design_id) {
      throw ConfigError("matrix sets come from different designs");
    }
  }
  const Matrix combined =
      pair_set.d_closed - single_i.d_closed - single_j.d_closed;
  const Index l = basis.l();
  set.kind = SobolKind::second_order;
  SensitivityMap map =
      blank_map(l, SobolKind::second_order, std::move(set),
                SmMethod::basis_derived);
  parallel_for(l, threads, [&](Index ell) {
    const Vector v = basis.components.col(ell);
    const double den = quadratic_form(pair_set.cov, v);
    const double num = quadratic_form(combined, v);
    const double pixel_f0 = basis.mean(ell) + v.dot(pair_set.f0);
    set_pixel(map, ell, num, den, pixel_f0);
  });
  return map;
}

SensitivityMap sm_dimension_wise_second_order(
    const BasisExpansion& basis, const PairedOutputSample& pair_pairs,
    const PairedOutputSample& single_i_pairs,
    const PairedOutputSample& single_j_pairs, IndexSet set, int threads) {
  const Index m = basis.m();
  for (const auto* s : {&pair_pairs, &single_i_pairs, &single_j_pairs}) {
    if (s->width() != m) {
      throw ConfigError("coefficient width does not match basis m");
    }
    if (s->n() != pair_pairs.n()) {
      throw ConfigError("coefficient pairs come from different sample sizes");
    }
  }
  const Index n = pair_pairs.n();
  const Index l = basis.l();
  set.kind = SobolKind::second_order;
  SensitivityMap map =
      blank_map(l, SobolKind::second_order, std::move(set),
                SmMethod::dimension_wise);
  parallel_for(l, threads, [&](Index ell) {
    const Vector v = basis.components.col(ell);
    const double mean_l = basis.mean(ell);
    double nums[3];
    double den = 0.0;
    double pixel_f0 = 0.0;
    const PairedOutputSample* samples[3] = {&pair_pairs, &single_i_pairs,
                                            &single_j_pairs};
    for (int s = 0; s < 3; ++s) {
      Vector y = samples[s]->y * v;
      Vector ys = samples[s]->y_star * v;
      y.array() += mean_l;
      ys.array() += mean_l;
      const auto mom = detail::scalar_moments(y, ys, n);
      nums[s] = mom.num;
      if (s == 0) {
        den = mom.den;
        pixel_f0 = mom.f0;
      }
    }
    set_pixel(map, ell, nums[0] - nums[1] - nums[2], den, pixel_f0);
  });
  return map;
}

double gsi(const Vector& eigenvalues, const Vector& coeff_indices) {
  if (eigenvalues.size() != coeff_indices.size()) {
    throw ConfigError("eigenvalue and index vectors differ in length");
  }
  if (eigenvalues.size() == 0) throw ConfigError("empty eigenvalue vector");
  if (eigenvalues.minCoeff() < 0.0) {
    throw ConfigError("eigenvalues must be nonnegative");
  }
  const double total = eigenvalues.sum();
  if (!(total > 0.0)) throw ConfigError("zero total eigenvalue mass");
  return eigenvalues.dot(coeff_indices) / total;
}

Vector per_coefficient_indices(const SobolMatrixSet& matrices,
                               SobolKind kind) {
  check_map_kind(kind);
  const Matrix& d = (kind == SobolKind::closed) ? matrices.d_closed
                                                : matrices.d_total;
  const Index m = matrices.cov.rows();
  Vector out(m);
  for (Index k = 0; k < m; ++k) {
    const double den = matrices.cov(k, k);
    if (detail::degenerate_pixel(den, matrices.f0(k))) {
      std::ostringstream msg;
      msg << "coefficient " << (k + 1) << " has degenerate variance";
      throw DegenerateVarianceError(msg.str());
    }
    out(k) = d(k, k) / den;
  }
  return out;
}

double q_squared(const Matrix& truth, const Matrix& predictions) {
  if (truth.rows() != predictions.rows() ||
      truth.cols() != predictions.cols()) {
    throw ConfigError("truth and prediction shapes differ");
  }
  if (truth.rows() < 2) throw ConfigError("q_squared needs at least two rows");
  const double dn = static_cast<double>(truth.rows());
  // Population (divide-by-n) convention: a column-mean predictor scores 0.
  const double mse =
      (truth - predictions).array().square().colwise().sum().mean() / dn;
  const Matrix centered = truth.rowwise() - truth.colwise().mean();
  const double var = centered.array().square().colwise().sum().mean() / dn;
  if (!(var > 0.0)) {
    throw ConfigError("truth has zero variance at every output dimension");
  }
  return 1.0 - mse / var;
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("cost model arithmetic overflow");
  }
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("cost model arithmetic overflow");
  }
  return out;
}

void check_cost_model(const CostModel& c) {
  if (c.n < 1 || c.m < 1 || c.l < 1) {
    throw ConfigError("cost model parameters must be >= 1");
  }
}

}  // namespace

std::int64_t cost_dw(const CostModel& c) {
  check_cost_model(c);
  return checked_mul(checked_mul(checked_mul(4, c.m + 2), c.n), c.l);
}

std::int64_t cost_bd(const CostModel& c) {
  check_cost_model(c);
  const std::int64_t pf =
      checked_mul(checked_mul(checked_mul(2, c.m), 3 * c.m + 1), c.n);
  const std::int64_t proj =
      checked_mul(checked_mul(checked_mul(3, c.m), c.m + 1), c.l);
  return checked_add(pf, proj);
}

double cost_ratio(const CostModel& c) {
  return static_cast<double>(cost_dw(c)) / static_cast<double>(cost_bd(c));
}

double cost_ratio_lower_bound(const CostModel& c) {
  check_cost_model(c);
  const double x1 = 2.0 * static_cast<double>(c.n);
  const double x2 = static_cast<double>(c.l);
  const double harmonic = 2.0 * x1 * x2 / (x1 + x2);
  return harmonic / (3.0 * static_cast<double>(c.m));
}

}  // namespace gsa
