#include "gsa/pf_core.hpp"

#include "gsa/detail/pf_kernels.hpp"
#include "gsa/reduce.hpp"

#include <algorithm>
#include <cmath>

namespace gsa {

namespace {

void check_sample(const PairedOutputSample& s) {
  if (s.y.rows() != s.y_star.rows() || s.y.cols() != s.y_star.cols()) {
    throw ConfigError("paired samples must have identical shape");
  }
  if (s.n() < 2) throw ConfigError("pick-freeze estimation needs N >= 2");
}

double degeneracy_threshold(const PairedOutputSample& s) {
  const double scale =
      std::max(s.y.cwiseAbs().maxCoeff(), s.y_star.cwiseAbs().maxCoeff());
  return 1e-12 * scale * scale;
}

ScalarIndexEstimate finish_scalar(const PairedOutputSample& s, IndexSet set,
                                  SobolKind kind, double numerator,
                                  double denominator) {
  if (!(denominator > degeneracy_threshold(s))) {
    throw DegenerateVarianceError(
        "output variance estimate is degenerate (constant output?)");
  }
  ScalarIndexEstimate est;
  est.value = numerator / denominator;
  est.numerator = numerator;
  est.denominator = denominator;
  est.kind = kind;
  est.index_set = std::move(set);
  est.n = s.n();
  est.design_id = s.design_id;
  return est;
}

}  // namespace

ScalarIndexEstimate pf_closed(const PairedOutputSample& s, IndexSet set) {
  check_sample(s);
  if (s.width() != 1) throw ConfigError("pf_closed expects a scalar sample");
  const auto m = detail::scalar_moments(s.y.col(0), s.y_star.col(0), s.n());
  return finish_scalar(s, std::move(set), SobolKind::closed, m.num, m.den);
}

ScalarIndexEstimate pf_total_jansen(const PairedOutputSample& s,
                                    IndexSet set) {
  check_sample(s);
  if (s.width() != 1) {
    throw ConfigError("pf_total_jansen expects a scalar sample");
  }
  const auto m = detail::scalar_moments(s.y.col(0), s.y_star.col(0), s.n());
  set.kind = SobolKind::total;
  return finish_scalar(s, std::move(set), SobolKind::total, m.jansen, m.den);
}

ScalarIndexEstimate pf_total_from_complement(
    const ScalarIndexEstimate& closed_of_complement, int dims) {
  if (closed_of_complement.kind != SobolKind::closed) {
    throw ConfigError("complement route needs a closed estimate");
  }
  ScalarIndexEstimate est;
  est.value = 1.0 - closed_of_complement.value;
  est.numerator =
      closed_of_complement.denominator - closed_of_complement.numerator;
  est.denominator = closed_of_complement.denominator;
  est.kind = SobolKind::total;
  if (dims > 0 && !closed_of_complement.index_set.empty()) {
    est.index_set = complement(closed_of_complement.index_set, dims);
    est.index_set.kind = SobolKind::total;
  }
  est.n = closed_of_complement.n;
  est.design_id = closed_of_complement.design_id;
  return est;
}

ScalarIndexEstimate pf_second_order(const ScalarIndexEstimate& c_ij,
                                    const ScalarIndexEstimate& c_i,
                                    const ScalarIndexEstimate& c_j) {
  const ScalarIndexEstimate* parts[] = {&c_ij, &c_i, &c_j};
  for (const auto* p : parts) {
    if (p->kind != SobolKind::closed) {
      throw ConfigError("second-order combination needs closed estimates");
    }
    if (p->n != c_ij.n) {
      throw ConfigError(
          "second-order estimates come from different sample sizes");
    }
    if (p->design_id != 0 && c_ij.design_id != 0 &&
        p->design_id != c_ij.design_id) {
      throw ConfigError("second-order estimates come from different designs");
    }
  }
  if (!c_ij.index_set.empty() && !c_i.index_set.empty() &&
      !c_j.index_set.empty()) {
    std::vector<int> expected = c_i.index_set.members;
    expected.insert(expected.end(), c_j.index_set.members.begin(),
                    c_j.index_set.members.end());
    std::sort(expected.begin(), expected.end());
    if (c_i.index_set.members.size() != 1 ||
        c_j.index_set.members.size() != 1 ||
        expected != c_ij.index_set.members) {
      throw ConfigError("index sets do not form a {i,j}/{i}/{j} triple");
    }
  }
  ScalarIndexEstimate est;
  est.numerator = c_ij.numerator - c_i.numerator - c_j.numerator;
  est.denominator = c_ij.denominator;
  est.value = est.numerator / est.denominator;
  est.kind = SobolKind::second_order;
  est.index_set = c_ij.index_set;
  est.index_set.kind = SobolKind::second_order;
  est.n = c_ij.n;
  est.design_id = c_ij.design_id;
  return est;
}

SobolMatrixSet pf_matrices(const PairedOutputSample& s) {
  check_sample(s);
  const Index n = s.n();
  const Index p = s.width();
  const double dn = static_cast<double>(n);
  const Matrix& y = s.y;
  const Matrix& ys = s.y_star;

  SobolMatrixSet out;
  out.n = n;
  out.design_id = s.design_id;
  out.f0.resize(p);
  for (Index i = 0; i < p; ++i) {
    out.f0(i) =
        pairwise_sum(n, [&](Index k) { return (y(k, i) + ys(k, i)) / 2.0; }) /
        dn;
  }

  // Moments accumulate around f0, the exact centered form of Def-style
  // second-moment differences; see detail::scalar_moments.
  Matrix raw(p, p);
  for (Index i = 0; i < p; ++i) {
    const double f0i = out.f0(i);
    for (Index j = 0; j < p; ++j) {
      const double f0j = out.f0(j);
      raw(i, j) = pairwise_sum(n,
                               [&](Index k) {
                                 return (y(k, i) - f0i) * (ys(k, j) - f0j);
                               }) /
                  dn;
    }
  }
  out.d_closed = (raw + raw.transpose()) / 2.0;

  out.d_total.resize(p, p);
  out.cov.resize(p, p);
  for (Index i = 0; i < p; ++i) {
    const double f0i = out.f0(i);
    for (Index j = i; j < p; ++j) {
      const double f0j = out.f0(j);
      const double total =
          pairwise_sum(n,
                       [&](Index k) {
                         return (y(k, i) - ys(k, i)) * (y(k, j) - ys(k, j));
                       }) /
          (2.0 * dn);
      const double cov =
          pairwise_sum(n,
                       [&](Index k) {
                         return ((y(k, i) - f0i) * (y(k, j) - f0j) +
                                 (ys(k, i) - f0i) * (ys(k, j) - f0j)) /
                                2.0;
                       }) /
          dn;
      out.d_total(i, j) = total;
      out.d_total(j, i) = total;
      out.cov(i, j) = cov;
      out.cov(j, i) = cov;
    }
  }
  return out;
}

}  // namespace gsa
