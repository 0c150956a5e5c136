#include "gsa/bootstrap.hpp"

#include "gsa/reduce.hpp"
#include "gsa/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace gsa {

namespace {

void check_spec(const BootstrapSpec& spec) {
  if (spec.replicates < 2) throw ConfigError("bootstrap needs B >= 2");
}

std::vector<Index> resample_indices(const BootstrapSpec& spec, Index replicate,
                                    Index n) {
  std::vector<Index> idx(static_cast<size_t>(n));
  if (spec.identity_resample) {
    for (Index k = 0; k < n; ++k) idx[static_cast<size_t>(k)] = k;
    return idx;
  }
  CounterRng rng(spec.seed,
                 kStreamBootstrapBase + static_cast<std::uint64_t>(replicate));
  for (Index k = 0; k < n; ++k) {
    idx[static_cast<size_t>(k)] =
        static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(n)));
  }
  return idx;
}

PairedOutputSample resample_pairs(const PairedOutputSample& s,
                                  const std::vector<Index>& idx) {
  PairedOutputSample out;
  out.y.resize(s.n(), s.width());
  out.y_star.resize(s.n(), s.width());
  for (Index k = 0; k < s.n(); ++k) {
    // joint resampling: the same row index feeds both halves of the pair
    out.y.row(k) = s.y.row(idx[static_cast<size_t>(k)]);
    out.y_star.row(k) = s.y_star.row(idx[static_cast<size_t>(k)]);
  }
  return out;
}

void check_drop_budget(Index dropped, Index total) {
  if (10 * dropped > total) {
    std::ostringstream msg;
    msg << dropped << " of " << total
        << " bootstrap replicates degenerate (>10%)";
    throw DegenerateVarianceError(msg.str());
  }
}

struct ColumnSummary {
  double mean, median, q1, q3, std_dev;
};

// Linear-interpolation quantile on a sorted copy (numpy's default rule).
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const size_t nk = sorted.size();
  if (nk == 1) return sorted[0];
  const double h = p * static_cast<double>(nk - 1);
  const auto lo = static_cast<size_t>(h);
  if (lo + 1 >= nk) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

ColumnSummary summarize(std::vector<double> values) {
  ColumnSummary s{};
  std::sort(values.begin(), values.end());
  if (values.front() == values.back()) {  // all replicates identical
    const double v = values.front();
    return {v, v, v, v, 0.0};
  }
  const auto nk = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / nk;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std_dev = values.size() > 1 ? std::sqrt(ss / (nk - 1.0)) : 0.0;
  s.median = quantile_sorted(values, 0.5);
  s.q1 = quantile_sorted(values, 0.25);
  s.q3 = quantile_sorted(values, 0.75);
  return s;
}

}  // namespace

BootstrapBands bootstrap_sm(const PairedOutputSample& coeff_pairs,
                            const BasisExpansion& basis, SobolKind kind,
                            const BootstrapSpec& spec, int threads) {
  check_spec(spec);
  if (kind == SobolKind::second_order) {
    throw ConfigError("bootstrap_sm supports closed and total kinds");
  }
  const Index b = spec.replicates;
  const Index l = basis.l();

  Matrix replicate_maps(b, l);
  std::vector<char> degenerate(static_cast<size_t>(b), 0);
  parallel_for(b, threads, [&](Index rep) {
    const auto idx = resample_indices(spec, rep, coeff_pairs.n());
    const SobolMatrixSet ms = pf_matrices(resample_pairs(coeff_pairs, idx));
    const SensitivityMap map = sm_basis_derived(basis, ms, kind, 1);
    if (map.flagged_count() > 0) {
      degenerate[static_cast<size_t>(rep)] = 1;
    } else {
      replicate_maps.row(rep) = map.values.transpose();
    }
  });

  std::vector<Index> kept;
  for (Index rep = 0; rep < b; ++rep) {
    if (!degenerate[static_cast<size_t>(rep)]) kept.push_back(rep);
  }
  const Index dropped = b - static_cast<Index>(kept.size());
  check_drop_budget(dropped, b);
  if (kept.size() < 2) {
    throw DegenerateVarianceError("fewer than two usable bootstrap replicates");
  }

  BootstrapBands bands;
  bands.replicates_used = static_cast<Index>(kept.size());
  bands.replicates_dropped = dropped;
  for (Vector* v : {&bands.center, &bands.mean, &bands.median, &bands.q1,
                    &bands.q3, &bands.std_dev}) {
    v->resize(l);
  }
  std::vector<double> column(kept.size());
  for (Index ell = 0; ell < l; ++ell) {
    for (size_t i = 0; i < kept.size(); ++i) {
      column[i] = replicate_maps(kept[i], ell);
    }
    const ColumnSummary s = summarize(column);
    bands.mean(ell) = s.mean;
    bands.median(ell) = s.median;
    bands.q1(ell) = s.q1;
    bands.q3(ell) = s.q3;
    bands.std_dev(ell) = s.std_dev;
    bands.center(ell) =
        (spec.summary == BootstrapCenter::mean) ? s.mean : s.median;
  }
  return bands;
}

BootstrapScalar bootstrap_gsi(const PairedOutputSample& coeff_pairs,
                              const BasisExpansion& basis, SobolKind kind,
                              const BootstrapSpec& spec) {
  check_spec(spec);
  if (kind == SobolKind::second_order) {
    throw ConfigError("bootstrap_gsi supports closed and total kinds");
  }
  const Index b = spec.replicates;
  std::vector<double> values;
  values.reserve(static_cast<size_t>(b));
  Index dropped = 0;
  for (Index rep = 0; rep < b; ++rep) {
    const auto idx = resample_indices(spec, rep, coeff_pairs.n());
    const SobolMatrixSet ms = pf_matrices(resample_pairs(coeff_pairs, idx));
    try {
      values.push_back(
          gsi(basis.eigenvalues, per_coefficient_indices(ms, kind)));
    } catch (const DegenerateVarianceError&) {
      ++dropped;
    }
  }
  check_drop_budget(dropped, b);
  if (values.size() < 2) {
    throw DegenerateVarianceError("fewer than two usable bootstrap replicates");
  }
  const ColumnSummary s = summarize(values);
  BootstrapScalar out;
  out.mean = s.mean;
  out.median = s.median;
  out.q1 = s.q1;
  out.q3 = s.q3;
  out.std_dev = s.std_dev;
  out.center = (spec.summary == BootstrapCenter::mean) ? s.mean : s.median;
  out.replicates_used = static_cast<Index>(values.size());
  out.replicates_dropped = dropped;
  return out;
}

}  // namespace gsa
