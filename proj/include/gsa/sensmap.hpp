#pragma once

#include "gsa/basis.hpp"
#include "gsa/pf_core.hpp"
#include "gsa/types.hpp"

#include <cstdint>
#include <vector>

namespace gsa {

enum class SmMethod { dimension_wise, basis_derived };

/// Per-output-dimension index estimates. Degenerate pixels (variance
/// below threshold) keep a finite placeholder value and a set flag;
/// exports turn them into quiet NaNs.
struct SensitivityMap {
  Vector values;            // length L
  std::vector<char> flags;  // 1 = degenerate pixel
  SobolKind kind = SobolKind::closed;
  IndexSet index_set;
  SmMethod method = SmMethod::basis_derived;

  Index l() const { return values.size(); }
  bool flagged(Index ell) const { return flags[static_cast<size_t>(ell)] != 0; }
  Index flagged_count() const;
};

/// Decode-then-estimate route: reconstructs each output dimension from the
/// coefficient pairs and runs the scalar estimator there. kind selects the
/// Janon-Monod (closed) or Jansen (total) formula; as with the scalar
/// estimators, a total map of I needs pairs from the design freezing ~I.
SensitivityMap sm_dimension_wise(const BasisExpansion& basis,
                                 const PairedOutputSample& coeff_pairs,
                                 SobolKind kind, int threads = 1);

/// Quadratic-form route: value_l = v_l^T D v_l / v_l^T Cov v_l with the
/// m x m matrices from pf_matrices, computed once and reused over all l.
/// Agrees with sm_dimension_wise to rounding error.
SensitivityMap sm_basis_derived(const BasisExpansion& basis,
                                const SobolMatrixSet& matrices,
                                SobolKind kind, int threads = 1);

/// Second-order maps combine three closed matrix sets (pair {i,j} and the
/// two singletons, all on one design) before projecting; the pair run's
/// covariance is the shared denominator.
SensitivityMap sm_basis_derived_second_order(
    const BasisExpansion& basis, const SobolMatrixSet& pair_set,
    const SobolMatrixSet& single_i, const SobolMatrixSet& single_j,
    IndexSet set, int threads = 1);

/// Dimension-wise twin of the above; same denominator convention, so the
/// two routes agree per pixel up to rounding.
SensitivityMap sm_dimension_wise_second_order(
    const BasisExpansion& basis, const PairedOutputSample& pair_pairs,
    const PairedOutputSample& single_i_pairs,
    const PairedOutputSample& single_j_pairs, IndexSet set, int threads = 1);

/// Eigenvalue-weighted average of per-coefficient index estimates; a
/// convex combination, so it stays within [min, max] of the inputs.
double gsi(const Vector& eigenvalues, const Vector& coeff_indices);

/// Per-coefficient indices are the diagonal ratios of the matrix set.
Vector per_coefficient_indices(const SobolMatrixSet& matrices, SobolKind kind);

/// Predictivity: 1 - mean_l(MSE_l) / mean_l(Var_l), with the population
/// variance convention (divide by n) so a column-mean predictor scores
/// exactly zero.
double q_squared(const Matrix& truth, const Matrix& predictions);

/// Operation-count model for one sensitivity map, assuming coefficient
/// pairs are already available.
struct CostModel {
  std::int64_t n = 1;  // pick-freeze sample size
  std::int64_t m = 1;  // basis size
  std::int64_t l = 1;  // output dimensions
};

/// Dimension-wise total: 4(m + 2) N L. Overflow-checked.
std::int64_t cost_dw(const CostModel& c);

/// Basis-derived total: 2m(3m + 1) N + 3m(m + 1) L. Overflow-checked.
std::int64_t cost_bd(const CostModel& c);

/// cost_dw / cost_bd; always exceeds harmonic_bound.
double cost_ratio(const CostModel& c);

/// Lower bound H(2N, L) / (3m) with H the harmonic mean.
double cost_ratio_lower_bound(const CostModel& c);

}  // namespace gsa
