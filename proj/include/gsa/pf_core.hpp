#pragma once

#include "gsa/types.hpp"

#include <cstdint>

namespace gsa {

/// Aligned pick-freeze evaluations: row k of y and y_star come from the
/// same replicate. One column for scalar outputs, m columns for basis
/// coefficients, L columns for decoded fields.
struct PairedOutputSample {
  Matrix y;
  Matrix y_star;
  std::uint64_t design_id = 0;  // 0 = unknown provenance

  Index n() const { return y.rows(); }
  Index width() const { return y.cols(); }
};

/// The three matrix-valued pick-freeze estimates of a coefficient vector,
/// computed once per index set and reused for every output dimension.
/// d_closed is stored symmetrized as (A + A^T)/2: the raw cross-moment
/// matrix is not symmetric at finite N, but only its symmetric part enters
/// any quadratic form.
struct SobolMatrixSet {
  Matrix d_closed;  // p x p
  Matrix d_total;   // p x p, PSD by construction
  Matrix cov;       // p x p
  Vector f0;        // length p
  Index n = 0;
  std::uint64_t design_id = 0;
};

struct ScalarIndexEstimate {
  double value = 0.0;
  double numerator = 0.0;    // unnormalized index estimate
  double denominator = 0.0;  // shared variance estimate
  SobolKind kind = SobolKind::closed;
  IndexSet index_set;
  Index n = 0;
  std::uint64_t design_id = 0;
};

/// Janon-Monod estimator of the closed index of the frozen set:
/// (mean(Y Y*) - f0^2) / (mean((Y^2 + Y*^2)/2) - f0^2) with the shared
/// empirical mean f0 = mean((Y + Y*)/2), accumulated in centered form.
/// Throws DegenerateVarianceError when the denominator is below
/// 1e-12 * max|Y|^2 over the sample (a constant output, not roundoff).
ScalarIndexEstimate pf_closed(const PairedOutputSample& s,
                              IndexSet set = {});

/// Jansen estimator: numerator (1/2N) sum (Y - Y*)^2, nonnegative for
/// every sample; same denominator as pf_closed. The ratio estimates the
/// total index of the set whose COMPLEMENT was frozen in the pairs, so
/// the total of I needs pairs built on ~I; `set` names that target I.
ScalarIndexEstimate pf_total_jansen(const PairedOutputSample& s,
                                    IndexSet set = {});

/// Total index from the closed estimate of the complementary set:
/// S_tot(I) = 1 - S_closed(~I); consumes the same ~I pairs as the Jansen
/// route. `dims` is needed to name the resulting index set; pass 0 to
/// leave it empty.
ScalarIndexEstimate pf_total_from_complement(
    const ScalarIndexEstimate& closed_of_complement, int dims = 0);

/// Second-order interaction from three closed estimates sharing one
/// (X, Z) design: (D_ij - D_i - D_j) / Var, normalized by the pair run's
/// variance estimate. Mismatched provenance (n or design id) throws.
ScalarIndexEstimate pf_second_order(const ScalarIndexEstimate& c_ij,
                                    const ScalarIndexEstimate& c_i,
                                    const ScalarIndexEstimate& c_j);

/// Matrix-valued pick-freeze estimates (products replaced by outer
/// products). For width 1 the entries reproduce the scalar estimators
/// bit-for-bit: both paths reduce with the same pairwise summation tree.
SobolMatrixSet pf_matrices(const PairedOutputSample& s);

}  // namespace gsa
