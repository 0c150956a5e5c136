#pragma once

#include "gsa/basis.hpp"
#include "gsa/pf_core.hpp"
#include "gsa/sensmap.hpp"
#include "gsa/types.hpp"

#include <cstdint>

namespace gsa {

enum class BootstrapCenter { mean, median };

struct BootstrapSpec {
  Index replicates = 50;  // B >= 2
  std::uint64_t seed = 0;
  BootstrapCenter summary = BootstrapCenter::mean;
  /// Test hook: every replicate reuses the original rows instead of
  /// resampling, so all dispersion collapses to zero.
  bool identity_resample = false;
};

/// Per-pixel summaries over replicates. Mean and median are both kept;
/// `center` is whichever summary was requested.
struct BootstrapBands {
  Vector center;
  Vector mean;
  Vector median;
  Vector q1;
  Vector q3;
  Vector std_dev;
  Index replicates_used = 0;
  Index replicates_dropped = 0;
};

struct BootstrapScalar {
  double center = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double std_dev = 0.0;
  Index replicates_used = 0;
  Index replicates_dropped = 0;
};

/// Nonparametric pairs bootstrap of a sensitivity map: each replicate
/// draws N row indices with replacement (the same indices for y and
/// y_star, keeping pairs intact), reruns pf_matrices, and projects
/// through the basis. Resample indices depend only on (seed, replicate),
/// so replicates are reproducible and order-independent. Replicates with
/// any degenerate pixel are dropped; more than 10% dropped throws.
BootstrapBands bootstrap_sm(const PairedOutputSample& coeff_pairs,
                            const BasisExpansion& basis, SobolKind kind,
                            const BootstrapSpec& spec, int threads = 1);

/// Same resampling; the per-replicate statistic is the eigenvalue-weighted
/// GSI of the per-coefficient indices.
BootstrapScalar bootstrap_gsi(const PairedOutputSample& coeff_pairs,
                              const BasisExpansion& basis, SobolKind kind,
                              const BootstrapSpec& spec);

}  // namespace gsa
