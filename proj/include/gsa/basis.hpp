#pragma once

#include "gsa/types.hpp"

#include <cstdint>
#include <filesystem>

namespace gsa {

/// Affine basis expansion of an L-dimensional output:
///   y = mean + sum_i c_i * components.row(i)
/// PCA centers the data, so the stored expansion carries the mean term
/// explicitly; variance-based quantities downstream are unaffected by it.
struct BasisExpansion {
  Vector mean;         // length L
  Matrix components;   // m x L, row i = basis component i
  Vector eigenvalues;  // length m, nonincreasing
  Vector spectrum;     // full spectrum up to rank, so explained variance
                       // stays exact after truncation

  Index l() const { return mean.size(); }
  Index m() const { return components.rows(); }

  /// Cheap structural hash used to pair coefficient samples with the
  /// basis that produced them.
  std::uint64_t fingerprint() const;
};

struct CoefficientSample {
  Matrix coeffs;  // n x m
  std::uint64_t basis_id = 0;
};

/// Truncation rule for fit_pca: keep the smallest m reaching a variance
/// fraction, or a fixed component count.
struct PcaTruncation {
  static PcaTruncation by_variance(double fraction);
  static PcaTruncation fixed(Index components);

  double variance_target = 0.0;  // in (0, 1] when by_variance
  Index components = 0;          // >= 1 when fixed
  bool is_fixed = false;
};

/// PCA of a snapshot matrix (one run per row) via SVD of the centered
/// data. Eigenvalues are singular_value^2 / (n - 1); component rows are
/// orthonormal with the sign fixed so each row's largest-magnitude entry
/// is positive. Requesting more components than the rank throws a
/// ConfigError naming the achievable count.
BasisExpansion fit_pca(const Matrix& snapshots, const PcaTruncation& trunc);

/// Projection onto the basis: row = components * (snapshot - mean).
CoefficientSample encode(const BasisExpansion& basis, const Matrix& snapshots);

/// Reconstruction: row = mean + coeffs_row * components.
Matrix decode(const BasisExpansion& basis, const Matrix& coeffs);
Matrix decode(const BasisExpansion& basis, const CoefficientSample& sample);

/// Fraction of total variance carried by the first m_prime components,
/// measured against the stored full spectrum.
double explained_variance(const BasisExpansion& basis, Index m_prime);

/// Serialized layout: <dir>/meta.json plus mean.csv and components.csv
/// (one row per component).
void save_basis(const std::filesystem::path& dir, const BasisExpansion& basis);
BasisExpansion load_basis(const std::filesystem::path& dir);

}  // namespace gsa
