#pragma once

#include "gsa/bootstrap.hpp"
#include "gsa/sensmap.hpp"
#include "gsa/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gsa {

/// One functional output per row, with optional coordinate labels for the
/// output dimensions and the input design that produced the rows.
struct SnapshotSet {
  Matrix data;  // n x L
  std::optional<std::vector<double>> dim_labels;
  std::optional<Matrix> input_doe;
};

/// Per-realization (t, value) lists with strictly increasing t.
struct IrregularSeries {
  struct Point {
    double t = 0.0;
    double value = 0.0;
  };
  std::vector<std::vector<Point>> realizations;
};

/// Piecewise-linear resampling of every realization onto a common uniform
/// grid of l points spanning [max of first t's, min of last t's]. Grid
/// points that coincide with knots reproduce the knot value exactly.
SnapshotSet resample_linear(const IrregularSeries& series, Index l);

/// CSV dialect everywhere: comma separator, '.' decimal, LF endings, one
/// header row. Values serialize with 17 significant digits, so store/load
/// round-trips every finite double exactly. Ragged rows, non-numeric or
/// non-finite cells are rejected with the offending row and column.
Matrix load_matrix(const std::filesystem::path& path);
void store_matrix(const std::filesystem::path& path, const Matrix& m,
                  const std::vector<std::string>& header = {});

/// meta.json sidecar schema: {version, kind: snapshot|basis|coeffs, n,
/// l_or_m, labels?}.
struct MetaInfo {
  int version = 1;
  std::string kind;
  Index n = 0;
  Index l_or_m = 0;
  std::optional<std::vector<double>> labels;
};

void store_meta(const std::filesystem::path& path, const MetaInfo& meta);
MetaInfo load_meta(const std::filesystem::path& path);

/// Sensitivity-map export: columns ell,estimate,flag plus
/// boot_center,boot_q1,boot_q3,boot_std when bands are given. Flagged
/// pixels export a quiet NaN estimate. ell is 1-based.
void write_sm_csv(const std::filesystem::path& path, const SensitivityMap& map,
                  const BootstrapBands* bands = nullptr);

/// Irregular series interchange: CSV with header and rows series,t,value;
/// series ids group consecutive or scattered rows, t strictly increasing
/// within each series.
IrregularSeries load_series_csv(const std::filesystem::path& path);

}  // namespace gsa
