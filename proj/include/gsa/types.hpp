#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsa {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Bad configuration, malformed input files, out-of-range arguments.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Output variance indistinguishable from zero; the index ratio is undefined.
struct DegenerateVarianceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SobolKind { closed, total, second_order };

std::string_view to_string(SobolKind kind);

/// Subset of input dimensions a Sobol' quantity refers to.
///
/// Members are 0-based internally; all user-facing I/O (the CLI grammar,
/// file names, reports) is 1-based and converted at the boundary.
struct IndexSet {
  std::vector<int> members;  // sorted, unique, 0-based
  SobolKind kind = SobolKind::closed;

  bool empty() const { return members.empty(); }
  bool contains(int dim) const;
};

/// Normalizes (sorts, dedups) and checks members against `dims` inputs.
/// second_order sets must have exactly two members; closed/total must be
/// non-empty. Pass dims = 0 to skip the bounds check.
IndexSet make_index_set(std::vector<int> members, SobolKind kind,
                        int dims = 0);

IndexSet complement(const IndexSet& set, int dims);

/// CLI grammar: "1", "1,3" (closed), "total:2", "pair:1,2"; 1-based.
IndexSet parse_index_set(std::string_view text);

/// Semicolon-separated list of the above.
std::vector<IndexSet> parse_index_set_list(std::string_view text);

/// Formats back to the CLI grammar (1-based).
std::string to_string(const IndexSet& set);

struct UniformDist {
  double lower = 0.0;
  double upper = 1.0;
};

/// Product of independent uniform marginals.
struct InputSpace {
  std::vector<UniformDist> dims;

  Index dim_count() const { return static_cast<Index>(dims.size()); }
};

InputSpace uniform_space(int d, double lower, double upper);

/// Throws ConfigError on empty space or a bound pair that is not strictly
/// ordered or not finite.
void validate(const InputSpace& space);

}  // namespace gsa
