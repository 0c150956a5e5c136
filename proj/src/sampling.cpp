#include "gsa/sampling.hpp"

#include "gsa/rng.hpp"

#include <numeric>
#include <vector>

namespace gsa {

Matrix sample_mc(const InputSpace& space, Index n, std::uint64_t seed,
                 std::uint64_t stream) {
  validate(space);
  if (n < 1) throw ConfigError("sample size must be >= 1");
  const Index d = space.dim_count();
  CounterRng rng(seed, stream);
  Matrix out(n, d);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) {
      const auto& dist = space.dims[static_cast<size_t>(j)];
      out(i, j) = dist.lower + rng.next_uniform01() * (dist.upper - dist.lower);
    }
  }
  return out;
}

Matrix sample_lhs(const InputSpace& space, Index n, std::uint64_t seed) {
  validate(space);
  if (n < 1) throw ConfigError("sample size must be >= 1");
  const Index d = space.dim_count();
  Matrix out(n, d);
  std::vector<Index> perm(static_cast<size_t>(n));
  for (Index j = 0; j < d; ++j) {
    CounterRng rng(seed, kStreamLhsBase + static_cast<std::uint64_t>(j));
    std::iota(perm.begin(), perm.end(), Index{0});
    for (Index i = n - 1; i > 0; --i) {
      const auto k = static_cast<Index>(
          rng.next_below(static_cast<std::uint64_t>(i) + 1));
      std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(k)]);
    }
    const auto& dist = space.dims[static_cast<size_t>(j)];
    const double width = dist.upper - dist.lower;
    for (Index i = 0; i < n; ++i) {
      const double u = (static_cast<double>(perm[static_cast<size_t>(i)]) +
                        rng.next_uniform01()) /
                       static_cast<double>(n);
      out(i, j) = dist.lower + u * width;
    }
  }
  return out;
}

Matrix build_pick_freeze(const Matrix& x, const Matrix& z,
                         const IndexSet& set) {
  if (x.rows() != z.rows() || x.cols() != z.cols()) {
    throw ConfigError("x and z samples must have identical shape");
  }
  Matrix x_star = z;
  for (int j : set.members) {
    if (j < 0 || j >= x.cols()) {
      throw ConfigError("index set member exceeds sample dimension");
    }
    x_star.col(j) = x.col(j);
  }
  return x_star;
}

PickFreezeDesign make_pick_freeze_design(const InputSpace& space,
                                         const IndexSet& set, Index n,
                                         std::uint64_t seed) {
  if (set.empty()) {
    throw ConfigError("pick-freeze design needs a non-empty index set");
  }
  const int d = static_cast<int>(space.dim_count());
  for (int j : set.members) {
    if (j >= d) throw ConfigError("index set member exceeds input dimension");
  }
  PickFreezeDesign design;
  design.x = sample_mc(space, n, seed, kStreamX);
  design.z = sample_mc(space, n, seed, kStreamZ);
  design.index_set = set;
  design.seed = seed;
  return design;
}

std::uint64_t design_fingerprint(const PickFreezeDesign& design) {
  // fnv1a over (seed, n, d); index-set independent so runs that share the
  // same (X, Z) match across sets.
  std::uint64_t h = 0xCBF29CE484222325ULL;
  const auto absorb = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  };
  absorb(design.seed);
  absorb(static_cast<std::uint64_t>(design.n()));
  absorb(static_cast<std::uint64_t>(design.d()));
  return h == 0 ? 1 : h;
}

}  // namespace gsa
