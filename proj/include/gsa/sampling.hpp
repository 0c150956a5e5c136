#pragma once

#include "gsa/rng.hpp"
#include "gsa/types.hpp"

#include <cstdint>

namespace gsa {

/// Paired input samples for a pick-freeze run: the frozen coordinates of
/// the partner sample come from `x`, the rest from `z`.
struct PickFreezeDesign {
  Matrix x;  // N x d
  Matrix z;  // N x d
  IndexSet index_set;
  std::uint64_t seed = 0;

  Index n() const { return x.rows(); }
  Index d() const { return x.cols(); }
};

/// Plain Monte-Carlo sample, one row per draw. Deterministic for a fixed
/// (seed, stream); streams kStreamX/kStreamZ keep paired samples independent.
Matrix sample_mc(const InputSpace& space, Index n, std::uint64_t seed,
                 std::uint64_t stream = kStreamX);

/// Latin hypercube: each column holds exactly one point per stratum
/// [(k-1)/n, k/n), jittered uniformly inside the stratum, then mapped
/// affinely to the dimension bounds. No maximin optimization.
Matrix sample_lhs(const InputSpace& space, Index n, std::uint64_t seed);

/// Partner sample of the pick-freeze pair: column j of the result equals
/// x's column j when j is in `set`, and z's column j otherwise. An empty
/// set (internal use) returns z unchanged.
Matrix build_pick_freeze(const Matrix& x, const Matrix& z,
                         const IndexSet& set);

/// X from stream kStreamX, Z from kStreamZ, both derived from `seed`.
/// Rejects empty index sets: a pick-freeze run over nothing is meaningless.
PickFreezeDesign make_pick_freeze_design(const InputSpace& space,
                                         const IndexSet& set, Index n,
                                         std::uint64_t seed);

/// Provenance token shared by everything evaluated on one (X, Z) design.
std::uint64_t design_fingerprint(const PickFreezeDesign& design);

}  // namespace gsa
