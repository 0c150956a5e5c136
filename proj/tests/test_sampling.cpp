#include "gsa/sampling.hpp"
#include "gsa/rng.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

using namespace gsa;

namespace {

// stratum of a value after mapping back to [0,1)
Index stratum_of(double x, const UniformDist& d, Index n) {
  const double u = (x - d.lower) / (d.upper - d.lower);
  return std::min<Index>(static_cast<Index>(u * static_cast<double>(n)), n - 1);
}

bool one_point_per_stratum(const Matrix& sample, const InputSpace& space) {
  const Index n = sample.rows();
  for (Index j = 0; j < sample.cols(); ++j) {
    std::set<Index> seen;
    for (Index i = 0; i < n; ++i) {
      seen.insert(stratum_of(sample(i, j), space.dims[static_cast<size_t>(j)], n));
    }
    if (static_cast<Index>(seen.size()) != n) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("sampling") {

TEST_CASE("mc sample stays inside bounds") {
  const auto space = uniform_space(2, 0.0, 1.0);
  const Matrix s = sample_mc(space, 3, 7);
  REQUIRE(s.rows() == 3);
  REQUIRE(s.cols() == 2);
  CHECK(s.minCoeff() >= 0.0);
  CHECK(s.maxCoeff() < 1.0);
}

TEST_CASE("mc sample is deterministic per seed and stream") {
  const auto space = uniform_space(3, -2.0, 4.0);
  const Matrix a = sample_mc(space, 50, 123);
  const Matrix b = sample_mc(space, 50, 123);
  CHECK(a == b);
  const Matrix c = sample_mc(space, 50, 124);
  CHECK(a != c);
  const Matrix z = sample_mc(space, 50, 123, kStreamZ);
  CHECK(a != z);
}

TEST_CASE("mc column means match the analytic mean") {
  const auto space = uniform_space(2, -1.0, 5.0);
  const Matrix s = sample_mc(space, 100000, 42);
  for (Index j = 0; j < 2; ++j) {
    CHECK(std::abs(s.col(j).mean() - 2.0) < 0.02);
  }
}

TEST_CASE("lhs occupies every quarter interval for n=4") {
  const auto space = uniform_space(1, 0.0, 1.0);
  const Matrix s = sample_lhs(space, 4, 11);
  CHECK(one_point_per_stratum(s, space));
}

TEST_CASE("lhs marginals are stratified at n=200, d=8") {
  const auto space = uniform_space(8, -1.0, 5.0);
  const Matrix s = sample_lhs(space, 200, 2024);
  CHECK(one_point_per_stratum(s, space));
  CHECK(s.minCoeff() >= -1.0);
  CHECK(s.maxCoeff() <= 5.0);
}

TEST_CASE("lhs columns are close to uncorrelated") {
  const auto space = uniform_space(2, 0.0, 1.0);
  const Matrix s = sample_lhs(space, 1000, 5);
  const Vector a = s.col(0).array() - s.col(0).mean();
  const Vector b = s.col(1).array() - s.col(1).mean();
  const double rho = a.dot(b) / std::sqrt(a.squaredNorm() * b.squaredNorm());
  CHECK(std::abs(rho) < 0.1);
}

TEST_CASE("lhs is deterministic per seed") {
  const auto space = uniform_space(4, 0.0, 1.0);
  CHECK(sample_lhs(space, 32, 9) == sample_lhs(space, 32, 9));
}

TEST_CASE("pick-freeze with the full set returns x") {
  const auto space = uniform_space(3, 0.0, 1.0);
  const Matrix x = sample_mc(space, 10, 1, kStreamX);
  const Matrix z = sample_mc(space, 10, 1, kStreamZ);
  const auto set = make_index_set({0, 1, 2}, SobolKind::closed);
  CHECK(build_pick_freeze(x, z, set) == x);
}

TEST_CASE("pick-freeze with the empty set returns z") {
  const auto space = uniform_space(3, 0.0, 1.0);
  const Matrix x = sample_mc(space, 10, 1, kStreamX);
  const Matrix z = sample_mc(space, 10, 1, kStreamZ);
  CHECK(build_pick_freeze(x, z, IndexSet{}) == z);
}

TEST_CASE("pick-freeze mixes columns by membership") {
  Matrix x(1, 3), z(1, 3);
  x << 1.0, 2.0, 3.0;
  z << 10.0, 20.0, 30.0;
  const auto set = make_index_set({1}, SobolKind::closed);
  const Matrix xs = build_pick_freeze(x, z, set);
  CHECK(xs(0, 0) == 10.0);
  CHECK(xs(0, 1) == 2.0);
  CHECK(xs(0, 2) == 30.0);
}

TEST_CASE("pick-freeze columns are bit-identical to their source") {
  const auto space = uniform_space(5, -3.0, 3.0);
  const Matrix x = sample_mc(space, 64, 77, kStreamX);
  const Matrix z = sample_mc(space, 64, 77, kStreamZ);
  const auto set = make_index_set({0, 3}, SobolKind::closed);
  const Matrix xs = build_pick_freeze(x, z, set);
  for (Index j = 0; j < 5; ++j) {
    if (set.contains(static_cast<int>(j))) {
      CHECK(xs.col(j) == x.col(j));
    } else {
      CHECK(xs.col(j) == z.col(j));
    }
  }
}

TEST_CASE("invalid bounds raise a configuration error") {
  InputSpace space;
  space.dims = {{1.0, 1.0}};
  CHECK_THROWS_AS(sample_mc(space, 4, 0), ConfigError);
  CHECK_THROWS_AS(uniform_space(2, 3.0, -3.0), ConfigError);
}

TEST_CASE("design construction rejects an empty index set") {
  const auto space = uniform_space(2, 0.0, 1.0);
  CHECK_THROWS_AS(make_pick_freeze_design(space, IndexSet{}, 16, 0),
                  ConfigError);
}

TEST_CASE("design fingerprint is shared across index sets") {
  const auto space = uniform_space(3, 0.0, 1.0);
  const auto d1 =
      make_pick_freeze_design(space, make_index_set({0}, SobolKind::closed),
                              32, 99);
  const auto d2 = make_pick_freeze_design(
      space, make_index_set({1, 2}, SobolKind::closed), 32, 99);
  CHECK(design_fingerprint(d1) == design_fingerprint(d2));
  const auto d3 =
      make_pick_freeze_design(space, make_index_set({0}, SobolKind::closed),
                              32, 100);
  CHECK(design_fingerprint(d1) != design_fingerprint(d3));
}

TEST_CASE("index set grammar round-trips") {
  const IndexSet a = parse_index_set("1,3");
  CHECK(a.kind == SobolKind::closed);
  CHECK(a.members == std::vector<int>{0, 2});
  CHECK(to_string(a) == "1,3");

  const IndexSet b = parse_index_set("total:2");
  CHECK(b.kind == SobolKind::total);
  CHECK(to_string(b) == "total:2");

  const IndexSet c = parse_index_set("pair:1,2");
  CHECK(c.kind == SobolKind::second_order);
  CHECK(to_string(c) == "pair:1,2");

  const auto list = parse_index_set_list("1;2,3;total:1;pair:1,2");
  CHECK(list.size() == 4);

  CHECK_THROWS_AS(parse_index_set(""), ConfigError);
  CHECK_THROWS_AS(parse_index_set("0"), ConfigError);
  CHECK_THROWS_AS(parse_index_set("1,1"), ConfigError);
  CHECK_THROWS_AS(parse_index_set("pair:1"), ConfigError);
  CHECK_THROWS_AS(parse_index_set("pair:1,2,3"), ConfigError);
  CHECK_THROWS_AS(parse_index_set("x"), ConfigError);
}

TEST_CASE("complement lists the remaining dimensions") {
  const auto set = make_index_set({0, 2}, SobolKind::closed);
  const auto comp = complement(set, 4);
  CHECK(comp.members == std::vector<int>{1, 3});
}

}  // TEST_SUITE
