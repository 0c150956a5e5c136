#include "gsa/pf_core.hpp"
#include "gsa/rng.hpp"
#include "gsa/sampling.hpp"
#include "gsa/testbed.hpp"

#include "doctest.h"

#include <cmath>

using namespace gsa;

namespace {

PairedOutputSample scalar_sample(std::initializer_list<double> y,
                                 std::initializer_list<double> ys) {
  PairedOutputSample s;
  s.y.resize(static_cast<Index>(y.size()), 1);
  s.y_star.resize(static_cast<Index>(ys.size()), 1);
  Index i = 0;
  for (double v : y) s.y(i++, 0) = v;
  i = 0;
  for (double v : ys) s.y_star(i++, 0) = v;
  return s;
}

PairedOutputSample random_sample(Index n, Index p, std::uint64_t seed) {
  CounterRng rng(seed, 3);
  PairedOutputSample s;
  s.y.resize(n, p);
  s.y_star.resize(n, p);
  for (Index k = 0; k < n; ++k) {
    for (Index j = 0; j < p; ++j) {
      s.y(k, j) = 2.0 * rng.next_uniform01() - 1.0;
      s.y_star(k, j) = 2.0 * rng.next_uniform01() - 1.0;
    }
  }
  return s;
}

// Scalar pick-freeze pair for an additive model on U(0,1)^2.
PairedOutputSample additive_pairs(const Vector& weights, Index n,
                                  std::uint64_t seed, const IndexSet& set) {
  const auto model = additive_oracle(weights, uniform_space(2, 0, 1));
  const auto design = make_pick_freeze_design(model.space, set, n, seed);
  const Matrix x_star = build_pick_freeze(design.x, design.z, set);
  PairedOutputSample s;
  s.y = evaluate_rows(model, design.x);
  s.y_star = evaluate_rows(model, x_star);
  s.design_id = design_fingerprint(design);
  return s;
}

}  // namespace

TEST_SUITE("pf_core") {

TEST_CASE("Janon-Monod hand example") {
  const auto s = scalar_sample({0.0, 2.0}, {2.0, 0.0});
  const auto est = pf_closed(s);
  CHECK(est.numerator == -1.0);
  CHECK(est.denominator == 1.0);
  CHECK(est.value == -1.0);
}

TEST_CASE("Jansen hand example") {
  const auto s = scalar_sample({0.0, 2.0}, {2.0, 0.0});
  const auto est = pf_total_jansen(s);
  CHECK(est.numerator == 2.0);
  CHECK(est.denominator == 1.0);
  CHECK(est.value == 2.0);
}

TEST_CASE("identical samples give closed index one and total zero") {
  auto s = random_sample(100, 1, 1);
  s.y_star = s.y;
  CHECK(pf_closed(s).value == 1.0);
  CHECK(pf_total_jansen(s).value == 0.0);
}

TEST_CASE("constant output raises a degenerate-variance error") {
  PairedOutputSample s;
  s.y = Matrix::Constant(8, 1, 3.5);
  s.y_star = s.y;
  CHECK_THROWS_AS(pf_closed(s), DegenerateVarianceError);
  CHECK_THROWS_AS(pf_total_jansen(s), DegenerateVarianceError);
}

TEST_CASE("total via complement is one minus the closed value") {
  ScalarIndexEstimate c;
  c.value = 0.3;
  c.numerator = 0.3;
  c.denominator = 1.0;
  c.kind = SobolKind::closed;
  CHECK(pf_total_from_complement(c).value == doctest::Approx(0.7));
  c.value = 1.0;
  c.numerator = 1.0;
  CHECK(pf_total_from_complement(c).value == 0.0);
}

TEST_CASE("second-order combination arithmetic") {
  const auto make = [](double v, std::vector<int> members) {
    ScalarIndexEstimate e;
    e.value = v;
    e.numerator = v;
    e.denominator = 1.0;
    e.kind = SobolKind::closed;
    e.index_set = make_index_set(std::move(members), SobolKind::closed);
    e.n = 100;
    return e;
  };
  const auto est =
      pf_second_order(make(0.5, {0, 1}), make(0.2, {0}), make(0.1, {1}));
  CHECK(est.value == doctest::Approx(0.2));
  CHECK(est.kind == SobolKind::second_order);
}

TEST_CASE("second-order rejects mismatched provenance") {
  const auto make = [](std::vector<int> members, Index n, std::uint64_t id) {
    ScalarIndexEstimate e;
    e.value = 0.1;
    e.numerator = 0.1;
    e.denominator = 1.0;
    e.kind = SobolKind::closed;
    e.index_set = make_index_set(std::move(members), SobolKind::closed);
    e.n = n;
    e.design_id = id;
    return e;
  };
  CHECK_THROWS_AS(pf_second_order(make({0, 1}, 100, 1), make({0}, 99, 1),
                                  make({1}, 100, 1)),
                  ConfigError);
  CHECK_THROWS_AS(pf_second_order(make({0, 1}, 100, 1), make({0}, 100, 2),
                                  make({1}, 100, 1)),
                  ConfigError);
  CHECK_THROWS_AS(pf_second_order(make({0, 2}, 100, 1), make({0}, 100, 1),
                                  make({1}, 100, 1)),
                  ConfigError);
}

TEST_CASE("matrix estimator hand example") {
  PairedOutputSample s;
  s.y.resize(2, 2);
  s.y << 1.0, 0.0, 0.0, 1.0;
  s.y_star.resize(2, 2);
  s.y_star << 0.0, 1.0, 1.0, 0.0;
  const auto ms = pf_matrices(s);
  CHECK(ms.f0(0) == 0.5);
  CHECK(ms.f0(1) == 0.5);
  CHECK(ms.d_closed(0, 0) == -0.25);
  CHECK(ms.d_closed(0, 1) == 0.25);
  CHECK(ms.d_closed(1, 0) == 0.25);
  CHECK(ms.d_closed(1, 1) == -0.25);
}

TEST_CASE("identical samples zero the total matrix and match cov") {
  auto s = random_sample(64, 3, 2);
  s.y_star = s.y;
  const auto ms = pf_matrices(s);
  CHECK(ms.d_total.cwiseAbs().maxCoeff() == 0.0);
  CHECK(ms.d_closed == ms.cov);
}

TEST_CASE("matrix estimator reduces to the scalar one bit-for-bit") {
  const auto s = random_sample(257, 1, 4);
  const auto ms = pf_matrices(s);
  const auto closed = pf_closed(s);
  const auto total = pf_total_jansen(s);
  CHECK(ms.d_closed(0, 0) == closed.numerator);
  CHECK(ms.cov(0, 0) == closed.denominator);
  CHECK(ms.d_total(0, 0) == total.numerator);
}

TEST_CASE("swap symmetry is exact") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = random_sample(33, 1, 100 + seed);
    PairedOutputSample swapped;
    swapped.y = s.y_star;
    swapped.y_star = s.y;
    CHECK(pf_closed(s).value == pf_closed(swapped).value);
    CHECK(pf_total_jansen(s).value == pf_total_jansen(swapped).value);
  }
}

TEST_CASE("shift invariance of the matrix set") {
  const auto s = random_sample(128, 3, 5);
  const auto base = pf_matrices(s);
  PairedOutputSample shifted = s;
  Eigen::RowVector3d c(2.5, -1.25, 7.0);
  shifted.y.rowwise() += c;
  shifted.y_star.rowwise() += c;
  const auto moved = pf_matrices(shifted);
  const double tol = 1e-9;
  CHECK((base.d_closed - moved.d_closed).cwiseAbs().maxCoeff() < tol);
  CHECK((base.d_total - moved.d_total).cwiseAbs().maxCoeff() < tol);
  CHECK((base.cov - moved.cov).cwiseAbs().maxCoeff() < tol);
}

TEST_CASE("scale equivariance of the matrix set") {
  const auto s = random_sample(128, 2, 6);
  const auto base = pf_matrices(s);
  const double a = -1.75;
  PairedOutputSample scaled = s;
  scaled.y *= a;
  scaled.y_star *= a;
  const auto sc = pf_matrices(scaled);
  const double tol = 1e-12;
  CHECK((sc.d_closed - a * a * base.d_closed).cwiseAbs().maxCoeff() < tol);
  CHECK((sc.d_total - a * a * base.d_total).cwiseAbs().maxCoeff() < tol);
  CHECK((sc.cov - a * a * base.cov).cwiseAbs().maxCoeff() < tol);
}

TEST_CASE("Jansen numerator is nonnegative") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = random_sample(17, 1, 500 + seed);
    CHECK(pf_total_jansen(s).numerator >= 0.0);
  }
}

TEST_CASE("total matrix is positive semi-definite") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = random_sample(40, 4, 700 + seed);
    const auto ms = pf_matrices(s);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(ms.d_total);
    CHECK(eig.eigenvalues().minCoeff() > -1e-12);
  }
}

TEST_CASE("additive model estimates converge at the Monte-Carlo rate") {
  const auto set = make_index_set({0}, SobolKind::closed);
  for (const Index n : {Index{1000}, Index{10000}, Index{100000}}) {
    for (const std::uint64_t seed : {11u, 22u, 33u}) {
      const auto pairs = additive_pairs(Vector::Ones(2), n, seed, set);
      const double tol = 5.0 / std::sqrt(static_cast<double>(n));
      CHECK(std::abs(pf_closed(pairs).value - 0.5) < tol);
      CHECK(std::abs(pf_total_jansen(pairs).value - 0.5) < tol);
    }
  }
}

TEST_CASE("Jansen totals target the complement of the frozen set") {
  // w = (1, 2): S_tot{1} = 0.2, so Jansen needs the design freezing {2}
  Vector w(2);
  w << 1.0, 2.0;
  const Index n = 20000;
  const auto comp = make_index_set({1}, SobolKind::closed);
  const auto pairs_comp = additive_pairs(w, n, 7, comp);
  const auto target = make_index_set({0}, SobolKind::total);
  const double jansen = pf_total_jansen(pairs_comp, target).value;
  const double via_complement =
      pf_total_from_complement(pf_closed(pairs_comp, comp), 2).value;
  const double se = 5.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(jansen - 0.2) < se);
  CHECK(std::abs(via_complement - 0.2) < se);
  CHECK(std::abs(jansen - via_complement) < 2.0 * se);
}

TEST_CASE("product model second-order index estimates one") {
  const auto model = product_model();
  const Index n = 100000;
  const std::uint64_t seed = 31;
  const auto set_ij = make_index_set({0, 1}, SobolKind::closed);
  const auto set_i = make_index_set({0}, SobolKind::closed);
  const auto set_j = make_index_set({1}, SobolKind::closed);
  const auto design = make_pick_freeze_design(model.space, set_ij, n, seed);
  const Matrix y = evaluate_rows(model, design.x);
  const auto pairs_for = [&](const IndexSet& set) {
    PairedOutputSample s;
    s.y = y;
    s.y_star =
        evaluate_rows(model, build_pick_freeze(design.x, design.z, set));
    s.design_id = design_fingerprint(design);
    return s;
  };
  const auto est = pf_second_order(pf_closed(pairs_for(set_ij), set_ij),
                                   pf_closed(pairs_for(set_i), set_i),
                                   pf_closed(pairs_for(set_j), set_j));
  CHECK(std::abs(est.value - 1.0) < 0.05);
}

}  // TEST_SUITE
