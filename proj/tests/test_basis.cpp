#include "gsa/basis.hpp"
#include "gsa/rng.hpp"
#include "gsa/sampling.hpp"
#include "gsa/testbed.hpp"

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace gsa;

namespace {

Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  CounterRng rng(seed, 9);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = 2.0 * rng.next_uniform01() - 1.0;
  }
  return m;
}

}  // namespace

TEST_SUITE("basis") {

TEST_CASE("rank-one data needs a single component") {
  Vector direction(4);
  direction << 1.0, -2.0, 0.5, 3.0;
  Matrix snapshots(6, 4);
  for (Index i = 0; i < 6; ++i) {
    snapshots.row(i) = (static_cast<double>(i) - 2.5) * direction.transpose();
  }
  const auto basis = fit_pca(snapshots, PcaTruncation::by_variance(1.0));
  CHECK(basis.m() == 1);
  CHECK(explained_variance(basis, 1) == doctest::Approx(1.0));
}

TEST_CASE("eigenvalue sum equals the total sample variance") {
  const Matrix snaps = random_matrix(10, 5, 1);
  const auto basis = fit_pca(snaps, PcaTruncation::by_variance(1.0));
  const Matrix centered = snaps.rowwise() - snaps.colwise().mean();
  const double total_var = centered.array().square().sum() / (10.0 - 1.0);
  CHECK(basis.spectrum.sum() ==
        doctest::Approx(total_var).epsilon(1e-10));
}

TEST_CASE("components are orthonormal") {
  const Matrix snaps = random_matrix(20, 12, 2);
  const auto basis = fit_pca(snaps, PcaTruncation::fixed(6));
  const Matrix gram = basis.components * basis.components.transpose();
  CHECK((gram - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("sign convention puts the largest entry positive") {
  const Matrix snaps = random_matrix(15, 8, 3);
  const auto basis = fit_pca(snaps, PcaTruncation::fixed(4));
  for (Index i = 0; i < basis.m(); ++i) {
    Index arg = 0;
    basis.components.row(i).cwiseAbs().maxCoeff(&arg);
    CHECK(basis.components(i, arg) > 0.0);
  }
}

TEST_CASE("fitted coefficients are centered with variance lambda_k") {
  const Matrix snaps = random_matrix(40, 10, 4);
  const auto basis = fit_pca(snaps, PcaTruncation::by_variance(1.0));
  const auto sample = encode(basis, snaps);
  const double scale = snaps.cwiseAbs().maxCoeff();
  CHECK(sample.coeffs.colwise().mean().cwiseAbs().maxCoeff() < 1e-10 * scale);
  for (Index k = 0; k < basis.m(); ++k) {
    const double var =
        (sample.coeffs.col(k).array() - sample.coeffs.col(k).mean())
            .square()
            .sum() /
        (40.0 - 1.0);
    CHECK(var == doctest::Approx(basis.eigenvalues(k)).epsilon(1e-8));
  }
}

TEST_CASE("encoding the mean gives zero coefficients") {
  const Matrix snaps = random_matrix(12, 6, 5);
  const auto basis = fit_pca(snaps, PcaTruncation::fixed(3));
  const auto sample = encode(basis, basis.mean.transpose());
  CHECK(sample.coeffs.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("encoding mean plus a component gives a unit coefficient") {
  const Matrix snaps = random_matrix(12, 6, 6);
  const auto basis = fit_pca(snaps, PcaTruncation::fixed(3));
  const Matrix probe =
      (basis.mean + basis.components.row(0).transpose()).transpose();
  const auto sample = encode(basis, probe);
  CHECK(sample.coeffs(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(sample.coeffs(0, 1)) < 1e-10);
  CHECK(std::abs(sample.coeffs(0, 2)) < 1e-10);
}

TEST_CASE("decoding zero coefficients returns the mean") {
  const Matrix snaps = random_matrix(12, 6, 7);
  const auto basis = fit_pca(snaps, PcaTruncation::fixed(2));
  const Matrix out = decode(basis, Matrix::Zero(1, 2));
  CHECK((out.row(0).transpose() - basis.mean).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("full-rank decode of encode reproduces the data") {
  const Matrix snaps = random_matrix(9, 5, 8);
  const auto basis = fit_pca(snaps, PcaTruncation::by_variance(1.0));
  const Matrix rebuilt = decode(basis, encode(basis, snaps));
  const double rel = (rebuilt - snaps).cwiseAbs().maxCoeff() /
                     snaps.cwiseAbs().maxCoeff();
  CHECK(rel < 1e-9);
}

TEST_CASE("encode-decode round trips on in-span data") {
  const Matrix snaps = random_matrix(14, 7, 9);
  const auto basis = fit_pca(snaps, PcaTruncation::fixed(4));
  const Matrix coeffs = random_matrix(5, 4, 10);
  const Matrix in_span = decode(basis, coeffs);
  const auto back = encode(basis, in_span);
  CHECK((back.coeffs - coeffs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("explained variance arithmetic") {
  BasisExpansion basis;
  basis.mean = Vector::Zero(2);
  basis.components = Matrix::Identity(2, 2);
  basis.eigenvalues = Vector(2);
  basis.eigenvalues << 3.0, 1.0;
  basis.spectrum = basis.eigenvalues;
  CHECK(explained_variance(basis, 1) == doctest::Approx(0.75));
  CHECK(explained_variance(basis, 2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(explained_variance(basis, 3), ConfigError);
  CHECK_THROWS_AS(explained_variance(basis, 0), ConfigError);
}

TEST_CASE("over-ranked request names the achievable count") {
  Matrix snaps(3, 5);  // rank at most 2
  snaps = random_matrix(3, 5, 11);
  try {
    fit_pca(snaps, PcaTruncation::fixed(4));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("truncated basis reconstructs held-out fields") {
  const auto model = campbell2d_model();
  const Matrix doe = sample_lhs(model.space, 200, 77);
  const auto basis =
      fit_pca(evaluate_rows(model, doe), PcaTruncation::fixed(7));

  const Matrix held_out =
      evaluate_rows(model, sample_lhs(model.space, 50, 78));
  const Matrix rebuilt = decode(basis, encode(basis, held_out));
  const Matrix centered = held_out.rowwise() - held_out.colwise().mean();
  const double captured = 1.0 - (rebuilt - held_out).squaredNorm() /
                                    centered.squaredNorm();
  CHECK(captured >= 0.99);
}

TEST_CASE("basis serialization round-trips exactly") {
  const Matrix snaps = random_matrix(10, 6, 12);
  const auto basis = fit_pca(snaps, PcaTruncation::fixed(3));
  const auto dir =
      std::filesystem::temp_directory_path() / "gsa_basis_roundtrip";
  save_basis(dir, basis);
  const auto loaded = load_basis(dir);
  CHECK(loaded.mean == basis.mean);
  CHECK(loaded.components == basis.components);
  CHECK(loaded.eigenvalues == basis.eigenvalues);
  CHECK(loaded.spectrum == basis.spectrum);
  std::filesystem::remove_all(dir);
}

TEST_CASE("decode checks coefficient provenance") {
  const Matrix snaps = random_matrix(10, 6, 13);
  const auto basis_a = fit_pca(snaps, PcaTruncation::fixed(2));
  const auto basis_b = fit_pca(random_matrix(10, 6, 14), PcaTruncation::fixed(2));
  const auto sample = encode(basis_a, snaps);
  CHECK_THROWS_AS(decode(basis_b, sample), ConfigError);
}

}  // TEST_SUITE
