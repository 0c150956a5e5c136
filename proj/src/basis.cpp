#include "gsa/basis.hpp"

#include "gsa/io.hpp"

#include "json.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace gsa {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, size_t bytes) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t BasisExpansion::fingerprint() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  const std::int64_t dims[2] = {l(), m()};
  h = fnv1a(h, dims, sizeof(dims));
  h = fnv1a(h, eigenvalues.data(),
            sizeof(double) * static_cast<size_t>(eigenvalues.size()));
  const double sums[2] = {mean.sum(), components.sum()};
  h = fnv1a(h, sums, sizeof(sums));
  return h == 0 ? 1 : h;
}

PcaTruncation PcaTruncation::by_variance(double fraction) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw ConfigError("variance target must lie in (0, 1]");
  }
  PcaTruncation t;
  t.variance_target = fraction;
  return t;
}

PcaTruncation PcaTruncation::fixed(Index components) {
  if (components < 1) throw ConfigError("component count must be >= 1");
  PcaTruncation t;
  t.components = components;
  t.is_fixed = true;
  return t;
}

BasisExpansion fit_pca(const Matrix& snapshots, const PcaTruncation& trunc) {
  const Index n = snapshots.rows();
  const Index l = snapshots.cols();
  if (n < 2) throw ConfigError("PCA needs at least two snapshots");
  if (l < 1) throw ConfigError("PCA needs at least one output dimension");

  BasisExpansion basis;
  basis.mean = snapshots.colwise().mean();
  Matrix centered = snapshots.rowwise() - basis.mean.transpose();

  Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  const double sv_tol =
      std::max(n, l) * std::numeric_limits<double>::epsilon() *
      (sv.size() > 0 ? sv(0) : 0.0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > sv_tol) ++rank;
  if (rank == 0) throw ConfigError("snapshots carry no variance");

  basis.spectrum.resize(rank);
  for (Index k = 0; k < rank; ++k) {
    basis.spectrum(k) = sv(k) * sv(k) / static_cast<double>(n - 1);
  }

  Index m = 0;
  if (trunc.is_fixed) {
    if (trunc.components > rank) {
      std::ostringstream msg;
      msg << "requested " << trunc.components
          << " components but the snapshot rank only supports " << rank;
      throw ConfigError(msg.str());
    }
    m = trunc.components;
  } else {
    const double total = basis.spectrum.sum();
    double cum = 0.0;
    for (m = 1; m <= rank; ++m) {
      cum += basis.spectrum(m - 1);
      if (cum / total >= trunc.variance_target) break;
    }
    m = std::min(m, rank);
  }

  basis.eigenvalues = basis.spectrum.head(m);
  basis.components = svd.matrixV().leftCols(m).transpose();

  // Reproducible sign: largest-magnitude entry of each component positive.
  for (Index i = 0; i < m; ++i) {
    Index arg = 0;
    basis.components.row(i).cwiseAbs().maxCoeff(&arg);
    if (basis.components(i, arg) < 0.0) basis.components.row(i) *= -1.0;
  }
  return basis;
}

CoefficientSample encode(const BasisExpansion& basis, const Matrix& snapshots) {
  if (snapshots.cols() != basis.l()) {
    std::ostringstream msg;
    msg << "snapshot width " << snapshots.cols() << " does not match basis L "
        << basis.l();
    throw ConfigError(msg.str());
  }
  CoefficientSample sample;
  sample.coeffs = (snapshots.rowwise() - basis.mean.transpose()) *
                  basis.components.transpose();
  sample.basis_id = basis.fingerprint();
  return sample;
}

Matrix decode(const BasisExpansion& basis, const Matrix& coeffs) {
  if (coeffs.cols() != basis.m()) {
    std::ostringstream msg;
    msg << "coefficient width " << coeffs.cols() << " does not match basis m "
        << basis.m();
    throw ConfigError(msg.str());
  }
  Matrix out = coeffs * basis.components;
  out.rowwise() += basis.mean.transpose();
  return out;
}

Matrix decode(const BasisExpansion& basis, const CoefficientSample& sample) {
  if (sample.basis_id != 0 && sample.basis_id != basis.fingerprint()) {
    throw ConfigError("coefficient sample was encoded with a different basis");
  }
  return decode(basis, sample.coeffs);
}

double explained_variance(const BasisExpansion& basis, Index m_prime) {
  if (m_prime < 1 || m_prime > basis.m()) {
    std::ostringstream msg;
    msg << "m_prime " << m_prime << " out of range [1, " << basis.m() << "]";
    throw ConfigError(msg.str());
  }
  if (basis.spectrum.size() < basis.m()) {
    throw ConfigError("basis spectrum is shorter than its component count");
  }
  return basis.spectrum.head(m_prime).sum() / basis.spectrum.sum();
}

void save_basis(const std::filesystem::path& dir, const BasisExpansion& basis) {
  std::filesystem::create_directories(dir);
  nlohmann::json meta;
  meta["version"] = 1;
  meta["kind"] = "basis";
  meta["l"] = basis.l();
  meta["m"] = basis.m();
  meta["eigenvalues"] =
      std::vector<double>(basis.eigenvalues.data(),
                          basis.eigenvalues.data() + basis.eigenvalues.size());
  meta["spectrum"] = std::vector<double>(
      basis.spectrum.data(), basis.spectrum.data() + basis.spectrum.size());
  std::ofstream out(dir / "meta.json");
  if (!out) throw ConfigError("cannot write " + (dir / "meta.json").string());
  out << meta.dump(2) << '\n';

  store_matrix(dir / "mean.csv", basis.mean.transpose());
  store_matrix(dir / "components.csv", basis.components);
}

BasisExpansion load_basis(const std::filesystem::path& dir) {
  std::ifstream in(dir / "meta.json");
  if (!in) throw ConfigError("cannot open " + (dir / "meta.json").string());
  nlohmann::json meta = nlohmann::json::parse(in, nullptr, true);
  if (meta.value("kind", "") != "basis") {
    throw ConfigError((dir / "meta.json").string() + ": kind is not 'basis'");
  }

  BasisExpansion basis;
  const auto eig = meta.at("eigenvalues").get<std::vector<double>>();
  basis.eigenvalues =
      Eigen::Map<const Vector>(eig.data(), static_cast<Index>(eig.size()));
  const auto spec = meta.value("spectrum", eig);
  basis.spectrum =
      Eigen::Map<const Vector>(spec.data(), static_cast<Index>(spec.size()));

  const Matrix mean_row = load_matrix(dir / "mean.csv");
  if (mean_row.rows() != 1) {
    throw ConfigError((dir / "mean.csv").string() + ": expected a single row");
  }
  basis.mean = mean_row.row(0).transpose();
  basis.components = load_matrix(dir / "components.csv");

  const auto l = meta.at("l").get<Index>();
  const auto m = meta.at("m").get<Index>();
  if (basis.mean.size() != l || basis.components.rows() != m ||
      basis.components.cols() != l ||
      basis.eigenvalues.size() != m || basis.spectrum.size() < m) {
    throw ConfigError(dir.string() + ": basis files disagree with meta.json");
  }
  return basis;
}

}  // namespace gsa
