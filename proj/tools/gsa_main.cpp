// Command-line front end: fit-basis, estimate, benchmark, resample, q2.
//
// Exit codes: 0 success, 1 numerical failure (degeneracy or route
// disagreement), 2 configuration / I/O error.

#include "gsa/basis.hpp"
#include "gsa/bootstrap.hpp"
#include "gsa/io.hpp"
#include "gsa/pf_core.hpp"
#include "gsa/rng.hpp"
#include "gsa/sampling.hpp"
#include "gsa/sensmap.hpp"
#include "gsa/testbed.hpp"
#include "gsa/types.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw gsa::ConfigError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::string cpu_descriptor() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        std::string name = line.substr(colon + 1);
        name.erase(0, name.find_first_not_of(' '));
        return name;
      }
    }
  }
  return "unknown";
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& t0) {
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------------------
// fit-basis

struct FitBasisOpts {
  std::string snapshots;
  std::string out_dir;
  double variance_target = 0.99;
  gsa::Index components = 0;  // 0 = use variance target
};

int run_fit_basis(const FitBasisOpts& opts) {
  if (!fs::exists(opts.snapshots)) {
    throw gsa::ConfigError("snapshot file does not exist: " + opts.snapshots);
  }
  fs::create_directories(opts.out_dir);

  json config;
  config["command"] = "fit-basis";
  config["snapshots"] = opts.snapshots;
  config["out"] = opts.out_dir;
  if (opts.components > 0) {
    config["components"] = opts.components;
  } else {
    config["variance_target"] = opts.variance_target;
  }
  write_json(fs::path(opts.out_dir) / "run_config.json", config);

  const gsa::Matrix snapshots = gsa::load_matrix(opts.snapshots);
  const auto trunc = opts.components > 0
                         ? gsa::PcaTruncation::fixed(opts.components)
                         : gsa::PcaTruncation::by_variance(opts.variance_target);
  const gsa::BasisExpansion basis = gsa::fit_pca(snapshots, trunc);
  gsa::save_basis(opts.out_dir, basis);

  json report;
  report["n_snapshots"] = snapshots.rows();
  report["l"] = basis.l();
  report["m"] = basis.m();
  report["rank"] = basis.spectrum.size();
  json per_component = json::array();
  for (gsa::Index k = 1; k <= basis.m(); ++k) {
    per_component.push_back({{"m", k},
                             {"eigenvalue", basis.eigenvalues(k - 1)},
                             {"explained", gsa::explained_variance(basis, k)}});
  }
  report["explained_variance"] = per_component;
  write_json(fs::path(opts.out_dir) / "variance_report.json", report);

  std::cout << "fitted basis: m=" << basis.m() << " of rank "
            << basis.spectrum.size() << ", explained variance "
            << gsa::explained_variance(basis, basis.m()) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateOpts {
  std::string out_dir;
  std::string index_sets;
  std::string model;
  std::string basis_dir;
  std::string coeffs_file;
  std::string coeffs_star_file;
  gsa::Index n = 5000;
  gsa::Index doe = 200;
  double variance_target = 0.99;
  gsa::Index components = 0;
  gsa::Index bootstrap = 0;
  std::string boot_summary = "mean";
  std::uint64_t seed = 0;
  std::string method = "bd";
  int threads = 1;
};

std::string file_tag(const gsa::IndexSet& set) {
  std::string tag = gsa::to_string(set);
  for (char& c : tag) {
    if (c == ':') c = '_';
    if (c == ',') c = '-';
  }
  return tag;
}

// Evaluates the model over input rows and projects onto the basis in
// blocks, so L-wide snapshots never materialize all at once.
gsa::Matrix encode_outputs(const gsa::AnalyticModel& model,
                           const gsa::BasisExpansion& basis,
                           const gsa::Matrix& inputs) {
  const gsa::Index block = 256;
  gsa::Matrix coeffs(inputs.rows(), basis.m());
  for (gsa::Index lo = 0; lo < inputs.rows(); lo += block) {
    const gsa::Index count = std::min(block, inputs.rows() - lo);
    const gsa::Matrix snaps =
        gsa::evaluate_rows(model, inputs.middleRows(lo, count));
    coeffs.middleRows(lo, count) = gsa::encode(basis, snaps).coeffs;
  }
  return coeffs;
}

// Relative difference with the scale floored at 1: index estimates live on
// a unit scale, so near-zero pixels compare absolutely.
double max_rel_difference(const gsa::SensitivityMap& a,
                          const gsa::SensitivityMap& b) {
  double worst = 0.0;
  for (gsa::Index ell = 0; ell < a.l(); ++ell) {
    if (a.flagged(ell) != b.flagged(ell)) {
      return std::numeric_limits<double>::infinity();
    }
    if (a.flagged(ell)) continue;
    const double denom =
        std::max({std::abs(a.values(ell)), std::abs(b.values(ell)), 1.0});
    worst = std::max(worst, std::abs(a.values(ell) - b.values(ell)) / denom);
  }
  return worst;
}

int run_estimate(const EstimateOpts& opts) {
  const auto sets = gsa::parse_index_set_list(opts.index_sets);
  const bool model_mode = !opts.model.empty();
  const bool coeff_mode = !opts.coeffs_file.empty();
  if (model_mode == coeff_mode) {
    throw gsa::ConfigError("give exactly one of --model or --coeffs");
  }
  if (coeff_mode &&
      (opts.coeffs_star_file.empty() || opts.basis_dir.empty())) {
    throw gsa::ConfigError("--coeffs mode needs --coeffs-star and --basis");
  }
  if (coeff_mode && sets.size() != 1) {
    throw gsa::ConfigError(
        "--coeffs mode carries pairs for a single index set");
  }
  if (opts.method != "dw" && opts.method != "bd" && opts.method != "both") {
    throw gsa::ConfigError("--method must be dw, bd or both");
  }
  if (opts.bootstrap == 1) {
    throw gsa::ConfigError("--bootstrap needs B >= 2 (0 disables)");
  }
  fs::create_directories(opts.out_dir);

  json config;
  config["command"] = "estimate";
  config["index_sets"] = opts.index_sets;
  config["n"] = opts.n;
  config["seed"] = opts.seed;
  config["method"] = opts.method;
  config["bootstrap"] = opts.bootstrap;
  config["boot_summary"] = opts.boot_summary;
  config["threads"] = opts.threads;
  if (model_mode) {
    config["model"] = opts.model;
    config["doe"] = opts.doe;
    if (opts.components > 0) {
      config["components"] = opts.components;
    } else {
      config["variance_target"] = opts.variance_target;
    }
  } else {
    config["coeffs"] = opts.coeffs_file;
    config["coeffs_star"] = opts.coeffs_star_file;
  }
  if (!opts.basis_dir.empty()) config["basis"] = opts.basis_dir;
  write_json(fs::path(opts.out_dir) / "run_config.json", config);

  gsa::BootstrapSpec boot;
  boot.replicates = opts.bootstrap;
  boot.seed = opts.seed;
  boot.summary = opts.boot_summary == "median" ? gsa::BootstrapCenter::median
                                               : gsa::BootstrapCenter::mean;

  // Assemble basis and per-set coefficient pairs.
  gsa::BasisExpansion basis;
  std::optional<gsa::AnalyticModel> model;
  gsa::Matrix x, z, coeffs_x;
  std::uint64_t design_id = 0;
  if (model_mode) {
    model = gsa::model_by_name(opts.model);
    if (!opts.basis_dir.empty()) {
      basis = gsa::load_basis(opts.basis_dir);
    } else {
      const gsa::Matrix doe =
          gsa::sample_lhs(model->space, opts.doe, opts.seed);
      const auto trunc =
          opts.components > 0
              ? gsa::PcaTruncation::fixed(opts.components)
              : gsa::PcaTruncation::by_variance(opts.variance_target);
      basis = gsa::fit_pca(gsa::evaluate_rows(*model, doe), trunc);
      gsa::save_basis(fs::path(opts.out_dir) / "basis", basis);
    }
    x = gsa::sample_mc(model->space, opts.n, opts.seed, gsa::kStreamX);
    z = gsa::sample_mc(model->space, opts.n, opts.seed, gsa::kStreamZ);
    gsa::PickFreezeDesign probe{x, z, sets.front(), opts.seed};
    design_id = gsa::design_fingerprint(probe);
    coeffs_x = encode_outputs(*model, basis, x);
  } else {
    basis = gsa::load_basis(opts.basis_dir);
  }

  const auto pairs_for = [&](const gsa::IndexSet& set) {
    gsa::PairedOutputSample pairs;
    if (model_mode) {
      const gsa::Matrix x_star = gsa::build_pick_freeze(x, z, set);
      pairs.y = coeffs_x;
      pairs.y_star = encode_outputs(*model, basis, x_star);
      pairs.design_id = design_id;
    } else {
      pairs.y = gsa::load_matrix(opts.coeffs_file);
      pairs.y_star = gsa::load_matrix(opts.coeffs_star_file);
    }
    return pairs;
  };

  json gsi_report;
  json agreement = json::array();
  double worst_disagreement = 0.0;

  for (const auto& set : sets) {
    std::vector<gsa::SobolKind> kinds;
    if (set.kind == gsa::SobolKind::closed) {
      kinds = {gsa::SobolKind::closed};
      // totals need the complement design, available only in model mode
      if (model_mode) kinds.push_back(gsa::SobolKind::total);
    } else if (set.kind == gsa::SobolKind::total) {
      kinds = {gsa::SobolKind::total};
    } else {
      kinds = {gsa::SobolKind::second_order};
    }

    if (set.kind == gsa::SobolKind::second_order) {
      if (!model_mode) {
        throw gsa::ConfigError(
            "pair sets need --model mode (three designs on one sample)");
      }
      const gsa::IndexSet set_i =
          gsa::make_index_set({set.members[0]}, gsa::SobolKind::closed);
      const gsa::IndexSet set_j =
          gsa::make_index_set({set.members[1]}, gsa::SobolKind::closed);
      const auto pairs_ij = pairs_for(set);
      const auto pairs_i = pairs_for(set_i);
      const auto pairs_j = pairs_for(set_j);
      gsa::SensitivityMap bd = gsa::sm_basis_derived_second_order(
          basis, gsa::pf_matrices(pairs_ij), gsa::pf_matrices(pairs_i),
          gsa::pf_matrices(pairs_j), set, opts.threads);
      const std::string stem = "sm_" + file_tag(set);
      if (opts.method == "both" || opts.method == "dw") {
        gsa::SensitivityMap dw = gsa::sm_dimension_wise_second_order(
            basis, pairs_ij, pairs_i, pairs_j, set, opts.threads);
        if (opts.method == "both") {
          const double diff = max_rel_difference(bd, dw);
          worst_disagreement = std::max(worst_disagreement, diff);
          agreement.push_back({{"set", gsa::to_string(set)},
                               {"kind", "second_order"},
                               {"max_rel_difference", diff}});
          gsa::write_sm_csv(fs::path(opts.out_dir) / (stem + "_dw.csv"), dw);
          gsa::write_sm_csv(fs::path(opts.out_dir) / (stem + "_bd.csv"), bd);
        } else {
          gsa::write_sm_csv(fs::path(opts.out_dir) / (stem + ".csv"), dw);
        }
      }
      if (opts.method == "bd") {
        gsa::write_sm_csv(fs::path(opts.out_dir) / (stem + ".csv"), bd);
      }
      continue;
    }

    // Closed maps use the design freezing the set itself; total maps (both
    // the Jansen matrix route and 1 - closed(~I)) use the design freezing
    // the complement. In --coeffs mode the caller supplies pairs from the
    // right design for the requested kind.
    struct KindRun {
      gsa::SobolKind kind;
      gsa::PairedOutputSample pairs;
      gsa::SobolMatrixSet ms;
    };
    std::vector<KindRun> runs;
    for (const auto kind : kinds) {
      KindRun run;
      run.kind = kind;
      if (!model_mode || kind == gsa::SobolKind::closed) {
        run.pairs = pairs_for(set);
      } else {
        run.pairs = pairs_for(
            gsa::complement(set, static_cast<int>(model->space.dim_count())));
      }
      run.ms = gsa::pf_matrices(run.pairs);
      runs.push_back(std::move(run));
    }

    json set_gsi;
    for (const auto& run : runs) {
      const auto kind = run.kind;
      const auto& pairs = run.pairs;
      const auto& ms = run.ms;
      const std::string stem =
          "sm_" + std::string(gsa::to_string(kind)) + "_" + file_tag(set);

      gsa::SensitivityMap bd =
          gsa::sm_basis_derived(basis, ms, kind, opts.threads);
      std::optional<gsa::SensitivityMap> dw;
      if (opts.method != "bd") {
        dw = gsa::sm_dimension_wise(basis, pairs, kind, opts.threads);
        dw->index_set = set;
      }
      bd.index_set = set;

      if (opts.method == "both") {
        const double diff = max_rel_difference(bd, *dw);
        worst_disagreement = std::max(worst_disagreement, diff);
        agreement.push_back({{"set", gsa::to_string(set)},
                             {"kind", gsa::to_string(kind)},
                             {"max_rel_difference", diff}});
      }

      const gsa::SensitivityMap& chosen = (opts.method == "dw") ? *dw : bd;
      std::optional<gsa::BootstrapBands> bands;
      if (opts.bootstrap >= 2) {
        bands = gsa::bootstrap_sm(pairs, basis, kind, boot, opts.threads);
      }
      if (opts.method == "both") {
        gsa::write_sm_csv(fs::path(opts.out_dir) / (stem + "_bd.csv"), bd,
                          bands ? &*bands : nullptr);
        gsa::write_sm_csv(fs::path(opts.out_dir) / (stem + "_dw.csv"), *dw,
                          bands ? &*bands : nullptr);
      } else {
        gsa::write_sm_csv(fs::path(opts.out_dir) / (stem + ".csv"), chosen,
                          bands ? &*bands : nullptr);
      }

      json kind_gsi;
      kind_gsi["value"] =
          gsa::gsi(basis.eigenvalues, gsa::per_coefficient_indices(ms, kind));
      if (opts.bootstrap >= 2) {
        const auto bs = gsa::bootstrap_gsi(pairs, basis, kind, boot);
        kind_gsi["boot_center"] = bs.center;
        kind_gsi["boot_q1"] = bs.q1;
        kind_gsi["boot_q3"] = bs.q3;
        kind_gsi["boot_std"] = bs.std_dev;
      }
      set_gsi[std::string(gsa::to_string(kind))] = kind_gsi;
    }
    gsi_report[gsa::to_string(set)] = set_gsi;
  }

  write_json(fs::path(opts.out_dir) / "gsi.json", gsi_report);
  if (opts.method == "both") {
    json rep;
    rep["per_map"] = agreement;
    rep["max_rel_difference"] = worst_disagreement;
    rep["threshold"] = 1e-8;
    rep["pass"] = worst_disagreement < 1e-8;
    write_json(fs::path(opts.out_dir) / "agreement.json", rep);
    if (!(worst_disagreement < 1e-8)) {
      throw NumericalFailure("dimension-wise and basis-derived maps disagree: "
                             "max relative difference " +
                             std::to_string(worst_disagreement));
    }
  }
  std::cout << "estimate: wrote " << opts.out_dir << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// benchmark

struct BenchmarkOpts {
  std::string out_dir;
  std::string grid = "5000,7,4096";
  int reps = 5;
  std::uint64_t seed = 0;
  int threads = 1;
};

int run_benchmark(const BenchmarkOpts& opts) {
  if (opts.reps < 1) throw gsa::ConfigError("--reps must be >= 1");
  fs::create_directories(opts.out_dir);

  std::vector<gsa::CostModel> cells;
  for (const auto& cell_text : [&] {
         std::vector<std::string> parts;
         std::string cur;
         for (char c : opts.grid) {
           if (c == ';') {
             parts.push_back(cur);
             cur.clear();
           } else {
             cur.push_back(c);
           }
         }
         parts.push_back(cur);
         return parts;
       }()) {
    gsa::CostModel c;
    if (std::sscanf(cell_text.c_str(), "%ld,%ld,%ld", &c.n, &c.m, &c.l) != 3 ||
        c.n < 2 || c.m < 1 || c.l < 1) {
      throw gsa::ConfigError("bad benchmark cell '" + cell_text +
                             "' (want N,m,L)");
    }
    cells.push_back(c);
  }

  json config;
  config["command"] = "benchmark";
  config["grid"] = opts.grid;
  config["reps"] = opts.reps;
  config["seed"] = opts.seed;
  config["threads"] = opts.threads;
  write_json(fs::path(opts.out_dir) / "run_config.json", config);

  json cells_report = json::array();
  for (const auto& cell : cells) {
    // Synthetic basis and coefficient pairs; setup is excluded from timing.
    gsa::CounterRng rng(opts.seed, 0xBE7C);
    const auto fill = [&rng](gsa::Matrix& m) {
      for (gsa::Index i = 0; i < m.rows(); ++i) {
        for (gsa::Index j = 0; j < m.cols(); ++j) {
          m(i, j) = 2.0 * rng.next_uniform01() - 1.0;
        }
      }
    };
    gsa::BasisExpansion basis;
    basis.components.resize(cell.m, cell.l);
    fill(basis.components);
    basis.mean = gsa::Vector::Zero(cell.l);
    basis.eigenvalues = gsa::Vector::Ones(cell.m);
    basis.spectrum = basis.eigenvalues;
    gsa::PairedOutputSample pairs;
    pairs.y.resize(cell.n, cell.m);
    pairs.y_star.resize(cell.n, cell.m);
    fill(pairs.y);
    fill(pairs.y_star);

    const auto run_dw = [&] {
      return gsa::sm_dimension_wise(basis, pairs, gsa::SobolKind::closed,
                                    opts.threads);
    };
    const auto run_bd = [&] {
      return gsa::sm_basis_derived(basis, gsa::pf_matrices(pairs),
                                   gsa::SobolKind::closed, opts.threads);
    };
    (void)run_dw();  // warm-up, discarded
    (void)run_bd();

    std::vector<double> t_dw, t_bd;
    double checksum = 0.0;
    for (int rep = 0; rep < opts.reps; ++rep) {
      auto t0 = std::chrono::steady_clock::now();
      const auto dw_map = run_dw();
      t_dw.push_back(elapsed_seconds(t0));
      t0 = std::chrono::steady_clock::now();
      const auto bd_map = run_bd();
      t_bd.push_back(elapsed_seconds(t0));
      checksum += dw_map.values(0) + bd_map.values(0);
    }
    const double dw_median = median_of(t_dw);
    const double bd_median = median_of(t_bd);

    json entry;
    entry["n"] = cell.n;
    entry["m"] = cell.m;
    entry["l"] = cell.l;
    entry["cost_dw"] = gsa::cost_dw(cell);
    entry["cost_bd"] = gsa::cost_bd(cell);
    entry["ratio"] = gsa::cost_ratio(cell);
    entry["bound"] = gsa::cost_ratio_lower_bound(cell);
    entry["t_dw_seconds"] = dw_median;
    entry["t_bd_seconds"] = bd_median;
    entry["measured_ratio"] = dw_median / bd_median;
    entry["checksum"] = checksum;
    cells_report.push_back(entry);
    std::cout << "cell N=" << cell.n << " m=" << cell.m << " l=" << cell.l
              << ": theoretical ratio " << gsa::cost_ratio(cell)
              << ", measured " << dw_median / bd_median << " (dw "
              << dw_median << "s, bd " << bd_median << "s)\n";
  }

  json report;
  report["cells"] = cells_report;
  report["machine"] = {{"cpu", cpu_descriptor()},
                       {"compiler", __VERSION__},
                       {"threads", opts.threads},
                       {"repetitions", opts.reps}};
  write_json(fs::path(opts.out_dir) / "benchmark.json", report);
  return 0;
}

// ---------------------------------------------------------------------------
// resample

struct ResampleOpts {
  std::string input;
  std::string out_dir;
  gsa::Index points = 5000;
};

int run_resample(const ResampleOpts& opts) {
  fs::create_directories(opts.out_dir);
  const gsa::IrregularSeries series = gsa::load_series_csv(opts.input);
  const gsa::SnapshotSet snap = gsa::resample_linear(series, opts.points);

  json config;
  config["command"] = "resample";
  config["input"] = opts.input;
  config["points"] = opts.points;
  write_json(fs::path(opts.out_dir) / "run_config.json", config);

  gsa::store_matrix(fs::path(opts.out_dir) / "snapshots.csv", snap.data);
  gsa::MetaInfo meta;
  meta.kind = "snapshot";
  meta.n = snap.data.rows();
  meta.l_or_m = snap.data.cols();
  meta.labels = snap.dim_labels;
  gsa::store_meta(fs::path(opts.out_dir) / "meta.json", meta);
  std::cout << "resampled " << snap.data.rows() << " series onto "
            << snap.data.cols() << " points\n";
  return 0;
}

// ---------------------------------------------------------------------------
// q2

struct Q2Opts {
  std::string truth;
  std::string pred;
  std::string out_file;
};

int run_q2(const Q2Opts& opts) {
  const gsa::Matrix truth = gsa::load_matrix(opts.truth);
  const gsa::Matrix pred = gsa::load_matrix(opts.pred);
  const double q2 = gsa::q_squared(truth, pred);
  json j;
  j["q2"] = q2;
  j["n"] = truth.rows();
  j["l"] = truth.cols();
  if (!opts.out_file.empty()) write_json(opts.out_file, j);
  std::cout << j.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sobol' sensitivity maps via pick-freeze estimation on basis "
               "coefficients"};
  app.require_subcommand(1);

  FitBasisOpts fit;
  auto* fit_cmd = app.add_subcommand(
      "fit-basis", "Fit a PCA basis from a snapshot matrix");
  fit_cmd->add_option("--snapshots", fit.snapshots, "snapshot CSV (n x L)")
      ->required();
  fit_cmd->add_option("--out", fit.out_dir, "output directory")->required();
  fit_cmd->add_option("--variance-target", fit.variance_target,
                      "keep the smallest m reaching this fraction");
  fit_cmd->add_option("--components", fit.components, "fixed component count");

  EstimateOpts est;
  auto* est_cmd = app.add_subcommand(
      "estimate", "Estimate sensitivity maps and GSI values");
  est_cmd->add_option("--out", est.out_dir, "output directory")->required();
  est_cmd
      ->add_option("--index-sets", est.index_sets,
                   "e.g. \"1;2,3;total:1;pair:1,2\" (1-based)")
      ->required();
  est_cmd->add_option("--model", est.model,
                      "campbell2d | product | additive:w=1,2[:bounds=0,1]");
  est_cmd->add_option("--basis", est.basis_dir, "basis directory");
  est_cmd->add_option("--coeffs", est.coeffs_file,
                      "precomputed coefficient CSV (N x m)");
  est_cmd->add_option("--coeffs-star", est.coeffs_star_file,
                      "partner coefficient CSV (N x m)");
  est_cmd->add_option("--n", est.n, "pick-freeze sample size");
  est_cmd->add_option("--doe", est.doe, "LHS design size for on-the-fly PCA");
  est_cmd->add_option("--variance-target", est.variance_target,
                      "PCA variance target for on-the-fly basis");
  est_cmd->add_option("--components", est.components,
                      "fixed PCA component count");
  est_cmd->add_option("--bootstrap", est.bootstrap,
                      "bootstrap replicates (0 disables)");
  est_cmd->add_option("--boot-summary", est.boot_summary, "mean | median");
  est_cmd->add_option("--seed", est.seed, "RNG seed");
  est_cmd->add_option("--method", est.method, "dw | bd | both");
  est_cmd->add_option("--threads", est.threads, "worker cap");

  BenchmarkOpts bench;
  auto* bench_cmd = app.add_subcommand(
      "benchmark", "Time both routes over a (N,m,L) grid");
  bench_cmd->add_option("--out", bench.out_dir, "output directory")
      ->required();
  bench_cmd->add_option("--grid", bench.grid,
                        "cells \"N,m,L;N,m,L;...\"");
  bench_cmd->add_option("--reps", bench.reps, "timed repetitions per cell");
  bench_cmd->add_option("--seed", bench.seed, "RNG seed");
  bench_cmd->add_option("--threads", bench.threads, "worker cap");

  ResampleOpts res;
  auto* res_cmd = app.add_subcommand(
      "resample", "Interpolate irregular series onto a uniform grid");
  res_cmd->add_option("--input", res.input, "CSV with series,t,value rows")
      ->required();
  res_cmd->add_option("--out", res.out_dir, "output directory")->required();
  res_cmd->add_option("--points", res.points, "grid length");

  Q2Opts q2;
  auto* q2_cmd =
      app.add_subcommand("q2", "Predictivity of predictions against truth");
  q2_cmd->add_option("--truth", q2.truth, "truth CSV")->required();
  q2_cmd->add_option("--pred", q2.pred, "prediction CSV")->required();
  q2_cmd->add_option("--out", q2.out_file, "optional JSON output path");

  try {
    app.parse(argc, argv);
    if (*fit_cmd) return run_fit_basis(fit);
    if (*est_cmd) return run_estimate(est);
    if (*bench_cmd) return run_benchmark(bench);
    if (*res_cmd) return run_resample(res);
    if (*q2_cmd) return run_q2(q2);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const NumericalFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gsa::DegenerateVarianceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gsa::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
