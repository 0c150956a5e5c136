#include "gsa/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace gsa {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, size_t line,
                             size_t col, const std::string& what) {
  std::ostringstream msg;
  msg << path.string() << ":" << line << ":" << col << ": " << what;
  throw ConfigError(msg.str());
}

size_t count_fields(std::string_view line) {
  return static_cast<size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

double parse_cell(const std::filesystem::path& path, size_t line_no,
                  size_t col_no, std::string_view cell) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    parse_fail(path, line_no, col_no,
               "non-numeric cell '" + std::string(cell) + "'");
  }
  if (!std::isfinite(value)) {
    parse_fail(path, line_no, col_no, "non-finite cell rejected");
  }
  return value;
}

void format_cell(std::string& out, double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
  out.append(buf, static_cast<size_t>(len));
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t pos = 0;
  while (pos <= line.size()) {
    const size_t comma = std::min(line.find(',', pos), line.size());
    fields.push_back(line.substr(pos, comma - pos));
    if (comma == line.size()) break;
    pos = comma + 1;
  }
  return fields;
}

}  // namespace

Matrix load_matrix(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto lines = split_lines(text);
  if (lines.empty()) throw ConfigError(path.string() + ": missing header row");
  const size_t cols = count_fields(lines[0]);
  const size_t rows = lines.size() - 1;

  Matrix out(static_cast<Index>(rows), static_cast<Index>(cols));
  for (size_t r = 0; r < rows; ++r) {
    const auto fields = split_fields(lines[r + 1]);
    if (fields.size() != cols) {
      parse_fail(path, r + 2, 1,
                 "ragged row: expected " + std::to_string(cols) +
                     " fields, found " + std::to_string(fields.size()));
    }
    for (size_t c = 0; c < cols; ++c) {
      out(static_cast<Index>(r), static_cast<Index>(c)) =
          parse_cell(path, r + 2, c + 1, fields[c]);
    }
  }
  return out;
}

void store_matrix(const std::filesystem::path& path, const Matrix& m,
                  const std::vector<std::string>& header) {
  if (!header.empty() && header.size() != static_cast<size_t>(m.cols())) {
    throw ConfigError("header size does not match column count");
  }
  std::string out;
  out.reserve(static_cast<size_t>(m.size()) * 12 + 64);
  for (Index c = 0; c < m.cols(); ++c) {
    if (c > 0) out.push_back(',');
    if (header.empty()) {
      out.push_back('c');
      out.append(std::to_string(c + 1));
    } else {
      out.append(header[static_cast<size_t>(c)]);
    }
  }
  out.push_back('\n');
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out.push_back(',');
      format_cell(out, m(r, c));
    }
    out.push_back('\n');
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

void store_meta(const std::filesystem::path& path, const MetaInfo& meta) {
  nlohmann::json j;
  j["version"] = meta.version;
  j["kind"] = meta.kind;
  j["n"] = meta.n;
  j["l_or_m"] = meta.l_or_m;
  if (meta.labels) j["labels"] = *meta.labels;
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

MetaInfo load_meta(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open " + path.string());
  const nlohmann::json j = nlohmann::json::parse(f, nullptr, true);
  MetaInfo meta;
  meta.version = j.value("version", 1);
  meta.kind = j.value("kind", "");
  meta.n = j.value("n", Index{0});
  meta.l_or_m = j.value("l_or_m", Index{0});
  if (j.contains("labels")) {
    meta.labels = j.at("labels").get<std::vector<double>>();
  }
  return meta;
}

SnapshotSet resample_linear(const IrregularSeries& series, Index l) {
  if (l < 2) throw ConfigError("resampling grid needs at least two points");
  if (series.realizations.empty()) {
    throw ConfigError("no realizations to resample");
  }
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (size_t r = 0; r < series.realizations.size(); ++r) {
    const auto& pts = series.realizations[r];
    if (pts.size() < 2) {
      throw ConfigError("realization " + std::to_string(r + 1) +
                        " has fewer than two points");
    }
    for (size_t k = 1; k < pts.size(); ++k) {
      if (!(pts[k - 1].t < pts[k].t)) {
        throw ConfigError("realization " + std::to_string(r + 1) +
                          ": time stamps not strictly increasing");
      }
    }
    lo = std::max(lo, pts.front().t);
    hi = std::min(hi, pts.back().t);
  }
  if (!(lo < hi)) throw ConfigError("realizations share no common time support");

  std::vector<double> grid(static_cast<size_t>(l));
  for (Index i = 0; i < l; ++i) {
    grid[static_cast<size_t>(i)] =
        lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(l - 1);
  }
  grid.front() = lo;
  grid.back() = hi;

  SnapshotSet out;
  out.data.resize(static_cast<Index>(series.realizations.size()), l);
  for (size_t r = 0; r < series.realizations.size(); ++r) {
    const auto& pts = series.realizations[r];
    size_t j = 0;
    for (Index i = 0; i < l; ++i) {
      const double t = grid[static_cast<size_t>(i)];
      while (j + 1 < pts.size() && pts[j + 1].t <= t) ++j;
      double v;
      if (pts[j].t == t) {
        v = pts[j].value;  // knot hit: reproduce exactly
      } else {
        const auto& a = pts[j];
        const auto& b = pts[j + 1];
        const double w = (t - a.t) / (b.t - a.t);
        v = a.value + w * (b.value - a.value);
      }
      out.data(static_cast<Index>(r), i) = v;
    }
  }
  out.dim_labels = std::move(grid);
  return out;
}

void write_sm_csv(const std::filesystem::path& path, const SensitivityMap& map,
                  const BootstrapBands* bands) {
  std::string out = "ell,estimate,flag";
  if (bands) out += ",boot_center,boot_q1,boot_q3,boot_std";
  out.push_back('\n');
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (Index ell = 0; ell < map.l(); ++ell) {
    out.append(std::to_string(ell + 1));
    out.push_back(',');
    format_cell(out, map.flagged(ell) ? nan : map.values(ell));
    out.push_back(',');
    out.append(map.flagged(ell) ? "1" : "0");
    if (bands) {
      for (const Vector* v :
           {&bands->center, &bands->q1, &bands->q3, &bands->std_dev}) {
        out.push_back(',');
        format_cell(out, map.flagged(ell) ? nan : (*v)(ell));
      }
    }
    out.push_back('\n');
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

IrregularSeries load_series_csv(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto lines = split_lines(text);
  if (lines.empty()) throw ConfigError(path.string() + ": missing header row");

  IrregularSeries series;
  std::map<long long, size_t> slot;  // series id -> realization index
  for (size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_fields(lines[r]);
    if (fields.size() != 3) {
      parse_fail(path, r + 1, 1, "expected 3 fields: series,t,value");
    }
    long long id = 0;
    const auto [ptr, ec] =
        std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), id);
    if (ec != std::errc{} || ptr != fields[0].data() + fields[0].size()) {
      parse_fail(path, r + 1, 1, "bad series id");
    }
    const double t = parse_cell(path, r + 1, 2, fields[1]);
    const double v = parse_cell(path, r + 1, 3, fields[2]);
    auto [it, fresh] = slot.try_emplace(id, series.realizations.size());
    if (fresh) series.realizations.emplace_back();
    series.realizations[it->second].push_back({t, v});
  }
  return series;
}

}  // namespace gsa
