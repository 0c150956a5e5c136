#include "gsa/types.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace gsa {

std::string_view to_string(SobolKind kind) {
  switch (kind) {
    case SobolKind::closed:
      return "closed";
    case SobolKind::total:
      return "total";
    case SobolKind::second_order:
      return "second_order";
  }
  return "unknown";
}

bool IndexSet::contains(int dim) const {
  return std::binary_search(members.begin(), members.end(), dim);
}

IndexSet make_index_set(std::vector<int> members, SobolKind kind, int dims) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty() && kind != SobolKind::closed) {
    throw ConfigError("index set must be non-empty");
  }
  if (kind == SobolKind::second_order && members.size() != 2) {
    throw ConfigError("second-order index set needs exactly two distinct dimensions");
  }
  for (int m : members) {
    if (m < 0) throw ConfigError("index set members must be >= 1");
    if (dims > 0 && m >= dims) {
      std::ostringstream msg;
      msg << "index " << (m + 1) << " exceeds input dimension " << dims;
      throw ConfigError(msg.str());
    }
  }
  return IndexSet{std::move(members), kind};
}

IndexSet complement(const IndexSet& set, int dims) {
  if (dims <= 0) throw ConfigError("complement needs a positive dimension count");
  IndexSet out;
  out.kind = set.kind;
  out.members.reserve(static_cast<size_t>(dims));
  for (int j = 0; j < dims; ++j) {
    if (!set.contains(j)) out.members.push_back(j);
  }
  return out;
}

namespace {

std::vector<int> parse_member_list(std::string_view text) {
  std::vector<int> members;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || ptr != item.data() + item.size() || value < 1) {
      throw ConfigError("bad index set element '" + std::string(item) + "'");
    }
    members.push_back(value - 1);  // to 0-based
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return members;
}

}  // namespace

IndexSet parse_index_set(std::string_view text) {
  if (text.empty()) throw ConfigError("empty index set");
  SobolKind kind = SobolKind::closed;
  if (text.starts_with("total:")) {
    kind = SobolKind::total;
    text.remove_prefix(6);
  } else if (text.starts_with("pair:")) {
    kind = SobolKind::second_order;
    text.remove_prefix(5);
  }
  auto members = parse_member_list(text);
  const size_t raw_count = members.size();
  IndexSet set = make_index_set(std::move(members), kind);
  if (set.members.size() != raw_count) {
    throw ConfigError("duplicate members in index set");
  }
  if (set.members.empty()) throw ConfigError("empty index set");
  return set;
}

std::vector<IndexSet> parse_index_set_list(std::string_view text) {
  std::vector<IndexSet> sets;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t semi = std::min(text.find(';', pos), text.size());
    const std::string_view item = text.substr(pos, semi - pos);
    if (!item.empty()) sets.push_back(parse_index_set(item));
    if (semi == text.size()) break;
    pos = semi + 1;
  }
  if (sets.empty()) throw ConfigError("no index sets given");
  return sets;
}

std::string to_string(const IndexSet& set) {
  std::ostringstream out;
  if (set.kind == SobolKind::total) out << "total:";
  if (set.kind == SobolKind::second_order) out << "pair:";
  for (size_t i = 0; i < set.members.size(); ++i) {
    if (i > 0) out << ',';
    out << set.members[i] + 1;  // back to 1-based
  }
  return out.str();
}

InputSpace uniform_space(int d, double lower, double upper) {
  if (d < 1) throw ConfigError("input space needs at least one dimension");
  InputSpace space;
  space.dims.assign(static_cast<size_t>(d), UniformDist{lower, upper});
  validate(space);
  return space;
}

void validate(const InputSpace& space) {
  if (space.dims.empty()) throw ConfigError("input space has no dimensions");
  for (size_t j = 0; j < space.dims.size(); ++j) {
    const auto& d = space.dims[j];
    if (!std::isfinite(d.lower) || !std::isfinite(d.upper) ||
        !(d.lower < d.upper)) {
      std::ostringstream msg;
      msg << "dimension " << (j + 1) << ": bounds (" << d.lower << ", "
          << d.upper << ") are not strictly ordered";
      throw ConfigError(msg.str());
    }
  }
}

}  // namespace gsa
