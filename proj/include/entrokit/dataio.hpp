#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entrokit/dataset.hpp"
#include "entrokit/rng.hpp"
#include "entrokit/selforg.hpp"

namespace entrokit {

struct GaussianBlob {
  std::vector<double> center;
  double stddev = 1.0;  // >= 0; zero collapses onto the center
  int count = 0;
};

struct SyntheticSpec {
  std::vector<GaussianBlob> clusters;
  int noise_dims = 0;
  double noise_low = -1.0;
  double noise_high = 1.0;
  std::uint64_t seed = 0;
};

/// Desk-scale stand-in for the unavailable original data: three
/// well-separated isotropic gaussians in R^3, 100 points each.
inline SyntheticSpec default300_spec(int noise_dims = 0) {
  SyntheticSpec spec;
  spec.clusters = {
      {{0.0, 0.0, 0.0}, 0.5, 100},
      {{4.0, 4.0, 0.0}, 0.5, 100},
      {{0.0, 4.0, 4.0}, 0.5, 100},
  };
  spec.noise_dims = noise_dims;
  spec.seed = 1;
  return spec;
}

inline void validate_spec(const SyntheticSpec& spec) {
  if (spec.clusters.empty()) throw std::invalid_argument("synthetic spec: needs at least one cluster");
  const std::size_t d = spec.clusters.front().center.size();
  if (d == 0) throw std::invalid_argument("synthetic spec: zero-dimensional centers");
  for (const auto& blob : spec.clusters) {
    if (blob.center.size() != d) throw std::invalid_argument("synthetic spec: center dimensions differ");
    if (blob.count < 1) throw std::invalid_argument("synthetic spec: counts must be >= 1");
    if (!(blob.stddev >= 0.0)) throw std::invalid_argument("synthetic spec: stddev must be >= 0");
  }
  if (spec.noise_dims < 0) throw std::invalid_argument("synthetic spec: noise_dims must be >= 0");
  if (!(spec.noise_low < spec.noise_high)) {
    throw std::invalid_argument("synthetic spec: noise interval must have low < high");
  }
}

/// Per cluster, `count` rows of center + stddev * gaussian per coordinate,
/// then `noise_dims` uniform coordinates; labels record the cluster index.
/// Row order follows cluster order; draws per row are the feature gaussians
/// then the noise uniforms, so a seed pins the dataset bit-for-bit.
inline Dataset generate_synthetic(const SyntheticSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed);
  Dataset ds;
  const std::size_t d = spec.clusters.front().center.size();
  for (std::size_t ci = 0; ci < spec.clusters.size(); ++ci) {
    const auto& blob = spec.clusters[ci];
    for (int p = 0; p < blob.count; ++p) {
      std::vector<double> row(d + static_cast<std::size_t>(spec.noise_dims));
      for (std::size_t j = 0; j < d; ++j) {
        row[j] = blob.center[j] + blob.stddev * rng.gaussian();
      }
      for (int j = 0; j < spec.noise_dims; ++j) {
        row[d + static_cast<std::size_t>(j)] = rng.uniform(spec.noise_low, spec.noise_high);
      }
      ds.rows.push_back(std::move(row));
      ds.labels.push_back(static_cast<int>(ci));
    }
  }
  return ds;
}

namespace detail {

inline double parse_double(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    std::ostringstream msg;
    msg << "csv line " << line_no << ": malformed number '" << std::string(token) << "'";
    throw std::runtime_error(msg.str());
  }
  return value;
}

inline int parse_label(std::string_view token, std::size_t line_no) {
  int value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    std::ostringstream msg;
    msg << "csv line " << line_no << ": malformed label '" << std::string(token) << "'";
    throw std::runtime_error(msg.str());
  }
  return value;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

}  // namespace detail

/// Comma-separated numeric rows, '.' decimals, LF endings. With
/// label_column set, that column is read as an integer class label.
inline Dataset load_csv(const std::string& path, bool has_header,
                        std::optional<std::size_t> label_column = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);

  Dataset ds;
  std::string line;
  std::size_t line_no = 0;
  std::size_t expected_fields = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (has_header && line_no == 1) continue;
    if (line.empty()) continue;

    const auto fields = detail::split_fields(line);
    if (expected_fields == 0) {
      expected_fields = fields.size();
      if (label_column && *label_column >= expected_fields) {
        throw std::runtime_error("csv: label column index out of range");
      }
      if (expected_fields - (label_column ? 1 : 0) == 0) {
        throw std::runtime_error("csv: rows have no feature columns");
      }
    } else if (fields.size() != expected_fields) {
      std::ostringstream msg;
      msg << "csv line " << line_no << ": expected " << expected_fields << " fields, got "
          << fields.size();
      throw std::runtime_error(msg.str());
    }

    std::vector<double> row;
    row.reserve(expected_fields);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (label_column && i == *label_column) {
        ds.labels.push_back(detail::parse_label(fields[i], line_no));
      } else {
        row.push_back(detail::parse_double(fields[i], line_no));
      }
    }
    ds.rows.push_back(std::move(row));
  }
  if (ds.rows.empty()) throw std::runtime_error("csv: no data rows in " + path);
  ds.validate();
  return ds;
}

/// Features in %.17g (exact double round trip), optional integer label as
/// the trailing column, LF endings.
inline void write_csv(const Dataset& ds, std::ostream& out, bool header = false) {
  ds.validate();
  char buf[64];
  if (header) {
    for (std::size_t d = 0; d < ds.dim(); ++d) {
      if (d > 0) out << ',';
      out << 'f' << d;
    }
    if (ds.has_labels()) out << ",label";
    out << "\n";
  }
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    for (std::size_t d = 0; d < ds.rows[i].size(); ++d) {
      if (d > 0) out << ',';
      std::snprintf(buf, sizeof(buf), "%.17g", ds.rows[i][d]);
      out << buf;
    }
    if (ds.has_labels()) out << ',' << ds.labels[i];
    out << "\n";
  }
}

inline void write_csv(const Dataset& ds, const std::string& path, bool header = false) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_csv(ds, out, header);
}

/// Fraction of rows left unmatched by the best bijection between clusters
/// and label classes (exhaustive search; k and class count capped at 8).
inline double error_rate(const Partition& p, const std::vector<int>& labels) {
  if (labels.size() != p.assignment.size()) {
    throw std::invalid_argument("error_rate: label count must match assignment");
  }
  if (labels.empty()) throw std::invalid_argument("error_rate: empty input");
  if (p.k < 1 || p.k > 8) throw std::invalid_argument("error_rate: k must be in [1, 8]");

  std::vector<int> classes(labels);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.size() > 8) throw std::invalid_argument("error_rate: more than 8 label classes");

  const std::size_t m = std::max(static_cast<std::size_t>(p.k), classes.size());
  std::vector<std::vector<std::size_t>> confusion(m, std::vector<std::size_t>(m, 0));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int c = p.assignment[i];
    if (c < 0 || c >= p.k) throw std::invalid_argument("error_rate: cluster index out of range");
    const auto li = static_cast<std::size_t>(
        std::lower_bound(classes.begin(), classes.end(), labels[i]) - classes.begin());
    ++confusion[static_cast<std::size_t>(c)][li];
  }

  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best_matched = 0;
  do {
    std::size_t matched = 0;
    for (std::size_t c = 0; c < m; ++c) matched += confusion[c][perm[c]];
    best_matched = std::max(best_matched, matched);
  } while (std::next_permutation(perm.begin(), perm.end()));

  return 1.0 - static_cast<double>(best_matched) / static_cast<double>(labels.size());
}

}  // namespace entrokit
