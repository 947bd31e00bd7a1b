#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace entrokit {

/// Real-valued rows of fixed dimensionality, with optional integer class
/// labels kept for evaluation only.
struct Dataset {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;  // empty when absent

  bool has_labels() const { return !labels.empty(); }
  std::size_t size() const { return rows.size(); }
  std::size_t dim() const { return rows.empty() ? 0 : rows.front().size(); }

  void validate() const {
    if (rows.empty()) throw std::invalid_argument("dataset: no rows");
    const std::size_t d = rows.front().size();
    if (d == 0) throw std::invalid_argument("dataset: zero-dimensional rows");
    for (const auto& r : rows) {
      if (r.size() != d) throw std::invalid_argument("dataset: inconsistent dimensionality");
    }
    if (!labels.empty() && labels.size() != rows.size()) {
      throw std::invalid_argument("dataset: label count must match row count");
    }
  }
};

}  // namespace entrokit
