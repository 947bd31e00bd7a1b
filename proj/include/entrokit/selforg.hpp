#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entrokit/dataset.hpp"
#include "entrokit/entropy.hpp"
#include "entrokit/rng.hpp"

namespace entrokit {

/// Thrown when an instance cannot satisfy the cluster-size floor.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Disjoint cover of the dataset rows: every row belongs to exactly one of
/// the k clusters.
struct Partition {
  std::vector<int> assignment;  // cluster index per row
  int k = 0;
};

inline std::vector<int> cluster_sizes(const Partition& p) {
  std::vector<int> sizes(static_cast<std::size_t>(p.k), 0);
  for (int c : p.assignment) {
    if (c < 0 || c >= p.k) throw std::invalid_argument("partition: cluster index out of range");
    ++sizes[static_cast<std::size_t>(c)];
  }
  return sizes;
}

inline void validate_partition(const Partition& p, std::size_t n, int min_cluster_size) {
  if (p.k < 1) throw std::invalid_argument("partition: k must be positive");
  if (p.assignment.size() != n) throw std::invalid_argument("partition: one entry per row required");
  for (int size : cluster_sizes(p)) {
    if (size < min_cluster_size) {
      throw std::invalid_argument("partition: cluster below minimum size");
    }
  }
}

struct EntropyObjectiveConfig {
  int bins_per_dim = 8;
  EntropyOrder order = EntropyOrder::shannon();
  LogBase base = LogBase::two;
  int min_cluster_size = 2;
};

struct GaConfig {
  int population = 32;
  int iterations = 10000;
  int mutation_moves_per_child = 1;
  int tournament_size = 3;
  bool guided_mutation = false;
  std::uint64_t seed = 0;
};

inline void validate_objective_config(const EntropyObjectiveConfig& cfg) {
  if (cfg.bins_per_dim < 2) throw std::invalid_argument("objective: bins_per_dim must be >= 2");
  if (cfg.min_cluster_size < 1) throw std::invalid_argument("objective: min_cluster_size must be >= 1");
}

inline void validate_ga_config(const GaConfig& cfg) {
  if (cfg.population < 2) throw std::invalid_argument("ga: population must be >= 2");
  if (cfg.iterations < 1) throw std::invalid_argument("ga: iterations must be >= 1");
  if (cfg.mutation_moves_per_child < 1) throw std::invalid_argument("ga: mutation moves must be >= 1");
  if (cfg.tournament_size < 1 || cfg.tournament_size > cfg.population) {
    throw std::invalid_argument("ga: tournament size must be in [1, population]");
  }
}

/// Weighted within-cluster entropy objective. Columns are discretized once
/// into equal-width bins spanning each column's global min/max, so the
/// objective stays comparable across partitions; each cluster contributes
/// (|c|/n) times the sum of its per-column entropies.
class PartitionObjective {
 public:
  PartitionObjective(const Dataset& ds, const EntropyObjectiveConfig& cfg)
      : n_(ds.size()), dim_(ds.dim()), bins_(static_cast<std::size_t>(cfg.bins_per_dim)),
        order_(cfg.order), base_(cfg.base) {
    ds.validate();
    validate_objective_config(cfg);
    binned_.resize(n_ * dim_);
    for (std::size_t d = 0; d < dim_; ++d) {
      double lo = ds.rows[0][d], hi = ds.rows[0][d];
      for (const auto& row : ds.rows) {
        lo = std::min(lo, row[d]);
        hi = std::max(hi, row[d]);
      }
      const double width = (hi - lo) / static_cast<double>(bins_);
      for (std::size_t i = 0; i < n_; ++i) {
        std::size_t b = 0;
        if (width > 0.0) {
          b = static_cast<std::size_t>((ds.rows[i][d] - lo) / width);
          if (b >= bins_) b = bins_ - 1;  // constant columns and top edges fold in
        }
        binned_[i * dim_ + d] = static_cast<int>(b);
      }
    }
  }

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }

  double evaluate(const Partition& p) const {
    const auto k = static_cast<std::size_t>(p.k);
    std::vector<int> counts(k * dim_ * bins_, 0);
    std::vector<int> sizes(k, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto c = static_cast<std::size_t>(p.assignment[i]);
      ++sizes[c];
      for (std::size_t d = 0; d < dim_; ++d) {
        ++counts[(c * dim_ + d) * bins_ + static_cast<std::size_t>(binned_[i * dim_ + d])];
      }
    }
    // Contributions are summed in sorted order so the value is bit-exactly
    // independent of cluster numbering.
    std::vector<double> contributions;
    contributions.reserve(k);
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] == 0) continue;
      double cluster_entropy = 0.0;
      for (std::size_t d = 0; d < dim_; ++d) {
        cluster_entropy += entropy_of_counts(&counts[(c * dim_ + d) * bins_], sizes[c]);
      }
      contributions.push_back(static_cast<double>(sizes[c]) / static_cast<double>(n_) *
                              cluster_entropy);
    }
    std::sort(contributions.begin(), contributions.end(), std::greater<>());
    double total = 0.0;
    for (double v : contributions) total += v;
    return total;
  }

  /// Surprise of row i inside cluster c given the cluster's current counts:
  /// sum over columns of -log(p of the row's bin). Rows not in c are scored
  /// as if added (add-one counts), keeping the log argument positive.
  double row_info_content(const std::vector<int>& counts_for_cluster, int cluster_size,
                          std::size_t row, bool member) const {
    double info = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) {
      const int cnt = counts_for_cluster[d * bins_ + static_cast<std::size_t>(binned_[row * dim_ + d])];
      double prob;
      if (member) {
        prob = static_cast<double>(cnt) / static_cast<double>(cluster_size);
      } else {
        prob = static_cast<double>(cnt + 1) / static_cast<double>(cluster_size + 1);
      }
      info -= log_in_base(prob, base_);
    }
    return info;
  }

  std::size_t bins() const { return bins_; }
  int binned_value(std::size_t row, std::size_t d) const { return binned_[row * dim_ + d]; }

 private:
  double entropy_of_counts(const int* counts, int size) const {
    const double inv = 1.0 / static_cast<double>(size);
    if (order_.is_shannon()) {
      double h = 0.0;
      for (std::size_t b = 0; b < bins_; ++b) {
        if (counts[b] == 0) continue;
        const double p = counts[b] * inv;
        h -= p * log_in_base(p, base_);
      }
      return detail::non_negative(h);
    }
    double sum = 0.0;
    for (std::size_t b = 0; b < bins_; ++b) {
      if (counts[b] == 0) continue;
      sum += std::pow(counts[b] * inv, order_.alpha());
    }
    return detail::non_negative(log_in_base(sum, base_) / (1.0 - order_.alpha()));
  }

  std::size_t n_;
  std::size_t dim_;
  std::size_t bins_;
  EntropyOrder order_;
  LogBase base_;
  std::vector<int> binned_;
};

/// Objective for a single partition of the dataset.
inline double partition_entropy(const Dataset& ds, const Partition& p,
                                const EntropyObjectiveConfig& cfg) {
  validate_partition(p, ds.size(), cfg.min_cluster_size);
  return PartitionObjective(ds, cfg).evaluate(p);
}

/// Move one uniformly chosen row to a different uniformly chosen cluster,
/// rejecting donors that would fall below the size floor (up to 100 draws).
/// Returns the input unchanged when no legal move exists.
inline Partition mutate(const Partition& p, Rng& rng, int min_cluster_size) {
  if (p.k < 2 || p.assignment.empty()) return p;
  const auto sizes = cluster_sizes(p);
  bool movable = false;
  for (int s : sizes) {
    if (s > min_cluster_size) {
      movable = true;
      break;
    }
  }
  if (!movable) return p;
  for (int attempt = 0; attempt < 100; ++attempt) {
    const std::size_t i = rng.index(p.assignment.size());
    const int from = p.assignment[i];
    if (sizes[static_cast<std::size_t>(from)] <= min_cluster_size) continue;
    const auto offset = static_cast<int>(rng.index(static_cast<std::size_t>(p.k - 1)));
    const int to = offset >= from ? offset + 1 : offset;
    Partition out = p;
    out.assignment[i] = to;
    return out;
  }
  return p;
}

namespace detail {

inline Partition random_valid_partition(Rng& rng, std::size_t n, int k, int min_cluster_size) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.index(i + 1)]);
  }
  Partition p;
  p.k = k;
  p.assignment.assign(n, 0);
  // seat the floor first, then scatter the rest
  std::size_t pos = 0;
  for (int c = 0; c < k; ++c) {
    for (int s = 0; s < min_cluster_size; ++s) {
      p.assignment[perm[pos++]] = c;
    }
  }
  for (; pos < n; ++pos) {
    p.assignment[perm[pos]] = static_cast<int>(rng.index(static_cast<std::size_t>(k)));
  }
  return p;
}

// Greedy variant: relocate the row with the highest information content
// under its own cluster into the cluster where it would be least
// surprising, respecting the donor size floor.
inline Partition guided_move(const PartitionObjective& objective, const Partition& p,
                             int min_cluster_size) {
  const std::size_t n = p.assignment.size();
  const std::size_t dim = objective.dim();
  const std::size_t bins = objective.bins();
  const auto k = static_cast<std::size_t>(p.k);

  std::vector<std::vector<int>> counts(k, std::vector<int>(dim * bins, 0));
  std::vector<int> sizes(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<std::size_t>(p.assignment[i]);
    ++sizes[c];
    for (std::size_t d = 0; d < dim; ++d) {
      ++counts[c][d * bins + static_cast<std::size_t>(objective.binned_value(i, d))];
    }
  }

  std::size_t donor_row = n;
  double worst_info = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<std::size_t>(p.assignment[i]);
    if (sizes[c] <= min_cluster_size) continue;
    const double info = objective.row_info_content(counts[c], sizes[c], i, true);
    if (info > worst_info) {
      worst_info = info;
      donor_row = i;
    }
  }
  if (donor_row == n) return p;

  const int from = p.assignment[donor_row];
  int best_cluster = from;
  double best_info = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < k; ++c) {
    if (static_cast<int>(c) == from) continue;
    const double info =
        objective.row_info_content(counts[c], sizes[c], donor_row, false);
    if (info < best_info) {
      best_info = info;
      best_cluster = static_cast<int>(c);
    }
  }
  if (best_cluster == from) return p;
  Partition out = p;
  out.assignment[donor_row] = best_cluster;
  return out;
}

}  // namespace detail

struct GenerationRecord {
  int generation = 0;
  double best_objective = 0.0;
};

struct SelfOrgResult {
  Partition best;
  double objective = 0.0;
  std::vector<GenerationRecord> trace;  // best-so-far per generation, non-increasing
};

/// Elitist (mu+lambda) tournament GA over valid partitions: every
/// generation breeds one mutated child per population slot and keeps the
/// best `population` of parents plus children.
inline SelfOrgResult entropic_self_organize(const Dataset& ds, int k,
                                            const EntropyObjectiveConfig& obj,
                                            const GaConfig& ga) {
  ds.validate();
  validate_objective_config(obj);
  validate_ga_config(ga);
  if (k < 1) throw std::invalid_argument("selforg: k must be positive");
  const std::size_t n = ds.size();
  if (n < static_cast<std::size_t>(k) * static_cast<std::size_t>(obj.min_cluster_size)) {
    throw InfeasibleError("selforg: fewer rows than k * min_cluster_size");
  }

  const PartitionObjective objective(ds, obj);
  Rng rng(ga.seed);
  const auto pop_size = static_cast<std::size_t>(ga.population);

  std::vector<Partition> population;
  std::vector<double> scores;
  population.reserve(pop_size * 2);
  scores.reserve(pop_size * 2);
  for (std::size_t i = 0; i < pop_size; ++i) {
    population.push_back(detail::random_valid_partition(rng, n, k, obj.min_cluster_size));
    scores.push_back(objective.evaluate(population.back()));
  }

  std::size_t best_index = 0;
  for (std::size_t i = 1; i < pop_size; ++i) {
    if (scores[i] < scores[best_index]) best_index = i;
  }
  Partition best = population[best_index];
  double best_score = scores[best_index];

  SelfOrgResult result;
  result.trace.push_back({0, best_score});

  for (int gen = 1; gen <= ga.iterations; ++gen) {
    const std::size_t parents = population.size();
    for (std::size_t child = 0; child < pop_size; ++child) {
      std::size_t winner = rng.index(parents);
      for (int round = 1; round < ga.tournament_size; ++round) {
        const std::size_t challenger = rng.index(parents);
        if (scores[challenger] < scores[winner]) winner = challenger;
      }
      Partition offspring = population[winner];
      for (int move = 0; move < ga.mutation_moves_per_child; ++move) {
        if (ga.guided_mutation && rng.u01() < 0.5) {
          offspring = detail::guided_move(objective, offspring, obj.min_cluster_size);
        } else {
          offspring = mutate(offspring, rng, obj.min_cluster_size);
        }
      }
      scores.push_back(objective.evaluate(offspring));
      population.push_back(std::move(offspring));
    }

    // survivor selection: stable order keeps parents ahead of equal children
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    std::vector<Partition> next_population;
    std::vector<double> next_scores;
    next_population.reserve(pop_size * 2);
    next_scores.reserve(pop_size * 2);
    for (std::size_t i = 0; i < pop_size; ++i) {
      next_population.push_back(std::move(population[order[i]]));
      next_scores.push_back(scores[order[i]]);
    }
    population = std::move(next_population);
    scores = std::move(next_scores);

    if (scores[0] < best_score) {
      best_score = scores[0];
      best = population[0];
    }
    result.trace.push_back({gen, best_score});
  }

  result.best = std::move(best);
  result.objective = best_score;
  return result;
}

struct BruteForceResult {
  Partition partition;
  double objective = 0.0;
};

/// Exhaustive minimum over all valid assignments; guarded to k^n <= 2^22.
inline BruteForceResult brute_force_min(const Dataset& ds, int k,
                                        const EntropyObjectiveConfig& obj) {
  ds.validate();
  validate_objective_config(obj);
  if (k < 1) throw std::invalid_argument("brute force: k must be positive");
  const std::size_t n = ds.size();
  if (n < static_cast<std::size_t>(k) * static_cast<std::size_t>(obj.min_cluster_size)) {
    throw InfeasibleError("brute force: fewer rows than k * min_cluster_size");
  }
  constexpr double kGuard = 4194304.0;  // 2^22
  if (std::pow(static_cast<double>(k), static_cast<double>(n)) > kGuard) {
    throw std::invalid_argument("brute force: instance too large (k^n exceeds 2^22)");
  }

  const PartitionObjective objective(ds, obj);
  Partition current;
  current.k = k;
  current.assignment.assign(n, 0);
  BruteForceResult best;
  best.objective = std::numeric_limits<double>::infinity();

  std::vector<int> sizes(static_cast<std::size_t>(k), 0);
  while (true) {
    std::fill(sizes.begin(), sizes.end(), 0);
    for (int c : current.assignment) ++sizes[static_cast<std::size_t>(c)];
    bool valid = true;
    for (int s : sizes) {
      if (s < obj.min_cluster_size) {
        valid = false;
        break;
      }
    }
    if (valid) {
      const double score = objective.evaluate(current);
      if (score < best.objective) {
        best.objective = score;
        best.partition = current;
      }
    }
    // odometer increment over base-k digits
    std::size_t pos = 0;
    while (pos < n && ++current.assignment[pos] == k) {
      current.assignment[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return best;
}

inline void write_assignments_csv(const Partition& p, std::ostream& out) {
  out << "row_index,cluster\n";
  for (std::size_t i = 0; i < p.assignment.size(); ++i) {
    out << i << ',' << p.assignment[i] << "\n";
  }
}

inline void write_assignments_csv(const Partition& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_assignments_csv(p, out);
}

inline void write_cluster_trace_csv(const std::vector<GenerationRecord>& trace,
                                    std::ostream& out) {
  out << "generation,best_objective\n";
  char buf[64];
  for (const auto& rec : trace) {
    std::snprintf(buf, sizeof(buf), "%.17g", rec.best_objective);
    out << rec.generation << ',' << buf << "\n";
  }
}

inline void write_cluster_trace_csv(const std::vector<GenerationRecord>& trace,
                                    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_cluster_trace_csv(trace, out);
}

}  // namespace entrokit
