#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace entrokit {

// Logarithm base selector; fixes the entropy unit (bits / nats / hartleys).
enum class LogBase { two, e, ten };

inline double log_in_base(double x, LogBase base) {
  switch (base) {
    case LogBase::two: return std::log2(x);
    case LogBase::e: return std::log(x);
    case LogBase::ten: return std::log10(x);
  }
  return std::log2(x);
}

// Probabilities below this are treated as exact zeros inside entropy sums,
// so near-underflow tails cannot inject log noise.
inline constexpr double kProbFloor = 1e-15;

// Exact SI value, joules per kelvin.
inline constexpr double kBoltzmann = 1.380649e-23;

inline constexpr double kDistributionSumTol = 1e-9;

namespace detail {
// Clamp rounding dust (including -0.0) to a clean +0.0.
inline double non_negative(double x) { return x > 0.0 ? x : 0.0; }
}  // namespace detail

/// Normalized probability vector: entries >= 0, summing to 1 within 1e-9.
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(std::vector<double> probs)
      : probs_(std::move(probs)) {
    if (probs_.empty()) {
      throw std::invalid_argument("distribution: needs at least one entry");
    }
    double sum = 0.0;
    for (double p : probs_) {
      if (!(p >= 0.0)) {
        throw std::invalid_argument("distribution: negative probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kDistributionSumTol) {
      throw std::invalid_argument("distribution: entries must sum to 1");
    }
  }

  static DiscreteDistribution uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("distribution: empty uniform");
    return DiscreteDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

/// Bin boundaries plus occupancy counts; edges strictly increasing,
/// counts.size() == edges.size() - 1.
class Histogram {
 public:
  Histogram(std::vector<double> edges, std::vector<std::uint64_t> counts)
      : edges_(std::move(edges)), counts_(std::move(counts)) {
    if (edges_.size() < 2) {
      throw std::invalid_argument("histogram: needs at least one bin");
    }
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (!(edges_[i] > edges_[i - 1])) {
        throw std::invalid_argument("histogram: edges must be strictly increasing");
      }
    }
    if (counts_.size() != edges_.size() - 1) {
      throw std::invalid_argument("histogram: counts length must be edge count - 1");
    }
  }

  static Histogram equal_bins(double lo, double hi, std::size_t bins) {
    if (bins == 0 || !(lo < hi)) {
      throw std::invalid_argument("histogram: bad equal-bin request");
    }
    std::vector<double> edges(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
      edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    }
    return Histogram(std::move(edges), std::vector<std::uint64_t>(bins, 0));
  }

  // Containing bin, clamped into [0, bin_count); values at or beyond the last
  // edge land in the last bin.
  std::size_t bin_index(double x) const {
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    const auto raw = static_cast<std::ptrdiff_t>(it - edges_.begin()) - 1;
    if (raw < 0) return 0;
    const auto i = static_cast<std::size_t>(raw);
    return i >= counts_.size() ? counts_.size() - 1 : i;
  }

  void record(double x) { ++counts_[bin_index(x)]; }

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto c : counts_) t += c;
    return t;
  }

  const std::vector<double>& edges() const { return edges_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::size_t bin_count() const { return counts_.size(); }

 private:
  std::vector<double> edges_;
  std::vector<std::uint64_t> counts_;
};

/// Surprise of a single outcome: -log(p). Zero exactly when p = 1.
inline double info_content(double p, LogBase base) {
  if (!(p > 0.0) || p > 1.0) {
    throw std::domain_error("info_content: probability must be in (0, 1]");
  }
  return detail::non_negative(-log_in_base(p, base));
}

/// -sum p*log(p), with 0*log(0) = 0. Result lies in [0, log N].
inline double shannon_entropy(const DiscreteDistribution& d, LogBase base) {
  double h = 0.0;
  for (double p : d.probs()) {
    if (p < kProbFloor) continue;
    h -= p * log_in_base(p, base);
  }
  return detail::non_negative(h);
}

/// Order-alpha entropy (1/(1-a))*log(sum p^a); requires a >= 0, a != 1.
/// Equals log N on the uniform distribution for every valid order.
inline double renyi_entropy(const DiscreteDistribution& d, double alpha, LogBase base) {
  if (!(alpha >= 0.0) || alpha == 1.0) {
    throw std::domain_error("renyi_entropy: order must satisfy alpha >= 0, alpha != 1");
  }
  double sum = 0.0;
  for (double p : d.probs()) {
    if (p < kProbFloor) continue;
    sum += std::pow(p, alpha);
  }
  return detail::non_negative(log_in_base(sum, base) / (1.0 - alpha));
}

/// Same quantity through the p-norm route (a/(1-a))*log(||p||_a);
/// requires a > 0, a != 1. Agrees with renyi_entropy to ~1e-10.
inline double renyi_entropy_pnorm(const DiscreteDistribution& d, double alpha, LogBase base) {
  if (!(alpha > 0.0) || alpha == 1.0) {
    throw std::domain_error("renyi_entropy_pnorm: order must satisfy alpha > 0, alpha != 1");
  }
  double sum = 0.0;
  for (double p : d.probs()) {
    if (p < kProbFloor) continue;
    sum += std::pow(p, alpha);
  }
  const double norm = std::pow(sum, 1.0 / alpha);
  return detail::non_negative(alpha / (1.0 - alpha) * log_in_base(norm, base));
}

/// -k_b * sum p*ln(p), in joules per kelvin.
inline double thermodynamic_entropy(const DiscreteDistribution& d) {
  return kBoltzmann * shannon_entropy(d, LogBase::e);
}

/// Mean per-distribution Shannon entropy, standardizing across cardinalities.
inline double normalized_entropy(std::span<const DiscreteDistribution> ds, LogBase base) {
  if (ds.empty()) {
    throw std::invalid_argument("normalized_entropy: empty distribution list");
  }
  double sum = 0.0;
  for (const auto& d : ds) sum += shannon_entropy(d, base);
  return sum / static_cast<double>(ds.size());
}

/// counts / total, valid only once something has been observed.
inline DiscreteDistribution distribution_from_histogram(const Histogram& h) {
  const std::uint64_t total = h.total();
  if (total == 0) {
    throw std::invalid_argument("distribution_from_histogram: no observations yet");
  }
  std::vector<double> probs(h.bin_count());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = static_cast<double>(h.counts()[i]) / static_cast<double>(total);
  }
  return DiscreteDistribution(std::move(probs));
}

// Entropy selector shared by the engines: Shannon or a fixed Renyi order.
class EntropyOrder {
 public:
  static EntropyOrder shannon() { return EntropyOrder(true, 1.0); }

  static EntropyOrder renyi(double alpha) {
    if (!(alpha >= 0.0) || alpha == 1.0) {
      throw std::domain_error("entropy order: alpha must satisfy alpha >= 0, alpha != 1");
    }
    return EntropyOrder(false, alpha);
  }

  bool is_shannon() const { return shannon_; }
  double alpha() const { return alpha_; }

  double evaluate(const DiscreteDistribution& d, LogBase base) const {
    return shannon_ ? shannon_entropy(d, base) : renyi_entropy(d, alpha_, base);
  }

 private:
  EntropyOrder(bool shannon, double alpha) : shannon_(shannon), alpha_(alpha) {}
  bool shannon_;
  double alpha_;
};

}  // namespace entrokit
