#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entrokit/entropy.hpp"
#include "entrokit/rng.hpp"

namespace entrokit {

// Training stops once the loss drops below this.
inline constexpr double kConvergedLoss = 1e-6;

/// Row-stochastic table learner. Each input row carries a weight vector
/// that is normalized into a prediction distribution over the outputs by a
/// stabilized exponential map; updates descend the gradient of the mean
/// squared distance between prediction rows and their one-hot targets.
struct LearnerState {
  std::size_t num_inputs = 0;   // M
  std::size_t num_outputs = 0;  // N
  std::vector<double> weights;      // M x N, row-major
  std::vector<double> predictions;  // M x N, row-major; rows sum to 1
  std::vector<std::size_t> targets;  // M entries, each < N
  std::size_t t = 0;
  double rho = 0.0;  // base learning rate
};

namespace detail {

// Row-wise exp-then-normalize with max subtraction; keeps rows inside the
// simplex for any finite weights.
inline void refresh_predictions(LearnerState& s) {
  s.predictions.resize(s.weights.size());
  for (std::size_t i = 0; i < s.num_inputs; ++i) {
    const std::size_t off = i * s.num_outputs;
    double w_max = s.weights[off];
    for (std::size_t j = 1; j < s.num_outputs; ++j) {
      w_max = std::max(w_max, s.weights[off + j]);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < s.num_outputs; ++j) {
      const double e = std::exp(s.weights[off + j] - w_max);
      s.predictions[off + j] = e;
      sum += e;
    }
    for (std::size_t j = 0; j < s.num_outputs; ++j) {
      s.predictions[off + j] /= sum;
    }
  }
}

}  // namespace detail

inline LearnerState init_learner(std::size_t num_inputs, std::size_t num_outputs,
                                 const std::vector<std::size_t>& targets, double rho,
                                 std::uint64_t seed) {
  if (num_inputs == 0 || num_outputs == 0) {
    throw std::invalid_argument("learner: dimensions must be positive");
  }
  if (targets.size() != num_inputs) {
    throw std::invalid_argument("learner: one target per input required");
  }
  for (std::size_t t : targets) {
    if (t >= num_outputs) throw std::invalid_argument("learner: target out of range");
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("learner: rho must be positive and finite");
  }
  LearnerState s;
  s.num_inputs = num_inputs;
  s.num_outputs = num_outputs;
  s.targets = targets;
  s.rho = rho;
  s.weights.resize(num_inputs * num_outputs);
  Rng rng(seed);
  for (auto& w : s.weights) w = rng.uniform(-0.1, 0.1);
  detail::refresh_predictions(s);
  return s;
}

/// Mean squared distance between prediction rows and one-hot targets;
/// zero iff every row sits exactly on its target vertex.
inline double loss(const LearnerState& s) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.num_inputs; ++i) {
    const std::size_t off = i * s.num_outputs;
    for (std::size_t j = 0; j < s.num_outputs; ++j) {
      const double y = (j == s.targets[i]) ? 1.0 : 0.0;
      const double r = s.predictions[off + j] - y;
      total += r * r;
    }
  }
  return total / static_cast<double>(s.num_inputs);
}

/// Analytic gradient of loss with respect to the weights, through the
/// normalization map. For each row: (2/M) * p_k * (r_k - sum_j r_j p_j).
inline std::vector<double> loss_gradient(const LearnerState& s) {
  std::vector<double> grad(s.weights.size());
  const double scale = 2.0 / static_cast<double>(s.num_inputs);
  for (std::size_t i = 0; i < s.num_inputs; ++i) {
    const std::size_t off = i * s.num_outputs;
    double r_dot_p = 0.0;
    for (std::size_t j = 0; j < s.num_outputs; ++j) {
      const double y = (j == s.targets[i]) ? 1.0 : 0.0;
      r_dot_p += (s.predictions[off + j] - y) * s.predictions[off + j];
    }
    for (std::size_t k = 0; k < s.num_outputs; ++k) {
      const double y = (k == s.targets[i]) ? 1.0 : 0.0;
      const double r = s.predictions[off + k] - y;
      grad[off + k] = scale * s.predictions[off + k] * (r - r_dot_p);
    }
  }
  return grad;
}

struct StepOutcome {
  LearnerState state;
  double effective_rate;  // rate the accepted step actually used; 0 if none
};

/// One descent step with an expanding line search: start at the base rate,
/// double while the loss strictly improves (up to 60 doublings), halve up
/// to 20 times if the base rate overshoots. The accepted loss never
/// exceeds the previous one.
inline StepOutcome step_with_rate(const LearnerState& s) {
  const double base_loss = loss(s);
  const std::vector<double> grad = loss_gradient(s);
  for (double g : grad) {
    if (!std::isfinite(g)) throw std::runtime_error("learner step: non-finite gradient");
  }

  auto candidate = [&](double rate) {
    LearnerState c = s;
    for (std::size_t i = 0; i < c.weights.size(); ++i) {
      c.weights[i] -= rate * grad[i];
    }
    detail::refresh_predictions(c);
    return c;
  };

  double rate = s.rho;
  LearnerState accepted = candidate(rate);
  double accepted_loss = loss(accepted);

  if (accepted_loss <= base_loss) {
    for (int i = 0; i < 60; ++i) {
      const double next_rate = rate * 2.0;
      LearnerState next = candidate(next_rate);
      const double next_loss = loss(next);
      if (next_loss < accepted_loss) {
        accepted = std::move(next);
        accepted_loss = next_loss;
        rate = next_rate;
      } else {
        break;
      }
    }
  } else {
    bool found = false;
    for (int i = 0; i < 20 && !found; ++i) {
      rate *= 0.5;
      LearnerState c = candidate(rate);
      if (loss(c) <= base_loss) {
        accepted = std::move(c);
        found = true;
      }
    }
    if (!found) {
      accepted = s;
      rate = 0.0;
    }
  }
  accepted.t = s.t + 1;
  return {std::move(accepted), rate};
}

inline LearnerState step(const LearnerState& s) { return step_with_rate(s).state; }

/// Mean per-row entropy of the prediction table at the given order.
inline double mapping_entropy(const LearnerState& s, const EntropyOrder& order,
                              LogBase base = LogBase::two) {
  double sum = 0.0;
  for (std::size_t i = 0; i < s.num_inputs; ++i) {
    const auto begin = s.predictions.begin() + static_cast<std::ptrdiff_t>(i * s.num_outputs);
    DiscreteDistribution row(std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(s.num_outputs)));
    sum += order.evaluate(row, base);
  }
  return sum / static_cast<double>(s.num_inputs);
}

struct LearningTraceRow {
  std::size_t t = 0;
  double loss = 0.0;
  double distance = 0.0;  // the metric the update descends; equals loss here
  double entropy_shannon = 0.0;              // bits
  std::vector<double> entropy_renyi;         // one per configured order, bits
  double rate = 0.0;  // effective learning rate that produced this state
};

struct LearningTrace {
  std::vector<double> alphas;
  std::vector<LearningTraceRow> rows;
};

struct TrainResult {
  LearnerState state;
  LearningTrace trace;
};

/// Run steps until the loss converges below kConvergedLoss or max_iters is
/// reached; records loss, distance and mapping entropies at every t,
/// including t = 0.
inline TrainResult train(LearnerState state, std::size_t max_iters,
                         const std::vector<double>& entropy_alphas) {
  std::vector<EntropyOrder> orders;
  orders.reserve(entropy_alphas.size());
  for (double a : entropy_alphas) orders.push_back(EntropyOrder::renyi(a));

  LearningTrace trace;
  trace.alphas = entropy_alphas;
  auto record = [&](const LearnerState& st, double rate) {
    LearningTraceRow row;
    row.t = st.t;
    row.loss = loss(st);
    row.distance = row.loss;
    row.entropy_shannon = mapping_entropy(st, EntropyOrder::shannon());
    for (const auto& order : orders) {
      row.entropy_renyi.push_back(mapping_entropy(st, order));
    }
    row.rate = rate;
    trace.rows.push_back(std::move(row));
  };

  record(state, state.rho);
  for (std::size_t i = 0; i < max_iters; ++i) {
    if (loss(state) < kConvergedLoss) break;
    StepOutcome out = step_with_rate(state);
    state = std::move(out.state);
    record(state, out.effective_rate);
  }
  return {std::move(state), std::move(trace)};
}

inline void write_trace_csv(const LearningTrace& trace, std::ostream& out) {
  out << "t,loss,distance,entropy_shannon";
  char buf[64];
  for (double a : trace.alphas) {
    std::snprintf(buf, sizeof(buf), "%g", a);
    out << ",entropy_renyi_" << buf;
  }
  out << "\n";
  for (const auto& row : trace.rows) {
    out << row.t;
    const double cols[] = {row.loss, row.distance, row.entropy_shannon};
    for (double v : cols) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << ',' << buf;
    }
    for (double v : row.entropy_renyi) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << ',' << buf;
    }
    out << "\n";
  }
}

inline void write_trace_csv(const LearningTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_trace_csv(trace, out);
}

}  // namespace entrokit
