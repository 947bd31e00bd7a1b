#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "entrokit/entropy.hpp"
#include "entrokit/rng.hpp"

namespace entrokit {

enum class SurfaceId { s1, s2 };

struct Bounds {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
};

inline Bounds default_bounds(SurfaceId id) {
  // s2's envelope decays on scale 10, so it gets the wider box
  return id == SurfaceId::s1 ? Bounds{-2.0, 2.0, -2.0, 2.0}
                             : Bounds{-10.0, 10.0, -10.0, 10.0};
}

/// Terrain height in [0, 1]: a radial exponential bump, or the same
/// envelope modulated by perpendicular sine/cosine waves.
inline double surface_eval(SurfaceId id, double x, double y) {
  constexpr double kHalfPi = 1.5707963267948966;
  if (id == SurfaceId::s1) {
    return std::exp(-(x * x + y * y));
  }
  return 0.25 * std::exp(-((x / 10.0) * (x / 10.0) + (y / 10.0) * (y / 10.0))) *
         (std::cos(kHalfPi * y) + std::sin(kHalfPi * x) + 2.0);
}

/// Analytic terrain restricted to a rectangle; construction samples a grid
/// and rejects bounds on which z would leave [0, 1].
class Surface {
 public:
  Surface(SurfaceId id, Bounds bounds) : id_(id), bounds_(bounds) {
    if (!(bounds_.x_min < bounds_.x_max) || !(bounds_.y_min < bounds_.y_max)) {
      throw std::invalid_argument("surface: degenerate bounds");
    }
    constexpr int kGrid = 64;
    for (int i = 0; i <= kGrid; ++i) {
      for (int j = 0; j <= kGrid; ++j) {
        const double x = bounds_.x_min + (bounds_.x_max - bounds_.x_min) * i / kGrid;
        const double y = bounds_.y_min + (bounds_.y_max - bounds_.y_min) * j / kGrid;
        const double z = surface_eval(id_, x, y);
        if (!(z >= 0.0 && z <= 1.0)) {
          throw std::invalid_argument("surface: z leaves [0, 1] on these bounds");
        }
      }
    }
  }

  explicit Surface(SurfaceId id) : Surface(id, default_bounds(id)) {}

  SurfaceId id() const { return id_; }
  const Bounds& bounds() const { return bounds_; }

  double clamp_x(double x) const { return std::min(std::max(x, bounds_.x_min), bounds_.x_max); }
  double clamp_y(double y) const { return std::min(std::max(y, bounds_.y_min), bounds_.y_max); }

 private:
  SurfaceId id_;
  Bounds bounds_;
};

inline double surface_eval(const Surface& s, double x, double y) {
  return surface_eval(s.id(), x, y);
}

/// Wandering agent: position, step sizes, and the histogram of every z it
/// has recorded (total equals the step counter).
struct AgentState {
  double x = 0.0;
  double y = 0.0;
  double eps_x = 0.05;
  double eps_y = 0.05;
  Histogram histogram;
  std::uint64_t t = 0;

  AgentState(double x0, double y0, double ex, double ey, std::size_t bins)
      : x(x0), y(y0), eps_x(ex), eps_y(ey), histogram(Histogram::equal_bins(0.0, 1.0, bins)) {}
};

struct Move {
  double dx = 0.0;
  double dy = 0.0;
};

/// The eight compass displacements {-eps,0,+eps}^2 minus the null move,
/// each clamped so the destination stays inside the bounds.
inline std::array<Move, 8> candidate_moves(const AgentState& a, const Surface& s) {
  std::array<Move, 8> moves;
  std::size_t idx = 0;
  const double steps_x[] = {-a.eps_x, 0.0, a.eps_x};
  const double steps_y[] = {-a.eps_y, 0.0, a.eps_y};
  for (double dx : steps_x) {
    for (double dy : steps_y) {
      if (dx == 0.0 && dy == 0.0) continue;
      moves[idx].dx = s.clamp_x(a.x + dx) - a.x;
      moves[idx].dy = s.clamp_y(a.y + dy) - a.y;
      ++idx;
    }
  }
  return moves;
}

namespace detail {

inline void apply_move(AgentState& a, const Surface& s, const Move& m) {
  a.x = s.clamp_x(a.x + m.dx);
  a.y = s.clamp_y(a.y + m.dy);
  a.histogram.record(surface_eval(s, a.x, a.y));
  ++a.t;
}

// Histogram entropy (at the given order) after hypothetically recording z.
inline double score_with(const Histogram& h, double z, const EntropyOrder& order) {
  Histogram copy = h;
  copy.record(z);
  return order.evaluate(distribution_from_histogram(copy), LogBase::two);
}

}  // namespace detail

/// Greedy entropy-gain move: score every candidate by the histogram entropy
/// it would produce, go to a maximizer (ties broken uniformly at random),
/// and record the realized z.
inline AgentState entropy_gain_step(const AgentState& a, const Surface& s,
                                    const EntropyOrder& order, Rng& rng) {
  const auto moves = candidate_moves(a, s);
  std::array<double, 8> scores;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const double z = surface_eval(s, s.clamp_x(a.x + moves[i].dx), s.clamp_y(a.y + moves[i].dy));
    scores[i] = detail::score_with(a.histogram, z, order);
  }
  double best = scores[0];
  for (double v : scores) best = std::max(best, v);
  std::array<std::size_t, 8> ties{};
  std::size_t tie_count = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] == best) ties[tie_count++] = i;
  }
  const std::size_t pick = tie_count == 1 ? ties[0] : ties[rng.index(tie_count)];
  AgentState next = a;
  detail::apply_move(next, s, moves[pick]);
  return next;
}

/// Baseline: one of the eight candidates uniformly at random.
inline AgentState random_walk_step(const AgentState& a, const Surface& s, Rng& rng) {
  const auto moves = candidate_moves(a, s);
  AgentState next = a;
  detail::apply_move(next, s, moves[rng.index(moves.size())]);
  return next;
}

struct ExploreConfig {
  SurfaceId surface = SurfaceId::s1;
  Bounds bounds = default_bounds(SurfaceId::s1);
  double start_x = 0.0;
  double start_y = 0.0;
  double eps_x = 0.05;
  double eps_y = 0.05;
  int bins = 10;
  EntropyOrder order = EntropyOrder::renyi(2.0);
  std::uint64_t warmup_steps = 1000;
  std::uint64_t total_steps = 100000;
  std::uint64_t seed = 0;
};

inline ExploreConfig default_explore_config(SurfaceId id) {
  ExploreConfig cfg;
  cfg.surface = id;
  cfg.bounds = default_bounds(id);
  cfg.start_x = 0.5 * (cfg.bounds.x_min + cfg.bounds.x_max);
  cfg.start_y = 0.5 * (cfg.bounds.y_min + cfg.bounds.y_max);
  return cfg;
}

struct ExploreTraceRow {
  std::uint64_t t = 0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double entropy = 0.0;  // Shannon bits of the histogram so far
};

struct ExploreResult {
  std::vector<ExploreTraceRow> trace;  // one row per step plus the t=0 start
  Histogram histogram;
  std::vector<double> distribution;  // histogram normalized at the end
};

/// Random-walk warmup followed by greedy entropy-gain steps; the trace
/// records position, height and histogram entropy at every t.
inline ExploreResult run_exploration(const ExploreConfig& cfg) {
  if (cfg.bins < 2) throw std::invalid_argument("explore: bins must be >= 2");
  if (!(cfg.eps_x > 0.0) || !(cfg.eps_y > 0.0)) {
    throw std::invalid_argument("explore: epsilon must be positive");
  }
  if (cfg.total_steps < 1) throw std::invalid_argument("explore: total_steps must be positive");
  if (cfg.warmup_steps > cfg.total_steps) {
    throw std::invalid_argument("explore: warmup cannot exceed total steps");
  }
  const Surface surface(cfg.surface, cfg.bounds);
  if (cfg.start_x < cfg.bounds.x_min || cfg.start_x > cfg.bounds.x_max ||
      cfg.start_y < cfg.bounds.y_min || cfg.start_y > cfg.bounds.y_max) {
    throw std::invalid_argument("explore: start position outside bounds");
  }

  AgentState agent(cfg.start_x, cfg.start_y, cfg.eps_x, cfg.eps_y,
                   static_cast<std::size_t>(cfg.bins));
  Rng rng(cfg.seed);

  auto entropy_bits = [](const Histogram& h) {
    if (h.total() == 0) return 0.0;
    return shannon_entropy(distribution_from_histogram(h), LogBase::two);
  };

  ExploreResult result{.trace = {}, .histogram = agent.histogram, .distribution = {}};
  result.trace.push_back(
      {0, agent.x, agent.y, surface_eval(surface, agent.x, agent.y), 0.0});

  for (std::uint64_t t = 1; t <= cfg.total_steps; ++t) {
    agent = (t <= cfg.warmup_steps) ? random_walk_step(agent, surface, rng)
                                    : entropy_gain_step(agent, surface, cfg.order, rng);
    result.trace.push_back({agent.t, agent.x, agent.y,
                            surface_eval(surface, agent.x, agent.y),
                            entropy_bits(agent.histogram)});
  }

  result.histogram = agent.histogram;
  result.distribution = distribution_from_histogram(agent.histogram).probs();
  return result;
}

inline void write_explore_trace_csv(const std::vector<ExploreTraceRow>& trace,
                                    std::ostream& out) {
  out << "t,x,y,z,entropy\n";
  char buf[64];
  for (const auto& row : trace) {
    out << row.t;
    const double cols[] = {row.x, row.y, row.z, row.entropy};
    for (double v : cols) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << ',' << buf;
    }
    out << "\n";
  }
}

inline void write_explore_trace_csv(const std::vector<ExploreTraceRow>& trace,
                                    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_explore_trace_csv(trace, out);
}

inline nlohmann::json histogram_json(const ExploreResult& result) {
  return nlohmann::json{{"edges", result.histogram.edges()},
                        {"counts", result.histogram.counts()},
                        {"distribution", result.distribution}};
}

inline void write_histogram_json(const ExploreResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << histogram_json(result).dump(2) << "\n";
}

}  // namespace entrokit
