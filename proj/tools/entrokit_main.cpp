// Command-line front end for the entropy engines: direct entropy
// evaluation, table-learner training, entropic clustering, synthetic data
// generation, and surface exploration. Every subcommand that takes a seed
// writes bit-identical files for identical flags.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entrokit/dataio.hpp"
#include "entrokit/entropy.hpp"
#include "entrokit/explorer.hpp"
#include "entrokit/learning.hpp"
#include "entrokit/selforg.hpp"

namespace {

using namespace entrokit;

constexpr const char* kVersion = "entrokit 1.0.0";

// exit codes: 0 success, 2 usage or input error, 3 infeasible instance
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string token =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": malformed number '" + token + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

LogBase parse_base(const std::string& text) {
  if (text == "2") return LogBase::two;
  if (text == "e") return LogBase::e;
  if (text == "10") return LogBase::ten;
  throw std::invalid_argument("base must be one of 2, e, 10");
}

EntropyOrder parse_order(const std::string& text) {
  if (text == "shannon") return EntropyOrder::shannon();
  try {
    std::size_t used = 0;
    const double alpha = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return EntropyOrder::renyi(alpha);
  } catch (const std::domain_error&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("alpha must be 'shannon' or a number");
  }
}

// Decimal rendering with an explicit point, so "1" prints as "1.0".
std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  std::string s(buf);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
    s += ".0";
  }
  return s;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

int cmd_entropy(const std::string& probs_text, const std::optional<double>& alpha,
                const std::string& base_text) {
  const auto probs = parse_double_list(probs_text, "--probs");
  const DiscreteDistribution dist(probs);
  const LogBase base = parse_base(base_text);
  const double value =
      alpha ? renyi_entropy(dist, *alpha, base) : shannon_entropy(dist, base);
  std::cout << format_value(value) << "\n";
  return 0;
}

SyntheticSpec spec_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec: " + path);
  nlohmann::json j;
  in >> j;

  SyntheticSpec spec;
  if (!j.contains("clusters") || !j["clusters"].is_array()) {
    throw std::invalid_argument("spec: needs a 'clusters' array");
  }
  for (const auto& c : j["clusters"]) {
    GaussianBlob blob;
    blob.center = c.at("center").get<std::vector<double>>();
    blob.stddev = c.at("stddev").get<double>();
    blob.count = c.at("count").get<int>();
    spec.clusters.push_back(std::move(blob));
  }
  spec.noise_dims = j.value("noise_dims", 0);
  if (j.contains("noise_interval")) {
    const auto iv = j["noise_interval"].get<std::vector<double>>();
    if (iv.size() != 2) throw std::invalid_argument("spec: noise_interval needs [low, high]");
    spec.noise_low = iv[0];
    spec.noise_high = iv[1];
  }
  spec.seed = j.value("seed", std::uint64_t{1});
  return spec;
}

int cmd_generate(const std::string& spec_path, bool default300, int noise_dims,
                 const std::string& out_path) {
  if (default300 == !spec_path.empty()) {
    throw std::invalid_argument("generate: pass exactly one of --spec and --default300");
  }
  SyntheticSpec spec;
  if (default300) {
    spec = default300_spec(noise_dims);
  } else {
    spec = spec_from_json(spec_path);
    if (noise_dims > 0) spec.noise_dims = noise_dims;
  }
  const Dataset ds = generate_synthetic(spec);
  write_csv(ds, out_path);
  std::cout << "wrote " << ds.size() << " rows x " << ds.dim() << " features (+label) to "
            << out_path << "\n";
  return 0;
}

int cmd_cluster(const std::string& file, int k, int iterations, std::uint64_t seed, int bins,
                const std::string& alpha_text, std::optional<std::size_t> labels_col,
                bool guided, const std::string& out_prefix) {
  Timer timer;
  const Dataset ds = load_csv(file, false, labels_col);

  EntropyObjectiveConfig obj;
  obj.bins_per_dim = bins;
  obj.order = parse_order(alpha_text);

  GaConfig ga;
  ga.iterations = iterations;
  ga.seed = seed;
  ga.guided_mutation = guided;

  const auto result = entropic_self_organize(ds, k, obj, ga);
  write_assignments_csv(result.best, out_prefix + "_assignments.csv");
  write_cluster_trace_csv(result.trace, out_prefix + "_trace.csv");

  std::cout << "config: k=" << k << " iterations=" << iterations << " seed=" << seed
            << " bins=" << bins << " alpha=" << alpha_text << " guided=" << (guided ? 1 : 0)
            << "\n";
  std::cout << "final objective: " << format_value(result.objective) << "\n";
  std::cout << "iterations: " << iterations << "\n";
  std::cout << "duration: " << format_value(timer.seconds()) << " s\n";
  if (ds.has_labels()) {
    std::cout << "error rate: " << format_value(error_rate(result.best, ds.labels)) << "\n";
  }
  return 0;
}

std::vector<std::size_t> parse_targets(const std::string& text, std::size_t inputs,
                                       std::size_t outputs) {
  std::vector<std::size_t> targets;
  if (text == "identity") {
    if (inputs > outputs) {
      throw std::invalid_argument("learn: identity targets need outputs >= inputs");
    }
    for (std::size_t i = 0; i < inputs; ++i) targets.push_back(i);
    return targets;
  }
  for (double v : parse_double_list(text, "--targets")) {
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw std::invalid_argument("learn: targets must be non-negative integers");
    }
    targets.push_back(static_cast<std::size_t>(v));
  }
  return targets;
}

int cmd_learn(std::size_t inputs, std::size_t outputs, const std::string& targets_text,
              double rho, std::size_t iters, std::uint64_t seed, const std::string& out_path) {
  const auto targets = parse_targets(targets_text, inputs, outputs);
  auto state = init_learner(inputs, outputs, targets, rho, seed);
  auto [trained, trace] = train(std::move(state), iters, {0.5, 2.0});
  write_trace_csv(trace, out_path);

  std::cout << "config: inputs=" << inputs << " outputs=" << outputs << " targets="
            << targets_text << " rho=" << format_value(rho) << " seed=" << seed << "\n";
  std::cout << "final loss: " << format_value(loss(trained)) << "\n";
  std::cout << "final normalized entropy: "
            << format_value(mapping_entropy(trained, EntropyOrder::shannon())) << " bits\n";
  std::cout << "iterations used: " << trained.t << "\n";
  return 0;
}

int cmd_explore(int surface, std::uint64_t steps, std::uint64_t warmup, int bins,
                const std::string& alpha_text, const std::string& epsilon_text,
                const std::string& bounds_text, const std::string& policy,
                std::uint64_t seed, const std::string& out_prefix) {
  Timer timer;
  if (surface != 1 && surface != 2) throw std::invalid_argument("explore: surface must be 1 or 2");
  auto cfg = default_explore_config(surface == 1 ? SurfaceId::s1 : SurfaceId::s2);
  cfg.total_steps = steps;
  cfg.warmup_steps = warmup;
  cfg.bins = bins;
  cfg.order = parse_order(alpha_text);
  cfg.seed = seed;

  const auto eps = parse_double_list(epsilon_text, "--epsilon");
  if (eps.size() != 2) throw std::invalid_argument("explore: --epsilon needs ex,ey");
  cfg.eps_x = eps[0];
  cfg.eps_y = eps[1];

  if (!bounds_text.empty()) {
    const auto b = parse_double_list(bounds_text, "--bounds");
    if (b.size() != 4) throw std::invalid_argument("explore: --bounds needs x0,x1,y0,y1");
    cfg.bounds = {b[0], b[1], b[2], b[3]};
    cfg.start_x = 0.5 * (b[0] + b[1]);
    cfg.start_y = 0.5 * (b[2] + b[3]);
  }

  if (policy == "random") {
    cfg.warmup_steps = cfg.total_steps;
  } else if (policy != "entropy") {
    throw std::invalid_argument("explore: policy must be 'entropy' or 'random'");
  }

  const auto result = run_exploration(cfg);
  write_explore_trace_csv(result.trace, out_prefix + "_trace.csv");
  write_histogram_json(result, out_prefix + "_histogram.json");

  std::cout << "config: surface=" << surface << " steps=" << steps << " warmup="
            << cfg.warmup_steps << " bins=" << bins << " alpha=" << alpha_text << " policy="
            << policy << " seed=" << seed << "\n";
  std::cout << "final entropy: " << format_value(result.trace.back().entropy) << " bits\n";
  std::cout << "duration: " << format_value(timer.seconds()) << " s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy toolkit: entropy math, a convergent table learner, "
               "entropy-minimizing clustering, and entropy-maximizing exploration"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // entropy
  auto* entropy_cmd = app.add_subcommand("entropy", "evaluate entropy of a distribution");
  std::string probs_text;
  std::string base_text = "2";
  double alpha_value = 0.0;
  entropy_cmd->add_option("--probs", probs_text, "comma-separated probabilities summing to 1")
      ->required();
  auto* alpha_opt =
      entropy_cmd->add_option("--alpha", alpha_value, "Renyi order (omit for Shannon)");
  entropy_cmd->add_option("--base", base_text, "log base: 2, e or 10")
      ->default_str("2");

  // cluster
  auto* cluster_cmd = app.add_subcommand("cluster", "entropic self-organization of a CSV dataset");
  std::string cluster_file;
  int cluster_k = 0;
  int cluster_iterations = 10000;
  std::uint64_t cluster_seed = 0;
  int cluster_bins = 8;
  std::string cluster_alpha = "shannon";
  long long labels_col = -1;
  bool guided = false;
  std::string cluster_out = "cluster";
  cluster_cmd->add_option("-f,--file", cluster_file, "input CSV")->required();
  cluster_cmd->add_option("--k", cluster_k, "number of clusters")->required();
  cluster_cmd->add_option("--iterations", cluster_iterations, "GA generations")
      ->default_val(10000);
  cluster_cmd->add_option("--seed", cluster_seed, "RNG seed")->default_val(0);
  cluster_cmd->add_option("--bins", cluster_bins, "bins per dimension")->default_val(8);
  cluster_cmd->add_option("--alpha", cluster_alpha, "'shannon' or a Renyi order")
      ->default_str("shannon");
  cluster_cmd->add_option("--labels-col", labels_col, "label column index for error rate");
  cluster_cmd->add_flag("--guided-mutation", guided,
                        "mix in greedy information-content moves");
  cluster_cmd->add_option("--out", cluster_out, "output file prefix")->default_str("cluster");

  // generate
  auto* generate_cmd = app.add_subcommand("generate", "write a synthetic labeled dataset");
  std::string spec_path;
  bool default300 = false;
  int noise_dims = 0;
  std::string generate_out;
  generate_cmd->add_option("--spec", spec_path, "JSON spec of gaussian clusters");
  generate_cmd->add_flag("--default300", default300, "3 gaussians x 100 points in R^3, seed 1");
  generate_cmd->add_option("--noise-dims", noise_dims, "extra uniform [-1,1] columns")
      ->default_val(0);
  generate_cmd->add_option("--out", generate_out, "output CSV path")->required();

  // learn
  auto* learn_cmd = app.add_subcommand("learn", "train the table learner and dump its trace");
  std::size_t inputs = 0, outputs = 0;
  std::string targets_text = "identity";
  double rho = 0.5;
  std::size_t iters = 2000;
  std::uint64_t learn_seed = 0;
  std::string learn_out;
  learn_cmd->add_option("--inputs", inputs, "number of inputs (M)")->required();
  learn_cmd->add_option("--outputs", outputs, "number of outputs (N)")->required();
  learn_cmd->add_option("--targets", targets_text, "'identity' or comma-separated indices")
      ->default_str("identity");
  learn_cmd->add_option("--rho", rho, "base learning rate")->default_val(0.5);
  learn_cmd->add_option("--iters", iters, "maximum iterations")->default_val(2000);
  learn_cmd->add_option("--seed", learn_seed, "RNG seed")->default_val(0);
  learn_cmd->add_option("--out", learn_out, "trace CSV path")->required();

  // explore
  auto* explore_cmd = app.add_subcommand("explore", "entropy-maximizing surface exploration");
  int surface = 0;
  std::uint64_t steps = 0;
  std::uint64_t warmup = 1000;
  int explore_bins = 10;
  std::string explore_alpha = "2";
  std::string epsilon_text = "0.05,0.05";
  std::string bounds_text;
  std::string policy = "entropy";
  std::uint64_t explore_seed = 0;
  std::string explore_out;
  explore_cmd->add_option("--surface", surface, "surface id: 1 or 2")->required();
  explore_cmd->add_option("--steps", steps, "total steps")->required();
  explore_cmd->add_option("--warmup", warmup, "random-walk steps before the entropy policy")
      ->default_val(1000);
  explore_cmd->add_option("--bins", explore_bins, "histogram bins over z in [0,1]")
      ->default_val(10);
  explore_cmd->add_option("--alpha", explore_alpha, "'shannon' or a Renyi order for feedback")
      ->default_str("2");
  explore_cmd->add_option("--epsilon", epsilon_text, "step sizes ex,ey")->default_str("0.05,0.05");
  explore_cmd->add_option("--bounds", bounds_text, "x0,x1,y0,y1 (default depends on surface)");
  explore_cmd->add_option("--policy", policy, "'entropy' or 'random'")->default_str("entropy");
  explore_cmd->add_option("--seed", explore_seed, "RNG seed")->default_val(0);
  explore_cmd->add_option("--out", explore_out, "output file prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*entropy_cmd) {
      return cmd_entropy(probs_text,
                         alpha_opt->count() ? std::optional<double>(alpha_value) : std::nullopt,
                         base_text);
    }
    if (*cluster_cmd) {
      return cmd_cluster(cluster_file, cluster_k, cluster_iterations, cluster_seed, cluster_bins,
                         cluster_alpha,
                         labels_col >= 0 ? std::optional<std::size_t>(
                                               static_cast<std::size_t>(labels_col))
                                         : std::nullopt,
                         guided, cluster_out);
    }
    if (*generate_cmd) {
      return cmd_generate(spec_path, default300, noise_dims, generate_out);
    }
    if (*learn_cmd) {
      return cmd_learn(inputs, outputs, targets_text, rho, iters, learn_seed, learn_out);
    }
    if (*explore_cmd) {
      return cmd_explore(surface, steps, warmup, explore_bins, explore_alpha, epsilon_text,
                         bounds_text, policy, explore_seed, explore_out);
    }
  } catch (const entrokit::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
