#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "entrokit/entropy.hpp"
#include "entrokit/rng.hpp"

using namespace entrokit;

namespace {

DiscreteDistribution dist(std::vector<double> p) {
  return DiscreteDistribution(std::move(p));
}

// Random strictly positive distribution of the given length.
DiscreteDistribution random_dist(Rng& rng, std::size_t len) {
  std::vector<double> p(len);
  double sum = 0.0;
  for (auto& v : p) {
    v = rng.u01_positive();
    sum += v;
  }
  for (auto& v : p) v /= sum;
  return DiscreteDistribution(std::move(p));
}

}  // namespace

TEST_CASE("info content of certainty and fair splits") {
  CHECK(info_content(1.0, LogBase::two) == 0.0);
  CHECK_THAT(info_content(0.5, LogBase::two), Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(info_content(0.25, LogBase::two), Catch::Matchers::WithinAbs(2.0, 1e-12));
  CHECK_THAT(info_content(0.1, LogBase::ten), Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("info content rejects invalid probabilities") {
  CHECK_THROWS_AS(info_content(0.0, LogBase::two), std::domain_error);
  CHECK_THROWS_AS(info_content(-0.5, LogBase::two), std::domain_error);
  CHECK_THROWS_AS(info_content(1.5, LogBase::two), std::domain_error);
}

TEST_CASE("distribution invariants are enforced") {
  CHECK_THROWS_AS(dist({}), std::invalid_argument);
  CHECK_THROWS_AS(dist({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(dist({1.2, -0.2}), std::invalid_argument);
  CHECK_NOTHROW(dist({0.5, 0.5 + 5e-10}));  // inside the 1e-9 sum tolerance
}

TEST_CASE("shannon entropy on pinned cases") {
  CHECK_THAT(shannon_entropy(dist({0.5, 0.5}), LogBase::two),
             Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK(shannon_entropy(dist({1.0}), LogBase::two) == 0.0);
  // 0.5*1 + 0.25*2 + 0.25*2 by direct evaluation
  CHECK_THAT(shannon_entropy(dist({0.5, 0.25, 0.25}), LogBase::two),
             Catch::Matchers::WithinAbs(1.5, 1e-12));
  CHECK_THAT(shannon_entropy(dist({0.5, 0.5}), LogBase::e),
             Catch::Matchers::WithinAbs(std::log(2.0), 1e-12));
}

TEST_CASE("renyi entropy on pinned cases") {
  CHECK_THAT(renyi_entropy(DiscreteDistribution::uniform(4), 2.0, LogBase::two),
             Catch::Matchers::WithinAbs(2.0, 1e-12));
  CHECK(renyi_entropy(dist({1.0}), 2.0, LogBase::two) == 0.0);
  // -log2(0.5^2 + 0.25^2 + 0.25^2) = -log2(0.375)
  CHECK_THAT(renyi_entropy(dist({0.5, 0.25, 0.25}), 2.0, LogBase::two),
             Catch::Matchers::WithinAbs(1.4150374992788437, 1e-12));
  // order 0 counts the support
  CHECK_THAT(renyi_entropy(dist({0.5, 0.25, 0.25}), 0.0, LogBase::two),
             Catch::Matchers::WithinAbs(std::log2(3.0), 1e-12));
}

TEST_CASE("renyi order domain") {
  const auto d = dist({0.5, 0.5});
  CHECK_THROWS_AS(renyi_entropy(d, 1.0, LogBase::two), std::domain_error);
  CHECK_THROWS_AS(renyi_entropy(d, -0.5, LogBase::two), std::domain_error);
  CHECK_THROWS_AS(renyi_entropy_pnorm(d, 0.0, LogBase::two), std::domain_error);
  CHECK_THROWS_AS(renyi_entropy_pnorm(d, 1.0, LogBase::two), std::domain_error);
}

TEST_CASE("pnorm route matches the definition") {
  CHECK_THAT(renyi_entropy_pnorm(DiscreteDistribution::uniform(4), 2.0, LogBase::two),
             Catch::Matchers::WithinAbs(2.0, 1e-12));
  CHECK(renyi_entropy_pnorm(dist({1.0}), 0.5, LogBase::two) == 0.0);
  const auto d = dist({0.5, 0.25, 0.25});
  CHECK_THAT(renyi_entropy_pnorm(d, 0.5, LogBase::two),
             Catch::Matchers::WithinAbs(renyi_entropy(d, 0.5, LogBase::two), 1e-12));
}

TEST_CASE("pnorm identity holds on random distributions") {
  Rng rng(2024);
  const double alphas[] = {0.25, 0.5, 2.0, 3.0, 10.0};
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = random_dist(rng, 2 + rng.index(15));
    for (double a : alphas) {
      const double lhs = renyi_entropy(d, a, LogBase::two);
      const double rhs = renyi_entropy_pnorm(d, a, LogBase::two);
      REQUIRE_THAT(lhs, Catch::Matchers::WithinAbs(rhs, 1e-10));
    }
  }
}

TEST_CASE("renyi approaches shannon near order one") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = random_dist(rng, 2 + rng.index(15));
    const double h = shannon_entropy(d, LogBase::two);
    CHECK_THAT(renyi_entropy(d, 1.0 + 1e-3, LogBase::two), Catch::Matchers::WithinAbs(h, 5e-3));
    CHECK_THAT(renyi_entropy(d, 1.0 - 1e-3, LogBase::two), Catch::Matchers::WithinAbs(h, 5e-3));
  }
}

TEST_CASE("shannon entropy is bounded by log N, equality iff uniform") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.index(15);
    const auto d = random_dist(rng, n);
    const double h = shannon_entropy(d, LogBase::two);
    CHECK(h >= 0.0);
    CHECK(h <= std::log2(static_cast<double>(n)) + 1e-12);
  }
  CHECK_THAT(shannon_entropy(DiscreteDistribution::uniform(8), LogBase::two),
             Catch::Matchers::WithinAbs(3.0, 1e-9));
  // any visible tilt pulls strictly below the bound
  CHECK(shannon_entropy(dist({0.3, 0.2, 0.25, 0.25}), LogBase::two) < 2.0 - 1e-4);
}

TEST_CASE("renyi entropy is non-increasing in the order") {
  Rng rng(13);
  const double alphas[] = {0.25, 0.5, 2.0, 3.0, 10.0};
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = random_dist(rng, 2 + rng.index(15));
    double prev = renyi_entropy(d, alphas[0], LogBase::two);
    for (std::size_t i = 1; i < std::size(alphas); ++i) {
      const double cur = renyi_entropy(d, alphas[i], LogBase::two);
      CHECK(prev >= cur - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("thermodynamic entropy equals k_b times nats") {
  CHECK(thermodynamic_entropy(dist({1.0})) == 0.0);
  CHECK_THAT(thermodynamic_entropy(dist({0.5, 0.5})),
             Catch::Matchers::WithinAbs(kBoltzmann * std::log(2.0), 1e-30));
  CHECK_THAT(thermodynamic_entropy(DiscreteDistribution::uniform(4)),
             Catch::Matchers::WithinAbs(kBoltzmann * std::log(4.0), 1e-30));
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = random_dist(rng, 2 + rng.index(15));
    CHECK_THAT(thermodynamic_entropy(d),
               Catch::Matchers::WithinAbs(kBoltzmann * shannon_entropy(d, LogBase::e), 1e-30));
  }
}

TEST_CASE("normalized entropy averages per-distribution entropies") {
  std::vector<DiscreteDistribution> both = {DiscreteDistribution::uniform(2),
                                            DiscreteDistribution::uniform(2)};
  CHECK_THAT(normalized_entropy(both, LogBase::two), Catch::Matchers::WithinAbs(1.0, 1e-12));

  std::vector<DiscreteDistribution> degenerate(3, dist({1.0}));
  CHECK(normalized_entropy(degenerate, LogBase::two) == 0.0);

  std::vector<DiscreteDistribution> mixed = {DiscreteDistribution::uniform(2), dist({1.0})};
  CHECK_THAT(normalized_entropy(mixed, LogBase::two), Catch::Matchers::WithinAbs(0.5, 1e-12));

  CHECK_THROWS_AS(normalized_entropy(std::span<const DiscreteDistribution>{}, LogBase::two),
                  std::invalid_argument);
}

TEST_CASE("histogram validation and binning") {
  CHECK_THROWS_AS(Histogram({1.0, 1.0}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(Histogram({0.0, 1.0}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Histogram({0.5}, {}), std::invalid_argument);

  auto h = Histogram::equal_bins(0.0, 1.0, 4);
  CHECK(h.bin_index(0.0) == 0);
  CHECK(h.bin_index(0.25) == 1);
  CHECK(h.bin_index(0.999) == 3);
  CHECK(h.bin_index(1.0) == 3);   // top edge folds into the last bin
  CHECK(h.bin_index(-5.0) == 0);  // clamped
  CHECK(h.bin_index(7.0) == 3);
  h.record(0.1);
  h.record(0.1);
  h.record(0.6);
  CHECK(h.total() == 3);
  CHECK(h.counts()[0] == 2);
  CHECK(h.counts()[2] == 1);
}

TEST_CASE("distribution from histogram") {
  auto probs_of = [](std::vector<std::uint64_t> counts) {
    const auto bins = counts.size();
    Histogram h(Histogram::equal_bins(0.0, 1.0, bins).edges(), std::move(counts));
    return distribution_from_histogram(h).probs();
  };
  CHECK(probs_of({2, 2}) == std::vector<double>{0.5, 0.5});
  CHECK(probs_of({4, 0, 0, 0}) == std::vector<double>{1.0, 0.0, 0.0, 0.0});
  CHECK(probs_of({1, 2, 1}) == std::vector<double>{0.25, 0.5, 0.25});
  CHECK_THROWS_AS(probs_of({0, 0, 0}), std::invalid_argument);
}

TEST_CASE("histogram distributions always normalize") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto h = Histogram::equal_bins(0.0, 1.0, 2 + rng.index(12));
    const int draws = 1 + static_cast<int>(rng.index(200));
    for (int i = 0; i < draws; ++i) h.record(rng.u01());
    const auto d = distribution_from_histogram(h);
    double sum = 0.0;
    for (double p : d.probs()) sum += p;
    CHECK_THAT(sum, Catch::Matchers::WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("entropy order selector") {
  const auto d = dist({0.5, 0.25, 0.25});
  CHECK(EntropyOrder::shannon().evaluate(d, LogBase::two) ==
        shannon_entropy(d, LogBase::two));
  CHECK(EntropyOrder::renyi(2.0).evaluate(d, LogBase::two) ==
        renyi_entropy(d, 2.0, LogBase::two));
  CHECK_THROWS_AS(EntropyOrder::renyi(1.0), std::domain_error);
}
