#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <set>
#include <vector>

#include "spartan/distributions.hpp"
#include "spartan/mse.hpp"
#include "spartan/select.hpp"

using namespace spartan;

namespace {
Matrix sample_d1(std::size_t n, std::size_t d, std::uint64_t seed) {
  RngStream rng(seed, 1);
  return sample(make_d1(d), n, rng);
}
}  // namespace

TEST_CASE("sequential picks equal batch prefixes") {
  const Matrix data = sample_d1(600, 2, 5);
  SpartanConfig cfg;
  cfg.transport.method = TransportMethod::projection;
  RngStream rng_batch(9, 2);
  const auto batch = spartan::spartan(data, 100, cfg, rng_batch).indices;

  RngStream rng_seq(9, 2);
  SequentialSelector seq(data, cfg, rng_seq);
  for (std::size_t k = 0; k < 100; ++k) {
    REQUIRE(seq.next() == batch[k]);
    REQUIRE(std::equal(seq.picks().begin(), seq.picks().end(), batch.begin()));
  }
}

TEST_CASE("spartan returns distinct valid indices without replacement") {
  const Matrix data = sample_d1(300, 3, 7);
  SpartanConfig cfg;
  RngStream rng(11, 0);
  const SelectionResult res = spartan::spartan(data, 64, cfg, rng);
  REQUIRE(res.indices.size() == 64);
  REQUIRE(res.method == "spartan-exact");
  std::set<int> unique(res.indices.begin(), res.indices.end());
  REQUIRE(unique.size() == 64);
  for (int i : res.indices) {
    REQUIRE(i >= 0);
    REQUIRE(i < 300);
  }
  REQUIRE(res.transport_diag.has_value());
  REQUIRE(res.transport_diag->final_cost <= res.transport_diag->initial_cost);
  REQUIRE(res.design_used.has_value());
  REQUIRE(res.design_used->r == 64);
}

TEST_CASE("automatic transport switches to projection above the cap") {
  const Matrix data = sample_d1(4200, 2, 13);
  SpartanConfig cfg;
  RngStream rng(3, 0);
  const SelectionResult res = spartan::spartan(data, 16, cfg, rng);
  REQUIRE(res.method == "spartan-projection");
}

TEST_CASE("spartan is deterministic under a fixed stream") {
  const Matrix data = sample_d1(500, 2, 17);
  SpartanConfig cfg;
  RngStream a(21, 4), b(21, 4);
  REQUIRE(spartan::spartan(data, 50, cfg, a).indices == spartan::spartan(data, 50, cfg, b).indices);
}

TEST_CASE("with-replacement mode may repeat and matches its design order") {
  // A cloud with a single tight cluster forces repeats.
  Matrix data(50, 2, 0.0);
  for (std::size_t i = 0; i < 50; ++i) {
    data(i, 0) = (i < 45) ? 10.0 + 0.001 * static_cast<double>(i) : 0.5;
    data(i, 1) = 0.5;
  }
  const DesignPointSet design = sobol(20, 2);
  const auto picks = match_design(data, design, MatchPolicy::with_replacement);
  REQUIRE(picks.size() == 20);
  std::set<int> unique(picks.begin(), picks.end());
  REQUIRE(unique.size() < picks.size());
  const auto distinct = match_design(data, design, MatchPolicy::without_replacement);
  REQUIRE(std::set<int>(distinct.begin(), distinct.end()).size() == 20);
}

TEST_CASE("spartan argument validation") {
  const Matrix data = sample_d1(30, 2, 19);
  SpartanConfig cfg;
  RngStream rng(1, 0);
  REQUIRE_THROWS_AS(spartan::spartan(data, 0, cfg, rng), UsageError);
  REQUIRE_THROWS_AS(spartan::spartan(data, 31, cfg, rng), UsageError);
}

TEST_CASE("uniform selection is a prefix-stable simple random sample") {
  RngStream a(31, 0), b(31, 0);
  const auto big = uniform_select(1000, 200, a);
  const auto small = uniform_select(1000, 50, b);
  REQUIRE(std::equal(small.begin(), small.end(), big.begin()));
  std::set<int> unique(big.begin(), big.end());
  REQUIRE(unique.size() == 200);
  RngStream c(31, 0);
  const auto all = uniform_select(10, 10, c);
  REQUIRE(std::set<int>(all.begin(), all.end()).size() == 10);
  RngStream d(1, 0);
  REQUIRE_THROWS_AS(uniform_select(5, 6, d), UsageError);
}

TEST_CASE("k-medoids recovers well-separated clusters") {
  // Three clusters of ten points around (0,0), (10,0), (0,10).
  RngStream noise(37, 0);
  Matrix data(30, 2);
  const double centers[3][2] = {{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}};
  for (std::size_t i = 0; i < 30; ++i) {
    data(i, 0) = centers[i / 10][0] + 0.3 * noise.normal();
    data(i, 1) = centers[i / 10][1] + 0.3 * noise.normal();
  }
  RngStream rng(41, 0);
  const auto medoids = kmedoids_select(data, 3, 50, rng);
  REQUIRE(medoids.size() == 3);
  REQUIRE(std::is_sorted(medoids.begin(), medoids.end()));
  std::set<int> clusters;
  for (int m : medoids) clusters.insert(m / 10);
  REQUIRE(clusters.size() == 3);
}

TEST_CASE("k-medoids beats random subsets on the clustering objective") {
  const Matrix data = sample_d1(200, 2, 43);
  auto objective = [&](const std::vector<int>& medoids) {
    double total = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int m : medoids)
        best = std::min(best, std::sqrt(squared_distance(data.row(i), data.row(m))));
      total += best;
    }
    return total;
  };
  RngStream rng(47, 0);
  const double pam_obj = objective(kmedoids_select(data, 8, 50, rng));
  for (int trial = 0; trial < 10; ++trial) {
    RngStream r = rng.substream(trial);
    REQUIRE(pam_obj <= objective(uniform_select(200, 8, r)) + 1e-12);
  }
}

TEST_CASE("pointwise mse is finite and favors larger subsamples") {
  const auto spec = make_d1(2);
  const std::vector<double> origin{0.0, 0.0};
  RngStream rng(53, 0);
  const auto small = pointwise_mse(spec, SelectorKind::uniform, origin, 400, 10,
                                   BandwidthRule::scott(), 40, rng);
  RngStream rng2(53, 0);
  const auto large = pointwise_mse(spec, SelectorKind::uniform, origin, 400, 200,
                                   BandwidthRule::scott(), 40, rng2);
  REQUIRE(small.mse > 0.0);
  REQUIRE(large.mse > 0.0);
  REQUIRE(large.mse < small.mse);
  REQUIRE(small.std_error > 0.0);
}
