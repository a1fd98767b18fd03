#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "spartan/transport.hpp"

using namespace spartan;

namespace {

Matrix random_cloud(std::size_t n, std::size_t d, RngStream& rng, double scale = 1.0) {
  Matrix m(n, d);
  for (auto& v : m.values()) v = rng.uniform01() * scale;
  return m;
}

double pairing_cost(const Matrix& a, const Matrix& b, const std::vector<int>& sigma) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    s += squared_distance(a.row(i), b.row(sigma[i]));
  return s;
}

std::vector<std::vector<double>> cost_matrix(const Matrix& a, const Matrix& b) {
  std::vector<std::vector<double>> c(a.rows(), std::vector<double>(b.rows()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j)
      c[i][j] = squared_distance(a.row(i), b.row(j));
  return c;
}

}  // namespace

TEST_CASE("the munkres oracle agrees with exhaustive search on tiny instances") {
  RngStream rng(51);
  for (int instance = 0; instance < 30; ++instance) {
    const std::size_t n = 2 + rng.below(6);
    const auto c = cost_matrix(random_cloud(n, 2, rng), random_cloud(n, 2, rng));
    REQUIRE_THAT(oracle::munkres_min_cost(c),
                 Catch::Matchers::WithinAbs(oracle::brute_force_min_cost(c), 1e-10));
  }
}

TEST_CASE("rank matching achieves the hungarian optimum in one dimension") {
  RngStream rng(53);
  for (int instance = 0; instance < 50; ++instance) {
    const std::size_t n = 2 + rng.below(127);
    const Matrix src = random_cloud(n, 1, rng, 3.0);
    const Matrix tgt = random_cloud(n, 1, rng);
    std::vector<double> s(n), t(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = src(i, 0);
      t[i] = tgt(i, 0);
    }
    const auto sigma = ot_pair_1d(s, t);
    std::vector<char> hit(n, 0);
    for (int v : sigma) hit[v] = 1;  // a permutation
    REQUIRE(std::count(hit.begin(), hit.end(), 1) == static_cast<long>(n));
    REQUIRE_THAT(pairing_cost(src, tgt, sigma),
                 Catch::Matchers::WithinAbs(oracle::munkres_min_cost(cost_matrix(src, tgt)),
                                            1e-9));
  }
}

TEST_CASE("exact assignment achieves the hungarian optimum in higher dimension") {
  RngStream rng(59);
  for (int instance = 0; instance < 25; ++instance) {
    const std::size_t n = 2 + rng.below(40);
    const std::size_t d = 2 + rng.below(3);
    const Matrix src = random_cloud(n, d, rng, 2.0);
    const Matrix tgt = random_cloud(n, d, rng);
    const auto sigma = assignment_exact(src, tgt);
    REQUIRE_THAT(pairing_cost(src, tgt, sigma),
                 Catch::Matchers::WithinAbs(oracle::munkres_min_cost(cost_matrix(src, tgt)),
                                            1e-9));
  }
}

TEST_CASE("exact transport rows are the matched target rows") {
  RngStream rng(61);
  const Matrix src = random_cloud(50, 3, rng, 4.0);
  const Matrix tgt = random_cloud(50, 3, rng);
  const TransportResult res = transform_exact(src, tgt);
  REQUIRE(res.pairing.has_value());
  REQUIRE(res.final_cost <= res.initial_cost + 1e-12);
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      REQUIRE(res.transformed(i, j) == tgt((*res.pairing)[i], j));
}

TEST_CASE("exact assignment enforces its size cap") {
  REQUIRE_THROWS_WITH(assignment_exact(Matrix(4097, 1, 0.0), Matrix(4097, 1, 0.0)),
                      Catch::Matchers::ContainsSubstring("projection"));
}

TEST_CASE("projection transport reduces the diagnostic cost and clamps") {
  RngStream rng(67);
  const Matrix tgt = random_cloud(400, 3, rng);
  Matrix src(400, 3);
  for (auto& v : src.values()) v = rng.normal() * 2.0 + 1.0;
  TransportConfig cfg;
  cfg.method = TransportMethod::projection;
  const TransportResult res = transform_projection(src, tgt, cfg, rng);
  REQUIRE(res.final_cost <= res.initial_cost);
  REQUIRE(res.final_cost < 0.05 * res.initial_cost);
  for (double v : res.transformed.values()) {
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
  }
}

TEST_CASE("projection transport in one dimension reproduces rank matching") {
  RngStream rng(71);
  const std::size_t n = 200;
  Matrix src(n, 1), tgt(n, 1);
  for (auto& v : src.values()) v = rng.normal();
  for (auto& v : tgt.values()) v = rng.uniform01();
  TransportConfig cfg;
  cfg.max_iterations = 1;
  cfg.step_damping = 1.0;
  const TransportResult res = transform_projection(src, tgt, cfg, rng);
  // After one full-step 1D iteration each source point sits exactly on its
  // rank-matched target value.
  std::vector<double> s(n), t(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = src(i, 0);
    t[i] = tgt(i, 0);
  }
  const auto sigma = ot_pair_1d(s, t);
  for (std::size_t i = 0; i < n; ++i)
    REQUIRE_THAT(res.transformed(i, 0),
                 Catch::Matchers::WithinAbs(tgt(sigma[i], 0), 1e-12));
}

TEST_CASE("projection transport is deterministic under a fixed stream") {
  RngStream rng_data(73);
  const Matrix src = random_cloud(150, 2, rng_data, 3.0);
  const Matrix tgt = random_cloud(150, 2, rng_data);
  TransportConfig cfg;
  RngStream a(5, 1), b(5, 1);
  const auto ra = transform_projection(src, tgt, cfg, a);
  const auto rb = transform_projection(src, tgt, cfg, b);
  REQUIRE(ra.transformed == rb.transformed);
  REQUIRE(ra.final_cost == rb.final_cost);
}

TEST_CASE("sliced cost vanishes only for identical clouds") {
  RngStream rng(79);
  const Matrix a = random_cloud(100, 2, rng);
  RngStream r1(3), r2(3);
  REQUIRE(sliced_cost(a, a, 8, r1) == 0.0);
  Matrix b = a;
  b(0, 0) += 0.5;
  REQUIRE(sliced_cost(a, b, 8, r2) > 0.0);
}

TEST_CASE("configuration validation") {
  TransportConfig cfg;
  cfg.max_iterations = 0;
  REQUIRE_THROWS_AS(cfg.validate(), UsageError);
  cfg = {};
  cfg.step_damping = 1.5;
  REQUIRE_THROWS_AS(cfg.validate(), UsageError);
  cfg = {};
  cfg.tolerance = -1.0;
  REQUIRE_THROWS_AS(cfg.validate(), UsageError);
  REQUIRE_THROWS_AS(ot_pair_1d(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
                    UsageError);
}
