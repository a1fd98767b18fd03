#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "spartan/matrix.hpp"
#include "spartan/rng.hpp"

namespace spartan {

inline constexpr std::size_t kExactAssignmentMaxPoints = 4096;

enum class TransportMethod { automatic, exact, projection };

struct TransportConfig {
  TransportMethod method = TransportMethod::automatic;
  int max_iterations = 48;
  double tolerance = 0.0;      // relative sliced-cost improvement; 0 = run all
  double step_damping = 0.3;   // in (0,1]
  int n_diagnostic_dirs = 32;
  bool clamp_output = true;

  void validate() const {
    if (max_iterations < 1) throw UsageError("TransportConfig: max_iterations >= 1");
    if (tolerance < 0.0) throw UsageError("TransportConfig: tolerance >= 0");
    if (!(step_damping > 0.0) || step_damping > 1.0)
      throw UsageError("TransportConfig: step_damping in (0,1]");
    if (n_diagnostic_dirs < 1) throw UsageError("TransportConfig: n_diagnostic_dirs >= 1");
  }
};

struct TransportResult {
  Matrix transformed;                          // n x d, clamped to [0,1]
  std::optional<std::vector<int>> pairing;     // present iff method == exact
  int iterations_run = 0;
  double initial_cost = 0.0;
  double final_cost = 0.0;
};

namespace detail {

inline std::vector<int> sorted_order(std::span<const double> v) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return v[a] != v[b] ? v[a] < v[b] : a < b;
  });
  return order;
}

// Mean squared sorted-difference cost between two 1D clouds.
inline double cost_1d(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s / static_cast<double>(a.size());
}

inline std::vector<double> random_unit_direction(std::size_t d, RngStream& rng) {
  std::vector<double> dir(d);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& v : dir) {
      v = rng.normal();
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& v : dir) v *= inv;
  return dir;
}

// Random orthogonal matrix: Gaussian entries, modified Gram-Schmidt columns.
inline Matrix random_orthogonal(std::size_t d, RngStream& rng) {
  for (;;) {
    Matrix q(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) q(i, j) = rng.normal();
    bool ok = true;
    for (std::size_t c = 0; c < d && ok; ++c) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        double dot = 0.0;
        for (std::size_t i = 0; i < d; ++i) dot += q(i, c) * q(i, prev);
        for (std::size_t i = 0; i < d; ++i) q(i, c) -= dot * q(i, prev);
      }
      double norm2 = 0.0;
      for (std::size_t i = 0; i < d; ++i) norm2 += q(i, c) * q(i, c);
      if (norm2 < 1e-24) {
        ok = false;
        break;
      }
      const double inv = 1.0 / std::sqrt(norm2);
      for (std::size_t i = 0; i < d; ++i) q(i, c) *= inv;
    }
    if (ok) return q;
  }
}

inline double sliced_cost_dirs(const Matrix& a, const Matrix& b,
                               const std::vector<std::vector<double>>& dirs) {
  const std::size_t n = a.rows(), d = a.cols();
  std::vector<double> pa(n), pb(n);
  double total = 0.0;
  for (const auto& dir : dirs) {
    for (std::size_t i = 0; i < n; ++i) {
      double sa = 0.0, sb = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        sa += a(i, j) * dir[j];
        sb += b(i, j) * dir[j];
      }
      pa[i] = sa;
      pb[i] = sb;
    }
    total += cost_1d(pa, pb);
  }
  return total / static_cast<double>(dirs.size());
}

}  // namespace detail

// 1D optimal pairing: the i-th smallest source value maps to the i-th
// smallest target value. Minimizes the squared-displacement sum.
inline std::vector<int> ot_pair_1d(std::span<const double> source,
                                   std::span<const double> target) {
  if (source.size() != target.size()) throw UsageError("ot_pair_1d: length mismatch");
  for (double v : source)
    if (!std::isfinite(v)) throw DataError("ot_pair_1d: non-finite source");
  for (double v : target)
    if (!std::isfinite(v)) throw DataError("ot_pair_1d: non-finite target");
  const auto src_order = detail::sorted_order(source);
  const auto tgt_order = detail::sorted_order(target);
  std::vector<int> sigma(source.size());
  for (std::size_t k = 0; k < source.size(); ++k)
    sigma[src_order[k]] = tgt_order[k];
  return sigma;
}

// Optimal assignment minimizing the total squared Euclidean cost, via the
// shortest-augmenting-path (Jonker-Volgenant) algorithm.
inline std::vector<int> assignment_exact(const Matrix& source, const Matrix& target) {
  if (source.rows() != target.rows() || source.cols() != target.cols())
    throw UsageError("assignment_exact: shape mismatch");
  source.validate("assignment source");
  target.validate("assignment target");
  const std::size_t n = source.rows();
  if (n > kExactAssignmentMaxPoints)
    throw UsageError(
        "assignment_exact: instance above the n<=4096 cap; use the projection "
        "transport method");

  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cost[i * n + j] = squared_distance(source.row(i), target.row(j));

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, -1);  // match[j] = row assigned to column j
  std::vector<int> way(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    // Column n acts as the virtual start of the augmenting path.
    match[n] = static_cast<int>(i);
    std::size_t j0 = n;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = kInf;
      std::size_t j1 = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 * n + j] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = static_cast<int>(j0);
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != -1);
    while (j0 != n) {
      const auto j1 = static_cast<std::size_t>(way[j0]);
      match[j0] = match[j1];
      j0 = j1;
    }
  }
  std::vector<int> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[match[j]] = static_cast<int>(j);
  return sigma;
}

// Monte-Carlo sliced squared-W2 diagnostic between equal-size clouds.
inline double sliced_cost(const Matrix& a, const Matrix& b, int n_dirs,
                          RngStream& rng) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw UsageError("sliced_cost: shape mismatch");
  if (n_dirs < 1) throw UsageError("sliced_cost: n_dirs >= 1");
  std::vector<std::vector<double>> dirs(n_dirs);
  for (auto& d : dirs) d = detail::random_unit_direction(a.cols(), rng);
  return detail::sliced_cost_dirs(a, b, dirs);
}

// Exact transport: assign each source point to a distinct target point with
// minimum total squared cost; transformed rows are the matched target rows.
inline TransportResult transform_exact(const Matrix& source, const Matrix& target) {
  const auto sigma = assignment_exact(source, target);
  const std::size_t n = source.rows(), d = source.cols();
  TransportResult res;
  res.transformed = Matrix(n, d);
  double identity_cost = 0.0, matched_cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j)
      res.transformed(i, j) = target(sigma[i], j);
    identity_cost += squared_distance(source.row(i), target.row(i));
    matched_cost += squared_distance(source.row(i), target.row(sigma[i]));
  }
  res.pairing = sigma;
  res.iterations_run = 1;
  res.initial_cost = identity_cost / static_cast<double>(n);
  res.final_cost = matched_cost / static_cast<double>(n);
  return res;
}

// Iterative distribution transfer: per iteration draw a random orthogonal
// basis, 1D-sort-match the clouds along each of its d axes, and step by
// step_damping times the matched-quantile gap. A fixed set of diagnostic
// directions scores each iterate; a worse iterate is rolled back to the best
// one seen and the walk continues with the next random basis. The iteration
// budget is deterministic (max_iterations) unless tolerance > 0, in which
// case the loop also stops once the relative improvement of the best
// diagnostic cost falls below tolerance. A data-independent budget keeps the
// run time a function of (n, d) alone.
inline TransportResult transform_projection(const Matrix& source, const Matrix& target,
                                            const TransportConfig& config,
                                            RngStream& rng) {
  if (source.rows() != target.rows() || source.cols() != target.cols())
    throw UsageError("transform_projection: shape mismatch");
  source.validate("projection source");
  target.validate("projection target");
  config.validate();
  const std::size_t n = source.rows(), d = source.cols();
  if (n < 2) throw UsageError("transform_projection: need n >= 2");

  std::vector<std::vector<double>> diag_dirs(config.n_diagnostic_dirs);
  for (auto& dir : diag_dirs) dir = detail::random_unit_direction(d, rng);

  Matrix work = source;
  TransportResult res;
  res.initial_cost = detail::sliced_cost_dirs(work, target, diag_dirs);
  double prev_cost = res.initial_cost;

  Matrix proj_w(n, d), proj_t(n, d), best = work;
  double best_cost = prev_cost;
  std::vector<double> col_w(n), col_t(n);
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    const Matrix rot = detail::random_orthogonal(d, rng);
    // Rotate both clouds, quantile-match each axis, rotate back. The axes are
    // orthogonal, so the d axis updates do not interact.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < d; ++c) {
        double sw = 0.0, st = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          sw += work(i, j) * rot(j, c);
          st += target(i, j) * rot(j, c);
        }
        proj_w(i, c) = sw;
        proj_t(i, c) = st;
      }
    for (std::size_t c = 0; c < d; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        col_w[i] = proj_w(i, c);
        col_t[i] = proj_t(i, c);
      }
      const auto ow = detail::sorted_order(col_w);
      auto ot = detail::sorted_order(col_t);
      for (std::size_t k = 0; k < n; ++k) {
        const int i = ow[k];
        proj_w(i, c) += config.step_damping * (col_t[ot[k]] - col_w[i]);
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (std::size_t c = 0; c < d; ++c) s += proj_w(i, c) * rot(j, c);
        work(i, j) = s;
      }

    const double cost = detail::sliced_cost_dirs(work, target, diag_dirs);
    if (cost < best_cost) {
      best = work;
      best_cost = cost;
      res.iterations_run = iter + 1;
    } else {
      work = best;  // roll back and retry from the best iterate
    }
    if (config.tolerance > 0.0) {
      const double improvement =
          prev_cost > 0.0 ? (prev_cost - best_cost) / prev_cost : 0.0;
      if (improvement < config.tolerance) break;
      prev_cost = best_cost;
    }
  }

  work = std::move(best);
  if (config.clamp_output)
    for (double& v : work.values()) v = std::clamp(v, 0.0, 1.0);
  res.final_cost = detail::sliced_cost_dirs(work, target, diag_dirs);
  res.transformed = std::move(work);
  return res;
}

}  // namespace spartan
