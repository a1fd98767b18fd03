#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spartan/kdtree.hpp"
#include "spartan/matrix.hpp"
#include "spartan/rng.hpp"
#include "spartan/sobol.hpp"
#include "spartan/transport.hpp"

namespace spartan {

enum class MatchPolicy { with_replacement, without_replacement };

struct TransportDiagnostics {
  double initial_cost = 0.0;
  double final_cost = 0.0;
  int iterations = 0;
};

struct SelectionResult {
  std::vector<int> indices;  // rows of the original sample, in design order
  std::string method;
  std::optional<DesignPointSet> design_used;
  std::optional<TransportDiagnostics> transport_diag;
};

struct DesignConfig {
  Scramble scramble = Scramble::none;
  std::uint64_t scramble_seed = 0;
  // Use a Sobol prefix (default) or random draws as the synthetic uniform
  // target of the transport step. The deterministic prefix gives the
  // transformed cloud lower discrepancy and the scores lower variance.
  bool sobol_target = true;
};

struct SpartanConfig {
  TransportConfig transport;
  DesignConfig design;
  MatchPolicy policy = MatchPolicy::without_replacement;
};

// Design matching: walk the design points in order and pick the nearest
// cloud point for each, optionally excluding already-used points.
inline std::vector<int> match_design(const Matrix& cloud, const DesignPointSet& design,
                                     MatchPolicy policy = MatchPolicy::without_replacement) {
  if (design.d != cloud.cols()) throw UsageError("match_design: dimension mismatch");
  if (policy == MatchPolicy::without_replacement && design.r > cloud.rows())
    throw UsageError("match_design: r exceeds cloud size under without-replacement");
  KdTree tree(cloud);
  std::vector<int> indices;
  indices.reserve(design.r);
  if (policy == MatchPolicy::with_replacement) {
    for (std::size_t i = 0; i < design.r; ++i)
      indices.push_back(tree.nearest(design.points.row(i)));
  } else {
    UsedMask mask = tree.make_mask();
    for (std::size_t i = 0; i < design.r; ++i) {
      const int idx = tree.nearest(design.points.row(i), &mask);
      tree.mark_used(mask, idx);
      indices.push_back(idx);
    }
  }
  return indices;
}

// Holds the frozen transformed cloud of a SPARTAN run and serves selections
// one Sobol point at a time. The k-th pick always equals the k-th index of
// the batch algorithm on the same inputs and seed.
class SequentialSelector {
 public:
  SequentialSelector(const Matrix& sample, const SpartanConfig& config, RngStream& rng)
      : config_(config) {
    sample.validate();
    n_ = sample.rows();
    const std::size_t d = sample.cols();

    Matrix synthetic(n_, d);
    if (config.design.sobol_target) {
      SobolSequence seq(d, config.design.scramble, config.design.scramble_seed);
      for (std::size_t i = 0; i < n_; ++i) {
        const auto p = seq.next();
        for (std::size_t j = 0; j < d; ++j) synthetic(i, j) = p[j];
      }
    } else {
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < d; ++j) synthetic(i, j) = rng.uniform01();
    }

    TransportMethod method = config.transport.method;
    if (method == TransportMethod::automatic)
      method = n_ <= kExactAssignmentMaxPoints ? TransportMethod::exact
                                               : TransportMethod::projection;
    TransportResult transport =
        method == TransportMethod::exact
            ? transform_exact(sample, synthetic)
            : transform_projection(sample, synthetic, config.transport, rng);
    diag_ = {transport.initial_cost, transport.final_cost, transport.iterations_run};
    method_ = method == TransportMethod::exact ? "spartan-exact" : "spartan-projection";

    tree_ = std::make_unique<KdTree>(transport.transformed);
    mask_ = tree_->make_mask();
    sobol_ = std::make_unique<SobolSequence>(d, config.design.scramble,
                                             config.design.scramble_seed);
  }

  std::size_t sample_size() const { return n_; }
  std::size_t picked() const { return picks_.size(); }
  const std::string& method_tag() const { return method_; }
  const TransportDiagnostics& diagnostics() const { return diag_; }
  const Matrix& transformed_cloud() const { return tree_->points(); }

  int next() {
    if (picks_.size() == n_) throw UsageError("SequentialSelector: cloud exhausted");
    const auto point = sobol_->next();
    const int idx = tree_->nearest(point, &mask_);
    tree_->mark_used(mask_, idx);
    picks_.push_back(idx);
    return idx;
  }

  const std::vector<int>& picks() const { return picks_; }

 private:
  SpartanConfig config_;
  std::size_t n_ = 0;
  std::unique_ptr<KdTree> tree_;
  std::unique_ptr<SobolSequence> sobol_;
  UsedMask mask_;
  std::vector<int> picks_;
  TransportDiagnostics diag_;
  std::string method_;
};

// SPARTAN: draw a synthetic uniform sample, transport the data onto it, match
// a Sobol design against the transformed cloud, return original-row indices.
inline SelectionResult spartan(const Matrix& sample, std::size_t r,
                               const SpartanConfig& config, RngStream& rng) {
  if (r < 1 || r > sample.rows()) throw UsageError("spartan: need 1 <= r <= n");
  SelectionResult res;
  if (config.policy == MatchPolicy::with_replacement) {
    // Fidelity mode: plain nearest-neighbor matching, duplicates allowed.
    SequentialSelector state(sample, config, rng);
    DesignPointSet design = sobol(r, sample.cols(), config.design.scramble,
                                  config.design.scramble_seed);
    res.indices = match_design(state.transformed_cloud(), design,
                               MatchPolicy::with_replacement);
    res.method = state.method_tag() + "-with-replacement";
    res.transport_diag = state.diagnostics();
    res.design_used = std::move(design);
    return res;
  }
  SequentialSelector state(sample, config, rng);
  for (std::size_t k = 0; k < r; ++k) state.next();
  res.indices = state.picks();
  res.method = state.method_tag();
  res.transport_diag = state.diagnostics();
  res.design_used = sobol(r, sample.cols(), config.design.scramble,
                          config.design.scramble_seed);
  return res;
}

// Simple random sample without replacement (partial Fisher-Yates; the first
// k picks of a size-r draw are themselves a size-k simple random sample).
inline std::vector<int> uniform_select(std::size_t n, std::size_t r, RngStream& rng) {
  if (r > n) throw UsageError("uniform_select: r exceeds n");
  if (r < 1) throw UsageError("uniform_select: r >= 1");
  std::vector<int> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(r);
  return pool;
}

namespace detail {

inline double euclidean(const Matrix& m, int a, int b) {
  return std::sqrt(squared_distance(m.row(a), m.row(b)));
}

// PAM-style k-medoids on the given candidate rows: k-means++ seeding on
// distances, then greedy best-swap sweeps capped at max_iter.
inline std::vector<int> pam(const Matrix& sample, const std::vector<int>& rows,
                            std::size_t r, int max_iter, RngStream& rng) {
  const std::size_t m = rows.size();
  std::vector<int> medoids;
  medoids.reserve(r);
  std::vector<char> is_medoid(m, 0);

  // Seeding: k-means++ over squared distances.
  {
    const auto first = static_cast<std::size_t>(rng.below(m));
    medoids.push_back(static_cast<int>(first));
    is_medoid[first] = 1;
    std::vector<double> mind2(m);
    for (std::size_t i = 0; i < m; ++i)
      mind2[i] = squared_distance(sample.row(rows[i]), sample.row(rows[first]));
    while (medoids.size() < r) {
      double total = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        if (!is_medoid[i]) total += mind2[i];
      std::size_t pick = m;
      if (total > 0.0) {
        double threshold = rng.uniform01() * total;
        for (std::size_t i = 0; i < m; ++i) {
          if (is_medoid[i]) continue;
          threshold -= mind2[i];
          if (threshold <= 0.0) {
            pick = i;
            break;
          }
        }
      }
      if (pick == m) {  // all remaining distances zero; take lowest unused
        for (std::size_t i = 0; i < m; ++i)
          if (!is_medoid[i]) {
            pick = i;
            break;
          }
      }
      medoids.push_back(static_cast<int>(pick));
      is_medoid[pick] = 1;
      for (std::size_t i = 0; i < m; ++i)
        mind2[i] = std::min(mind2[i],
                            squared_distance(sample.row(rows[i]), sample.row(rows[pick])));
    }
  }
  if (r == m) {
    std::vector<int> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = rows[i];
    return out;
  }

  // Swap phase (FastPAM-style delta evaluation, one applied swap per sweep).
  std::vector<double> d_near(m), d_second(m);
  std::vector<int> owner(m);
  auto recompute = [&]() {
    for (std::size_t i = 0; i < m; ++i) {
      double best = std::numeric_limits<double>::infinity();
      double second = best;
      int who = -1;
      for (std::size_t k = 0; k < medoids.size(); ++k) {
        const double dist = euclidean(sample, rows[i], rows[medoids[k]]);
        if (dist < best) {
          second = best;
          best = dist;
          who = static_cast<int>(k);
        } else if (dist < second) {
          second = dist;
        }
      }
      d_near[i] = best;
      d_second[i] = second;
      owner[i] = who;
    }
  };
  recompute();
  std::vector<double> delta(r);
  for (int sweep = 0; sweep < max_iter; ++sweep) {
    double best_gain = -1e-12;
    std::size_t best_candidate = m;
    int best_medoid = -1;
    for (std::size_t c = 0; c < m; ++c) {
      if (is_medoid[c]) continue;
      std::fill(delta.begin(), delta.end(), 0.0);
      double shared = 0.0;
      for (std::size_t o = 0; o < m; ++o) {
        if (o == c) {
          // c itself becomes a medoid: its cost drops to zero for every swap.
          shared -= d_near[o];
          continue;
        }
        const double dco = euclidean(sample, rows[c], rows[o]);
        const double g = dco < d_near[o] ? dco - d_near[o] : 0.0;
        shared += g;
        delta[owner[o]] += std::min(dco, d_second[o]) - d_near[o] - g;
      }
      for (std::size_t k = 0; k < r; ++k) {
        const double gain = -(shared + delta[k]);
        if (gain > best_gain) {
          best_gain = gain;
          best_candidate = c;
          best_medoid = static_cast<int>(k);
        }
      }
    }
    if (best_candidate == m) break;
    is_medoid[medoids[best_medoid]] = 0;
    medoids[best_medoid] = static_cast<int>(best_candidate);
    is_medoid[best_candidate] = 1;
    recompute();
  }
  std::vector<int> out(r);
  for (std::size_t k = 0; k < r; ++k) out[k] = rows[medoids[k]];
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline constexpr std::size_t kClaraThreshold = 20000;

// k-medoids baseline. Above kClaraThreshold rows a CLARA-style scheme runs
// PAM on a few random subsets and keeps the set with the best full objective.
inline std::vector<int> kmedoids_select(const Matrix& sample, std::size_t r,
                                        int max_iter, RngStream& rng) {
  sample.validate();
  const std::size_t n = sample.rows();
  if (r > n) throw UsageError("kmedoids_select: r exceeds n");
  if (r < 1) throw UsageError("kmedoids_select: r >= 1");
  if (n <= kClaraThreshold) {
    std::vector<int> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
    return detail::pam(sample, all, r, max_iter, rng);
  }
  const std::size_t subset_size = std::min(n, std::max<std::size_t>(40 + 2 * r, 1000));
  constexpr int kClaraDraws = 3;
  std::vector<int> best;
  double best_objective = std::numeric_limits<double>::infinity();
  for (int draw = 0; draw < kClaraDraws; ++draw) {
    auto subset = uniform_select(n, subset_size, rng);
    auto medoids = detail::pam(sample, subset, r, max_iter, rng);
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double mind = std::numeric_limits<double>::infinity();
      for (int mrow : medoids)
        mind = std::min(mind, std::sqrt(squared_distance(
                                  sample.row(i), sample.row(mrow))));
      objective += mind;
    }
    if (objective < best_objective) {
      best_objective = objective;
      best = std::move(medoids);
    }
  }
  return best;
}

}  // namespace spartan
