#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "spartan/distributions.hpp"
#include "spartan/kde.hpp"
#include "spartan/select.hpp"

namespace spartan {

enum class SelectorKind { spartan, uniform, identity };

struct MseEstimate {
  double mse = 0.0;
  double std_error = 0.0;
};

// Monte-Carlo pointwise mean squared error of the subsample density estimator
// at query z: independent (sample, selection) replicates, each scored as
// (p_hat(z) - p(z))^2. Replicates own derived substreams, so the estimate is
// independent of evaluation order.
inline MseEstimate pointwise_mse(const DistributionSpec& spec, SelectorKind selector,
                                 std::span<const double> z, std::size_t n,
                                 std::size_t r, const BandwidthRule& rule,
                                 std::size_t replicates, RngStream& rng,
                                 const SpartanConfig& config = {}) {
  if (replicates < 2) throw UsageError("pointwise_mse: replicates >= 2");
  if (z.size() != spec.dim()) throw UsageError("pointwise_mse: query dimension mismatch");

  Matrix query(1, z.size());
  for (std::size_t j = 0; j < z.size(); ++j) query(0, j) = z[j];
  const double p_true = density(spec, query)[0];

  long double sum = 0.0L, sum_sq = 0.0L;
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    RngStream data_rng = rng.substream(2 * rep);
    RngStream select_rng = rng.substream(2 * rep + 1);
    const Matrix sample_matrix = sample(spec, n, data_rng);

    std::vector<int> indices;
    switch (selector) {
      case SelectorKind::spartan:
        indices = spartan(sample_matrix, r, config, select_rng).indices;
        break;
      case SelectorKind::uniform:
        indices = uniform_select(n, r, select_rng);
        break;
      case SelectorKind::identity:
        indices.resize(n);
        for (std::size_t i = 0; i < n; ++i) indices[i] = static_cast<int>(i);
        break;
    }

    Matrix subsample(indices.size(), spec.dim());
    for (std::size_t i = 0; i < indices.size(); ++i)
      for (std::size_t j = 0; j < spec.dim(); ++j)
        subsample(i, j) = sample_matrix(indices[i], j);

    const SymMatrix sigma_hat = empirical_covariance(sample_matrix);
    const SymMatrix h = bandwidth(rule, indices.size(), spec.dim(), sigma_hat);
    const KdeModel model(std::move(subsample), h);
    const double err = model.eval_one(z) - p_true;
    const double sq = err * err;
    sum += sq;
    sum_sq += sq * sq;
  }
  const double reps = static_cast<double>(replicates);
  const double mean = static_cast<double>(sum) / reps;
  const double var = std::max(0.0, static_cast<double>(sum_sq) / reps - mean * mean);
  return {mean, std::sqrt(var / (reps - 1.0))};
}

}  // namespace spartan
