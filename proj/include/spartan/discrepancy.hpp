#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "spartan/matrix.hpp"
#include "spartan/rng.hpp"
#include "spartan/sobol.hpp"

namespace spartan {

inline constexpr std::size_t kExactDiscrepancyMaxDim = 3;
inline constexpr std::size_t kExactDiscrepancyMaxPoints = 512;

namespace detail {

struct DiscrepancyGrid {
  // Per dimension: sorted unique coordinate values with 1.0 appended.
  std::vector<std::vector<double>> levels;
  // Per point, per dimension: index of its coordinate in levels[dim].
  std::vector<std::vector<int>> ranks;
};

inline DiscrepancyGrid build_grid(const Matrix& pts) {
  const std::size_t n = pts.rows(), d = pts.cols();
  DiscrepancyGrid g;
  g.levels.resize(d);
  g.ranks.assign(n, std::vector<int>(d));
  for (std::size_t j = 0; j < d; ++j) {
    auto& lv = g.levels[j];
    lv.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = pts(i, j);
      if (v < 0.0 || v > 1.0)
        throw DataError("star discrepancy: coordinate outside [0,1]");
      lv.push_back(v);
    }
    std::sort(lv.begin(), lv.end());
    lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
    if (lv.empty() || lv.back() != 1.0) lv.push_back(1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto it = std::lower_bound(lv.begin(), lv.end(), pts(i, j));
      g.ranks[i][j] = static_cast<int>(it - lv.begin());
    }
  }
  return g;
}

// Local discrepancy at a box corner, evaluated with both the open-box and
// closed-box point counts (the sup is attained in one of the two limits).
inline double local_discrepancy(double volume, std::size_t open_count,
                                std::size_t closed_count, std::size_t n) {
  const double inv_n = 1.0 / static_cast<double>(n);
  return std::max(volume - static_cast<double>(open_count) * inv_n,
                  static_cast<double>(closed_count) * inv_n - volume);
}

inline double exact_d1(const Matrix& pts, const DiscrepancyGrid& g) {
  const std::size_t n = pts.rows();
  const auto& lv = g.levels[0];
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = pts(i, 0);
  std::sort(sorted.begin(), sorted.end());
  double best = 0.0;
  for (double a : lv) {
    const auto open = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), a) - sorted.begin());
    const auto closed = static_cast<std::size_t>(
        std::upper_bound(sorted.begin(), sorted.end(), a) - sorted.begin());
    best = std::max(best, local_discrepancy(a, open, closed, n));
  }
  return best;
}

// Sweep over x levels while maintaining y histograms of the points strictly
// below (open) and at-or-below (closed) the current x level.
inline double exact_d2_over(const std::vector<std::vector<int>>& ranks,
                            const std::vector<int>& subset,
                            const DiscrepancyGrid& g, std::size_t n,
                            int dim_x, int dim_y, double volume_scale) {
  const auto& lvx = g.levels[dim_x];
  const auto& lvy = g.levels[dim_y];
  std::vector<int> order(subset);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return ranks[a][dim_x] < ranks[b][dim_x];
  });
  std::vector<int> hist_open(lvy.size() + 1, 0), hist_closed(lvy.size() + 1, 0);
  std::vector<int> pref_open(lvy.size() + 1), pref_closed(lvy.size() + 1);
  std::size_t p_open = 0, p_closed = 0;
  double best = 0.0;
  for (std::size_t ix = 0; ix < lvx.size(); ++ix) {
    while (p_closed < order.size() &&
           ranks[order[p_closed]][dim_x] <= static_cast<int>(ix)) {
      ++hist_closed[ranks[order[p_closed]][dim_y]];
      ++p_closed;
    }
    while (p_open < order.size() &&
           ranks[order[p_open]][dim_x] < static_cast<int>(ix)) {
      ++hist_open[ranks[order[p_open]][dim_y]];
      ++p_open;
    }
    pref_open[0] = 0;
    pref_closed[0] = 0;
    for (std::size_t t = 0; t < lvy.size(); ++t) {
      pref_open[t + 1] = pref_open[t] + hist_open[t];
      pref_closed[t + 1] = pref_closed[t] + hist_closed[t];
    }
    for (std::size_t iy = 0; iy < lvy.size(); ++iy) {
      const double vol = volume_scale * lvx[ix] * lvy[iy];
      best = std::max(best, local_discrepancy(vol, pref_open[iy],
                                              pref_closed[iy + 1], n));
    }
  }
  return best;
}

// One-sided 2D pass over (y,z) corners for a fixed x layer. In open mode the
// subset holds the points strictly inside the x face and the pass maximizes
// volume - open_count/n; in closed mode it maximizes closed_count/n - volume.
inline double exact_d2_one_sided(const std::vector<std::vector<int>>& ranks,
                                 const std::vector<int>& subset,
                                 const DiscrepancyGrid& g, std::size_t n,
                                 int dim_y, int dim_z, double volume_scale,
                                 bool open_mode) {
  const auto& lvy = g.levels[dim_y];
  const auto& lvz = g.levels[dim_z];
  std::vector<int> order(subset);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return ranks[a][dim_y] < ranks[b][dim_y];
  });
  std::vector<int> hist(lvz.size() + 1, 0);
  std::vector<int> pref(lvz.size() + 1);
  std::size_t p = 0;
  const double inv_n = 1.0 / static_cast<double>(n);
  double best = 0.0;
  for (std::size_t iy = 0; iy < lvy.size(); ++iy) {
    while (p < order.size() &&
           (open_mode ? ranks[order[p]][dim_y] < static_cast<int>(iy)
                      : ranks[order[p]][dim_y] <= static_cast<int>(iy))) {
      ++hist[ranks[order[p]][dim_z]];
      ++p;
    }
    pref[0] = 0;
    for (std::size_t t = 0; t < lvz.size(); ++t) pref[t + 1] = pref[t] + hist[t];
    for (std::size_t iz = 0; iz < lvz.size(); ++iz) {
      const double vol = volume_scale * lvy[iy] * lvz[iz];
      const double dev = open_mode
                             ? vol - static_cast<double>(pref[iz]) * inv_n
                             : static_cast<double>(pref[iz + 1]) * inv_n - vol;
      best = std::max(best, dev);
    }
  }
  return best;
}

}  // namespace detail

// Exact star discrepancy by enumerating the critical corners of the
// coordinate grid (each coordinate list augmented by 1). Feasible only for
// d <= 3 and r <= 512; larger instances must use the estimator.
inline double star_discrepancy_exact(const Matrix& pts) {
  pts.validate("point set");
  const std::size_t n = pts.rows(), d = pts.cols();
  if (d > kExactDiscrepancyMaxDim || n > kExactDiscrepancyMaxPoints)
    throw UsageError(
        "star_discrepancy_exact: instance above the d<=3, r<=512 cap; "
        "use star_discrepancy_estimate");
  const auto grid = detail::build_grid(pts);
  if (d == 1) return detail::exact_d1(pts, grid);

  std::vector<int> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
  if (d == 2) return detail::exact_d2_over(grid.ranks, all, grid, n, 0, 1, 1.0);

  // d == 3: layer over x levels, solving a 2D subproblem per layer. The open
  // and closed subsets differ in the x constraint, so each gets its own pass.
  const auto& lvx = grid.levels[0];
  std::vector<int> order(all);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return grid.ranks[a][0] < grid.ranks[b][0];
  });
  double best = 0.0;
  std::size_t p_open = 0, p_closed = 0;
  std::vector<int> subset_open, subset_closed;
  for (std::size_t ix = 0; ix < lvx.size(); ++ix) {
    while (p_closed < order.size() &&
           grid.ranks[order[p_closed]][0] <= static_cast<int>(ix))
      subset_closed.push_back(order[p_closed++]);
    while (p_open < order.size() &&
           grid.ranks[order[p_open]][0] < static_cast<int>(ix))
      subset_open.push_back(order[p_open++]);
    best = std::max(best, detail::exact_d2_one_sided(grid.ranks, subset_open, grid,
                                                     n, 1, 2, lvx[ix], true));
    best = std::max(best, detail::exact_d2_one_sided(grid.ranks, subset_closed, grid,
                                                     n, 1, 2, lvx[ix], false));
  }
  return best;
}

// Lower-bound estimate: max local discrepancy over corners sampled from the
// points' coordinate grid. Nested draws from the same stream are monotone.
inline double star_discrepancy_estimate(const Matrix& pts, std::size_t n_corners,
                                        RngStream& rng) {
  pts.validate("point set");
  if (n_corners < 1) throw UsageError("star_discrepancy_estimate: n_corners >= 1");
  const std::size_t n = pts.rows(), d = pts.cols();
  const auto grid = detail::build_grid(pts);
  std::vector<double> corner(d);
  std::vector<int> corner_rank(d);
  double best = 0.0;
  for (std::size_t c = 0; c < n_corners; ++c) {
    double vol = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const auto pick = static_cast<std::size_t>(rng.below(grid.levels[j].size()));
      corner[j] = grid.levels[j][pick];
      corner_rank[j] = static_cast<int>(pick);
      vol *= corner[j];
    }
    std::size_t open = 0, closed = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool in_open = true, in_closed = true;
      for (std::size_t j = 0; j < d; ++j) {
        const int r = grid.ranks[i][j];
        if (r >= corner_rank[j]) in_open = false;
        if (r > corner_rank[j]) {
          in_closed = false;
          break;
        }
      }
      open += in_open;
      closed += in_closed;
    }
    best = std::max(best, detail::local_discrepancy(vol, open, closed, n));
  }
  return best;
}

inline double star_discrepancy_exact(const DesignPointSet& set) {
  return star_discrepancy_exact(set.points);
}

}  // namespace spartan
