#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <vector>

#include "spartan/matrix.hpp"

namespace spartan {

class KdTree;

// Without-replacement bookkeeping for nearest-neighbor queries. Tracks which
// points are used plus per-node availability counts so exhausted subtrees are
// pruned. Single-owner: not safe to share across threads.
class UsedMask {
 public:
  UsedMask() = default;

  bool used(std::size_t index) const { return used_[index] != 0; }
  std::size_t used_count() const { return used_count_; }

 private:
  friend class KdTree;
  std::vector<char> used_;
  std::vector<int> available_;  // per tree node
  std::size_t used_count_ = 0;
};

// Balanced median-split kd-tree over a fixed point set. Queries return the
// nearest point in Euclidean distance, ties broken by lowest index, and match
// a linear scan exactly.
class KdTree {
 public:
  explicit KdTree(const Matrix& points) : points_(points) {
    points_.validate("kd-tree points");
    const std::size_t n = points_.rows();
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = static_cast<int>(i);
    nodes_.reserve(2 * n / kLeafSize + 2);
    build(0, n);
    pos_in_perm_.resize(n);
    for (std::size_t p = 0; p < n; ++p) pos_in_perm_[perm_[p]] = static_cast<int>(p);
  }

  std::size_t size() const { return points_.rows(); }
  std::size_t dim() const { return points_.cols(); }
  const Matrix& points() const { return points_; }

  UsedMask make_mask() const {
    UsedMask m;
    m.used_.assign(points_.rows(), 0);
    m.available_.resize(nodes_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k)
      m.available_[k] = nodes_[k].end - nodes_[k].begin;
    return m;
  }

  void mark_used(UsedMask& mask, std::size_t index) const {
    if (mask.used_[index]) return;
    mask.used_[index] = 1;
    ++mask.used_count_;
    const int pos = pos_in_perm_[index];
    int node = 0;
    for (;;) {
      --mask.available_[node];
      const Node& nd = nodes_[node];
      if (nd.left < 0) return;
      node = pos < nodes_[nd.left].end ? nd.left : nd.right;
    }
  }

  // Nearest non-excluded neighbor; throws when everything is excluded.
  int nearest(std::span<const double> query, const UsedMask* mask = nullptr) const {
    if (query.size() != points_.cols())
      throw UsageError("kd-tree query: dimension mismatch");
    if (mask && mask->used_count_ == points_.rows())
      throw UsageError("kd-tree query: all points excluded");
    Best best;
    search(0, query, mask, best);
    return best.index;
  }

 private:
  static constexpr int kLeafSize = 16;

  struct Node {
    int begin, end;    // slice of perm_
    int left = -1, right = -1;
    int split_dim = 0;
    double split_val = 0.0;
  };

  struct Best {
    double dist2 = std::numeric_limits<double>::infinity();
    int index = -1;
  };

  int build(std::size_t begin, std::size_t end) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({static_cast<int>(begin), static_cast<int>(end)});
    if (end - begin <= kLeafSize) return id;

    // Split on the dimension with the widest spread.
    const std::size_t d = points_.cols();
    int dim = 0;
    double spread = -1.0;
    for (std::size_t j = 0; j < d; ++j) {
      double lo = points_(perm_[begin], j), hi = lo;
      for (std::size_t p = begin + 1; p < end; ++p) {
        const double v = points_(perm_[p], j);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (hi - lo > spread) {
        spread = hi - lo;
        dim = static_cast<int>(j);
      }
    }
    const std::size_t mid = begin + (end - begin) / 2;
    std::sort(perm_.begin() + begin, perm_.begin() + end, [&](int a, int b) {
      const double va = points_(a, dim), vb = points_(b, dim);
      return va != vb ? va < vb : a < b;
    });
    // Read the split value before the recursive builds re-sort the slices.
    const double split_val = points_(perm_[mid], dim);
    const int id_left = build(begin, mid);
    const int id_right = build(mid, end);
    nodes_[id].left = id_left;
    nodes_[id].right = id_right;
    nodes_[id].split_dim = dim;
    nodes_[id].split_val = split_val;
    return id;
  }

  void search(int node, std::span<const double> q, const UsedMask* mask,
              Best& best) const {
    const Node& nd = nodes_[node];
    if (mask && mask->available_[node] == 0) return;
    if (nd.left < 0) {
      for (int p = nd.begin; p < nd.end; ++p) {
        const int idx = perm_[p];
        if (mask && mask->used_[idx]) continue;
        const double d2 = squared_distance(q, points_.row(idx));
        if (d2 < best.dist2 || (d2 == best.dist2 && idx < best.index))
          best = {d2, idx};
      }
      return;
    }
    const double delta = q[nd.split_dim] - nd.split_val;
    const int near = delta < 0.0 ? nd.left : nd.right;
    const int far = delta < 0.0 ? nd.right : nd.left;
    search(near, q, mask, best);
    // <= keeps equidistant candidates reachable so the lowest-index tie wins.
    if (delta * delta <= best.dist2) search(far, q, mask, best);
  }

  Matrix points_;
  std::vector<int> perm_;
  std::vector<int> pos_in_perm_;
  std::vector<Node> nodes_;
};

}  // namespace spartan
