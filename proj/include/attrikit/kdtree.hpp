#pragma once

#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include "attrikit/distance.hpp"
#include "attrikit/matrix.hpp"

namespace attrikit {

struct Neighbor {
  std::size_t index = 0;  // row in the indexed point set
  double distance = 0.0;

  bool operator==(const Neighbor&) const = default;
};

// Exact nearest-neighbor index over a fixed point set. Internal nodes split
// the dimension of maximum spread at the lower-median coordinate; leaves
// hold at most leaf_capacity points, except that a node whose points are all
// identical becomes a leaf regardless of size.
class KdTree {
 public:
  KdTree() = default;
  explicit KdTree(const Matrix& points, std::size_t leaf_capacity = 16);

  // The k nearest rows of `points` (the matrix the tree was built on) to x,
  // ascending by (distance, row index); a tie at the k-th place goes to the
  // smaller row index. A subtree is skipped only when the metric distance
  // from x to its bounding box exceeds the current k-th best distance, which
  // is a valid bound for every Minkowski order p >= 1.
  std::vector<Neighbor> query(const Matrix& points, std::span<const double> x,
                              std::size_t k, const Metric& metric) const;

  std::size_t size() const { return order_.size(); }
  std::size_t dims() const { return dims_; }
  std::size_t leaf_capacity() const { return leaf_capacity_; }
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    int left = -1;
    int right = -1;
    int split_dim = -1;  // -1 marks a leaf
    double split_value = 0.0;
    std::size_t begin = 0;  // range into order_
    std::size_t end = 0;
    std::vector<double> box_lo;
    std::vector<double> box_hi;

    bool leaf() const { return split_dim < 0; }
  };

  using Candidate = std::pair<double, std::size_t>;  // (distance, row index)
  using CandidateHeap = std::priority_queue<Candidate>;

  int build(const Matrix& points, std::size_t begin, std::size_t end);
  void search(const Matrix& points, std::span<const double> x, std::size_t k,
              const Metric& metric, int node_id, CandidateHeap& heap) const;

  std::size_t leaf_capacity_ = 16;
  std::size_t dims_ = 0;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace attrikit
