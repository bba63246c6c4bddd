#include "attrikit/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace attrikit {
namespace {

// Metric distance from x to the axis-aligned box [lo, hi]; zero when x is
// inside. Accumulated the same way the point metric is, so the bound never
// exceeds the distance to any point in the box.
double box_distance(std::span<const double> x, const std::vector<double>& lo,
                    const std::vector<double>& hi, const Metric& metric) {
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double e = 0.0;
    if (x[j] < lo[j]) {
      e = lo[j] - x[j];
    } else if (x[j] > hi[j]) {
      e = x[j] - hi[j];
    }
    switch (metric.kind) {
      case MetricKind::kManhattan:
        acc += e;
        break;
      case MetricKind::kEuclidean:
        acc += e * e;
        break;
      case MetricKind::kMinkowski:
        acc += std::pow(e, metric.p);
        break;
    }
  }
  switch (metric.kind) {
    case MetricKind::kManhattan:
      return acc;
    case MetricKind::kEuclidean:
      return std::sqrt(acc);
    case MetricKind::kMinkowski:
      return std::pow(acc, 1.0 / metric.p);
  }
  return acc;
}

}  // namespace

KdTree::KdTree(const Matrix& points, std::size_t leaf_capacity)
    : leaf_capacity_(leaf_capacity == 0 ? 1 : leaf_capacity) {
  if (points.rows() == 0) {
    throw std::invalid_argument("KdTree: empty point set");
  }
  if (points.cols() == 0) {
    throw std::invalid_argument("KdTree: points need at least one dimension");
  }
  dims_ = points.cols();
  order_.resize(points.rows());
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(2 * (points.rows() / leaf_capacity_ + 1));
  root_ = build(points, 0, points.rows());
}

int KdTree::build(const Matrix& points, std::size_t begin, std::size_t end) {
  Node node;
  node.begin = begin;
  node.end = end;
  node.box_lo.assign(dims_, std::numeric_limits<double>::infinity());
  node.box_hi.assign(dims_, -std::numeric_limits<double>::infinity());
  for (std::size_t i = begin; i < end; ++i) {
    auto row = points.row(order_[i]);
    for (std::size_t j = 0; j < dims_; ++j) {
      node.box_lo[j] = std::min(node.box_lo[j], row[j]);
      node.box_hi[j] = std::max(node.box_hi[j], row[j]);
    }
  }

  std::size_t split_dim = 0;
  double spread = -1.0;
  for (std::size_t j = 0; j < dims_; ++j) {
    const double s = node.box_hi[j] - node.box_lo[j];
    if (s > spread) {
      spread = s;
      split_dim = j;
    }
  }

  const std::size_t count = end - begin;
  if (count <= leaf_capacity_ || spread <= 0.0) {
    // Zero spread means every point is identical; keep them in one leaf.
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(node));
    return id;
  }

  node.split_dim = static_cast<int>(split_dim);
  std::sort(order_.begin() + static_cast<std::ptrdiff_t>(begin),
            order_.begin() + static_cast<std::ptrdiff_t>(end),
            [&](std::size_t a, std::size_t b) {
              const double va = points(a, split_dim);
              const double vb = points(b, split_dim);
              return va < vb || (va == vb && a < b);
            });
  const std::size_t mid = begin + (count - 1) / 2;  // lower median
  node.split_value = points(order_[mid], split_dim);

  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(std::move(node));
  const int left = build(points, begin, mid + 1);
  const int right = build(points, mid + 1, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

std::vector<Neighbor> KdTree::query(const Matrix& points, std::span<const double> x,
                                    std::size_t k, const Metric& metric) const {
  if (points.rows() != order_.size() || points.cols() != dims_) {
    throw std::invalid_argument("KdTree::query: point set does not match the indexed set");
  }
  if (x.size() != dims_) {
    throw std::invalid_argument("KdTree::query: query dimension mismatch");
  }
  if (k == 0 || k > order_.size()) {
    throw std::invalid_argument("KdTree::query: k out of range (k=" + std::to_string(k) +
                                ", n=" + std::to_string(order_.size()) + ")");
  }

  CandidateHeap heap;
  search(points, x, k, metric, root_, heap);

  std::vector<Neighbor> result(heap.size());
  for (std::size_t i = heap.size(); i-- > 0;) {
    result[i] = {heap.top().second, heap.top().first};
    heap.pop();
  }
  return result;
}

void KdTree::search(const Matrix& points, std::span<const double> x, std::size_t k,
                    const Metric& metric, int node_id, CandidateHeap& heap) const {
  const Node& node = nodes_[static_cast<std::size_t>(node_id)];
  if (heap.size() == k &&
      box_distance(x, node.box_lo, node.box_hi, metric) > heap.top().first) {
    return;
  }
  if (node.leaf()) {
    for (std::size_t i = node.begin; i < node.end; ++i) {
      const std::size_t idx = order_[i];
      const Candidate cand{metric(x, points.row(idx)), idx};
      if (heap.size() < k) {
        heap.push(cand);
      } else if (cand < heap.top()) {
        heap.pop();
        heap.push(cand);
      }
    }
    return;
  }
  int near = node.left;
  int far = node.right;
  if (x[static_cast<std::size_t>(node.split_dim)] > node.split_value) {
    std::swap(near, far);
  }
  search(points, x, k, metric, near, heap);
  search(points, x, k, metric, far, heap);
}

}  // namespace attrikit
