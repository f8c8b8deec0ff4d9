#include "swarmsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swarmsim/rng.hpp"

namespace swarmsim {

PointSet generate_points(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("generate_points: n must be >= 1");
  PointSet ps;
  ps.seed = seed;
  ps.points.resize(n);
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    ps.points[i].x = rng.next_uniform();
    ps.points[i].y = rng.next_uniform();
    ps.points[i].z = rng.next_uniform();
  }
  return ps;
}

double distance(const Point& p, const Point& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  const double dz = p.z - q.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

namespace detail {

void knn_row(const PointSet& ps, std::size_t i, std::size_t k,
             std::vector<Neighbour>& scratch, std::vector<Neighbour>& out) {
  const std::size_t n = ps.n();
  scratch.clear();
  scratch.reserve(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    scratch.push_back({j, distance(ps.points[i], ps.points[j])});
  }
  // Order by (distance, index): equal distances resolve toward the lower
  // vertex index, which keeps degenerate fixtures reproducible.
  const auto cmp = [](const Neighbour& a, const Neighbour& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    return a.index < b.index;
  };
  if (k < scratch.size()) {
    std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end(), cmp);
    scratch.resize(k);
  }
  std::sort(scratch.begin(), scratch.end(), cmp);
  out.assign(scratch.begin(), scratch.end());
}

}  // namespace detail

NeighbourList knn(const PointSet& ps, std::size_t i, std::size_t k) {
  const std::size_t n = ps.n();
  if (i >= n) throw std::invalid_argument("knn: vertex index out of range");
  if (k == 0 || k >= n) throw std::invalid_argument("knn: require 1 <= k <= n-1");
  NeighbourList list;
  list.owner = i;
  std::vector<Neighbour> scratch;
  detail::knn_row(ps, i, k, scratch, list.neighbours);
  return list;
}

namespace {

// Validates a vertex subset and returns it sorted ascending.
std::vector<std::size_t> checked_sorted_subset(const PointSet& ps,
                                               const std::vector<std::size_t>& subset) {
  if (subset.size() < 2)
    throw std::invalid_argument("baseline_lengths: subset must have >= 2 members");
  std::vector<std::size_t> s = subset;
  std::sort(s.begin(), s.end());
  if (s.back() >= ps.n())
    throw std::invalid_argument("baseline_lengths: vertex index out of range");
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("baseline_lengths: subset contains duplicates");
  return s;
}

}  // namespace

std::vector<double> baseline_lengths(const PointSet& ps,
                                     const std::vector<std::size_t>& subset) {
  const std::vector<std::size_t> s = checked_sorted_subset(ps, subset);
  std::vector<double> lengths;
  lengths.reserve(s.size() * (s.size() - 1) / 2);
  for (std::size_t a = 0; a + 1 < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      lengths.push_back(distance(ps.points[s[a]], ps.points[s[b]]));
  return lengths;
}

double max_baseline(const PointSet& ps, const std::vector<std::size_t>& subset) {
  const std::vector<std::size_t> s = checked_sorted_subset(ps, subset);
  double best = 0.0;
  for (std::size_t a = 0; a + 1 < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      best = std::max(best, distance(ps.points[s[a]], ps.points[s[b]]));
  return best;
}

}  // namespace swarmsim
