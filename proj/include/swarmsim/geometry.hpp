#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace swarmsim {

/// A position in the unit cube [0,1]^3.
struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// n satellite positions in the unit cube plus the seed that produced them.
/// Regenerating with the same (n, seed) yields bit-identical coordinates.
struct PointSet {
  std::vector<Point> points;
  std::uint64_t seed = 0;

  std::size_t n() const { return points.size(); }
};

/// One entry of a nearest-neighbour query result.
struct Neighbour {
  std::size_t index = 0;
  double dist = 0.0;
};

/// The k nearest neighbours of vertex `owner`, ascending by distance.
/// Equal distances are ordered by lower vertex index.
struct NeighbourList {
  std::size_t owner = 0;
  std::vector<Neighbour> neighbours;
};

/// Draws n points with i.i.d. uniform coordinates on [0,1) from a
/// SplitMix64 stream seeded with `seed` (coordinate order x, y, z per
/// point).  Throws std::invalid_argument when n == 0.
PointSet generate_points(std::size_t n, std::uint64_t seed);

/// Euclidean distance between two positions.
double distance(const Point& p, const Point& q);

/// The k nearest neighbours of point i, ascending by distance, ties broken
/// by lower vertex index.  Throws std::invalid_argument unless 1 <= k <= n-1.
NeighbourList knn(const PointSet& ps, std::size_t i, std::size_t k);

/// All C(|subset|,2) pairwise distances among the subset members, in
/// lexicographic pair order over ascending vertex indices.  Throws
/// std::invalid_argument when |subset| < 2, an index is out of range, or
/// the subset contains duplicates.
std::vector<double> baseline_lengths(const PointSet& ps,
                                     const std::vector<std::size_t>& subset);

/// Maximum of baseline_lengths(ps, subset), computed without materializing
/// the full list.  Same argument validation as baseline_lengths.
double max_baseline(const PointSet& ps, const std::vector<std::size_t>& subset);

namespace detail {

/// Shared k-NN row kernel: fills `out` with the k nearest neighbours of
/// point i (sorted, tie rule applied) using `scratch` as reusable storage.
/// Callers loop this across rows; the wrappers in geometry.cpp, graph.cpp
/// and energy.cpp must all agree on the selection, so there is exactly one
/// implementation.
void knn_row(const PointSet& ps, std::size_t i, std::size_t k,
             std::vector<Neighbour>& scratch, std::vector<Neighbour>& out);

}  // namespace detail

}  // namespace swarmsim
