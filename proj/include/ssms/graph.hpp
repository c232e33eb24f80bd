#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ssms/vertex.hpp"

namespace ssms {

namespace detail {
struct Realization;
}

/// A locally finite graph that is queried lazily, one neighbourhood at a time.
///
/// Finite graphs store an adjacency list; lattices, regular trees and line
/// graphs of those are never materialised. All values are immutable after
/// construction and may be shared across threads.
class LocalGraph {
 public:
  enum class Kind { Finite, Lattice, Tree, LineGraph };

  /// Simple graph on vertices 1..n. Self-loops, parallel edges and
  /// out-of-range endpoints are rejected with ParseError.
  static LocalGraph finite(std::int64_t n, const std::vector<std::pair<std::int64_t, std::int64_t>>& edges);
  /// Reads the `n m` / `u v` edge-list format.
  static LocalGraph read_edge_list(std::istream& in);
  static LocalGraph load_edge_list(const std::filesystem::path& path);
  /// The integer lattice Z^d with nearest-neighbour edges.
  static LocalGraph lattice(int dimension);
  /// The infinite tree in which every vertex has `degree` neighbours.
  static LocalGraph regular_tree(int degree);

  Kind kind() const;
  bool is_finite() const;
  bool contains(const VertexId& v) const;

  /// Adjacent vertices in canonical order. Throws InvalidVertex.
  std::vector<VertexId> neighbors(const VertexId& v) const;

  /// Finite graphs only: every vertex in canonical order.
  std::vector<VertexId> vertices() const;
  /// Finite graphs only: every edge once, as (smaller, larger) in canonical order.
  std::vector<std::pair<VertexId, VertexId>> edges() const;

  /// Vertices that represent every vertex up to an automorphism. For a finite
  /// graph this is the full vertex list.
  std::vector<VertexId> representatives() const;

  int dimension() const;  // lattices
  int degree() const;     // trees
  const LocalGraph& base() const;  // line graphs

  std::string description() const;

 private:
  explicit LocalGraph(std::shared_ptr<const detail::Realization> r) : impl_(std::move(r)) {}
  std::shared_ptr<const detail::Realization> impl_;

  friend LocalGraph line_graph(const LocalGraph& g);
};

/// Vertices at distance exactly `radius` from v, canonical order. sphere(g, v, 0) == {v}.
std::vector<VertexId> sphere(const LocalGraph& g, const VertexId& v, int radius);

/// Vertices at distance 0..radius-1 from v, canonical order. Requires radius >= 1.
std::vector<VertexId> ball_interior(const LocalGraph& g, const VertexId& v, int radius);

/// Interior and sphere from one breadth-first pass.
struct Ball {
  std::vector<VertexId> interior;
  std::vector<VertexId> sphere;
};
Ball ball(const LocalGraph& g, const VertexId& v, int radius);

/// Upper bound g(radius) on |S_radius(v)| over all v. Closed form for Z^d and
/// regular trees; an exhaustive maximum for finite graphs; a breadth-first
/// count from the representatives for infinite line graphs.
std::int64_t growth_bound(const LocalGraph& g, int radius);

/// The nondecreasing envelope of growth_bound over radii 0..max_radius.
class GrowthBound {
 public:
  GrowthBound(const LocalGraph& g, int max_radius);
  std::int64_t at(int radius) const;
  int max_radius() const { return static_cast<int>(envelope_.size()) - 1; }

 private:
  std::vector<std::int64_t> envelope_;
};

/// L(G): one vertex per edge of G, adjacent when the edges share an endpoint.
LocalGraph line_graph(const LocalGraph& g);

/// Named finite graphs used by tests and the CLI.
namespace graphs {
LocalGraph path(std::int64_t n);
LocalGraph cycle(std::int64_t n);
LocalGraph grid(std::int64_t rows, std::int64_t cols);
LocalGraph complete(std::int64_t n);
LocalGraph star(std::int64_t leaves);
LocalGraph petersen();
LocalGraph single_vertex();
}  // namespace graphs

}  // namespace ssms
