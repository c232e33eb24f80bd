#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssms {

/// Identifier for a vertex of any graph realization.
///
/// Three kinds exist:
///   - Index: a 1-based integer vertex of a finite graph, printed as `7`.
///   - Coord: an integer tuple, used for lattice points `(x,y)` and for tree
///     vertices encoded as root-to-vertex child-index paths (the root is `()`).
///   - Pair: an unordered edge {u, w} of another graph, stored with u < w and
///     printed as `[u;w]`. Line-graph vertices use this kind.
///
/// Ordering is by kind first and then lexicographic on the encoded data, so
/// lattice points sort lexicographically and integers ascend. `to_string` and
/// `parse` round-trip exactly.
class VertexId {
 public:
  enum class Kind : std::uint8_t { Index = 0, Coord = 1, Pair = 2 };

  VertexId() = default;

  static VertexId index(std::int64_t i);
  static VertexId coord(std::vector<std::int64_t> c);
  static VertexId pair(const VertexId& a, const VertexId& b);

  Kind kind() const { return kind_; }
  std::int64_t as_index() const;
  std::span<const std::int64_t> coords() const;
  // Endpoints of a Pair vertex, smaller first.
  std::pair<VertexId, VertexId> endpoints() const;

  std::string to_string() const;
  static VertexId parse(std::string_view text);

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend std::strong_ordering operator<=>(const VertexId& a, const VertexId& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    return a.data_ <=> b.data_;
  }

  std::size_t hash() const;

 private:
  VertexId(Kind k, std::vector<std::int64_t> d) : kind_(k), data_(std::move(d)) {}
  void append_encoded(std::vector<std::int64_t>& out) const;
  static VertexId decode(std::span<const std::int64_t> data, std::size_t& pos);

  Kind kind_ = Kind::Index;
  std::vector<std::int64_t> data_;
};

struct VertexHash {
  std::size_t operator()(const VertexId& v) const { return v.hash(); }
};

}  // namespace ssms
