#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ssms/vertex.hpp"

namespace ssms {

/// A finite partial assignment of spins, iterated in insertion order.
///
/// Spins are 1-based (1..q). The sampler uses push/truncate to treat the
/// configuration as a stack: everything a recursive call adds on top of its
/// input is discarded when the call returns.
class PartialConfiguration {
 public:
  using Entry = std::pair<VertexId, int>;

  PartialConfiguration() = default;
  PartialConfiguration(std::initializer_list<Entry> entries);

  /// Adds (v, spin). Throws ConfigError if v is already assigned.
  void assign(const VertexId& v, int spin);
  std::optional<int> spin_of(const VertexId& v) const;
  bool contains(const VertexId& v) const { return index_.contains(v); }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Drops every entry added after the first `size` entries.
  void truncate(std::size_t size);

  /// Entries restricted to the given vertices, keeping insertion order.
  PartialConfiguration restricted_to(const std::vector<VertexId>& vertices) const;

  friend bool operator==(const PartialConfiguration& a, const PartialConfiguration& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<VertexId, std::size_t, VertexHash> index_;
};

}  // namespace ssms
