#include "ssms/configuration.hpp"

#include <algorithm>
#include <unordered_set>

#include "ssms/error.hpp"

namespace ssms {

PartialConfiguration::PartialConfiguration(std::initializer_list<Entry> entries) {
  for (const auto& [v, s] : entries) assign(v, s);
}

void PartialConfiguration::assign(const VertexId& v, int spin) {
  if (spin < 1) throw Error(ErrorCode::ConfigError, "spins are 1-based; got " + std::to_string(spin));
  auto [it, inserted] = index_.emplace(v, entries_.size());
  if (!inserted) throw Error(ErrorCode::ConfigError, "vertex " + v.to_string() + " already assigned");
  entries_.emplace_back(v, spin);
}

std::optional<int> PartialConfiguration::spin_of(const VertexId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].second;
}

void PartialConfiguration::truncate(std::size_t size) {
  while (entries_.size() > size) {
    index_.erase(entries_.back().first);
    entries_.pop_back();
  }
}

PartialConfiguration PartialConfiguration::restricted_to(const std::vector<VertexId>& vertices) const {
  std::unordered_set<VertexId, VertexHash> keep(vertices.begin(), vertices.end());
  PartialConfiguration out;
  for (const auto& [v, s] : entries_)
    if (keep.contains(v)) out.assign(v, s);
  return out;
}

}  // namespace ssms
