#include "ssms/local_problem.hpp"

#include <unordered_map>

#include "ssms/error.hpp"

namespace ssms {

kernels::LocalProblem LocalProblemBuilder::build(const std::vector<VertexId>& vertices,
                                                 const PartialConfiguration& fixed,
                                                 const std::vector<VertexId>& outer, const VertexId* target,
                                                 bool require_separated) const {
  kernels::LocalProblem p;
  p.q = sys.q();
  const auto q = static_cast<std::size_t>(p.q);
  p.field.resize(q);
  p.interaction.resize(q * q);
  for (std::size_t s = 0; s < q; ++s) p.field[s] = sys.field_vector()[s] / sys.max_field();
  for (std::size_t k = 0; k < q * q; ++k) p.interaction[k] = sys.interaction_matrix()[k] / sys.max_interaction();

  std::unordered_map<VertexId, int, VertexHash> local;
  local.reserve(vertices.size() * 2);
  for (const auto& v : vertices) {
    auto [it, inserted] = local.emplace(v, static_cast<int>(local.size()));
    if (!inserted) throw Error(ErrorCode::InternalError, "duplicate vertex in local problem: " + v.to_string());
  }
  const std::size_t n = vertices.size();
  p.adjacency.assign(n, {});
  p.fixed_spin.assign(n, -1);

  std::vector<char> is_outer(n, 0);
  for (const auto& v : outer) {
    auto it = local.find(v);
    if (it == local.end()) throw Error(ErrorCode::InternalError, "outer vertex outside problem: " + v.to_string());
    is_outer[static_cast<std::size_t>(it->second)] = 1;
    p.outer.push_back(it->second);
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = vertices[i];
    if (auto s = fixed.spin_of(v)) {
      if (*s < 1 || *s > p.q)
        throw Error(ErrorCode::ConfigError, "spin " + std::to_string(*s) + " at " + v.to_string() + " outside 1.." + std::to_string(p.q));
      if (is_outer[i]) throw Error(ErrorCode::InternalError, "vertex both fixed and outer: " + v.to_string());
      p.fixed_spin[i] = *s - 1;
    } else if (!is_outer[i]) {
      p.free.push_back(static_cast<int>(i));
    }
    for (const auto& w : g.neighbors(v)) {
      auto it = local.find(w);
      if (it != local.end()) {
        p.adjacency[i].push_back(it->second);
      } else if (require_separated && p.fixed_spin[i] < 0 && !is_outer[i]) {
        throw Error(ErrorCode::NotSeparating,
                    "free vertex " + v.to_string() + " has unconditioned neighbour " + w.to_string());
      }
    }
  }

  if (target) {
    auto it = local.find(*target);
    if (it == local.end() || p.fixed_spin[static_cast<std::size_t>(it->second)] >= 0 ||
        is_outer[static_cast<std::size_t>(it->second)])
      throw Error(ErrorCode::InternalError, "target must be a free vertex of the problem: " + target->to_string());
    p.target = it->second;
  }
  return p;
}

}  // namespace ssms
