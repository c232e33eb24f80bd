#pragma once

#include <vector>

#include "ssms/configuration.hpp"
#include "ssms/graph.hpp"
#include "ssms/kernels.hpp"
#include "ssms/spin_system.hpp"

namespace ssms {

/// Translates a graph neighbourhood into a kernels::LocalProblem.
///
/// `vertices` lists every vertex taking part. A vertex assigned in `fixed` is
/// fixed; one listed in `outer` indexes rows; anything else is free. Only
/// edges between listed vertices are included. Weights are rescaled by the
/// largest field and interaction entries, which leaves every ratio unchanged.
/// When `require_separated` is set, a free vertex with a neighbour outside
/// `vertices` raises NotSeparating.
struct LocalProblemBuilder {
  const SpinSystem& sys;
  const LocalGraph& g;

  kernels::LocalProblem build(const std::vector<VertexId>& vertices, const PartialConfiguration& fixed,
                              const std::vector<VertexId>& outer, const VertexId* target,
                              bool require_separated) const;
};

}  // namespace ssms
