#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ssms/configuration.hpp"
#include "ssms/graph.hpp"
#include "ssms/marginals.hpp"
#include "ssms/spin_system.hpp"

namespace ssms {

/// Two-point offspring bound on the recursion tree: with alpha = q f g < 1 the
/// expected number of calls is at most 1 / (1 - alpha).
struct BranchingBound {
  int radius = 1;
  int q = 2;
  double f = 0.0;
  std::int64_t g = 0;
  double alpha = 0.0;
  std::optional<double> expected_size;  // absent when not contractive

  bool contractive() const { return expected_size.has_value(); }
};

BranchingBound branching_bound(int q, double f, std::int64_t g, int radius = 1);
BranchingBound branching_bound(const SpinSystem& sys, const LocalGraph& g, int radius, const MixingRate& rate);

/// Expected tree size of the radius-1 hardcore heuristic on maximum degree
/// `max_degree`: (1 + lambda) / (1 - (max_degree - 1) lambda), or nullopt when
/// the denominator is not positive.
std::optional<double> hardcore_radius1_bound(double lambda, int max_degree);

struct TreeBoundCheck {
  bool pass = false;
  std::size_t runs = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  double limit = 0.0;   // bound + 3 SE
  double margin = 0.0;  // limit - mean
};

/// mean(total calls) <= bound + 3 SE. Needs at least 1000 runs.
TreeBoundCheck verify_tree_bound(const std::vector<std::uint64_t>& total_calls, double bound);
TreeBoundCheck verify_tree_bound(const std::vector<std::uint64_t>& total_calls, const BranchingBound& bound);

struct Lemma1Result {
  bool pass = false;
  double indecision = 0.0;  // p_v^0
  double q_times_tv = 0.0;  // q * max TV over feasible boundary pairs
};

/// p_v^0 <= q * max d_TV + 1e-9, both sides recomputed from scratch.
Lemma1Result lemma1_check(const SpinSystem& sys, const LocalGraph& g, const PartialConfiguration& context,
                          const VertexId& v, int radius);

/// Pearson goodness of fit. Outcomes whose expected count is below 5 are
/// pooled into one cell, which is merged into the smallest remaining cell when
/// it is itself below 5. An observation of a zero-probability outcome gives
/// an infinite statistic and p-value 0.
struct GofStats {
  std::uint64_t samples = 0;
  std::vector<std::uint64_t> observed;
  std::vector<double> expected;
  double chi_square = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
  double tv = 0.0;  // empirical frequencies vs exact
};

GofStats goodness_of_fit(const std::vector<std::uint64_t>& counts, const std::vector<double>& exact);

/// Upper tail of the chi-square distribution.
double chi_square_survival(double statistic, int degrees_of_freedom);

/// Contexts used to estimate the mixing rate empirically: for every
/// representative vertex, the empty context plus `random_contexts` random
/// feasible partial assignments on the ball around it.
struct ProbeSpec {
  int random_contexts = 8;
  std::uint64_t seed = 1;
};

/// Worst max-TV over the probe contexts, per radius. Provenance is Empirical.
MixingRate estimate_mixing_rate(const SpinSystem& sys, const LocalGraph& g, const std::vector<int>& radii,
                                const ProbeSpec& probes);

/// The probe contexts around v at the given radius (empty context first).
std::vector<PartialConfiguration> probe_contexts(const SpinSystem& sys, const LocalGraph& g, const VertexId& v,
                                                 int radius, const ProbeSpec& probes);

}  // namespace ssms
