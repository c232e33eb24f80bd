#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ssms/configuration.hpp"
#include "ssms/graph.hpp"
#include "ssms/marginals.hpp"
#include "ssms/spin_system.hpp"

namespace ssms {

/// Uniform draws on [0,1) from std::mt19937_64 seeded with the 64-bit seed.
/// Each draw takes one 64-bit output and keeps its top 53 bits:
/// y = (x >> 11) * 2^-53. The first four draws for seed 42 are pinned in the
/// test suite so ports can reproduce traces draw for draw.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  double next() {
    ++draws_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

 private:
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
};

/// Seed of the index-th independent run derived from a base seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool closed_hi = false;

  bool contains(double y) const { return y >= lo && (closed_hi ? y <= hi : y < hi); }
  double length() const { return hi - lo; }
};

/// I_1..I_q laid out in spin order from 0, followed by the zone of
/// indecision I_0 = [1 - p^0, 1]. When p^0 == 0 the last nonempty spin
/// interval is extended to 1 so that rounding in the cumulative sums cannot
/// open a spurious zone.
struct IntervalPartition {
  std::vector<Interval> spin;  // spin[i-1] = I_i
  Interval zone;

  /// Spin whose interval contains y, or nullopt when y falls in the zone.
  std::optional<int> locate(double y) const;
};

IntervalPartition build_intervals(const MinMarginals& p);

/// Subintervals J_1..J_q of the zone with lengths rho^i = mu_v(i) - p^i, laid
/// out in spin order from the start of the zone. Values of rho^i in
/// [-1e-9, 0) are treated as 0; anything lower is an internal error.
std::vector<Interval> split_zone(const IntervalPartition& parts, const MinMarginals& p, const SpinDistribution& mu);

struct CallRecord {
  VertexId vertex;
  int depth = 0;
  bool indecision = false;
  bool oracle = false;
};

/// Statistics of the recursion tree: its size, height (root at depth 0) and
/// how many nodes fell into the zone of indecision.
struct RecursionStats {
  std::uint64_t total_calls = 0;
  std::uint64_t max_depth = 0;
  std::uint64_t indecision_events = 0;
  std::vector<CallRecord> log;  // filled only when SamplerOptions::record_log

  void merge(const RecursionStats& other);
};

struct SamplerOptions {
  int radius = 1;
  std::uint64_t budget = 10'000'000;  // calls per top-level vertex
  bool record_log = false;
};

struct WindowSample {
  PartialConfiguration spins;  // window vertices in sampling order
  RecursionStats stats;
};

/// The recursive perfect sampler. Recursion runs on an explicit stack, so
/// deep trees near criticality cannot overflow the call stack.
class Sampler {
 public:
  Sampler(SpinSystem sys, LocalGraph g, SamplerOptions options);

  const SpinSystem& system() const { return sys_; }
  const LocalGraph& graph() const { return g_; }
  const SamplerOptions& options() const { return options_; }

  /// One spin at v given the context. Returns the context extended by (v, i)
  /// and nothing else; every spin assigned along the way is discarded.
  PartialConfiguration ssms(const PartialConfiguration& context, const VertexId& v, RandomSource& rng,
                            RecursionStats& stats) const;

  /// In-place form of ssms: returns the spin and leaves `context` unchanged.
  int draw_spin(PartialConfiguration& context, const VertexId& v, RandomSource& rng, RecursionStats& stats) const;

  /// Samples the unassigned sphere vertices in canonical order, each
  /// conditioned on the ones before it, then splits the zone. Only called
  /// when a draw has landed in the zone.
  std::vector<Interval> bd_split(const PartialConfiguration& context, const VertexId& v, const MinMarginals& p,
                                 RandomSource& rng, RecursionStats& stats) const;

  /// Depth-limited variant: identical to ssms above depth `height`, where it
  /// samples from the exact conditional marginal over the whole finite graph.
  /// Throws FiniteOnly on infinite graphs.
  int bounded_ssms(PartialConfiguration& context, const VertexId& v, int height, RandomSource& rng,
                   RecursionStats& stats) const;

  /// Samples the window vertices in order, keeping each spin for the next.
  WindowSample sample_window(const std::vector<VertexId>& window, RandomSource& rng,
                             const PartialConfiguration& initial = {}) const;

  /// Exact mu_v given the context over every unassigned vertex of a finite graph.
  SpinDistribution exact_marginal(const PartialConfiguration& context, const VertexId& v) const;

 private:
  int run(PartialConfiguration& context, const VertexId& root, RandomSource& rng, RecursionStats& stats,
          std::optional<int> height) const;

  SpinSystem sys_;
  LocalGraph g_;
  SamplerOptions options_;
};

}  // namespace ssms
