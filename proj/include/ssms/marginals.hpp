#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <vector>

#include "ssms/configuration.hpp"
#include "ssms/graph.hpp"
#include "ssms/spin_system.hpp"

namespace ssms {

/// A probability vector over spins 1..q.
class SpinDistribution {
 public:
  SpinDistribution() = default;
  /// Checks nonnegativity and |sum - 1| <= 1e-9.
  explicit SpinDistribution(std::vector<double> probs);
  /// Normalises nonnegative weights. Throws InfeasibleBoundary when they sum to 0.
  static SpinDistribution from_weights(const double* weights, int q);

  int q() const { return static_cast<int>(probs_.size()); }
  double operator()(int spin) const { return probs_[static_cast<std::size_t>(spin - 1)]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

/// The zone probabilities at a vertex: p_v^i for each spin and the width p_v^0
/// of the zone of indecision.
struct MinMarginals {
  std::vector<double> spin;  // spin[i-1] = p_v^i
  double indecision = 0.0;   // p_v^0

  int q() const { return static_cast<int>(spin.size()); }
};

/// Every conditional marginal of v over feasible boundary assignments of the
/// unassigned part of the sphere S_radius(v).
struct BoundaryTable {
  int q = 2;
  std::vector<VertexId> boundary;        // S_radius(v) minus the context, canonical order
  std::vector<std::size_t> row_of;       // lexicographic index of each feasible assignment
  std::vector<double> probs;             // feasible rows * q, normalised

  std::size_t feasible_rows() const { return row_of.size(); }
  const double* row(std::size_t k) const { return probs.data() + k * static_cast<std::size_t>(q); }
};

/// mu_v conditioned on `fixed`, computed on the vertex set support ∪ dom(fixed).
/// Every free vertex (support minus dom(fixed)) must have all of its
/// neighbours inside that set.
SpinDistribution conditional_marginal(const SpinSystem& sys, const LocalGraph& g, const VertexId& v,
                                      const PartialConfiguration& fixed, const std::vector<VertexId>& support);

/// Enumerates boundary assignments on ball(v, radius) with context spins fixed.
BoundaryTable boundary_table(const SpinSystem& sys, const LocalGraph& g, const PartialConfiguration& context,
                             const VertexId& v, int radius);

MinMarginals min_marginals(const BoundaryTable& table);
MinMarginals min_marginals(const SpinSystem& sys, const LocalGraph& g, const PartialConfiguration& context,
                           const VertexId& v, int radius);

/// mu_v given the context on ball(v, radius). Every sphere vertex must be in the context.
SpinDistribution ball_marginal(const SpinSystem& sys, const LocalGraph& g, const PartialConfiguration& context,
                               const VertexId& v, int radius);

double tv_distance(const SpinDistribution& a, const SpinDistribution& b);
double tv_distance(const double* a, const double* b, int q);

/// Largest pairwise total-variation distance between rows of the table.
double max_pairwise_tv(const BoundaryTable& table);
double mixing_rate_estimate(const SpinSystem& sys, const LocalGraph& g, const VertexId& v, int radius,
                            const PartialConfiguration& context);

/// Radius -> worst-case TV table with its provenance. CSV rows are `radius,f`.
struct MixingRate {
  enum class Provenance { Empirical, UserSupplied };

  std::map<int, double> rate;
  Provenance provenance = Provenance::Empirical;

  void set(int radius, double f);
  double at(int radius) const;  // throws MissingRate
  bool has(int radius) const { return rate.contains(radius); }

  void write_csv(std::ostream& out) const;
  static MixingRate read_csv(std::istream& in, Provenance provenance = Provenance::UserSupplied);
};

}  // namespace ssms
