#pragma once

#include <string>
#include <vector>

#include "ssms/configuration.hpp"
#include "ssms/graph.hpp"

namespace ssms {

/// A homogeneous spin system: q spins, a field b over spins and a symmetric
/// interaction A. Spins are 1-based in every public interface.
class SpinSystem {
 public:
  /// Validates q >= 2, nonnegative entries, symmetric A, some positive b and
  /// |log x| <= 200 for every nonzero entry.
  SpinSystem(int q, std::vector<double> field, std::vector<std::vector<double>> interaction, std::string label = "custom");

  int q() const { return q_; }
  double field(int spin) const { return field_[static_cast<std::size_t>(spin - 1)]; }
  double interaction(int a, int b) const {
    return interaction_[static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(q_) + static_cast<std::size_t>(b - 1)];
  }
  const std::vector<double>& field_vector() const { return field_; }
  const std::vector<double>& interaction_matrix() const { return interaction_; }  // row-major q*q
  double max_field() const { return max_field_; }
  double max_interaction() const { return max_interaction_; }
  const std::string& label() const { return label_; }

 private:
  int q_;
  std::vector<double> field_;
  std::vector<double> interaction_;
  double max_field_ = 0.0;
  double max_interaction_ = 0.0;
  std::string label_;
};

/// Hardcore model: b = (1, lambda), A = [[1,1],[1,0]]; spin 2 is occupied.
SpinSystem hardcore(double lambda);
/// Monomer-dimer weights: hardcore(gamma), meant for the line graph.
SpinSystem monomer_dimer(double gamma);
/// Ferromagnetic Ising model: b = (1,1), A = [[lambda,1],[1,lambda]], lambda >= 1.
SpinSystem ising(double lambda);
/// Proper q-colourings: b = 1, A = 1 - I.
SpinSystem coloring(int q);

/// Product of b over `vertices` and of A over the edges of the induced subgraph
/// (each undirected edge once). Every vertex must be assigned in `config`.
double config_weight(const SpinSystem& sys, const LocalGraph& g, const std::vector<VertexId>& vertices,
                     const PartialConfiguration& config);

/// Z(G) by enumeration of all q^|V| configurations. Throws DegenerateSystem if Z = 0.
double partition_function(const SpinSystem& sys, const LocalGraph& g);

/// Whether some extension of `config` to all of `support` has positive weight
/// on the induced subgraph G[support]. Entries of `config` outside `support`
/// are ignored.
bool is_feasible(const SpinSystem& sys, const LocalGraph& g, const PartialConfiguration& config,
                 const std::vector<VertexId>& support);

/// Exact Gibbs distribution of a finite graph over its q^n configurations,
/// indexed lexicographically in canonical vertex order with spin 1 as digit 0.
std::vector<double> gibbs_distribution(const SpinSystem& sys, const LocalGraph& g);

}  // namespace ssms
