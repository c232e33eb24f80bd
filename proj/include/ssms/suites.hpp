#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "ssms/graph.hpp"
#include "ssms/spin_system.hpp"

namespace ssms::suites {

struct SuiteOptions {
  std::uint64_t seed = 1;
  double scale = 1.0;               // multiplies every sample count
  std::uint64_t budget = 1'000'000;  // per top-level vertex
  std::ostream* progress = nullptr;
};

struct SuiteRow {
  std::string case_id;
  std::string metric;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool counted = true;  // false for informational rows
  std::string note;
};

struct SuiteResult {
  std::string name;
  std::vector<SuiteRow> rows;

  bool pass() const;
  std::size_t failures() const;
  void write_csv(std::ostream& out) const;
};

/// Full-graph samples of hardcore(1), ising(1.5) and coloring(4) on P3, C5 and
/// the 3x3 grid at radius 1 and 2, each compared with the exact Gibbs
/// distribution by a Bonferroni-corrected chi-square test at level 0.001.
SuiteResult distribution(const SuiteOptions& opts);

/// The indecision bound p0 <= q max TV on 200 random small instances for each
/// of hardcore, ising, coloring and monomer-dimer.
SuiteResult lemma1(const SuiteOptions& opts);

/// Mean recursion tree size against the hardcore radius-1 formula on the
/// Petersen graph and against 1/(1 - alpha) for every contractive cell of
/// the model matrix on 3-regular graphs.
SuiteResult runtime(const SuiteOptions& opts);

/// Shared-seed comparison of ssms and bounded_ssms with h = 10 on P3 and C5.
SuiteResult coupling(const SuiteOptions& opts);

/// Conditioning a window on its full complement versus on its outer
/// boundary, on 50 random finite instances.
SuiteResult gibbs_property(const SuiteOptions& opts);

/// Runs a suite by name: distribution, lemma1, runtime or coupling.
/// Throws UnknownSuite otherwise.
SuiteResult run(const std::string& name, const SuiteOptions& opts);

const std::vector<std::string>& names();

/// A random simple graph on n vertices with edge probability p.
LocalGraph random_graph(std::mt19937_64& rng, int n, double p);

/// The 3-dimensional hypercube, 3-regular on 8 vertices.
LocalGraph cube();

/// Index of a full configuration in gibbs_distribution order.
std::size_t outcome_index(const std::vector<int>& spins, int q);

}  // namespace ssms::suites
