#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssms/graph.hpp"
#include "ssms/spin_system.hpp"

namespace ssms {

/// Graph spec grammar:
///   z2 | zd:D | tree:DEG | file:PATH | path:N | cycle:N | grid:RxC |
///   complete:N | star:LEAVES | petersen | line:<spec>
LocalGraph parse_graph(const std::string& spec);

struct ModelSpec {
  std::string name;  // hardcore | ising | coloring | monomer-dimer
  std::optional<double> lambda;
  std::optional<double> gamma;
  std::optional<int> q;
};

/// The spin system and the graph it lives on. monomer-dimer becomes
/// hardcore(gamma) on the line graph of `base`.
struct Model {
  SpinSystem system;
  LocalGraph graph;
};

Model build_model(const ModelSpec& spec, const LocalGraph& base);

/// Window spec grammar:
///   all                 every vertex of a finite graph, canonical order
///   box:RxC@X,Y         rows X..X+R-1 by columns Y..Y+C-1 of Z^2, canonical order
///   list:V1|V2|...      explicit vertices in textual form, in the given order
std::vector<VertexId> parse_window(const std::string& spec, const LocalGraph& g);

struct RunConfig {
  ModelSpec model;
  std::string graph = "z2";
  std::string window = "box:3x3@0,0";
  int radius = 1;
  std::uint64_t seed = 1;
  std::uint64_t budget = 10'000'000;
  std::string out = "sample";
  bool record_time = false;

  void validate() const;  // ConfigError on radius < 1, zero seed or budget
};

/// Budget from SSMS_BUDGET when set, else `fallback`.
std::uint64_t budget_from_env(std::uint64_t fallback);

}  // namespace ssms
