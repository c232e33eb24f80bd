#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ssms/configuration.hpp"
#include "ssms/sampler.hpp"

namespace ssms {

/// Summary of one window sample. wall_time_ms is only filled on request so
/// that repeated runs with the same seed serialize to identical bytes.
struct RunReport {
  std::uint64_t seed = 0;
  std::string model;
  std::string graph;
  int radius = 1;
  std::vector<VertexId> window;
  std::uint64_t total_calls = 0;
  std::uint64_t max_depth = 0;
  std::uint64_t indecision_events = 0;
  std::optional<double> wall_time_ms;
  PartialConfiguration spins;

  static RunReport from(std::uint64_t seed, std::string model, std::string graph, int radius,
                        const std::vector<VertexId>& window, const WindowSample& sample);

  std::string to_json() const;
};

/// `vertex,spin` rows in canonical vertex order. Vertex names are quoted
/// because coordinate tuples contain commas.
void write_spins_csv(std::ostream& out, const PartialConfiguration& spins);

/// Binary PGM of a two-spin sample on a rectangle of Z^2: spin 1 is black and
/// spin 2 white. Row index follows the first coordinate. Returns false and
/// writes nothing unless the spins cover exactly a full rectangle of Z^2
/// coordinates with spins in {1,2}.
bool write_pgm(std::ostream& out, const PartialConfiguration& spins);

}  // namespace ssms
