#include "ssms/report.hpp"

#include <algorithm>
#include <limits>

#include "json.hpp"

namespace ssms {

RunReport RunReport::from(std::uint64_t seed, std::string model, std::string graph, int radius,
                          const std::vector<VertexId>& window, const WindowSample& sample) {
  RunReport r;
  r.seed = seed;
  r.model = std::move(model);
  r.graph = std::move(graph);
  r.radius = radius;
  r.window = window;
  r.total_calls = sample.stats.total_calls;
  r.max_depth = sample.stats.max_depth;
  r.indecision_events = sample.stats.indecision_events;
  r.spins = sample.spins;
  return r;
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["model"] = model;
  j["graph"] = graph;
  j["ell"] = radius;
  auto& w = j["window"] = nlohmann::ordered_json::array();
  for (const auto& v : window) w.push_back(v.to_string());
  j["total_calls"] = total_calls;
  j["max_depth"] = max_depth;
  j["indecision_events"] = indecision_events;
  j["wall_time_ms"] = wall_time_ms ? nlohmann::ordered_json(*wall_time_ms) : nlohmann::ordered_json(nullptr);
  auto& s = j["spins"] = nlohmann::ordered_json::object();
  for (const auto& [v, spin] : spins) s[v.to_string()] = spin;
  return j.dump(2) + "\n";
}

void write_spins_csv(std::ostream& out, const PartialConfiguration& spins) {
  auto rows = spins.entries();
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  out << "vertex,spin\n";
  for (const auto& [v, spin] : rows) out << '"' << v.to_string() << "\"," << spin << '\n';
}

bool write_pgm(std::ostream& out, const PartialConfiguration& spins) {
  if (spins.empty()) return false;
  std::int64_t lo[2] = {std::numeric_limits<std::int64_t>::max(), std::numeric_limits<std::int64_t>::max()};
  std::int64_t hi[2] = {std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::min()};
  for (const auto& [v, spin] : spins) {
    if (v.kind() != VertexId::Kind::Coord || v.coords().size() != 2 || spin < 1 || spin > 2) return false;
    for (int k = 0; k < 2; ++k) {
      lo[k] = std::min(lo[k], v.coords()[k]);
      hi[k] = std::max(hi[k], v.coords()[k]);
    }
  }
  const std::int64_t rows = hi[0] - lo[0] + 1;
  const std::int64_t cols = hi[1] - lo[1] + 1;
  if (rows * cols != static_cast<std::int64_t>(spins.size())) return false;

  std::string pixels(static_cast<std::size_t>(rows * cols), '\0');
  for (const auto& [v, spin] : spins) {
    auto at = (v.coords()[0] - lo[0]) * cols + (v.coords()[1] - lo[1]);
    pixels[static_cast<std::size_t>(at)] = spin == 2 ? static_cast<char>(255) : static_cast<char>(0);
  }
  out << "P5\n" << cols << ' ' << rows << "\n255\n";
  out.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
  return true;
}

}  // namespace ssms
