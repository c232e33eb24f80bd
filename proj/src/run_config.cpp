#include "ssms/run_config.hpp"

#include <charconv>
#include <cstdlib>

#include "ssms/error.hpp"

namespace ssms {

namespace {

template <class T>
T number(std::string_view text, const std::string& what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(ErrorCode::ConfigError, "bad " + what + " '" + std::string(text) + "'");
  return value;
}

std::pair<std::int64_t, std::int64_t> two_numbers(std::string_view text, char sep, const std::string& what) {
  auto at = text.find(sep);
  if (at == std::string_view::npos) throw Error(ErrorCode::ConfigError, "bad " + what + " '" + std::string(text) + "'");
  return {number<std::int64_t>(text.substr(0, at), what), number<std::int64_t>(text.substr(at + 1), what)};
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

}  // namespace

LocalGraph parse_graph(const std::string& spec) {
  std::string_view s = spec;
  auto arg = [&](std::string_view prefix) { return s.substr(prefix.size()); };
  if (s == "z2") return LocalGraph::lattice(2);
  if (s == "petersen") return graphs::petersen();
  if (starts_with(s, "line:")) return line_graph(parse_graph(std::string(arg("line:"))));
  if (starts_with(s, "zd:")) return LocalGraph::lattice(number<int>(arg("zd:"), "lattice dimension"));
  if (starts_with(s, "tree:")) return LocalGraph::regular_tree(number<int>(arg("tree:"), "tree degree"));
  if (starts_with(s, "file:")) return LocalGraph::load_edge_list(std::string(arg("file:")));
  if (starts_with(s, "path:")) return graphs::path(number<std::int64_t>(arg("path:"), "path length"));
  if (starts_with(s, "cycle:")) return graphs::cycle(number<std::int64_t>(arg("cycle:"), "cycle length"));
  if (starts_with(s, "complete:")) return graphs::complete(number<std::int64_t>(arg("complete:"), "clique size"));
  if (starts_with(s, "star:")) return graphs::star(number<std::int64_t>(arg("star:"), "leaf count"));
  if (starts_with(s, "grid:")) {
    auto [r, c] = two_numbers(arg("grid:"), 'x', "grid size");
    return graphs::grid(r, c);
  }
  throw Error(ErrorCode::ConfigError, "unknown graph spec '" + spec + "'");
}

Model build_model(const ModelSpec& spec, const LocalGraph& base) {
  auto need = [&](const auto& field, const char* flag) {
    if (!field) throw Error(ErrorCode::ConfigError, "model " + spec.name + " needs " + flag);
    return *field;
  };
  if (spec.name == "hardcore") return {hardcore(need(spec.lambda, "--lambda")), base};
  if (spec.name == "ising") return {ising(need(spec.lambda, "--lambda")), base};
  if (spec.name == "coloring") return {coloring(need(spec.q, "--q")), base};
  if (spec.name == "monomer-dimer") return {monomer_dimer(need(spec.gamma, "--gamma")), line_graph(base)};
  throw Error(ErrorCode::ConfigError, "unknown model '" + spec.name + "'");
}

std::vector<VertexId> parse_window(const std::string& spec, const LocalGraph& g) {
  std::string_view s = spec;
  if (s == "all") return g.vertices();
  if (starts_with(s, "box:")) {
    if (g.kind() != LocalGraph::Kind::Lattice || g.dimension() != 2)
      throw Error(ErrorCode::ConfigError, "box windows need the Z^2 lattice");
    auto body = s.substr(4);
    auto at = body.find('@');
    if (at == std::string_view::npos) throw Error(ErrorCode::ConfigError, "box window needs @X,Y: '" + spec + "'");
    auto [rows, cols] = two_numbers(body.substr(0, at), 'x', "box size");
    auto [x0, y0] = two_numbers(body.substr(at + 1), ',', "box origin");
    if (rows < 1 || cols < 1) throw Error(ErrorCode::ConfigError, "box sides must be positive");
    std::vector<VertexId> out;
    for (std::int64_t x = x0; x < x0 + rows; ++x)
      for (std::int64_t y = y0; y < y0 + cols; ++y) out.push_back(VertexId::coord({x, y}));
    return out;
  }
  if (starts_with(s, "list:")) {
    std::vector<VertexId> out;
    auto body = s.substr(5);
    while (!body.empty()) {
      auto bar = body.find('|');
      auto item = body.substr(0, bar);
      VertexId v = VertexId::parse(item);
      if (!g.contains(v)) throw Error(ErrorCode::InvalidVertex, "window vertex " + v.to_string() + " not in graph");
      out.push_back(v);
      if (bar == std::string_view::npos) break;
      body = body.substr(bar + 1);
    }
    if (out.empty()) throw Error(ErrorCode::ConfigError, "empty window list");
    return out;
  }
  throw Error(ErrorCode::ConfigError, "unknown window spec '" + spec + "'");
}

void RunConfig::validate() const {
  if (radius < 1) throw Error(ErrorCode::ConfigError, "radius must be >= 1, got " + std::to_string(radius));
  if (seed == 0) throw Error(ErrorCode::ConfigError, "seed must be positive");
  if (budget == 0) throw Error(ErrorCode::ConfigError, "budget must be positive");
}

std::uint64_t budget_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("SSMS_BUDGET");
  if (!env || !*env) return fallback;
  auto value = number<std::uint64_t>(env, "SSMS_BUDGET");
  if (value == 0) throw Error(ErrorCode::ConfigError, "SSMS_BUDGET must be positive");
  return value;
}

}  // namespace ssms
