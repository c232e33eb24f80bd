#include "ssms/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "ssms/error.hpp"

namespace ssms {

namespace detail {

struct Realization {
  virtual ~Realization() = default;
  virtual LocalGraph::Kind kind() const = 0;
  virtual bool is_finite() const = 0;
  virtual bool contains(const VertexId& v) const = 0;
  // Unsorted; the caller sorts. Only called on valid vertices.
  virtual std::vector<VertexId> raw_neighbors(const VertexId& v) const = 0;
  virtual std::vector<VertexId> representatives() const = 0;
  virtual std::string description() const = 0;
};

namespace {

[[noreturn]] void invalid(const VertexId& v, const std::string& where) {
  throw Error(ErrorCode::InvalidVertex, "vertex " + v.to_string() + " is not in " + where);
}

struct FiniteRealization final : Realization {
  std::int64_t n = 0;
  std::vector<std::vector<std::int64_t>> adj;  // 1-based, sorted

  LocalGraph::Kind kind() const override { return LocalGraph::Kind::Finite; }
  bool is_finite() const override { return true; }
  bool contains(const VertexId& v) const override {
    return v.kind() == VertexId::Kind::Index && v.as_index() >= 1 && v.as_index() <= n;
  }
  std::vector<VertexId> raw_neighbors(const VertexId& v) const override {
    const auto& row = adj[static_cast<std::size_t>(v.as_index())];
    std::vector<VertexId> out;
    out.reserve(row.size());
    for (auto w : row) out.push_back(VertexId::index(w));
    return out;
  }
  std::vector<VertexId> representatives() const override {
    std::vector<VertexId> out;
    for (std::int64_t i = 1; i <= n; ++i) out.push_back(VertexId::index(i));
    return out;
  }
  std::string description() const override {
    std::size_t m = 0;
    for (const auto& row : adj) m += row.size();
    return "finite(n=" + std::to_string(n) + ",m=" + std::to_string(m / 2) + ")";
  }
};

struct LatticeRealization final : Realization {
  int d = 2;

  LocalGraph::Kind kind() const override { return LocalGraph::Kind::Lattice; }
  bool is_finite() const override { return false; }
  bool contains(const VertexId& v) const override {
    return v.kind() == VertexId::Kind::Coord && v.coords().size() == static_cast<std::size_t>(d);
  }
  std::vector<VertexId> raw_neighbors(const VertexId& v) const override {
    auto c = v.coords();
    std::vector<VertexId> out;
    out.reserve(2 * static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      for (int delta : {-1, 1}) {
        std::vector<std::int64_t> w(c.begin(), c.end());
        w[static_cast<std::size_t>(k)] += delta;
        out.push_back(VertexId::coord(std::move(w)));
      }
    }
    return out;
  }
  std::vector<VertexId> representatives() const override {
    return {VertexId::coord(std::vector<std::int64_t>(static_cast<std::size_t>(d), 0))};
  }
  std::string description() const override { return "lattice(d=" + std::to_string(d) + ")"; }
};

// Vertices are child-index paths from the root. The root has `degree`
// children numbered 0..degree-1; every other vertex has degree-1 children.
struct TreeRealization final : Realization {
  int degree = 3;

  LocalGraph::Kind kind() const override { return LocalGraph::Kind::Tree; }
  bool is_finite() const override { return false; }
  bool contains(const VertexId& v) const override {
    if (v.kind() != VertexId::Kind::Coord) return false;
    auto c = v.coords();
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::int64_t limit = (i == 0) ? degree : degree - 1;
      if (c[i] < 0 || c[i] >= limit) return false;
    }
    return true;
  }
  std::vector<VertexId> raw_neighbors(const VertexId& v) const override {
    auto c = v.coords();
    std::vector<VertexId> out;
    if (!c.empty()) out.push_back(VertexId::coord(std::vector<std::int64_t>(c.begin(), c.end() - 1)));
    std::int64_t children = c.empty() ? degree : degree - 1;
    for (std::int64_t k = 0; k < children; ++k) {
      std::vector<std::int64_t> w(c.begin(), c.end());
      w.push_back(k);
      out.push_back(VertexId::coord(std::move(w)));
    }
    return out;
  }
  std::vector<VertexId> representatives() const override { return {VertexId::coord({})}; }
  std::string description() const override { return "tree(degree=" + std::to_string(degree) + ")"; }
};

struct LineRealization final : Realization {
  LocalGraph base;

  explicit LineRealization(LocalGraph b) : base(std::move(b)) {}

  LocalGraph::Kind kind() const override { return LocalGraph::Kind::LineGraph; }
  bool is_finite() const override { return base.is_finite(); }
  bool contains(const VertexId& v) const override {
    if (v.kind() != VertexId::Kind::Pair) return false;
    auto [a, b] = v.endpoints();
    if (!base.contains(a) || !base.contains(b)) return false;
    auto nb = base.neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  }
  std::vector<VertexId> raw_neighbors(const VertexId& v) const override {
    auto [a, b] = v.endpoints();
    std::vector<VertexId> out;
    for (const auto& x : base.neighbors(a))
      if (x != b) out.push_back(VertexId::pair(a, x));
    for (const auto& x : base.neighbors(b))
      if (x != a) out.push_back(VertexId::pair(b, x));
    return out;
  }
  std::vector<VertexId> representatives() const override {
    std::set<VertexId> reps;
    for (const auto& r : base.representatives())
      for (const auto& x : base.neighbors(r)) reps.insert(VertexId::pair(r, x));
    return {reps.begin(), reps.end()};
  }
  std::string description() const override { return "line(" + base.description() + ")"; }
};

}  // namespace
}  // namespace detail

LocalGraph LocalGraph::finite(std::int64_t n, const std::vector<std::pair<std::int64_t, std::int64_t>>& edges) {
  if (n < 1) throw Error(ErrorCode::ParseError, "finite graph needs at least one vertex");
  auto r = std::make_shared<detail::FiniteRealization>();
  r->n = n;
  r->adj.assign(static_cast<std::size_t>(n) + 1, {});
  for (auto [u, v] : edges) {
    if (u < 1 || u > n || v < 1 || v > n)
      throw Error(ErrorCode::ParseError, "edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (u == v) throw Error(ErrorCode::ParseError, "self-loop at vertex " + std::to_string(u));
    r->adj[static_cast<std::size_t>(u)].push_back(v);
    r->adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (std::int64_t i = 1; i <= n; ++i) {
    auto& row = r->adj[static_cast<std::size_t>(i)];
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end())
      throw Error(ErrorCode::ParseError, "parallel edge at vertex " + std::to_string(i));
  }
  return LocalGraph(std::move(r));
}

LocalGraph LocalGraph::read_edge_list(std::istream& in) {
  std::int64_t n = 0;
  std::int64_t m = 0;
  if (!(in >> n >> m) || m < 0) throw Error(ErrorCode::ParseError, "edge list must start with 'n m'");
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::int64_t k = 0; k < m; ++k) {
    std::int64_t u = 0;
    std::int64_t v = 0;
    if (!(in >> u >> v)) throw Error(ErrorCode::ParseError, "edge list truncated at edge " + std::to_string(k + 1));
    edges.emplace_back(u, v);
  }
  std::string trailing;
  if (in >> trailing) throw Error(ErrorCode::ParseError, "unexpected trailing data in edge list: " + trailing);
  return finite(n, edges);
}

LocalGraph LocalGraph::load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open edge list " + path.string());
  return read_edge_list(in);
}

LocalGraph LocalGraph::lattice(int dimension) {
  if (dimension < 1) throw Error(ErrorCode::ConfigError, "lattice dimension must be >= 1");
  auto r = std::make_shared<detail::LatticeRealization>();
  r->d = dimension;
  return LocalGraph(std::move(r));
}

LocalGraph LocalGraph::regular_tree(int degree) {
  if (degree < 2) throw Error(ErrorCode::ConfigError, "tree degree must be >= 2");
  auto r = std::make_shared<detail::TreeRealization>();
  r->degree = degree;
  return LocalGraph(std::move(r));
}

LocalGraph line_graph(const LocalGraph& g) {
  return LocalGraph(std::make_shared<detail::LineRealization>(g));
}

LocalGraph::Kind LocalGraph::kind() const { return impl_->kind(); }
bool LocalGraph::is_finite() const { return impl_->is_finite(); }
bool LocalGraph::contains(const VertexId& v) const { return impl_->contains(v); }

std::vector<VertexId> LocalGraph::neighbors(const VertexId& v) const {
  if (!impl_->contains(v)) detail::invalid(v, impl_->description());
  auto out = impl_->raw_neighbors(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<VertexId> LocalGraph::vertices() const {
  if (!is_finite()) throw Error(ErrorCode::FiniteOnly, "vertex list requested for infinite graph " + description());
  if (kind() == Kind::LineGraph) {
    std::vector<VertexId> out;
    for (const auto& [a, b] : base().edges()) out.push_back(VertexId::pair(a, b));
    std::sort(out.begin(), out.end());
    return out;
  }
  return impl_->representatives();
}

std::vector<std::pair<VertexId, VertexId>> LocalGraph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (const auto& v : vertices())
    for (const auto& w : neighbors(v))
      if (v < w) out.emplace_back(v, w);
  return out;
}

std::vector<VertexId> LocalGraph::representatives() const {
  if (is_finite()) return vertices();
  return impl_->representatives();
}

int LocalGraph::dimension() const {
  if (auto* r = dynamic_cast<const detail::LatticeRealization*>(impl_.get())) return r->d;
  throw Error(ErrorCode::UnsupportedRealization, "not a lattice: " + description());
}

int LocalGraph::degree() const {
  if (auto* r = dynamic_cast<const detail::TreeRealization*>(impl_.get())) return r->degree;
  throw Error(ErrorCode::UnsupportedRealization, "not a tree: " + description());
}

const LocalGraph& LocalGraph::base() const {
  if (auto* r = dynamic_cast<const detail::LineRealization*>(impl_.get())) return r->base;
  throw Error(ErrorCode::UnsupportedRealization, "not a line graph: " + description());
}

std::string LocalGraph::description() const { return impl_->description(); }

Ball ball(const LocalGraph& g, const VertexId& v, int radius) {
  if (radius < 0) throw Error(ErrorCode::ConfigError, "radius must be nonnegative");
  if (!g.contains(v)) detail::invalid(v, g.description());
  Ball out;
  std::unordered_map<VertexId, int, VertexHash> seen;
  seen.emplace(v, 0);
  std::vector<VertexId> frontier{v};
  for (int depth = 0; depth < radius; ++depth) {
    out.interior.insert(out.interior.end(), frontier.begin(), frontier.end());
    std::vector<VertexId> next;
    for (const auto& u : frontier) {
      for (auto& w : g.neighbors(u)) {
        if (seen.emplace(w, depth + 1).second) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  out.sphere = std::move(frontier);
  std::sort(out.interior.begin(), out.interior.end());
  std::sort(out.sphere.begin(), out.sphere.end());
  return out;
}

std::vector<VertexId> sphere(const LocalGraph& g, const VertexId& v, int radius) {
  return ball(g, v, radius).sphere;
}

std::vector<VertexId> ball_interior(const LocalGraph& g, const VertexId& v, int radius) {
  if (radius < 1) throw Error(ErrorCode::ConfigError, "ball interior needs radius >= 1");
  return ball(g, v, radius).interior;
}

namespace {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Number of points of Z^d at L1 distance exactly r from the origin.
std::int64_t lattice_sphere_size(int d, int r) {
  if (r == 0) return 1;
  std::int64_t total = 0;
  for (int k = 1; k <= std::min(d, r); ++k) total += (std::int64_t{1} << k) * binomial(d, k) * binomial(r - 1, k - 1);
  return total;
}

}  // namespace

std::int64_t growth_bound(const LocalGraph& g, int radius) {
  if (radius < 0) throw Error(ErrorCode::ConfigError, "radius must be nonnegative");
  switch (g.kind()) {
    case LocalGraph::Kind::Lattice:
      return lattice_sphere_size(g.dimension(), radius);
    case LocalGraph::Kind::Tree: {
      if (radius == 0) return 1;
      std::int64_t s = g.degree();
      for (int i = 1; i < radius; ++i) s *= g.degree() - 1;
      return s;
    }
    default: {
      std::int64_t best = 0;
      for (const auto& v : g.representatives())
        best = std::max<std::int64_t>(best, static_cast<std::int64_t>(sphere(g, v, radius).size()));
      return best;
    }
  }
}

GrowthBound::GrowthBound(const LocalGraph& g, int max_radius) {
  if (max_radius < 0) throw Error(ErrorCode::ConfigError, "radius must be nonnegative");
  std::int64_t running = 0;
  for (int r = 0; r <= max_radius; ++r) {
    running = std::max(running, growth_bound(g, r));
    envelope_.push_back(running);
  }
}

std::int64_t GrowthBound::at(int radius) const {
  if (radius < 0 || radius > max_radius()) throw Error(ErrorCode::ConfigError, "radius outside growth table");
  return envelope_[static_cast<std::size_t>(radius)];
}

namespace graphs {

LocalGraph path(std::int64_t n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (std::int64_t i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return LocalGraph::finite(n, e);
}

LocalGraph cycle(std::int64_t n) {
  if (n < 3) throw Error(ErrorCode::ConfigError, "cycle needs at least 3 vertices");
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (std::int64_t i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(n, 1);
  return LocalGraph::finite(n, e);
}

LocalGraph grid(std::int64_t rows, std::int64_t cols) {
  auto id = [cols](std::int64_t r, std::int64_t c) { return r * cols + c + 1; };
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (std::int64_t r = 0; r < rows; ++r) {
    for (std::int64_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return LocalGraph::finite(rows * cols, e);
}

LocalGraph complete(std::int64_t n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (std::int64_t i = 1; i <= n; ++i)
    for (std::int64_t j = i + 1; j <= n; ++j) e.emplace_back(i, j);
  return LocalGraph::finite(n, e);
}

LocalGraph star(std::int64_t leaves) {
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (std::int64_t i = 2; i <= leaves + 1; ++i) e.emplace_back(1, i);
  return LocalGraph::finite(leaves + 1, e);
}

LocalGraph petersen() {
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (std::int64_t i = 0; i < 5; ++i) {
    e.emplace_back(i + 1, (i + 1) % 5 + 1);            // outer cycle
    e.emplace_back(i + 1, i + 6);                      // spokes
    e.emplace_back(i + 6, (i + 2) % 5 + 6);            // inner pentagram
  }
  return LocalGraph::finite(10, e);
}

LocalGraph single_vertex() { return LocalGraph::finite(1, {}); }

}  // namespace graphs

}  // namespace ssms
