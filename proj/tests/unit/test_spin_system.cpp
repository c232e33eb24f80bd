#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "ssms/error.hpp"
#include "ssms/kernels.hpp"
#include "ssms/spin_system.hpp"

using namespace ssms;

namespace {

VertexId ix(std::int64_t i) { return VertexId::index(i); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

oracle::Edges zero_based(const LocalGraph& g) {
  oracle::Edges out;
  for (const auto& [u, v] : g.edges()) out.emplace_back(u.as_index() - 1, v.as_index() - 1);
  return out;
}

LocalGraph random_finite(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution e(p);
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (e(rng)) edges.emplace_back(u, v);
  return LocalGraph::finite(n, edges);
}

}  // namespace

TEST(Models, Hardcore) {
  auto h = hardcore(1.0);
  EXPECT_EQ(h.q(), 2);
  EXPECT_EQ(h.field(1), 1.0);
  EXPECT_EQ(h.field(2), 1.0);
  EXPECT_EQ(h.interaction(2, 2), 0.0);
  EXPECT_EQ(hardcore(0.5).field(2), 0.5);
  EXPECT_EQ(code_of([] { hardcore(-1.0); }), ErrorCode::NonpositiveLambda);
  EXPECT_EQ(code_of([] { hardcore(0.0); }), ErrorCode::NonpositiveLambda);
}

TEST(Models, Ising) {
  auto s = ising(2.0);
  EXPECT_EQ(s.interaction(1, 1), 2.0);
  EXPECT_EQ(s.interaction(1, 2), 1.0);
  EXPECT_EQ(s.interaction(2, 2), 2.0);
  EXPECT_EQ(code_of([] { ising(0.5); }), ErrorCode::LambdaBelowOne);
  auto flat = ising(1.0);
  auto g = graphs::cycle(4);
  double z = partition_function(flat, g);
  EXPECT_DOUBLE_EQ(z, 16.0);
}

TEST(Models, Coloring) {
  auto s = coloring(3);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) EXPECT_EQ(s.interaction(i, j), i == j ? 0.0 : 1.0);
  EXPECT_EQ(code_of([] { coloring(1); }), ErrorCode::TooFewSpins);
}

TEST(Models, TwoColoringOfOddCycleHasNoWeight) {
  auto s = coloring(2);
  auto g = graphs::cycle(5);
  auto vs = g.vertices();
  for (int mask = 0; mask < 32; ++mask) {
    PartialConfiguration c;
    for (int k = 0; k < 5; ++k) c.assign(vs[k], ((mask >> k) & 1) + 1);
    EXPECT_EQ(config_weight(s, g, vs, c), 0.0);
  }
}

TEST(SpinSystem, ValidatesInputs) {
  EXPECT_EQ(code_of([] { SpinSystem(2, {1, 1}, {{1, 2}, {1, 1}}); }), ErrorCode::InvalidSystem);
  EXPECT_EQ(code_of([] { SpinSystem(2, {0, 0}, {{1, 1}, {1, 1}}); }), ErrorCode::InvalidSystem);
  EXPECT_EQ(code_of([] { SpinSystem(2, {1, -1}, {{1, 1}, {1, 1}}); }), ErrorCode::InvalidSystem);
  EXPECT_EQ(code_of([] { SpinSystem(2, {1, 1e100}, {{1, 1}, {1, 1}}); }), ErrorCode::InvalidSystem);
  EXPECT_EQ(code_of([] { SpinSystem(3, {1, 1}, {{1, 1}, {1, 1}}); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { SpinSystem(1, {1}, {{1}}); }), ErrorCode::TooFewSpins);
  EXPECT_NO_THROW(SpinSystem(2, {1, 0}, {{1, 1}, {1, 1}}));
}

TEST(ConfigWeight, Examples) {
  auto one = graphs::single_vertex();
  EXPECT_DOUBLE_EQ(config_weight(hardcore(0.7), one, one.vertices(), {{ix(1), 2}}), 0.7);
  auto edge = graphs::path(2);
  EXPECT_EQ(config_weight(hardcore(1.0), edge, edge.vertices(), {{ix(1), 2}, {ix(2), 2}}), 0.0);
  EXPECT_DOUBLE_EQ(config_weight(ising(2.0), edge, edge.vertices(), {{ix(1), 1}, {ix(2), 1}}), 2.0);
  EXPECT_EQ(code_of([&] { config_weight(ising(2.0), edge, edge.vertices(), {{ix(1), 1}}); }), ErrorCode::MissingSpin);
}

TEST(ConfigWeight, InvariantUnderVertexOrder) {
  std::mt19937_64 rng(21);
  auto sys = ising(1.7);
  for (int k = 0; k < 20; ++k) {
    auto g = random_finite(rng, 7, 0.4);
    auto vs = g.vertices();
    PartialConfiguration c;
    for (const auto& v : vs) c.assign(v, std::uniform_int_distribution<int>(1, 2)(rng));
    double w = config_weight(sys, g, vs, c);
    std::shuffle(vs.begin(), vs.end(), rng);
    PartialConfiguration shuffled;
    for (const auto& v : vs) shuffled.assign(v, *c.spin_of(v));
    EXPECT_NEAR(config_weight(sys, g, vs, shuffled), w, 1e-12 * w);
  }
}

TEST(PartitionFunction, Examples) {
  EXPECT_DOUBLE_EQ(partition_function(hardcore(0.4), graphs::single_vertex()), 1.4);
  EXPECT_DOUBLE_EQ(partition_function(hardcore(1.0), graphs::path(3)), 5.0);
  EXPECT_EQ(code_of([] { partition_function(coloring(2), graphs::complete(3)); }), ErrorCode::DegenerateSystem);
  EXPECT_EQ(code_of([] { partition_function(coloring(2), graphs::path(23)); }), ErrorCode::TooLarge);
}

TEST(PartitionFunction, MatchesIndependentEnumerator) {
  std::mt19937_64 rng(22);
  struct Case {
    SpinSystem sys;
    oracle::Model ref;
  };
  std::vector<Case> cases = {{hardcore(0.6), oracle::hardcore(0.6)},
                             {ising(1.9), oracle::ising(1.9)},
                             {coloring(4), oracle::coloring(4)}};
  for (const auto& [sys, ref] : cases)
    for (int k = 0; k < 8; ++k) {
      auto g = random_finite(rng, 7, 0.35);
      double expected = oracle::partition_function(ref, 7, zero_based(g));
      if (expected == 0.0) continue;
      EXPECT_NEAR(partition_function(sys, g), expected, 1e-10 * expected) << sys.label();
    }
}

TEST(PartitionFunction, HardcorePathRecurrence) {
  for (double lambda : {0.3, 1.0, 2.5}) {
    std::vector<double> z = {1.0, 1.0 + lambda};
    for (int n = 2; n <= 10; ++n) z.push_back(z[n - 1] + lambda * z[n - 2]);
    for (int n = 1; n <= 10; ++n)
      EXPECT_NEAR(partition_function(hardcore(lambda), graphs::path(n)), z[n], 1e-12 * z[n]) << n;
  }
}

TEST(Feasibility, Examples) {
  auto edge = graphs::path(2);
  EXPECT_FALSE(is_feasible(hardcore(1.0), edge, {{ix(1), 2}, {ix(2), 2}}, edge.vertices()));
  auto g = graphs::grid(3, 3);
  PartialConfiguration empty_sites;
  for (const auto& v : g.vertices())
    if (v.as_index() % 2 == 0) empty_sites.assign(v, 1);
  EXPECT_TRUE(is_feasible(hardcore(1.0), g, empty_sites, g.vertices()));
  auto p3 = graphs::path(3);
  EXPECT_TRUE(is_feasible(coloring(3), p3, {{ix(1), 1}, {ix(3), 2}}, p3.vertices()));
}

TEST(Feasibility, MonotoneUnderRestriction) {
  std::mt19937_64 rng(23);
  auto sys = coloring(3);
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    auto g = random_finite(rng, 7, 0.45);
    auto vs = g.vertices();
    PartialConfiguration big;
    for (const auto& v : vs)
      if (std::bernoulli_distribution(0.6)(rng)) big.assign(v, std::uniform_int_distribution<int>(1, 3)(rng));
    if (!is_feasible(sys, g, big, vs)) continue;
    ++checked;
    auto entries = big.entries();
    for (std::size_t keep = 0; keep < entries.size(); ++keep) {
      PartialConfiguration smaller;
      for (std::size_t i = 0; i < keep; ++i) smaller.assign(entries[i].first, entries[i].second);
      EXPECT_TRUE(is_feasible(sys, g, smaller, vs));
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(GibbsDistribution, MatchesOracleOrder) {
  auto g = graphs::cycle(4);
  auto p = gibbs_distribution(ising(1.3), g);
  auto ref = oracle::joint(oracle::ising(1.3), 4, zero_based(g));
  ASSERT_EQ(p.size(), ref.size());
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], ref[i], 1e-14);
}

TEST(PartialConfiguration, KeepsInsertionOrderAndRejectsDuplicates) {
  PartialConfiguration c;
  c.assign(ix(3), 1);
  c.assign(ix(1), 2);
  EXPECT_EQ(c.entries().front().first, ix(3));
  EXPECT_THROW(c.assign(ix(3), 2), Error);
  EXPECT_THROW(c.assign(ix(5), 0), Error);
  c.truncate(1);
  EXPECT_FALSE(c.contains(ix(1)));
  EXPECT_EQ(c.spin_of(ix(3)), 1);
}

namespace {

kernels::LocalProblem random_problem(std::mt19937_64& rng) {
  kernels::LocalProblem p;
  p.q = std::uniform_int_distribution<int>(2, 3)(rng);
  const int n = std::uniform_int_distribution<int>(2, 9)(rng);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  p.field.resize(static_cast<std::size_t>(p.q));
  for (auto& b : p.field) b = std::bernoulli_distribution(0.15)(rng) ? 0.0 : w(rng);
  p.interaction.assign(static_cast<std::size_t>(p.q * p.q), 0.0);
  for (int i = 0; i < p.q; ++i)
    for (int j = i; j < p.q; ++j) {
      double a = std::bernoulli_distribution(0.2)(rng) ? 0.0 : w(rng);
      p.interaction[static_cast<std::size_t>(i * p.q + j)] = p.interaction[static_cast<std::size_t>(j * p.q + i)] = a;
    }
  p.adjacency.resize(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (std::bernoulli_distribution(0.4)(rng)) {
        p.adjacency[static_cast<std::size_t>(u)].push_back(v);
        p.adjacency[static_cast<std::size_t>(v)].push_back(u);
      }
  p.fixed_spin.assign(static_cast<std::size_t>(n), -1);
  for (int u = 0; u < n; ++u) {
    double r = w(rng);
    if (r < 0.25)
      p.fixed_spin[static_cast<std::size_t>(u)] = std::uniform_int_distribution<int>(0, p.q - 1)(rng);
    else if (r < 0.55)
      p.outer.push_back(u);
    else
      p.free.push_back(u);
  }
  if (!p.free.empty() && std::bernoulli_distribution(0.7)(rng))
    p.target = p.free[std::uniform_int_distribution<std::size_t>(0, p.free.size() - 1)(rng)];
  return p;
}

}  // namespace

TEST(Kernels, ParallelMatchesSerialReference) {
  std::mt19937_64 rng(24);
  for (int k = 0; k < 300; ++k) {
    auto p = random_problem(rng);
    auto fast = kernels::row_sums(p);
    auto ref = kernels::row_sums_serial(p);
    ASSERT_EQ(fast.sums.size(), ref.sums.size());
    for (std::size_t i = 0; i < ref.sums.size(); ++i)
      EXPECT_NEAR(fast.sums[i], ref.sums[i], 1e-12 * std::max(1.0, ref.sums[i])) << "case " << k << " entry " << i;
  }
}

TEST(Kernels, AssignmentWeightsSumToRowTotal) {
  std::mt19937_64 rng(25);
  for (int k = 0; k < 100; ++k) {
    auto p = random_problem(rng);
    p.free.insert(p.free.end(), p.outer.begin(), p.outer.end());
    p.outer.clear();
    p.target = -1;
    auto w = kernels::assignment_weights(p);
    double total = 0.0;
    for (double x : w) total += x;
    EXPECT_NEAR(total, kernels::row_sums_serial(p).sums[0], 1e-12 * std::max(1.0, total));
  }
}

TEST(Kernels, RefusesOversizedEnumeration) {
  EXPECT_NO_THROW(kernels::check_cap(2, 22));
  EXPECT_THROW(kernels::check_cap(2, 23), Error);
  EXPECT_THROW(kernels::check_cap(5, 10), Error);
}
