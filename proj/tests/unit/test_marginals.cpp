#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "ssms/error.hpp"
#include "ssms/marginals.hpp"

using namespace ssms;

namespace {

VertexId ix(std::int64_t i) { return VertexId::index(i); }

LocalGraph random_connected(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution e(p);
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  for (int u = 2; u <= n; ++u) edges.emplace_back(std::uniform_int_distribution<int>(1, u - 1)(rng), u);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (e(rng) && std::find(edges.begin(), edges.end(), std::pair<std::int64_t, std::int64_t>(u, v)) == edges.end() &&
          std::find(edges.begin(), edges.end(), std::pair<std::int64_t, std::int64_t>(v, u)) == edges.end())
        edges.emplace_back(u, v);
  return LocalGraph::finite(n, edges);
}

oracle::Edges zero_based(const LocalGraph& g) {
  oracle::Edges out;
  for (const auto& [u, v] : g.edges()) out.emplace_back(u.as_index() - 1, v.as_index() - 1);
  return out;
}

}  // namespace

TEST(SpinDistribution, Validates) {
  EXPECT_THROW(SpinDistribution({0.5, 0.6}), Error);
  EXPECT_THROW(SpinDistribution({1.5, -0.5}), Error);
  double w[2] = {0.0, 0.0};
  try {
    SpinDistribution::from_weights(w, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleBoundary);
  }
  double v[3] = {1.0, 2.0, 1.0};
  EXPECT_DOUBLE_EQ(SpinDistribution::from_weights(v, 3)(2), 0.5);
}

TEST(MinMarginals, HardcorePathCentre) {
  auto m = min_marginals(hardcore(1.0), graphs::path(3), {}, ix(2), 1);
  EXPECT_DOUBLE_EQ(m.spin[0], 0.5);
  EXPECT_DOUBLE_EQ(m.spin[1], 0.0);
  EXPECT_DOUBLE_EQ(m.indecision, 0.5);
}

TEST(MinMarginals, ContextOnTheSphereRemovesIndecision) {
  auto m = min_marginals(hardcore(1.0), graphs::path(3), {{ix(1), 1}, {ix(3), 1}}, ix(2), 1);
  EXPECT_DOUBLE_EQ(m.spin[0], 0.5);
  EXPECT_DOUBLE_EQ(m.spin[1], 0.5);
  EXPECT_NEAR(m.indecision, 0.0, 1e-15);
}

TEST(MinMarginals, ColoringOnAnEdgeIsFullyUndecided) {
  for (int q : {3, 4, 5}) {
    auto table = boundary_table(coloring(q), graphs::path(2), {}, ix(1), 1);
    auto m = min_marginals(table);
    for (double p : m.spin) EXPECT_EQ(p, 0.0);
    EXPECT_DOUBLE_EQ(m.indecision, 1.0);
    EXPECT_NEAR(max_pairwise_tv(table), 1.0 / (q - 1), 1e-15);
  }
}

TEST(MinMarginals, IsingAtOneIsFree) {
  auto m = min_marginals(ising(1.0), LocalGraph::lattice(2), {}, VertexId::coord({0, 0}), 1);
  EXPECT_DOUBLE_EQ(m.spin[0], 0.5);
  EXPECT_DOUBLE_EQ(m.spin[1], 0.5);
  EXPECT_NEAR(m.indecision, 0.0, 1e-15);
}

TEST(MinMarginals, EqualsColumnMinimumOverFeasibleRows) {
  std::mt19937_64 rng(31);
  std::vector<SpinSystem> systems = {hardcore(0.8), ising(1.6), coloring(3)};
  for (const auto& sys : systems)
    for (int k = 0; k < 15; ++k) {
      auto g = random_connected(rng, 7, 0.2);
      auto v = ix(std::uniform_int_distribution<int>(1, 7)(rng));
      int radius = std::uniform_int_distribution<int>(1, 2)(rng);
      BoundaryTable table;
      try {
        table = boundary_table(sys, g, {}, v, radius);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InfeasibleContext);
        continue;
      }
      auto m = min_marginals(table);
      double total = m.indecision;
      for (int i = 0; i < sys.q(); ++i) {
        double lo = 1.0;
        for (std::size_t r = 0; r < table.feasible_rows(); ++r) {
          EXPECT_LE(m.spin[static_cast<std::size_t>(i)], table.row(r)[i] + 1e-15);
          lo = std::min(lo, table.row(r)[i]);
        }
        EXPECT_DOUBLE_EQ(m.spin[static_cast<std::size_t>(i)], lo);
        total += m.spin[static_cast<std::size_t>(i)];
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
      EXPECT_GE(m.indecision, -1e-12);
    }
}

TEST(MinMarginals, IndecisionBoundedByQTimesTv) {
  std::mt19937_64 rng(32);
  std::vector<SpinSystem> systems = {hardcore(1.3), ising(2.0), coloring(4)};
  for (const auto& sys : systems)
    for (int k = 0; k < 15; ++k) {
      auto g = random_connected(rng, 6, 0.3);
      auto v = ix(std::uniform_int_distribution<int>(1, 6)(rng));
      BoundaryTable table;
      try {
        table = boundary_table(sys, g, {}, v, 1);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InfeasibleContext);
        continue;
      }
      EXPECT_LE(min_marginals(table).indecision, sys.q() * max_pairwise_tv(table) + 1e-9);
    }
}

TEST(BallMarginal, AgreesWithWholeGraphEnumeration) {
  std::mt19937_64 rng(33);
  struct Case {
    SpinSystem sys;
    oracle::Model ref;
  };
  std::vector<Case> cases = {{hardcore(0.9), oracle::hardcore(0.9)}, {ising(1.4), oracle::ising(1.4)}};
  int checked = 0;
  for (const auto& [sys, ref] : cases)
    for (int k = 0; k < 40; ++k) {
      const int n = 8;
      auto g = random_connected(rng, n, 0.15);
      auto v = ix(std::uniform_int_distribution<int>(1, n)(rng));
      int radius = std::uniform_int_distribution<int>(1, 2)(rng);
      auto shell = sphere(g, v, radius);
      if (shell.empty()) continue;
      PartialConfiguration ctx;
      std::vector<int> fixed(n, -1);
      for (const auto& w : shell) {
        int s = std::uniform_int_distribution<int>(1, 2)(rng);
        ctx.assign(w, s);
        fixed[static_cast<std::size_t>(w.as_index() - 1)] = s - 1;
      }
      auto expected = oracle::marginal(ref, n, zero_based(g), fixed, static_cast<int>(v.as_index() - 1));
      if (std::isnan(expected[0])) continue;
      auto got = ball_marginal(sys, g, ctx, v, radius);
      for (int i = 0; i < 2; ++i) EXPECT_NEAR(got(i + 1), expected[static_cast<std::size_t>(i)], 1e-12);
      ++checked;
    }
  EXPECT_GT(checked, 30);
}

TEST(BallMarginal, MarkovPropertyOnTheSphere) {
  std::mt19937_64 rng(34);
  auto sys = ising(1.8);
  auto ref = oracle::ising(1.8);
  for (int k = 0; k < 20; ++k) {
    const int n = 8;
    auto g = random_connected(rng, n, 0.2);
    auto v = ix(std::uniform_int_distribution<int>(1, n)(rng));
    auto shell = sphere(g, v, 1);
    std::vector<int> sphere_only(n, -1);
    for (const auto& w : shell) sphere_only[static_cast<std::size_t>(w.as_index() - 1)] = std::uniform_int_distribution<int>(0, 1)(rng);
    auto everything = sphere_only;
    for (int u = 0; u < n; ++u)
      if (everything[static_cast<std::size_t>(u)] < 0 && ix(u + 1) != v)
        everything[static_cast<std::size_t>(u)] = std::uniform_int_distribution<int>(0, 1)(rng);
    auto a = oracle::marginal(ref, n, zero_based(g), sphere_only, static_cast<int>(v.as_index() - 1));
    auto b = oracle::marginal(ref, n, zero_based(g), everything, static_cast<int>(v.as_index() - 1));
    EXPECT_NEAR(a[0], b[0], 1e-12);
    PartialConfiguration ctx;
    for (const auto& w : shell) ctx.assign(w, sphere_only[static_cast<std::size_t>(w.as_index() - 1)] + 1);
    EXPECT_NEAR(ball_marginal(sys, g, ctx, v, 1)(1), a[0], 1e-12);
  }
}

TEST(ConditionalMarginal, RejectsUnseparatedSupport) {
  auto g = graphs::path(4);
  EXPECT_THROW(conditional_marginal(hardcore(1.0), g, ix(2), {}, {ix(1), ix(2)}), Error);
  auto d = conditional_marginal(hardcore(1.0), g, ix(2), {{ix(3), 1}}, {ix(1), ix(2)});
  EXPECT_NEAR(d(2), 1.0 / 3.0, 1e-15);
}

TEST(TvDistance, Examples) {
  EXPECT_DOUBLE_EQ(tv_distance(SpinDistribution({1.0, 0.0}), SpinDistribution({0.0, 1.0})), 1.0);
  EXPECT_DOUBLE_EQ(tv_distance(SpinDistribution({0.5, 0.5}), SpinDistribution({0.5, 0.5})), 0.0);
  EXPECT_NEAR(tv_distance(SpinDistribution({0.2, 0.3, 0.5}), SpinDistribution({0.3, 0.3, 0.4})), 0.1, 1e-15);
  EXPECT_THROW(tv_distance(SpinDistribution({1.0, 0.0}), SpinDistribution({1.0, 0.0, 0.0})), Error);
}

TEST(TvDistance, ColoringNeighbourFamily) {
  // mu_j is uniform on the q-1 spins other than j
  for (int q : {3, 4, 6}) {
    std::vector<std::vector<double>> mu(static_cast<std::size_t>(q), std::vector<double>(static_cast<std::size_t>(q), 1.0 / (q - 1)));
    for (int j = 0; j < q; ++j) mu[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = 0.0;
    for (int a = 0; a < q; ++a)
      for (int b = a + 1; b < q; ++b)
        EXPECT_NEAR(tv_distance(mu[static_cast<std::size_t>(a)].data(), mu[static_cast<std::size_t>(b)].data(), q), 1.0 / (q - 1), 1e-15);
  }
}

TEST(MixingRateEstimate, Examples) {
  EXPECT_NEAR(mixing_rate_estimate(ising(1.0), LocalGraph::lattice(2), VertexId::coord({0, 0}), 1, {}), 0.0, 1e-15);
  // hardcore(1) on P3 centre: occupation 1/2 with both ends empty, else 0
  EXPECT_DOUBLE_EQ(mixing_rate_estimate(hardcore(1.0), graphs::path(3), ix(2), 1, {}), 0.5);
  EXPECT_DOUBLE_EQ(mixing_rate_estimate(coloring(3), graphs::path(2), ix(1), 1, {}), 0.5);
}

TEST(MixingRate, CsvRoundTrip) {
  MixingRate r;
  r.set(1, 0.25);
  r.set(3, 0.0625);
  std::stringstream io;
  r.write_csv(io);
  auto back = MixingRate::read_csv(io);
  EXPECT_EQ(back.rate, r.rate);
  EXPECT_EQ(back.provenance, MixingRate::Provenance::UserSupplied);
  try {
    back.at(2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingRate);
  }
  EXPECT_THROW(r.set(2, 1.5), Error);
}
