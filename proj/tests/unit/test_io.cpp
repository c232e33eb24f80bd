#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ssms/error.hpp"
#include "ssms/report.hpp"
#include "ssms/run_config.hpp"

using namespace ssms;

namespace {

VertexId c(std::int64_t x, std::int64_t y) { return VertexId::coord({x, y}); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

// Sets an environment variable for the lifetime of the guard.
struct EnvGuard {
  std::string name;
  EnvGuard(std::string n, const char* value) : name(std::move(n)) {
    if (value)
      setenv(name.c_str(), value, 1);
    else
      unsetenv(name.c_str());
  }
  ~EnvGuard() { unsetenv(name.c_str()); }
};

}  // namespace

TEST(Report, JsonLayout) {
  WindowSample sample;
  sample.spins.assign(c(0, 1), 2);
  sample.spins.assign(c(0, 0), 1);
  sample.stats = {5, 2, 1, {}};
  auto r = RunReport::from(7, "hardcore(lambda=0.5)", "Z^2", 2, {c(0, 1), c(0, 0)}, sample);
  EXPECT_EQ(r.to_json(),
            "{\n"
            "  \"seed\": 7,\n"
            "  \"model\": \"hardcore(lambda=0.5)\",\n"
            "  \"graph\": \"Z^2\",\n"
            "  \"ell\": 2,\n"
            "  \"window\": [\n"
            "    \"(0,1)\",\n"
            "    \"(0,0)\"\n"
            "  ],\n"
            "  \"total_calls\": 5,\n"
            "  \"max_depth\": 2,\n"
            "  \"indecision_events\": 1,\n"
            "  \"wall_time_ms\": null,\n"
            "  \"spins\": {\n"
            "    \"(0,1)\": 2,\n"
            "    \"(0,0)\": 1\n"
            "  }\n"
            "}\n");
  r.wall_time_ms = 1.5;
  EXPECT_NE(r.to_json().find("\"wall_time_ms\": 1.5"), std::string::npos);
}

TEST(Report, CsvIsSortedAndQuoted) {
  PartialConfiguration spins{{c(1, 0), 2}, {c(0, 0), 1}};
  std::ostringstream out;
  write_spins_csv(out, spins);
  EXPECT_EQ(out.str(), "vertex,spin\n\"(0,0)\",1\n\"(1,0)\",2\n");
}

TEST(Report, PgmOfRectangle) {
  PartialConfiguration spins{{c(0, 0), 1}, {c(0, 1), 2}, {c(0, 2), 1}, {c(1, 0), 2}, {c(1, 1), 1}, {c(1, 2), 2}};
  std::ostringstream out;
  ASSERT_TRUE(write_pgm(out, spins));
  std::string expected = "P5\n3 2\n255\n";
  expected += std::string{'\0', '\xff', '\0', '\xff', '\0', '\xff'};
  EXPECT_EQ(out.str(), expected);
}

TEST(Report, PgmRefusesNonRectangles) {
  std::ostringstream out;
  EXPECT_FALSE(write_pgm(out, {{c(0, 0), 1}, {c(1, 1), 1}}));
  EXPECT_FALSE(write_pgm(out, {{c(0, 0), 3}}));
  EXPECT_FALSE(write_pgm(out, {{VertexId::index(1), 1}}));
  EXPECT_FALSE(write_pgm(out, {}));
  EXPECT_TRUE(out.str().empty());
}

TEST(GraphSpec, Parses) {
  EXPECT_EQ(parse_graph("z2").kind(), LocalGraph::Kind::Lattice);
  EXPECT_EQ(parse_graph("zd:3").dimension(), 3);
  EXPECT_EQ(parse_graph("tree:4").neighbors(VertexId::coord({})).size(), 4u);
  EXPECT_EQ(parse_graph("path:5").vertices().size(), 5u);
  EXPECT_EQ(parse_graph("cycle:5").edges().size(), 5u);
  EXPECT_EQ(parse_graph("grid:2x3").vertices().size(), 6u);
  EXPECT_EQ(parse_graph("complete:4").edges().size(), 6u);
  EXPECT_EQ(parse_graph("star:3").edges().size(), 3u);
  EXPECT_EQ(parse_graph("petersen").edges().size(), 15u);
  EXPECT_EQ(parse_graph("line:complete:4").vertices().size(), 6u);
  for (const char* bad : {"", "z3", "path:", "path:x", "grid:3", "tree:1", "line:", "hexagonal"})
    EXPECT_EQ(code_of([&] { parse_graph(bad); }), ErrorCode::ConfigError) << bad;
}

TEST(GraphSpec, LoadsFile) {
  auto path = std::filesystem::temp_directory_path() / "ssms_test_graph.txt";
  {
    std::ofstream f(path);
    f << "3 3\n1 2\n2 3\n1 3\n";
  }
  EXPECT_EQ(parse_graph("file:" + path.string()).edges().size(), 3u);
  std::filesystem::remove(path);
  EXPECT_NE(code_of([&] { parse_graph("file:" + path.string()); }), ErrorCode::InternalError);
}

TEST(ModelSpec, Builds) {
  auto hc = build_model({"hardcore", 0.5, {}, {}}, graphs::path(3));
  EXPECT_EQ(hc.system.field(2), 0.5);
  auto md = build_model({"monomer-dimer", {}, 2.0, {}}, graphs::path(3));
  EXPECT_EQ(md.graph.vertices().size(), 2u);
  EXPECT_NE(md.system.label().find("monomer-dimer"), std::string::npos);
  EXPECT_EQ(build_model({"coloring", {}, {}, 5}, graphs::path(3)).system.q(), 5);
  EXPECT_EQ(code_of([] { build_model({"hardcore", {}, {}, {}}, graphs::path(3)); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { build_model({"potts", 1.0, {}, {}}, graphs::path(3)); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { build_model({"ising", 0.5, {}, {}}, graphs::path(3)); }), ErrorCode::LambdaBelowOne);
  EXPECT_EQ(code_of([] { build_model({"monomer-dimer", {}, -1.0, {}}, graphs::path(3)); }), ErrorCode::NonpositiveLambda);
}

TEST(WindowSpec, Parses) {
  auto z2 = LocalGraph::lattice(2);
  auto box = parse_window("box:2x3@1,-1", z2);
  EXPECT_EQ(box, (std::vector<VertexId>{c(1, -1), c(1, 0), c(1, 1), c(2, -1), c(2, 0), c(2, 1)}));
  EXPECT_EQ(parse_window("list:(0,0)|(5,5)", z2), (std::vector<VertexId>{c(0, 0), c(5, 5)}));
  EXPECT_EQ(parse_window("all", graphs::path(3)).size(), 3u);
  EXPECT_EQ(code_of([&] { parse_window("all", z2); }), ErrorCode::FiniteOnly);
  EXPECT_EQ(code_of([&] { parse_window("box:2x2@0,0", graphs::path(3)); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([&] { parse_window("list:7", graphs::path(3)); }), ErrorCode::InvalidVertex);
  EXPECT_EQ(code_of([&] { parse_window("box:0x2@0,0", z2); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([&] { parse_window("square", z2); }), ErrorCode::ConfigError);
}

TEST(RunConfig, Validates) {
  RunConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.radius = 0;
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::ConfigError);
  cfg.radius = 1;
  cfg.seed = 0;
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::ConfigError);
  cfg.seed = 1;
  cfg.budget = 0;
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::ConfigError);
}

TEST(RunConfig, BudgetFromEnvironment) {
  {
    EnvGuard g("SSMS_BUDGET", nullptr);
    EXPECT_EQ(budget_from_env(123), 123u);
  }
  {
    EnvGuard g("SSMS_BUDGET", "5000");
    EXPECT_EQ(budget_from_env(123), 5000u);
  }
  {
    EnvGuard g("SSMS_BUDGET", "0");
    EXPECT_EQ(code_of([] { budget_from_env(1); }), ErrorCode::ConfigError);
  }
  {
    EnvGuard g("SSMS_BUDGET", "lots");
    EXPECT_NE(code_of([] { budget_from_env(1); }), ErrorCode::InternalError);
  }
}
