// Enumeration kernel throughput: OpenMP row_sums against the serial reference.

#include <benchmark/benchmark.h>

#include <cmath>

#include "ssms/local_problem.hpp"
#include "ssms/marginals.hpp"

using namespace ssms;

namespace {

// Boundary-table problem of the given system around v: sphere vertices index
// rows, interior vertices are summed out, v is the target.
kernels::LocalProblem ball_problem(const SpinSystem& sys, const LocalGraph& g, const VertexId& v, int radius) {
  auto b = ball(g, v, radius);
  std::vector<VertexId> vertices = b.interior;
  vertices.insert(vertices.end(), b.sphere.begin(), b.sphere.end());
  return LocalProblemBuilder{sys, g}.build(vertices, {}, b.sphere, &v, true);
}

// Whole-graph problem: every vertex free, no rows.
kernels::LocalProblem grid_problem(const SpinSystem& sys, int rows, int cols) {
  auto g = graphs::grid(rows, cols);
  auto vs = g.vertices();
  return LocalProblemBuilder{sys, g}.build(vs, {}, {}, &vs.front(), true);
}

template <class Kernel>
void run(benchmark::State& state, const kernels::LocalProblem& p, Kernel kernel) {
  for (auto _ : state) benchmark::DoNotOptimize(kernel(p));
  state.counters["assignments"] = static_cast<double>(p.rows()) * std::pow(p.q, p.free.size());
}

const auto lattice_r2 = ball_problem(hardcore(0.5), LocalGraph::lattice(2), VertexId::coord({0, 0}), 2);
const auto petersen_r2 = ball_problem(ising(1.2), graphs::petersen(), VertexId::index(1), 2);
const auto cube_col = ball_problem(coloring(4), LocalGraph::lattice(3), VertexId::coord({0, 0, 0}), 1);
const auto grid_4x5 = grid_problem(ising(1.5), 4, 5);

}  // namespace

BENCHMARK_CAPTURE(run, lattice_r2_omp, lattice_r2, kernels::row_sums);
BENCHMARK_CAPTURE(run, lattice_r2_serial, lattice_r2, kernels::row_sums_serial);
BENCHMARK_CAPTURE(run, petersen_r2_omp, petersen_r2, kernels::row_sums);
BENCHMARK_CAPTURE(run, petersen_r2_serial, petersen_r2, kernels::row_sums_serial);
BENCHMARK_CAPTURE(run, z3_coloring_r1_omp, cube_col, kernels::row_sums);
BENCHMARK_CAPTURE(run, z3_coloring_r1_serial, cube_col, kernels::row_sums_serial);
BENCHMARK_CAPTURE(run, grid4x5_omp, grid_4x5, kernels::row_sums);
BENCHMARK_CAPTURE(run, grid4x5_serial, grid_4x5, kernels::row_sums_serial);

BENCHMARK_MAIN();
