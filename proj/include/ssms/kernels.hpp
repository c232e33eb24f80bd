#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Brute-force enumeration kernels over a small, graph-agnostic factor problem.
//
// A LocalProblem is a handful of vertices with local indices 0..n-1, each one
// either fixed to a spin, an "outer" vertex whose assignments index the rows
// of the result, or a "free" vertex that is summed out. Every row of the
// result holds, for each spin of the target vertex, the total weight of the
// free-vertex extensions that give the target that spin.
//
// Row weights omit every factor that involves no free vertex (the field of
// outer vertices, outer-outer, outer-fixed and fixed-fixed edges). Those
// factors are constant within a row and cancel in any conditional
// distribution; they only decide feasibility, so a row whose omitted
// factors multiply to zero is reported as all zeros.
//
// row_sums() is the production kernel: depth-first with prefix products and
// zero-pruning, OpenMP-parallel over rows. row_sums_serial() is the
// reference: it evaluates the full product for every assignment with no
// pruning or reuse, and exists to check the fast path.

namespace ssms::kernels {

/// Enumeration refuses problems with more than q^k > 2^22 assignments.
inline constexpr double kCapLog2 = 22.0;

struct LocalProblem {
  int q = 2;
  std::vector<double> field;        // size q
  std::vector<double> interaction;  // q*q, row-major, symmetric
  std::vector<std::vector<int>> adjacency;
  std::vector<int> fixed_spin;      // 0-based spin, or -1 when not fixed
  std::vector<int> outer;           // row vertices, most significant first
  std::vector<int> free;            // summed-out vertices, in enumeration order
  int target = -1;                  // member of `free`; -1 gives one total column

  int size() const { return static_cast<int>(adjacency.size()); }
  int columns() const { return target < 0 ? 1 : q; }
  std::size_t rows() const;
};

struct RowSums {
  int columns = 1;
  std::size_t rows = 1;
  std::vector<double> sums;  // rows * columns

  const double* row(std::size_t r) const { return sums.data() + r * static_cast<std::size_t>(columns); }
  double row_total(std::size_t r) const;
};

/// Throws TooLarge when q^count exceeds the cap.
void check_cap(int q, std::size_t count);

/// Spin of `outer[k]` in row r (0-based), lexicographic with outer[0] most significant.
int outer_spin(const LocalProblem& p, std::size_t r, std::size_t k);

RowSums row_sums(const LocalProblem& p);
RowSums row_sums_serial(const LocalProblem& p);

/// Weight of every assignment of the free vertices (no outer vertices
/// allowed), indexed lexicographically with free[0] most significant.
/// Same factor convention as row_sums.
std::vector<double> assignment_weights(const LocalProblem& p);

}  // namespace ssms::kernels
