#include <omp.h>

#include <cstdint>

#include "ssms/error.hpp"
#include "ssms/kernels.hpp"

namespace ssms::kernels {

namespace {

// Below this many leaf assignments a parallel region costs more than it saves.
constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

struct Plan {
  int q = 2;
  std::size_t n_outer = 0;
  std::size_t depth = 0;                // outer + free
  std::vector<int> order;               // local vertex at each position
  std::vector<double> base;             // depth * q: field times fixed-neighbour factors
  std::vector<std::size_t> earlier_off; // CSR offsets into earlier
  std::vector<std::size_t> earlier;     // positions of non-fixed neighbours placed before
  std::size_t target_pos = 0;
  bool has_target = false;
  bool fixed_ok = true;                 // fixed-fixed edges and fixed fields are nonzero
};

Plan make_plan(const LocalProblem& p) {
  Plan plan;
  plan.q = p.q;
  const auto q = static_cast<std::size_t>(p.q);
  const auto n = static_cast<std::size_t>(p.size());
  auto A = [&](int a, int b) { return p.interaction[static_cast<std::size_t>(a) * q + static_cast<std::size_t>(b)]; };

  std::vector<std::ptrdiff_t> pos(n, -1);
  plan.order.insert(plan.order.end(), p.outer.begin(), p.outer.end());
  plan.order.insert(plan.order.end(), p.free.begin(), p.free.end());
  plan.n_outer = p.outer.size();
  plan.depth = plan.order.size();
  for (std::size_t k = 0; k < plan.depth; ++k) pos[static_cast<std::size_t>(plan.order[k])] = static_cast<std::ptrdiff_t>(k);

  for (std::size_t u = 0; u < n; ++u) {
    int s = p.fixed_spin[u];
    if (pos[u] >= 0) continue;
    if (p.field[static_cast<std::size_t>(s)] == 0.0) plan.fixed_ok = false;
    for (int w : p.adjacency[u])
      if (pos[static_cast<std::size_t>(w)] < 0 && A(s, p.fixed_spin[static_cast<std::size_t>(w)]) == 0.0) plan.fixed_ok = false;
  }

  plan.base.assign(plan.depth * q, 0.0);
  plan.earlier_off.assign(plan.depth + 1, 0);
  for (std::size_t k = 0; k < plan.depth; ++k) {
    auto u = static_cast<std::size_t>(plan.order[k]);
    for (std::size_t s = 0; s < q; ++s) {
      double f = p.field[s];
      for (int w : p.adjacency[u])
        if (pos[static_cast<std::size_t>(w)] < 0) f *= A(static_cast<int>(s), p.fixed_spin[static_cast<std::size_t>(w)]);
      plan.base[k * q + s] = f;
    }
    for (int w : p.adjacency[u]) {
      auto pw = pos[static_cast<std::size_t>(w)];
      if (pw >= 0 && static_cast<std::size_t>(pw) < k) plan.earlier.push_back(static_cast<std::size_t>(pw));
    }
    plan.earlier_off[k + 1] = plan.earlier.size();
  }
  if (p.target >= 0) {
    plan.has_target = true;
    plan.target_pos = static_cast<std::size_t>(pos[static_cast<std::size_t>(p.target)]);
  }
  return plan;
}

// Weight contributed by placing spin s at position k, given spins at earlier positions.
inline double step(const Plan& plan, const std::vector<double>& A, std::size_t q, std::size_t k, int s,
                   const int* spins) {
  double w = plan.base[k * q + static_cast<std::size_t>(s)];
  for (std::size_t e = plan.earlier_off[k]; e < plan.earlier_off[k + 1] && w != 0.0; ++e)
    w *= A[static_cast<std::size_t>(s) * q + static_cast<std::size_t>(spins[plan.earlier[e]])];
  return w;
}

void fill_row(const Plan& plan, const LocalProblem& p, std::size_t r, int* spins, double* prefix, double* acc) {
  const auto q = static_cast<std::size_t>(plan.q);
  const auto& A = p.interaction;

  std::size_t rest = r;
  for (std::size_t k = plan.n_outer; k-- > 0;) {
    spins[k] = static_cast<int>(rest % q);
    rest /= q;
  }
  double gate = 1.0;
  for (std::size_t k = 0; k < plan.n_outer && gate != 0.0; ++k) gate *= step(plan, A, q, k, spins[k], spins);
  if (gate == 0.0) return;

  const std::size_t first = plan.n_outer;
  const std::size_t last = plan.depth;
  if (first == last) {
    acc[0] += 1.0;
    return;
  }
  std::size_t level = first;
  prefix[level] = 1.0;
  spins[level] = -1;
  while (true) {
    int s = ++spins[level];
    if (s == plan.q) {
      if (level == first) break;
      --level;
      continue;
    }
    double w = prefix[level] * step(plan, A, q, level, s, spins);
    if (w == 0.0) continue;
    if (level + 1 == last) {
      acc[plan.has_target ? spins[plan.target_pos] : 0] += w;
      continue;
    }
    prefix[++level] = w;
    spins[level] = -1;
  }
}

}  // namespace

RowSums row_sums(const LocalProblem& p) {
  check_cap(p.q, p.outer.size() + p.free.size());
  Plan plan = make_plan(p);

  RowSums out;
  out.columns = p.columns();
  out.rows = p.rows();
  out.sums.assign(out.rows * static_cast<std::size_t>(out.columns), 0.0);
  if (!plan.fixed_ok) return out;

  std::size_t work = 1;
  for (std::size_t k = 0; k < plan.depth; ++k) work *= static_cast<std::size_t>(p.q);
  const auto rows = static_cast<std::int64_t>(out.rows);

#pragma omp parallel if (work >= kParallelThreshold && out.rows > 1)
  {
    std::vector<int> spins(plan.depth + 1, 0);
    std::vector<double> prefix(plan.depth + 1, 1.0);
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t r = 0; r < rows; ++r) {
      auto ur = static_cast<std::size_t>(r);
      fill_row(plan, p, ur, spins.data(), prefix.data(), out.sums.data() + ur * static_cast<std::size_t>(out.columns));
    }
  }
  return out;
}

std::vector<double> assignment_weights(const LocalProblem& p) {
  if (!p.outer.empty()) throw Error(ErrorCode::InternalError, "assignment_weights takes no outer vertices");
  check_cap(p.q, p.free.size());
  Plan plan = make_plan(p);
  const auto q = static_cast<std::size_t>(p.q);
  std::size_t count = 1;
  for (std::size_t k = 0; k < plan.depth; ++k) count *= q;
  std::vector<double> out(count, 0.0);
  if (!plan.fixed_ok) return out;

  const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel if (count >= kParallelThreshold)
  {
    std::vector<int> spins(plan.depth + 1, 0);
#pragma omp for schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      auto rest = static_cast<std::size_t>(idx);
      for (std::size_t k = plan.depth; k-- > 0;) {
        spins[k] = static_cast<int>(rest % q);
        rest /= q;
      }
      double w = 1.0;
      for (std::size_t k = 0; k < plan.depth && w != 0.0; ++k) w *= step(plan, p.interaction, q, k, spins[k], spins.data());
      out[static_cast<std::size_t>(idx)] = w;
    }
  }
  return out;
}

}  // namespace ssms::kernels
