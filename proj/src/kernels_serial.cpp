#include <cmath>

#include "ssms/error.hpp"
#include "ssms/kernels.hpp"

namespace ssms::kernels {

std::size_t LocalProblem::rows() const {
  std::size_t r = 1;
  for (std::size_t k = 0; k < outer.size(); ++k) r *= static_cast<std::size_t>(q);
  return r;
}

double RowSums::row_total(std::size_t r) const {
  double t = 0.0;
  for (int c = 0; c < columns; ++c) t += row(r)[c];
  return t;
}

void check_cap(int q, std::size_t count) {
  if (static_cast<double>(count) * std::log2(static_cast<double>(q)) > kCapLog2 + 1e-9)
    throw Error(ErrorCode::TooLarge, std::to_string(q) + "^" + std::to_string(count) +
                                         " assignments exceed the enumeration cap of 2^22");
}

int outer_spin(const LocalProblem& p, std::size_t r, std::size_t k) {
  std::size_t shift = p.outer.size() - 1 - k;
  for (std::size_t i = 0; i < shift; ++i) r /= static_cast<std::size_t>(p.q);
  return static_cast<int>(r % static_cast<std::size_t>(p.q));
}

RowSums row_sums_serial(const LocalProblem& p) {
  check_cap(p.q, p.outer.size() + p.free.size());
  const int n = p.size();
  const auto q = static_cast<std::size_t>(p.q);

  enum Role { Fixed, Outer, Free };
  std::vector<Role> role(static_cast<std::size_t>(n), Fixed);
  for (int u : p.outer) role[static_cast<std::size_t>(u)] = Outer;
  for (int u : p.free) role[static_cast<std::size_t>(u)] = Free;

  RowSums out;
  out.columns = p.columns();
  out.rows = p.rows();
  out.sums.assign(out.rows * static_cast<std::size_t>(out.columns), 0.0);

  std::size_t inner = 1;
  for (std::size_t k = 0; k < p.free.size(); ++k) inner *= q;

  std::vector<int> spin(static_cast<std::size_t>(n), -1);
  for (int u = 0; u < n; ++u) spin[static_cast<std::size_t>(u)] = p.fixed_spin[static_cast<std::size_t>(u)];

  auto A = [&](int a, int b) { return p.interaction[static_cast<std::size_t>(a) * q + static_cast<std::size_t>(b)]; };

  for (std::size_t r = 0; r < out.rows; ++r) {
    for (std::size_t k = 0; k < p.outer.size(); ++k)
      spin[static_cast<std::size_t>(p.outer[k])] = outer_spin(p, r, k);

    // factors with no free endpoint: only their vanishing matters
    bool gate = true;
    for (int u = 0; u < n && gate; ++u) {
      auto uu = static_cast<std::size_t>(u);
      if (role[uu] == Free) continue;
      if (p.field[static_cast<std::size_t>(spin[uu])] == 0.0) gate = false;
      for (int w : p.adjacency[uu]) {
        if (w > u && role[static_cast<std::size_t>(w)] != Free && A(spin[uu], spin[static_cast<std::size_t>(w)]) == 0.0)
          gate = false;
      }
    }
    if (!gate) continue;

    for (std::size_t idx = 0; idx < inner; ++idx) {
      std::size_t rest = idx;
      for (std::size_t k = p.free.size(); k-- > 0;) {
        spin[static_cast<std::size_t>(p.free[k])] = static_cast<int>(rest % q);
        rest /= q;
      }
      double w = 1.0;
      for (int u = 0; u < n; ++u) {
        auto uu = static_cast<std::size_t>(u);
        if (role[uu] != Free) continue;
        w *= p.field[static_cast<std::size_t>(spin[uu])];
        for (int x : p.adjacency[uu]) {
          // each free-free edge once; every edge to a non-free vertex
          if (role[static_cast<std::size_t>(x)] == Free && x < u) continue;
          w *= A(spin[uu], spin[static_cast<std::size_t>(x)]);
        }
      }
      int col = p.target < 0 ? 0 : spin[static_cast<std::size_t>(p.target)];
      out.sums[r * static_cast<std::size_t>(out.columns) + static_cast<std::size_t>(col)] += w;
    }
  }
  return out;
}

}  // namespace ssms::kernels
