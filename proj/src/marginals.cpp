#include "ssms/marginals.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ssms/error.hpp"
#include "ssms/kernels.hpp"
#include "ssms/local_problem.hpp"

namespace ssms {

namespace {
constexpr double kSumTolerance = 1e-9;
}

SpinDistribution::SpinDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  double total = 0.0;
  for (double& p : probs_) {
    if (p < 0.0) {
      if (p < -kSumTolerance) throw Error(ErrorCode::InvalidProbabilities, "negative probability");
      p = 0.0;
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTolerance)
    throw Error(ErrorCode::InvalidProbabilities, "probabilities sum to " + std::to_string(total));
}

SpinDistribution SpinDistribution::from_weights(const double* weights, int q) {
  double total = 0.0;
  for (int i = 0; i < q; ++i) total += weights[i];
  if (!(total > 0.0)) throw Error(ErrorCode::InfeasibleBoundary, "boundary condition has zero weight");
  std::vector<double> p(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) p[static_cast<std::size_t>(i)] = weights[i] / total;
  return SpinDistribution(std::move(p));
}

SpinDistribution conditional_marginal(const SpinSystem& sys, const LocalGraph& g, const VertexId& v,
                                      const PartialConfiguration& fixed, const std::vector<VertexId>& support) {
  if (fixed.contains(v)) throw Error(ErrorCode::ConfigError, "target vertex " + v.to_string() + " is fixed");
  std::vector<VertexId> vertices = support;
  for (const auto& [u, s] : fixed) vertices.push_back(u);
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (!std::binary_search(vertices.begin(), vertices.end(), v))
    throw Error(ErrorCode::ConfigError, "support does not contain " + v.to_string());

  LocalProblemBuilder builder{sys, g};
  auto problem = builder.build(vertices, fixed, {}, &v, true);
  auto sums = kernels::row_sums(problem);
  return SpinDistribution::from_weights(sums.row(0), sys.q());
}

BoundaryTable boundary_table(const SpinSystem& sys, const LocalGraph& g, const PartialConfiguration& context,
                             const VertexId& v, int radius) {
  if (radius < 1) throw Error(ErrorCode::ConfigError, "radius must be >= 1");
  if (context.contains(v)) throw Error(ErrorCode::ConfigError, "vertex " + v.to_string() + " is already assigned");
  Ball b = ball(g, v, radius);

  BoundaryTable table;
  table.q = sys.q();
  for (const auto& w : b.sphere)
    if (!context.contains(w)) table.boundary.push_back(w);

  std::vector<VertexId> vertices = b.interior;
  vertices.insert(vertices.end(), b.sphere.begin(), b.sphere.end());
  PartialConfiguration fixed = context.restricted_to(vertices);

  LocalProblemBuilder builder{sys, g};
  auto problem = builder.build(vertices, fixed, table.boundary, &v, true);
  auto sums = kernels::row_sums(problem);

  const auto q = static_cast<std::size_t>(table.q);
  for (std::size_t r = 0; r < sums.rows; ++r) {
    double total = sums.row_total(r);
    if (!(total > 0.0)) continue;
    table.row_of.push_back(r);
    for (std::size_t i = 0; i < q; ++i) table.probs.push_back(sums.row(r)[i] / total);
  }
  if (table.row_of.empty())
    throw Error(ErrorCode::InfeasibleContext, "no feasible boundary assignment around " + v.to_string());
  return table;
}

MinMarginals min_marginals(const BoundaryTable& table) {
  MinMarginals m;
  m.spin.assign(static_cast<std::size_t>(table.q), 1.0);
  for (std::size_t k = 0; k < table.feasible_rows(); ++k)
    for (std::size_t i = 0; i < m.spin.size(); ++i) m.spin[i] = std::min(m.spin[i], table.row(k)[i]);
  if (table.feasible_rows() == 1) {
    m.indecision = 0.0;
    return m;
  }
  double total = 0.0;
  for (double p : m.spin) total += p;
  m.indecision = 1.0 - total;
  if (m.indecision < 0.0) {
    if (m.indecision < -kSumTolerance) throw Error(ErrorCode::InternalError, "zone probabilities exceed 1");
    m.indecision = 0.0;
  }
  return m;
}

MinMarginals min_marginals(const SpinSystem& sys, const LocalGraph& g, const PartialConfiguration& context,
                           const VertexId& v, int radius) {
  return min_marginals(boundary_table(sys, g, context, v, radius));
}

SpinDistribution ball_marginal(const SpinSystem& sys, const LocalGraph& g, const PartialConfiguration& context,
                               const VertexId& v, int radius) {
  Ball b = ball(g, v, radius);
  for (const auto& w : b.sphere)
    if (!context.contains(w))
      throw Error(ErrorCode::InternalError, "sphere vertex " + w.to_string() + " unassigned in ball marginal");
  std::vector<VertexId> vertices = b.interior;
  vertices.insert(vertices.end(), b.sphere.begin(), b.sphere.end());
  LocalProblemBuilder builder{sys, g};
  auto problem = builder.build(vertices, context.restricted_to(vertices), {}, &v, true);
  auto sums = kernels::row_sums(problem);
  return SpinDistribution::from_weights(sums.row(0), sys.q());
}

double tv_distance(const double* a, const double* b, int q) {
  double d = 0.0;
  for (int i = 0; i < q; ++i) d += std::abs(a[i] - b[i]);
  return 0.5 * d;
}

double tv_distance(const SpinDistribution& a, const SpinDistribution& b) {
  if (a.q() != b.q()) throw Error(ErrorCode::DimensionMismatch, "distributions have different spin counts");
  return tv_distance(a.probs().data(), b.probs().data(), a.q());
}

double max_pairwise_tv(const BoundaryTable& table) {
  const auto q = static_cast<std::size_t>(table.q);
  // identical rows contribute nothing; drop duplicates before the quadratic pass
  std::vector<std::vector<double>> rows;
  rows.reserve(table.feasible_rows());
  for (std::size_t k = 0; k < table.feasible_rows(); ++k) rows.emplace_back(table.row(k), table.row(k) + q);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  const std::size_t n = rows.size();
  if (n > (std::size_t{1} << 16))
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " distinct boundary marginals; pairwise scan capped at 2^16");
  double best = 0.0;
  const auto sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best) if (n > 512)
  for (std::int64_t i = 0; i < sn; ++i)
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j)
      best = std::max(best, tv_distance(rows[static_cast<std::size_t>(i)].data(), rows[j].data(), table.q));
  return best;
}

double mixing_rate_estimate(const SpinSystem& sys, const LocalGraph& g, const VertexId& v, int radius,
                            const PartialConfiguration& context) {
  return max_pairwise_tv(boundary_table(sys, g, context, v, radius));
}

void MixingRate::set(int radius, double f) {
  if (!(f >= 0.0 && f <= 1.0 + kSumTolerance)) throw Error(ErrorCode::InvalidProbabilities, "mixing rate outside [0,1]");
  rate[radius] = std::min(f, 1.0);
}

double MixingRate::at(int radius) const {
  auto it = rate.find(radius);
  if (it == rate.end()) throw Error(ErrorCode::MissingRate, "no mixing rate for radius " + std::to_string(radius));
  return it->second;
}

void MixingRate::write_csv(std::ostream& out) const {
  out << "radius,f\n";
  out.precision(17);
  for (const auto& [r, f] : rate) out << r << ',' << f << '\n';
}

MixingRate MixingRate::read_csv(std::istream& in, Provenance provenance) {
  MixingRate m;
  m.provenance = provenance;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "radius,f") continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "mixing-rate row without comma: " + line);
    try {
      m.set(std::stoi(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, "malformed mixing-rate row: " + line);
    }
  }
  return m;
}

}  // namespace ssms
