#include "ssms/analysis.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "ssms/error.hpp"

namespace ssms {

BranchingBound branching_bound(int q, double f, std::int64_t g, int radius) {
  BranchingBound b;
  b.radius = radius;
  b.q = q;
  b.f = f;
  b.g = g;
  b.alpha = static_cast<double>(q) * f * static_cast<double>(g);
  // alpha computed as exactly 1 may land a rounding error below it
  if (b.alpha < 1.0 - 1e-12) b.expected_size = 1.0 / (1.0 - b.alpha);
  return b;
}

BranchingBound branching_bound(const SpinSystem& sys, const LocalGraph& g, int radius, const MixingRate& rate) {
  return branching_bound(sys.q(), rate.at(radius), growth_bound(g, radius), radius);
}

std::optional<double> hardcore_radius1_bound(double lambda, int max_degree) {
  double denom = 1.0 - (max_degree - 1) * lambda;
  if (!(denom > 0.0)) return std::nullopt;
  return (1.0 + lambda) / denom;
}

TreeBoundCheck verify_tree_bound(const std::vector<std::uint64_t>& total_calls, double bound) {
  if (total_calls.size() < 1000)
    throw Error(ErrorCode::InsufficientSamples, "tree-bound check needs at least 1000 runs, got " +
                                                    std::to_string(total_calls.size()));
  TreeBoundCheck c;
  c.runs = total_calls.size();
  const double n = static_cast<double>(c.runs);
  double sum = 0.0;
  for (auto t : total_calls) sum += static_cast<double>(t);
  c.mean = sum / n;
  double ss = 0.0;
  for (auto t : total_calls) ss += (static_cast<double>(t) - c.mean) * (static_cast<double>(t) - c.mean);
  c.standard_error = std::sqrt(ss / (n - 1.0) / n);
  c.limit = bound + 3.0 * c.standard_error;
  c.margin = c.limit - c.mean;
  c.pass = c.mean <= c.limit;
  return c;
}

TreeBoundCheck verify_tree_bound(const std::vector<std::uint64_t>& total_calls, const BranchingBound& bound) {
  if (!bound.contractive())
    throw Error(ErrorCode::ConfigError, "tree-bound check needs alpha < 1, got " + std::to_string(bound.alpha));
  return verify_tree_bound(total_calls, *bound.expected_size);
}

Lemma1Result lemma1_check(const SpinSystem& sys, const LocalGraph& g, const PartialConfiguration& context,
                          const VertexId& v, int radius) {
  BoundaryTable table = boundary_table(sys, g, context, v, radius);
  Lemma1Result r;
  r.indecision = min_marginals(table).indecision;
  r.q_times_tv = sys.q() * max_pairwise_tv(table);
  r.pass = r.indecision <= r.q_times_tv + 1e-9;
  return r;
}

double chi_square_survival(double statistic, int degrees_of_freedom) {
  if (degrees_of_freedom < 1) throw Error(ErrorCode::DegenerateSupport, "chi-square needs at least one degree of freedom");
  if (!std::isfinite(statistic)) return 0.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * degrees_of_freedom, 0.5 * statistic);
}

GofStats goodness_of_fit(const std::vector<std::uint64_t>& counts, const std::vector<double>& exact) {
  if (counts.size() != exact.size()) throw Error(ErrorCode::DimensionMismatch, "counts and probabilities differ in size");
  double mass = 0.0;
  for (double p : exact) {
    if (!(p >= 0.0)) throw Error(ErrorCode::InvalidProbabilities, "negative exact probability");
    mass += p;
  }
  if (std::abs(mass - 1.0) > 1e-9) throw Error(ErrorCode::InvalidProbabilities, "exact probabilities do not sum to 1");

  GofStats s;
  s.samples = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (s.samples == 0) throw Error(ErrorCode::DegenerateSupport, "no samples");
  const double n = static_cast<double>(s.samples);

  bool impossible = false;
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    double e = exact[i] * n;
    s.tv += std::abs(static_cast<double>(counts[i]) / n - exact[i]);
    if (exact[i] == 0.0) {
      if (counts[i] > 0) impossible = true;
      continue;
    }
    if (e >= 5.0) {
      s.observed.push_back(counts[i]);
      s.expected.push_back(e);
    } else {
      pooled_obs += static_cast<double>(counts[i]);
      pooled_exp += e;
    }
  }
  s.tv *= 0.5;
  if (pooled_exp > 0.0) {
    if (pooled_exp >= 5.0 || s.expected.empty()) {
      s.observed.push_back(static_cast<std::uint64_t>(pooled_obs));
      s.expected.push_back(pooled_exp);
    } else {
      auto smallest = std::min_element(s.expected.begin(), s.expected.end()) - s.expected.begin();
      s.observed[static_cast<std::size_t>(smallest)] += static_cast<std::uint64_t>(pooled_obs);
      s.expected[static_cast<std::size_t>(smallest)] += pooled_exp;
    }
  }
  if (s.expected.size() < 2) throw Error(ErrorCode::DegenerateSupport, "fewer than two cells after pooling");

  s.degrees_of_freedom = static_cast<int>(s.expected.size()) - 1;
  if (impossible) {
    s.chi_square = std::numeric_limits<double>::infinity();
    s.p_value = 0.0;
    return s;
  }
  for (std::size_t i = 0; i < s.expected.size(); ++i) {
    double d = static_cast<double>(s.observed[i]) - s.expected[i];
    s.chi_square += d * d / s.expected[i];
  }
  s.p_value = chi_square_survival(s.chi_square, s.degrees_of_freedom);
  return s;
}

std::vector<PartialConfiguration> probe_contexts(const SpinSystem& sys, const LocalGraph& g, const VertexId& v,
                                                 int radius, const ProbeSpec& probes) {
  std::vector<PartialConfiguration> out(1);
  Ball b = ball(g, v, radius);
  std::vector<VertexId> candidates;
  for (const auto& u : b.interior)
    if (u != v) candidates.push_back(u);
  candidates.insert(candidates.end(), b.sphere.begin(), b.sphere.end());
  std::vector<VertexId> support = b.interior;
  support.insert(support.end(), b.sphere.begin(), b.sphere.end());

  std::mt19937_64 rng(probes.seed ^ v.hash());
  std::uniform_int_distribution<int> spin(1, sys.q());
  std::bernoulli_distribution keep(0.5);
  for (int k = 0; k < probes.random_contexts; ++k) {
    for (int attempt = 0; attempt < 32; ++attempt) {
      PartialConfiguration ctx;
      for (const auto& u : candidates)
        if (keep(rng)) ctx.assign(u, spin(rng));
      if (is_feasible(sys, g, ctx, support)) {
        out.push_back(std::move(ctx));
        break;
      }
    }
  }
  return out;
}

MixingRate estimate_mixing_rate(const SpinSystem& sys, const LocalGraph& g, const std::vector<int>& radii,
                                const ProbeSpec& probes) {
  MixingRate rate;
  rate.provenance = MixingRate::Provenance::Empirical;
  for (int r : radii) {
    double worst = 0.0;
    for (const auto& v : g.representatives())
      for (const auto& ctx : probe_contexts(sys, g, v, r, probes))
        worst = std::max(worst, mixing_rate_estimate(sys, g, v, r, ctx));
    rate.set(r, worst);
  }
  return rate;
}

}  // namespace ssms
