#include "ssms/sampler.hpp"

#include <algorithm>
#include <unordered_set>

#include "ssms/error.hpp"
#include "ssms/kernels.hpp"
#include "ssms/local_problem.hpp"

namespace ssms {

namespace {
constexpr double kRhoTolerance = 1e-9;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::optional<int> IntervalPartition::locate(double y) const {
  for (std::size_t i = 0; i < spin.size(); ++i)
    if (spin[i].contains(y)) return static_cast<int>(i) + 1;
  return std::nullopt;
}

IntervalPartition build_intervals(const MinMarginals& p) {
  double total = p.indecision;
  for (double x : p.spin) {
    if (!(x >= 0.0)) throw Error(ErrorCode::InvalidProbabilities, "negative zone probability");
    total += x;
  }
  if (!(p.indecision >= 0.0) || std::abs(total - 1.0) > 1e-9)
    throw Error(ErrorCode::InvalidProbabilities, "zone probabilities do not sum to 1");

  IntervalPartition parts;
  double at = 0.0;
  for (double x : p.spin) {
    parts.spin.push_back({at, at + x, false});
    at += x;
  }
  if (p.indecision == 0.0) {
    for (auto it = parts.spin.rbegin(); it != parts.spin.rend(); ++it) {
      if (it->length() > 0.0) {
        it->hi = 1.0;
        break;
      }
    }
    parts.zone = {1.0, 1.0, true};
  } else {
    parts.zone = {at, 1.0, true};
  }
  return parts;
}

std::vector<Interval> split_zone(const IntervalPartition& parts, const MinMarginals& p, const SpinDistribution& mu) {
  if (mu.q() != p.q()) throw Error(ErrorCode::DimensionMismatch, "marginal and zone sizes differ");
  std::vector<Interval> out;
  double at = parts.zone.lo;
  std::size_t last_positive = p.spin.size();
  std::size_t largest = 0;
  std::vector<double> rho(p.spin.size());
  for (std::size_t i = 0; i < p.spin.size(); ++i) {
    rho[i] = mu.probs()[i] - p.spin[i];
    if (rho[i] < -kRhoTolerance)
      throw Error(ErrorCode::InternalError, "split length " + std::to_string(rho[i]) + " below zero for spin " +
                                                std::to_string(i + 1));
    rho[i] = std::max(rho[i], 0.0);
    if (rho[i] > 0.0) last_positive = i;
    if (rho[i] > rho[largest]) largest = i;
  }
  for (double r : rho) {
    out.push_back({at, at + r, false});
    at += r;
  }
  // the zone must be covered exactly despite rounding in the cumulative sums
  if (last_positive < out.size()) {
    out[last_positive].hi = 1.0;
    out[last_positive].closed_hi = true;
  } else {
    for (auto& j : out) j = {1.0, 1.0, false};
    out[largest] = {parts.zone.lo, 1.0, true};
  }
  return out;
}

void RecursionStats::merge(const RecursionStats& other) {
  total_calls += other.total_calls;
  max_depth = std::max(max_depth, other.max_depth);
  indecision_events += other.indecision_events;
  log.insert(log.end(), other.log.begin(), other.log.end());
}

Sampler::Sampler(SpinSystem sys, LocalGraph g, SamplerOptions options)
    : sys_(std::move(sys)), g_(std::move(g)), options_(options) {
  if (options_.radius < 1) throw Error(ErrorCode::ConfigError, "radius must be >= 1");
  if (options_.budget < 1) throw Error(ErrorCode::ConfigError, "budget must be positive");
}

SpinDistribution Sampler::exact_marginal(const PartialConfiguration& context, const VertexId& v) const {
  if (!g_.is_finite()) throw Error(ErrorCode::FiniteOnly, "the exact oracle needs a finite graph");
  auto vertices = g_.vertices();
  LocalProblemBuilder builder{sys_, g_};
  auto problem = builder.build(vertices, context.restricted_to(vertices), {}, &v, true);
  auto sums = kernels::row_sums(problem);
  double total = sums.row_total(0);
  if (!(total > 0.0)) throw Error(ErrorCode::InfeasibleContext, "context has zero probability");
  return SpinDistribution::from_weights(sums.row(0), sys_.q());
}

namespace {

struct Frame {
  VertexId v;
  std::size_t base = 0;
  int depth = 0;
  double y = 0.0;
  MinMarginals p;
  IntervalPartition parts;
  std::vector<VertexId> pending;
  std::size_t next = 0;
};

int inverse_cdf(const SpinDistribution& mu, double y) {
  double at = 0.0;
  int last = 1;
  for (int i = 1; i <= mu.q(); ++i) {
    if (mu(i) <= 0.0) continue;
    at += mu(i);
    last = i;
    if (y < at) return i;
  }
  return last;
}

}  // namespace

int Sampler::run(PartialConfiguration& context, const VertexId& root, RandomSource& rng, RecursionStats& stats,
                 std::optional<int> height) const {
  if (context.contains(root)) throw Error(ErrorCode::ConfigError, "vertex " + root.to_string() + " is already assigned");
  const std::size_t root_base = context.size();
  std::uint64_t calls = 0;
  std::vector<Frame> stack;

  // Opens a call at v: draws y and either resolves immediately or pushes a
  // frame whose sphere vertices still need spins.
  auto open = [&](const VertexId& v, int depth) -> std::optional<int> {
    if (++calls > options_.budget)
      throw Error(ErrorCode::BudgetExhausted,
                  "recursion exceeded " + std::to_string(options_.budget) + " calls at root " + root.to_string());
    ++stats.total_calls;
    stats.max_depth = std::max<std::uint64_t>(stats.max_depth, static_cast<std::uint64_t>(depth));

    if (height && depth >= *height) {
      auto mu = exact_marginal(context, v);
      double y = rng.next();
      if (options_.record_log) stats.log.push_back({v, depth, false, true});
      return inverse_cdf(mu, y);
    }

    auto table = boundary_table(sys_, g_, context, v, options_.radius);
    MinMarginals p = min_marginals(table);
    IntervalPartition parts = build_intervals(p);
    double y = rng.next();
    auto spin = parts.locate(y);
    if (options_.record_log) stats.log.push_back({v, depth, !spin.has_value(), false});
    if (spin) return spin;

    ++stats.indecision_events;
    stack.push_back(Frame{v, context.size(), depth, y, std::move(p), std::move(parts), std::move(table.boundary), 0});
    return std::nullopt;
  };

  try {
    if (auto spin = open(root, 0)) return *spin;
    while (true) {
      Frame& top = stack.back();
      if (top.next < top.pending.size()) {
        VertexId w = top.pending[top.next];
        int depth = top.depth + 1;
        if (auto spin = open(w, depth)) {
          Frame& parent = stack.back();
          context.assign(w, *spin);
          ++parent.next;
        }
        continue;
      }
      SpinDistribution mu = ball_marginal(sys_, g_, context, top.v, options_.radius);
      auto split = split_zone(top.parts, top.p, mu);
      int spin = 0;
      for (std::size_t i = 0; i < split.size() && spin == 0; ++i)
        if (split[i].contains(top.y)) spin = static_cast<int>(i) + 1;
      if (spin == 0) throw Error(ErrorCode::InternalError, "draw not covered by the split zone");

      context.truncate(top.base);
      stack.pop_back();
      if (stack.empty()) return spin;
      Frame& parent = stack.back();
      context.assign(parent.pending[parent.next], spin);
      ++parent.next;
    }
  } catch (...) {
    context.truncate(root_base);
    throw;
  }
}

int Sampler::draw_spin(PartialConfiguration& context, const VertexId& v, RandomSource& rng,
                       RecursionStats& stats) const {
  return run(context, v, rng, stats, std::nullopt);
}

PartialConfiguration Sampler::ssms(const PartialConfiguration& context, const VertexId& v, RandomSource& rng,
                                   RecursionStats& stats) const {
  PartialConfiguration work = context;
  int spin = run(work, v, rng, stats, std::nullopt);
  work.assign(v, spin);
  return work;
}

std::vector<Interval> Sampler::bd_split(const PartialConfiguration& context, const VertexId& v, const MinMarginals& p,
                                        RandomSource& rng, RecursionStats& stats) const {
  PartialConfiguration work = context;
  auto b = ball(g_, v, options_.radius);
  for (const auto& w : b.sphere) {
    if (work.contains(w)) continue;
    int spin = run(work, w, rng, stats, std::nullopt);
    work.assign(w, spin);
  }
  SpinDistribution mu = ball_marginal(sys_, g_, work, v, options_.radius);
  return split_zone(build_intervals(p), p, mu);
}

int Sampler::bounded_ssms(PartialConfiguration& context, const VertexId& v, int height, RandomSource& rng,
                          RecursionStats& stats) const {
  if (!g_.is_finite()) throw Error(ErrorCode::FiniteOnly, "bounded_ssms needs a finite graph");
  if (height < 0) throw Error(ErrorCode::ConfigError, "height must be nonnegative");
  return run(context, v, rng, stats, height);
}

WindowSample Sampler::sample_window(const std::vector<VertexId>& window, RandomSource& rng,
                                    const PartialConfiguration& initial) const {
  std::unordered_set<VertexId, VertexHash> seen;
  for (const auto& w : window) {
    if (!g_.contains(w)) throw Error(ErrorCode::InvalidVertex, "window vertex " + w.to_string() + " not in graph");
    if (!seen.insert(w).second) throw Error(ErrorCode::ConfigError, "window repeats vertex " + w.to_string());
    if (initial.contains(w)) throw Error(ErrorCode::ConfigError, "window vertex " + w.to_string() + " already fixed");
  }
  PartialConfiguration context = initial;
  WindowSample out;
  for (const auto& w : window) {
    int spin = run(context, w, rng, out.stats, std::nullopt);
    context.assign(w, spin);
    out.spins.assign(w, spin);
  }
  return out;
}

}  // namespace ssms
