#include "ssms/suites.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "ssms/analysis.hpp"
#include "ssms/error.hpp"
#include "ssms/kernels.hpp"
#include "ssms/local_problem.hpp"
#include "ssms/marginals.hpp"
#include "ssms/sampler.hpp"

namespace ssms::suites {

namespace {

constexpr double kLevel = 0.001;

std::uint64_t scaled(double base, double scale) {
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(base * scale)));
}

void note(const SuiteOptions& opts, const std::string& line) {
  if (opts.progress) *opts.progress << line << std::endl;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

struct NamedGraph {
  std::string name;
  LocalGraph graph;
};

struct Model {
  std::string family;
  SpinSystem sys;
  bool on_line_graph = false;
};

Model random_model(std::mt19937_64& rng, int family) {
  std::uniform_real_distribution<double> lam(0.1, 3.0);
  std::uniform_real_distribution<double> ferro(1.0, 3.0);
  std::uniform_int_distribution<int> colors(3, 5);
  switch (family) {
    case 0: return {"hardcore", hardcore(lam(rng))};
    case 1: return {"ising", ising(ferro(rng))};
    case 2: return {"coloring", coloring(colors(rng))};
    default: return {"monomer-dimer", monomer_dimer(lam(rng)), true};
  }
}

/// A random graph for `model`, with at most `max_vertices` vertices once the
/// line-graph map has been applied, on which the model has positive mass.
LocalGraph random_instance_graph(std::mt19937_64& rng, const Model& model, int min_n, int max_n, int max_vertices) {
  std::uniform_int_distribution<int> size(min_n, max_n);
  std::uniform_real_distribution<double> density(0.2, 0.6);
  while (true) {
    LocalGraph g = random_graph(rng, size(rng), density(rng));
    if (model.on_line_graph) {
      auto m = g.edges().size();
      if (m < 2 || static_cast<int>(m) > max_vertices) continue;
      g = line_graph(g);
    }
    if (static_cast<int>(g.vertices().size()) > max_vertices) continue;
    if (is_feasible(model.sys, g, {}, g.vertices())) return g;
  }
}

/// Random partial assignment of the listed vertices, feasible on the whole
/// graph. Each vertex is kept with probability `density`.
PartialConfiguration random_context(std::mt19937_64& rng, const SpinSystem& sys, const LocalGraph& g,
                                    const std::vector<VertexId>& candidates, double density) {
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> spin(1, sys.q());
  auto all = g.vertices();
  for (int attempt = 0; attempt < 64; ++attempt) {
    PartialConfiguration ctx;
    for (const auto& u : candidates)
      if (keep(rng)) ctx.assign(u, spin(rng));
    if (is_feasible(sys, g, ctx, all)) return ctx;
  }
  return {};
}

std::vector<int> spins_in_order(const PartialConfiguration& c, const std::vector<VertexId>& order) {
  std::vector<int> out;
  out.reserve(order.size());
  for (const auto& v : order) out.push_back(*c.spin_of(v));
  return out;
}

}  // namespace

bool SuiteResult::pass() const { return failures() == 0; }

std::size_t SuiteResult::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.counted && !r.pass; }));
}

void SuiteResult::write_csv(std::ostream& out) const {
  out << "suite,case,metric,value,threshold,pass,note\n";
  for (const auto& r : rows)
    out << name << ',' << r.case_id << ',' << r.metric << ',' << fmt(r.value) << ',' << fmt(r.threshold) << ','
        << (r.counted ? (r.pass ? "pass" : "fail") : "info") << ",\"" << r.note << "\"\n";
  out << name << ",summary,failures," << failures() << ",0," << (pass() ? "pass" : "fail") << ",\"\"\n";
}

LocalGraph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution edge(p);
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (edge(rng)) edges.emplace_back(u, v);
  return LocalGraph::finite(n, edges);
}

LocalGraph cube() {
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  for (int u = 0; u < 8; ++u)
    for (int bit = 1; bit < 8; bit <<= 1)
      if ((u & bit) == 0) edges.emplace_back(u + 1, (u | bit) + 1);
  return LocalGraph::finite(8, edges);
}

std::size_t outcome_index(const std::vector<int>& spins, int q) {
  std::size_t idx = 0;
  for (int s : spins) idx = idx * static_cast<std::size_t>(q) + static_cast<std::size_t>(s - 1);
  return idx;
}

SuiteResult distribution(const SuiteOptions& opts) {
  SuiteResult result{"distribution", {}};
  const std::vector<SpinSystem> models = {hardcore(1.0), ising(1.5), coloring(4)};
  const std::vector<NamedGraph> graphs_ = {
      {"P3", graphs::path(3)}, {"C5", graphs::cycle(5)}, {"grid3x3", graphs::grid(3, 3)}};
  const std::uint64_t samples = scaled(1e5, opts.scale);
  const double threshold = kLevel / static_cast<double>(models.size() * graphs_.size() * 2);

  for (const auto& sys : models)
    for (const auto& [gname, g] : graphs_)
      for (int radius : {1, 2}) {
        SuiteRow row;
        row.case_id = sys.label() + "/" + gname + "/ell=" + std::to_string(radius);
        row.metric = "p_value";
        row.threshold = threshold;

        Sampler sampler(sys, g, {radius, opts.budget, false});
        const auto order = g.vertices();
        const auto exact = gibbs_distribution(sys, g);
        std::vector<std::uint64_t> counts(exact.size(), 0);
        std::atomic<bool> failed{false};
        std::string failure;
        std::uint64_t completed = 0;

#pragma omp parallel
        {
          std::vector<std::uint64_t> local(exact.size(), 0);
          std::uint64_t done = 0;
#pragma omp for schedule(dynamic, 256)
          for (std::int64_t k = 0; k < static_cast<std::int64_t>(samples); ++k) {
            if (failed.load(std::memory_order_relaxed)) continue;
            RandomSource rng(derive_seed(opts.seed, static_cast<std::uint64_t>(k)));
            try {
              auto w = sampler.sample_window(order, rng);
              ++local[outcome_index(spins_in_order(w.spins, order), sys.q())];
              ++done;
            } catch (const Error& e) {
              if (!failed.exchange(true)) {
#pragma omp critical(suite_failure)
                failure = std::string(code_name(e.code())) + " at sample " + std::to_string(k);
              }
            }
          }
#pragma omp critical(suite_merge)
          {
            for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
            completed += done;
          }
        }

        if (failed) {
          row.value = 0.0;
          row.pass = false;
          row.note = failure + " after " + std::to_string(completed) + " samples";
        } else {
          auto gof = goodness_of_fit(counts, exact);
          row.value = gof.p_value;
          row.pass = gof.p_value > threshold;
          row.note = "chi2=" + fmt(gof.chi_square) + " df=" + std::to_string(gof.degrees_of_freedom) +
                     " tv=" + fmt(gof.tv) + " n=" + std::to_string(samples);
        }
        note(opts, row.case_id + " " + (row.pass ? "pass " : "fail ") + row.note);
        result.rows.push_back(std::move(row));
      }
  return result;
}

SuiteResult lemma1(const SuiteOptions& opts) {
  SuiteResult result{"lemma1", {}};
  const std::uint64_t per_family = scaled(200, opts.scale);
  for (int family = 0; family < 4; ++family) {
    for (std::uint64_t k = 0; k < per_family; ++k) {
      std::mt19937_64 rng(derive_seed(opts.seed, static_cast<std::uint64_t>(family) * 1'000'003ULL + k));
      Model model = random_model(rng, family);
      LocalGraph g = random_instance_graph(rng, model, 2, 8, 8);
      auto vs = g.vertices();
      VertexId v = vs[std::uniform_int_distribution<std::size_t>(0, vs.size() - 1)(rng)];
      int radius = std::uniform_int_distribution<int>(1, 2)(rng);
      std::vector<VertexId> others;
      for (const auto& u : vs)
        if (u != v) others.push_back(u);
      auto ctx = random_context(rng, model.sys, g, others, 0.3);

      SuiteRow row;
      row.case_id = model.family + "#" + std::to_string(k);
      row.metric = "p0";
      auto r = lemma1_check(model.sys, g, ctx, v, radius);
      row.value = r.indecision;
      row.threshold = r.q_times_tv + 1e-9;
      row.pass = r.pass;
      row.note = model.sys.label() + " n=" + std::to_string(vs.size()) + " v=" + v.to_string() +
                 " ell=" + std::to_string(radius) + " |ctx|=" + std::to_string(ctx.size());
      result.rows.push_back(std::move(row));
    }
    note(opts, "lemma1 family " + std::to_string(family) + " done");
  }
  return result;
}

namespace {

struct TreeRuns {
  std::vector<std::uint64_t> calls;
  std::uint64_t failures = 0;
};

/// One ssms call from the empty context per run, cycling over the vertices.
TreeRuns tree_runs(const SpinSystem& sys, const LocalGraph& g, int radius, std::uint64_t runs, std::uint64_t seed,
                   std::uint64_t budget) {
  Sampler sampler(sys, g, {radius, budget, false});
  const auto vs = g.vertices();
  TreeRuns out;
  out.calls.assign(runs, 0);
  std::vector<char> failed(runs, 0);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(runs); ++k) {
    RandomSource rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    RecursionStats stats;
    PartialConfiguration ctx;
    try {
      sampler.draw_spin(ctx, vs[static_cast<std::size_t>(k) % vs.size()], rng, stats);
    } catch (const Error&) {
      failed[static_cast<std::size_t>(k)] = 1;
    }
    out.calls[static_cast<std::size_t>(k)] = stats.total_calls;
  }
  std::vector<std::uint64_t> ok;
  for (std::uint64_t k = 0; k < runs; ++k) {
    if (failed[k])
      ++out.failures;
    else
      ok.push_back(out.calls[k]);
  }
  out.calls = std::move(ok);
  return out;
}

}  // namespace

SuiteResult runtime(const SuiteOptions& opts) {
  SuiteResult result{"runtime", {}};
  const std::uint64_t runs = std::max<std::uint64_t>(1000, scaled(1e4, opts.scale));
  const auto petersen = graphs::petersen();

  {
    SuiteRow row;
    row.case_id = "hardcore(lambda=0.2)/petersen/ell=1/radius1-formula";
    row.metric = "mean_calls";
    auto t = tree_runs(hardcore(0.2), petersen, 1, runs, opts.seed, opts.budget);
    double bound = *hardcore_radius1_bound(0.2, 3);
    auto check = verify_tree_bound(t.calls, bound);
    row.value = check.mean;
    row.threshold = check.limit;
    row.pass = check.pass && t.failures == 0;
    row.note = "bound=" + fmt(bound) + " se=" + fmt(check.standard_error) + " failures=" + std::to_string(t.failures);
    note(opts, row.case_id + " " + row.note);
    result.rows.push_back(std::move(row));
  }

  const std::vector<SpinSystem> models = {hardcore(0.1), hardcore(0.2), ising(1.0), ising(1.2), coloring(6)};
  const std::vector<NamedGraph> graphs_ = {{"petersen", petersen}, {"cube", cube()}};
  std::uint64_t cell = 0;
  for (const auto& sys : models)
    for (const auto& [gname, g] : graphs_) {
      for (int radius : {1, 2}) {
        ++cell;
        SuiteRow row;
        row.case_id = sys.label() + "/" + gname + "/ell=" + std::to_string(radius);
        row.metric = "mean_calls";
        MixingRate rate;
        try {
          rate = estimate_mixing_rate(sys, g, {radius}, ProbeSpec{8, opts.seed});
        } catch (const Error& e) {
          if (e.code() != ErrorCode::TooLarge) throw;
          row.counted = false;
          row.note = "f not computable: " + std::string(e.what());
          result.rows.push_back(std::move(row));
          continue;
        }
        auto bound = branching_bound(sys, g, radius, rate);
        std::string shape = "f=" + fmt(bound.f) + " g=" + std::to_string(bound.g) + " alpha=" + fmt(bound.alpha);
        if (!bound.contractive()) {
          row.counted = false;
          row.value = bound.alpha;
          row.metric = "alpha";
          row.threshold = 1.0;
          row.note = shape + " not contractive";
          result.rows.push_back(std::move(row));
          continue;
        }
        auto t = tree_runs(sys, g, radius, runs, derive_seed(opts.seed, 1000 + cell), opts.budget);
        if (t.calls.size() < 1000) {
          row.pass = false;
          row.note = shape + " failures=" + std::to_string(t.failures);
        } else {
          auto check = verify_tree_bound(t.calls, bound);
          row.value = check.mean;
          row.threshold = check.limit;
          row.pass = check.pass && t.failures == 0;
          row.note = shape + " bound=" + fmt(*bound.expected_size) + " se=" + fmt(check.standard_error) +
                     " failures=" + std::to_string(t.failures);
        }
        note(opts, row.case_id + " " + row.note);
        result.rows.push_back(std::move(row));
      }
    }
  return result;
}

SuiteResult coupling(const SuiteOptions& opts) {
  SuiteResult result{"coupling", {}};
  constexpr int kHeight = 10;
  constexpr std::uint64_t kCouplingBudget = 2'000;
  const std::uint64_t seeds = scaled(1e3, opts.scale);
  const std::vector<SpinSystem> models = {hardcore(1.0), ising(1.5), coloring(4)};
  const std::vector<NamedGraph> graphs_ = {{"P3", graphs::path(3)}, {"C5", graphs::cycle(5)}};

  for (const auto& sys : models)
    for (const auto& [gname, g] : graphs_)
      for (int radius : {1, 2}) {
        Sampler sampler(sys, g, {radius, kCouplingBudget, false});
        const auto vs = g.vertices();
        std::uint64_t eligible = 0, equal = 0, exhausted = 0;
        for (std::uint64_t k = 0; k < seeds; ++k) {
          const VertexId& v = vs[k % vs.size()];
          const std::uint64_t seed = derive_seed(opts.seed, k);
          RandomSource a(seed);
          RecursionStats sa;
          PartialConfiguration ca;
          int plain = 0;
          try {
            plain = sampler.draw_spin(ca, v, a, sa);
          } catch (const Error&) {
            ++exhausted;
            continue;
          }
          if (sa.max_depth >= kHeight) continue;
          ++eligible;
          RandomSource b(seed);
          RecursionStats sb;
          PartialConfiguration cb;
          int bounded = sampler.bounded_ssms(cb, v, kHeight, b, sb);
          if (bounded == plain && sa.total_calls == sb.total_calls) ++equal;
        }
        SuiteRow row;
        row.case_id = sys.label() + "/" + gname + "/ell=" + std::to_string(radius);
        row.metric = "equality_rate";
        row.value = eligible ? static_cast<double>(equal) / static_cast<double>(eligible) : 1.0;
        row.threshold = 1.0;
        row.pass = equal == eligible;
        row.note = "eligible=" + std::to_string(eligible) + " exhausted=" + std::to_string(exhausted);
        note(opts, row.case_id + " " + row.note);
        result.rows.push_back(std::move(row));
      }
  return result;
}

SuiteResult gibbs_property(const SuiteOptions& opts) {
  SuiteResult result{"gibbs", {}};
  const std::uint64_t instances = scaled(50, opts.scale);
  for (std::uint64_t k = 0; k < instances; ++k) {
    std::mt19937_64 rng(derive_seed(opts.seed, k));
    Model model = random_model(rng, static_cast<int>(k % 4));
    LocalGraph g = random_instance_graph(rng, model, 3, 9, 10);
    auto vs = g.vertices();
    const int q = model.sys.q();

    // the complement spins come from an exact Gibbs draw, so they are feasible
    auto law = gibbs_distribution(model.sys, g);
    std::discrete_distribution<std::size_t> pick(law.begin(), law.end());
    std::size_t idx = pick(rng);
    std::vector<int> full(vs.size());
    for (std::size_t i = vs.size(); i-- > 0;) {
      full[i] = static_cast<int>(idx % static_cast<std::size_t>(q)) + 1;
      idx /= static_cast<std::size_t>(q);
    }

    std::vector<VertexId> window, rest;
    std::bernoulli_distribution in_window(0.4);
    for (const auto& v : vs) (in_window(rng) ? window : rest).push_back(v);
    if (window.empty()) {
      window.push_back(rest.back());
      rest.pop_back();
    }
    if (rest.empty()) {
      rest.push_back(window.back());
      window.pop_back();
    }

    PartialConfiguration complement, boundary;
    std::vector<VertexId> edge_of_window;
    for (const auto& w : window)
      for (const auto& u : g.neighbors(w))
        if (std::find(window.begin(), window.end(), u) == window.end()) edge_of_window.push_back(u);
    std::sort(edge_of_window.begin(), edge_of_window.end());
    edge_of_window.erase(std::unique(edge_of_window.begin(), edge_of_window.end()), edge_of_window.end());
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (std::find(rest.begin(), rest.end(), vs[i]) == rest.end()) continue;
      complement.assign(vs[i], full[i]);
      if (std::binary_search(edge_of_window.begin(), edge_of_window.end(), vs[i])) boundary.assign(vs[i], full[i]);
    }

    auto joint = [&](const PartialConfiguration& fixed) {
      std::vector<VertexId> support = window;
      for (const auto& [u, s] : fixed) support.push_back(u);
      LocalProblemBuilder builder{model.sys, g};
      auto w = kernels::assignment_weights(builder.build(support, fixed, {}, nullptr, true));
      double total = 0.0;
      for (double x : w) total += x;
      for (double& x : w) x /= total;
      return w;
    };
    auto a = joint(complement);
    auto b = joint(boundary);
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));

    SuiteRow row;
    row.case_id = model.family + "#" + std::to_string(k);
    row.metric = "max_abs_diff";
    row.value = diff;
    row.threshold = 1e-12;
    row.pass = diff <= 1e-12;
    row.note = model.sys.label() + " n=" + std::to_string(vs.size()) + " |W|=" + std::to_string(window.size()) +
               " |boundary|=" + std::to_string(boundary.size());
    result.rows.push_back(std::move(row));
  }
  return result;
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {"distribution", "lemma1", "runtime", "coupling"};
  return n;
}

SuiteResult run(const std::string& name, const SuiteOptions& opts) {
  if (name == "distribution") return distribution(opts);
  if (name == "lemma1") return lemma1(opts);
  if (name == "runtime") return runtime(opts);
  if (name == "coupling") return coupling(opts);
  throw Error(ErrorCode::UnknownSuite, "unknown suite '" + name + "'");
}

}  // namespace ssms::suites
