#include "ssms/spin_system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "ssms/error.hpp"
#include "ssms/kernels.hpp"
#include "ssms/local_problem.hpp"

namespace ssms {

namespace {

constexpr double kMaxAbsLog = 200.0;

void check_entry(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw Error(ErrorCode::InvalidSystem, std::string(what) + " entries must be finite and nonnegative");
  if (x > 0.0 && std::abs(std::log(x)) > kMaxAbsLog)
    throw Error(ErrorCode::InvalidSystem, std::string(what) + " entry outside exp(+-200)");
}

std::string format_param(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

SpinSystem::SpinSystem(int q, std::vector<double> field, std::vector<std::vector<double>> interaction,
                       std::string label)
    : q_(q), field_(std::move(field)), label_(std::move(label)) {
  if (q < 2) throw Error(ErrorCode::TooFewSpins, "a spin system needs q >= 2, got " + std::to_string(q));
  const auto uq = static_cast<std::size_t>(q);
  if (field_.size() != uq || interaction.size() != uq)
    throw Error(ErrorCode::DimensionMismatch, "field and interaction must have q entries");
  interaction_.reserve(uq * uq);
  for (const auto& row : interaction) {
    if (row.size() != uq) throw Error(ErrorCode::DimensionMismatch, "interaction must be q x q");
    interaction_.insert(interaction_.end(), row.begin(), row.end());
  }
  for (double b : field_) check_entry(b, "field");
  for (double a : interaction_) check_entry(a, "interaction");
  for (std::size_t i = 0; i < uq; ++i)
    for (std::size_t j = 0; j < uq; ++j)
      if (interaction_[i * uq + j] != interaction_[j * uq + i])
        throw Error(ErrorCode::InvalidSystem, "interaction matrix must be symmetric");
  max_field_ = *std::max_element(field_.begin(), field_.end());
  max_interaction_ = *std::max_element(interaction_.begin(), interaction_.end());
  if (max_field_ <= 0.0) throw Error(ErrorCode::InvalidSystem, "at least one field entry must be positive");
  if (max_interaction_ <= 0.0) throw Error(ErrorCode::InvalidSystem, "interaction matrix is identically zero");
}

SpinSystem hardcore(double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::NonpositiveLambda, "hardcore activity must be positive");
  return SpinSystem(2, {1.0, lambda}, {{1.0, 1.0}, {1.0, 0.0}}, "hardcore(lambda=" + format_param(lambda) + ")");
}

SpinSystem monomer_dimer(double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorCode::NonpositiveLambda, "monomer-dimer activity must be positive");
  return SpinSystem(2, {1.0, gamma}, {{1.0, 1.0}, {1.0, 0.0}}, "monomer-dimer(gamma=" + format_param(gamma) + ")");
}

SpinSystem ising(double lambda) {
  if (!(lambda >= 1.0)) throw Error(ErrorCode::LambdaBelowOne, "ferromagnetic Ising needs lambda >= 1");
  return SpinSystem(2, {1.0, 1.0}, {{lambda, 1.0}, {1.0, lambda}}, "ising(lambda=" + format_param(lambda) + ")");
}

SpinSystem coloring(int q) {
  if (q < 2) throw Error(ErrorCode::TooFewSpins, "colouring needs q >= 2");
  std::vector<std::vector<double>> a(static_cast<std::size_t>(q), std::vector<double>(static_cast<std::size_t>(q), 1.0));
  for (std::size_t i = 0; i < a.size(); ++i) a[i][i] = 0.0;
  return SpinSystem(q, std::vector<double>(static_cast<std::size_t>(q), 1.0), std::move(a),
                    "coloring(q=" + std::to_string(q) + ")");
}

double config_weight(const SpinSystem& sys, const LocalGraph& g, const std::vector<VertexId>& vertices,
                     const PartialConfiguration& config) {
  std::unordered_set<VertexId, VertexHash> in_set(vertices.begin(), vertices.end());
  double w = 1.0;
  for (const auto& v : vertices) {
    auto s = config.spin_of(v);
    if (!s) throw Error(ErrorCode::MissingSpin, "no spin assigned to " + v.to_string());
    if (*s > sys.q()) throw Error(ErrorCode::ConfigError, "spin outside 1..q at " + v.to_string());
    w *= sys.field(*s);
    for (const auto& u : g.neighbors(v)) {
      if (v < u && in_set.contains(u)) {
        auto t = config.spin_of(u);
        if (!t) throw Error(ErrorCode::MissingSpin, "no spin assigned to " + u.to_string());
        w *= sys.interaction(*s, *t);
      }
    }
  }
  return w;
}

namespace {

// Rescaling factor applied by LocalProblemBuilder to a problem with
// `n` free vertices and `m` edges touching a free vertex.
double unscale(const SpinSystem& sys, std::size_t n, std::size_t m) {
  return std::pow(sys.max_field(), static_cast<double>(n)) * std::pow(sys.max_interaction(), static_cast<double>(m));
}

}  // namespace

double partition_function(const SpinSystem& sys, const LocalGraph& g) {
  auto vs = g.vertices();
  LocalProblemBuilder builder{sys, g};
  auto problem = builder.build(vs, {}, {}, nullptr, true);
  auto sums = kernels::row_sums(problem);
  double z = sums.sums[0] * unscale(sys, vs.size(), g.edges().size());
  if (!(z > 0.0)) throw Error(ErrorCode::DegenerateSystem, "partition function is zero for " + sys.label());
  return z;
}

bool is_feasible(const SpinSystem& sys, const LocalGraph& g, const PartialConfiguration& config,
                 const std::vector<VertexId>& support) {
  LocalProblemBuilder builder{sys, g};
  auto problem = builder.build(support, config.restricted_to(support), {}, nullptr, false);
  return kernels::row_sums(problem).sums[0] > 0.0;
}

std::vector<double> gibbs_distribution(const SpinSystem& sys, const LocalGraph& g) {
  auto vs = g.vertices();
  LocalProblemBuilder builder{sys, g};
  auto problem = builder.build(vs, {}, {}, nullptr, true);
  auto w = kernels::assignment_weights(problem);
  double total = 0.0;
  for (double x : w) total += x;
  if (!(total > 0.0)) throw Error(ErrorCode::DegenerateSystem, "partition function is zero for " + sys.label());
  for (double& x : w) x /= total;
  return w;
}

}  // namespace ssms
