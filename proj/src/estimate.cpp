#include "caldist/estimate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "caldist/cost.hpp"
#include "caldist/error.hpp"
#include "caldist/generators.hpp"
#include "caldist/oracle.hpp"
#include "caldist/rng.hpp"
#include "caldist/typesparse.hpp"

namespace caldist {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

void mix_bytes(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) h = (h ^ bytes[i]) * kFnvPrime;
}

void mix_double(std::uint64_t& h, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  mix_bytes(h, &bits, sizeof bits);
}

std::string key(std::string_view name, double v) {
  std::ostringstream out;
  out << name << '@' << v;
  return out.str();
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

void summarise(std::map<std::string, double>& summary, const std::string& prefix,
               const std::vector<double>& values) {
  if (values.empty()) return;
  summary[prefix + "mean"] = mean(values);
  summary[prefix + "median"] = median(values);
  summary[prefix + "q10"] = quantile(values, 0.1);
  summary[prefix + "q90"] = quantile(values, 0.9);
}

}  // namespace

std::uint64_t fingerprint(const Instance& inst) {
  std::uint64_t h = kFnvOffset;
  for (const auto& e : inst) {
    mix_bytes(h, e.id.data(), e.id.size());
    mix_bytes(h, "", 1);
    mix_double(h, e.mass);
    mix_double(h, e.mu);
    mix_double(h, e.f);
  }
  return h;
}

LabeledSample draw_sample(const Instance& inst, std::size_t m, std::uint64_t seed) {
  if (m == 0) throw Error(ErrorKind::kInvalidArgument, "sample size must be at least 1");
  std::vector<double> cumulative(inst.size());
  double running = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    running += inst[i].mass;
    cumulative[i] = running;
    if (inst[i].mass > 0.0) last_positive = i;
  }

  SplitMix64 rng(seed);
  LabeledSample sample;
  sample.seed = seed;
  sample.source_fingerprint = fingerprint(inst);
  sample.draws.reserve(m);
  for (std::size_t t = 0; t < m; ++t) {
    const double u = rng.uniform();
    auto i = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    // Rounding can leave the total a hair below 1.
    if (i >= inst.size()) i = last_positive;
    sample.draws.push_back({i, rng.uniform() < inst[i].mu});
  }
  return sample;
}

Instance empirical_instance(const LabeledSample& sample, const Instance& source) {
  if (sample.draws.empty()) throw Error(ErrorKind::kEmptySample, "sample has no draws");
  if (sample.source_fingerprint != fingerprint(source)) {
    throw Error(ErrorKind::kDomainMismatch, "sample was drawn from a different instance");
  }
  std::vector<std::size_t> count(source.size(), 0);
  std::vector<std::size_t> ones(source.size(), 0);
  for (const auto& d : sample.draws) {
    ++count[d.element];
    if (d.label) ++ones[d.element];
  }
  const double m = static_cast<double>(sample.draws.size());
  std::vector<Element> elements;
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (count[i] == 0) continue;
    elements.push_back({source[i].id, static_cast<double>(count[i]) / m,
                        static_cast<double>(ones[i]) / static_cast<double>(count[i]),
                        source[i].f});
  }
  return Instance(std::move(elements));
}

double empirical_caldist(const Instance& inst, std::size_t m, std::uint64_t seed,
                         SolverKind solver, const SolveOptions& options) {
  const auto sample = draw_sample(inst, m, seed);
  return solve(empirical_instance(sample, inst), solver, options).value;
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorKind::kInvalidArgument, "quantile of an empty list");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

ExperimentReport experiment_one_sided(std::size_t k, std::size_t trials, std::uint64_t seed,
                                      std::size_t m) {
  if (k == 0 || k > 12) {
    throw Error(ErrorKind::kInvalidArgument, "one-sided experiment needs 1 <= k <= 12");
  }
  if (m == 0) m = k * k * k;
  const Instance inst = gen_one_sided_lb(k);
  const double kk = static_cast<double>(k);
  const double md = static_cast<double>(m);

  ExperimentReport report;
  report.name = "one-sided";
  report.seed = seed;
  report.parameters = {{"k", kk}, {"m", md}, {"trials", static_cast<double>(trials)}};

  std::vector<double> values;
  std::size_t positive = 0;
  std::size_t mostly_typical = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    TrialRecord rec;
    rec.index = t;
    rec.seed = derive_seed(seed, t);
    rec.m = m;
    const auto sample = draw_sample(inst, m, rec.seed);
    const Instance emp = empirical_instance(sample, inst);
    rec.value = oracle_caldist(emp).value;

    std::size_t typical = 0;
    for (const auto& e : emp) {
      const double n_i = e.mass * md;
      const double delta = e.mu - inst[inst.index_of(e.id)].mu;
      if (n_i >= md / (2.0 * kk) && n_i <= 2.0 * md / kk &&
          std::abs(delta) >= 1.0 / (300.0 * kk)) {
        ++typical;
      }
    }
    rec.extras["typical"] = static_cast<double>(typical);
    rec.extras["support"] = static_cast<double>(emp.size());
    if (rec.value > 0.0) ++positive;
    if (static_cast<double>(typical) >= 0.9 * kk) ++mostly_typical;
    values.push_back(rec.value);
    report.trials.push_back(std::move(rec));
  }
  summarise(report.summary, "", values);
  if (trials > 0) {
    report.summary["fraction_positive"] = static_cast<double>(positive) / trials;
    report.summary["fraction_mostly_typical"] = static_cast<double>(mostly_typical) / trials;
  }
  return report;
}

ExperimentReport experiment_two_sided(const Instance& inst, const std::vector<double>& eps_grid,
                                      std::size_t trials, std::uint64_t seed, double c) {
  const double truth = oracle_caldist(inst).value;
  const double size = static_cast<double>(inst.size());

  ExperimentReport report;
  report.name = "two-sided";
  report.seed = seed;
  report.parameters = {{"c", c},
                       {"trials", static_cast<double>(trials)},
                       {"domain_size", size},
                       {"true_caldist", truth}};

  std::size_t index = 0;
  for (double eps : eps_grid) {
    if (!(eps > 0.0 && eps <= 1.0)) {
      throw Error(ErrorKind::kEpsOutOfRange, "eps must lie in (0, 1]");
    }
    const auto m = static_cast<std::size_t>(std::ceil(c * size / (eps * eps)));
    std::size_t success = 0;
    std::size_t implication_failures = 0;
    std::vector<double> values;
    for (std::size_t t = 0; t < trials; ++t, ++index) {
      TrialRecord rec;
      rec.index = index;
      rec.seed = derive_seed(seed, index);
      rec.m = m;
      const auto sample = draw_sample(inst, m, rec.seed);
      const Instance emp = empirical_instance(sample, inst);
      rec.value = oracle_caldist(emp).value;
      const double diff = std::abs(rec.value - truth);
      const double tv = tv_distance(emp, inst);
      const bool ok = diff <= eps;
      rec.extras["eps"] = eps;
      rec.extras["abs_error"] = diff;
      rec.extras["tv"] = tv;
      rec.extras["within_eps"] = ok ? 1.0 : 0.0;
      if (ok) ++success;
      if (tv <= eps / 5.0 && diff > eps + 1e-9) ++implication_failures;
      values.push_back(rec.value);
      report.trials.push_back(std::move(rec));
    }
    report.summary[key("m", eps)] = static_cast<double>(m);
    if (trials > 0) {
      report.summary[key("success_fraction", eps)] = static_cast<double>(success) / trials;
      report.summary[key("median", eps)] = median(values);
    }
    report.summary[key("implication_failures", eps)] = static_cast<double>(implication_failures);
  }
  return report;
}

ExperimentReport experiment_distinguishing(std::size_t k, double gamma,
                                           const std::vector<std::size_t>& m_grid,
                                           std::size_t trials, std::uint64_t seed,
                                           std::size_t mixed_instances) {
  const bool oracle_feasible = 4 * k + 3 <= OracleOptions{}.max_n;

  ExperimentReport report;
  report.name = "distinguishing";
  report.seed = seed;
  report.parameters = {{"k", static_cast<double>(k)},
                       {"gamma", gamma},
                       {"trials", static_cast<double>(trials)},
                       {"mixed_instances", static_cast<double>(mixed_instances)}};

  const Instance pure = gen_distinguishing(k, gamma, DistinguishingMode::kPure, 0);
  report.summary["pure_caldist"] = typesparse_caldist(pure).value;
  if (oracle_feasible) report.summary["pure_oracle"] = oracle_caldist(pure).value;
  report.summary["pure_target"] = gamma / 12.0;
  report.summary["mixed_bound"] = gamma / 16.0;

  std::size_t index = 0;
  std::size_t in_range = 0;
  std::size_t in_range_within_bound = 0;
  std::size_t concentrated = 0;
  std::size_t concentrated_within_bound = 0;
  for (std::size_t t = 0; t < mixed_instances; ++t, ++index) {
    TrialRecord rec;
    rec.index = index;
    rec.seed = derive_seed(seed, index);
    const Instance mixed = gen_distinguishing(k, gamma, DistinguishingMode::kMixed, rec.seed);
    std::size_t ones = 0;
    for (std::size_t i = 3; i < mixed.size(); ++i) ones += mixed[i].mu == 1.0 ? 1 : 0;
    rec.value = typesparse_caldist(mixed).value;
    rec.extras["phase"] = 0.0;
    rec.extras["N"] = static_cast<double>(ones);
    if (oracle_feasible) rec.extras["oracle"] = oracle_caldist(mixed).value;
    if (ones >= k && ones <= 3 * k) {
      ++in_range;
      if (rec.value <= gamma / 16.0 + kTolerance) ++in_range_within_bound;
    }
    // |N - 2k| <= k/6, the event the gamma/16 bound is derived from.
    const std::size_t gap = ones > 2 * k ? ones - 2 * k : 2 * k - ones;
    if (6 * gap <= k) {
      ++concentrated;
      if (rec.value <= gamma / 16.0 + kTolerance) ++concentrated_within_bound;
    }
    report.trials.push_back(std::move(rec));
  }
  report.summary["mixed_in_range"] = static_cast<double>(in_range);
  report.summary["mixed_in_range_within_bound"] = static_cast<double>(in_range_within_bound);
  report.summary["mixed_concentrated"] = static_cast<double>(concentrated);
  report.summary["mixed_concentrated_within_bound"] =
      static_cast<double>(concentrated_within_bound);

  for (std::size_t m : m_grid) {
    std::size_t collisions = 0;
    for (std::size_t t = 0; t < trials; ++t, ++index) {
      TrialRecord rec;
      rec.index = index;
      rec.seed = derive_seed(seed, index);
      rec.m = m;
      const auto sample = draw_sample(pure, m, rec.seed);
      std::vector<std::size_t> seen(pure.size(), 0);
      bool collision = false;
      for (const auto& d : sample.draws) {
        if (d.element >= 3 && ++seen[d.element] >= 2) collision = true;
      }
      rec.value = collision ? 1.0 : 0.0;
      rec.extras["phase"] = 1.0;
      if (collision) ++collisions;
      report.trials.push_back(std::move(rec));
    }
    const double md = static_cast<double>(m);
    const double p = trials > 0 ? static_cast<double>(collisions) / trials : 0.0;
    report.summary[key("collision_frequency", md)] = p;
    report.summary[key("collision_se", md)] =
        trials > 0 ? std::sqrt(p * (1.0 - p) / static_cast<double>(trials)) : 0.0;
    report.summary[key("collision_bound", md)] =
        md * md * gamma * gamma / (32.0 * static_cast<double>(k));
  }
  return report;
}

}  // namespace caldist
