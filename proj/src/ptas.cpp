#include "caldist/ptas.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "caldist/error.hpp"

namespace caldist {
namespace {

using Units = std::array<std::uint64_t, 2>;
using LabelMasses = std::vector<std::uint64_t>;  // p[2j] zeros, p[2j+1] ones

struct LabelMassesHash {
  std::size_t operator()(const LabelMasses& p) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto v : p) h = (h ^ v) * 0x100000001b3ull;
    return h;
  }
};

struct Node {
  LabelMasses p;
  double value = 0.0;
  std::size_t parent = 0;
  std::size_t part = 0;
};

// Rate of u1 / (u0 + u1) compared exactly.
bool rate_less(const Units& a, const Units& b) {
  return a[1] * (b[0] + b[1]) < b[1] * (a[0] + a[1]);
}

// Could part j still land in its interval after absorbing some subset of
// `rest` (sorted by ascending rate)? Only the side the rate has to move
// towards is checked.
bool reachable(std::uint64_t p0, std::uint64_t p1, std::size_t j, std::size_t k,
               const std::vector<Units>& rest) {
  const std::uint64_t kk = k;
  if (kk * p1 < j * (p0 + p1)) {
    for (auto it = rest.rbegin(); it != rest.rend(); ++it) {
      p0 += (*it)[0];
      p1 += (*it)[1];
      if (kk * p1 >= j * (p0 + p1)) return true;
    }
    return false;
  }
  for (const auto& u : rest) {
    p0 += u[0];
    p1 += u[1];
    if (kk * p1 < (j + 1) * (p0 + p1)) return true;
  }
  return false;
}

}  // namespace

PtasConfig PtasConfig::for_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw Error(ErrorKind::kEpsOutOfRange,
                "eps must lie in (0, 1], got " + std::to_string(eps));
  }
  PtasConfig config;
  config.eps = eps;
  config.k = static_cast<std::size_t>(std::ceil(3.0 / eps - 1e-9));
  return config;
}

bool in_interval(std::uint64_t p0, std::uint64_t p1, std::size_t j, std::size_t k) {
  const std::uint64_t t = p0 + p1;
  if (t == 0) return true;
  if (k * p1 < j * t) return false;
  return j + 1 == k || k * p1 < (j + 1) * t;
}

PtasRun ptas_solve(const Instance& inst, double eps, const PtasOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  PtasRun run;
  run.config = PtasConfig::for_eps(eps);
  run.discretized = discretize(inst, eps / 15.0);
  const std::size_t k = run.config.k;
  const std::uint64_t M = run.discretized.denominator;
  run.config.M = M;
  const auto& units = run.discretized.units;
  const std::size_t n = inst.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return units[a][0] + units[a][1] > units[b][0] + units[b][1];
  });

  std::vector<std::vector<Node>> layers(n + 1);
  layers[0].push_back({LabelMasses(2 * k, 0), 0.0, 0, 0});
  std::size_t visited = 1;
  std::uint64_t placed = 0;

  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t x = order[t];
    const Units u = units[x];
    placed += u[0] + u[1];
    const double mass = static_cast<double>(u[0] + u[1]) / static_cast<double>(M);

    std::vector<Units> rest;
    for (std::size_t s = t + 1; s < n; ++s) {
      if (units[order[s]][0] + units[order[s]][1] > 0) rest.push_back(units[order[s]]);
    }
    std::stable_sort(rest.begin(), rest.end(), rate_less);

    auto& next = layers[t + 1];
    std::unordered_map<LabelMasses, std::size_t, LabelMassesHash> index;
    const auto& prev = layers[t];
    for (std::size_t s = 0; s < prev.size(); ++s) {
      for (std::size_t j = 0; j < k; ++j) {
        LabelMasses q = prev[s].p;
        q[2 * j] += u[0];
        q[2 * j + 1] += u[1];
        bool alive = true;
        for (std::size_t i = 0; i < k && alive; ++i) {
          if (!in_interval(q[2 * i], q[2 * i + 1], i, k)) {
            alive = reachable(q[2 * i], q[2 * i + 1], i, k, rest);
          }
        }
        if (!alive) continue;
        assert(std::accumulate(q.begin(), q.end(), std::uint64_t{0}) == placed);

        const double centre = (static_cast<double>(j) + 0.5) / static_cast<double>(k);
        const double value =
            prev[s].value +
            mass * (std::abs(inst[x].f - centre) + 0.5 / static_cast<double>(k));
        auto [it, inserted] = index.emplace(q, next.size());
        if (inserted) {
          next.push_back({std::move(q), value, s, j});
          if (++visited > options.max_states) {
            throw Error(ErrorKind::kStateSpaceTooLarge,
                        "PTAS visited more than max_states = " +
                            std::to_string(options.max_states) + " states (k = " +
                            std::to_string(k) + ", M = " + std::to_string(M) + ")");
          }
        } else if (value < next[it->second].value) {
          next[it->second] = {next[it->second].p, value, s, j};
        }
      }
    }
  }

  const auto& last = layers[n];
  std::size_t best = last.size();
  for (std::size_t s = 0; s < last.size(); ++s) {
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) {
      ok = in_interval(last[s].p[2 * j], last[s].p[2 * j + 1], j, k);
    }
    if (ok && (best == last.size() || last[s].value < last[best].value)) best = s;
  }
  // Putting every element into the interval holding the overall rate is
  // always feasible, so some final state survives.
  if (best == last.size()) throw std::logic_error("PTAS: no feasible final state");

  run.interval.assign(n, 0);
  for (std::size_t t = n, s = best; t > 0; --t) {
    run.interval[order[t - 1]] = layers[t][s].part;
    s = layers[t][s].parent;
  }

  auto& r = run.result;
  r.value = last[best].value;
  r.witness = Partition(run.interval);
  r.solver = SolverKind::kPtas;
  r.additive_error_budget = 5.0 * run.discretized.tv;
  r.wall_time = std::chrono::steady_clock::now() - start;
  r.details["eps"] = eps;
  r.details["k"] = static_cast<double>(k);
  r.details["M"] = static_cast<double>(M);
  r.details["N"] = static_cast<double>(run.discretized.resolution);
  r.details["tv"] = run.discretized.tv;
  r.details["states"] = static_cast<double>(visited);
  return run;
}

SolverResult ptas_caldist(const Instance& inst, double eps, const PtasOptions& options) {
  return ptas_solve(inst, eps, options).result;
}

}  // namespace caldist
