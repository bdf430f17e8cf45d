#include <doctest.h>

#include <random>

#include "caldist/cost.hpp"
#include "caldist/error.hpp"
#include "caldist/generators.hpp"
#include "caldist/oracle.hpp"
#include "caldist/ptas.hpp"
#include "near.hpp"
#include "support.hpp"

using namespace caldist;

namespace {

void check_bracket(const SolverResult& r, double truth, double eps) {
  CHECK(r.value >= truth - r.additive_error_budget - 1e-9);
  CHECK(r.value <= truth + eps + 1e-9);
}

}  // namespace

TEST_CASE("config") {
  CHECK(PtasConfig::for_eps(1.0).k == 3);
  CHECK(PtasConfig::for_eps(0.5).k == 6);
  CHECK(PtasConfig::for_eps(0.3).k == 10);
  CHECK(PtasConfig::for_eps(0.34).k == 9);
  CHECK_THROWS_AS(PtasConfig::for_eps(0.0), Error);
  CHECK_THROWS_AS(PtasConfig::for_eps(1.01), Error);
}

TEST_CASE("interval membership") {
  CHECK(in_interval(0, 0, 2, 5));
  CHECK(in_interval(1, 0, 0, 3));    // rate 0
  CHECK(in_interval(0, 1, 2, 3));    // rate 1 sits in the closed last interval
  CHECK_FALSE(in_interval(0, 1, 1, 3));
  CHECK(in_interval(2, 1, 1, 3));    // rate 1/3 opens interval 1
  CHECK_FALSE(in_interval(2, 1, 0, 3));
  CHECK(in_interval(1, 1, 1, 2));
}

TEST_CASE("ptas examples") {
  const Instance calibrated({{"a", 0.25, 0.125, 0.125}, {"b", 0.75, 0.875, 0.875}});
  check_bracket(ptas_caldist(calibrated, 0.3), 0.0, 0.3);

  const Instance four({{"x1", 0.25, 0, 0.1}, {"x2", 0.25, 0, 0.4}, {"x3", 0.25, 1, 0.6},
                       {"x4", 0.25, 1, 0.9}});
  const auto r = ptas_caldist(four, 0.25);
  CHECK(r.solver == SolverKind::kPtas);
  check_bracket(r, 0.1, 0.25);
  CHECK(r.details.at("k") == 12.0);

  check_bracket(ptas_caldist(gen_bghn(0.01), 0.5), 0.01, 0.5);
}

TEST_CASE("property: sandwich against the oracle") {
  std::mt19937_64 rng(51);
  for (double eps : {0.2, 0.34, 0.5}) {
    for (int t = 0; t < 15; ++t) {
      const auto inst = t % 3 == 0 ? testing::random_uniform_noiseless(rng, 1 + rng() % 8)
                                   : testing::random_instance(rng, 1 + rng() % 8);
      const auto r = ptas_caldist(inst, eps);
      check_bracket(r, oracle_caldist(inst).value, eps);
      CHECK(r.additive_error_budget <= eps / 3.0 + 1e-12);
    }
  }
}

TEST_CASE("property: value equals an independent subset DP over intervals") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 40; ++t) {
    const auto inst = testing::random_instance(rng, 1 + rng() % 6);
    const double eps = t % 2 == 0 ? 0.5 : 1.0;
    CHECK(ptas_caldist(inst, eps).value == near(testing::ptas_reference(inst, eps)));
  }
}

TEST_CASE("property: witness parts land in their intervals") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng() % 8;
    const auto inst = testing::random_instance(rng, n);
    const auto run = ptas_solve(inst, 0.5);
    const std::size_t k = run.config.k;
    REQUIRE(run.interval.size() == n);
    // Recompute per-interval label masses from the discretised instance.
    std::vector<double> w(k, 0.0), ones(k, 0.0);
    double proxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& e = run.discretized.instance[i];
      const std::size_t j = run.interval[i];
      REQUIRE(j < k);
      w[j] += e.mass;
      ones[j] += e.mass * e.mu;
      proxy += e.mass * (std::abs(e.f - (j + 0.5) / k) + 0.5 / k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (w[j] <= 1e-15) continue;
      const double rate = ones[j] / w[j];
      CHECK(rate >= static_cast<double>(j) / k - 1e-12);
      if (j + 1 < k) CHECK(rate < static_cast<double>(j + 1) / k + 1e-12);
    }
    CHECK(run.result.value == near(proxy));
    // The witness never costs more on D' than the proxy charges.
    CHECK(cost_of_partition(run.discretized.instance, *run.result.witness) <=
          run.result.value + 1e-9);
  }
}

TEST_CASE("property: refining eps never raises the value by more than the old eps") {
  std::mt19937_64 rng(54);
  const std::vector<double> grid{1.0, 0.5, 0.34};
  for (int t = 0; t < 15; ++t) {
    const auto inst = testing::random_instance(rng, 1 + rng() % 6);
    for (std::size_t g = 1; g < grid.size(); ++g) {
      CHECK(ptas_caldist(inst, grid[g]).value <=
            ptas_caldist(inst, grid[g - 1]).value + grid[g - 1] + 1e-9);
    }
  }
}

TEST_CASE("ptas refuses oversized state spaces") {
  std::mt19937_64 rng(55);
  const auto inst = testing::random_instance(rng, 8);
  try {
    ptas_caldist(inst, 0.2, {.max_states = 50});
    FAIL("expected a refusal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kStateSpaceTooLarge);
    CHECK(is_refusal(e.kind()));
  }
}
