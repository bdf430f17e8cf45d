#include <doctest.h>

#include <random>

#include "caldist/cost.hpp"
#include "caldist/error.hpp"
#include "caldist/estimate.hpp"
#include "caldist/generators.hpp"
#include "caldist/oracle.hpp"
#include "near.hpp"
#include "support.hpp"

using namespace caldist;

namespace {

// Regression value of empirical_caldist(gen_one_sided_lb(4), 64, 2024, oracle),
// recorded on the first build.
constexpr double kOneSidedK4M64Seed2024 = 0.05989583333333334;

LabeledSample sample_of(const Instance& source, std::vector<Draw> draws) {
  return {std::move(draws), 0, fingerprint(source)};
}

}  // namespace

TEST_CASE("draw_sample") {
  const Instance one({{"x", 1.0, 1.0, 0.5}});
  for (const auto& d : draw_sample(one, 100, 1).draws) {
    CHECK(d.element == 0);
    CHECK(d.label);
  }

  const Instance zeros({{"a", 0.3, 0.0, 0.1}, {"b", 0.7, 0.0, 0.9}});
  for (const auto& d : draw_sample(zeros, 100, 2).draws) CHECK_FALSE(d.label);

  for (std::uint64_t seed : {3u, 4u, 5u}) {
    const Instance half({{"h", 1.0, 0.5, 0.5}});
    const auto s = draw_sample(half, 100000, seed);
    std::size_t ones = 0;
    for (const auto& d : s.draws) ones += d.label;
    const double freq = static_cast<double>(ones) / 1e5;
    CHECK(freq >= 0.49);
    CHECK(freq <= 0.51);
  }

  const auto a = draw_sample(zeros, 50, 7);
  const auto b = draw_sample(zeros, 50, 7);
  CHECK(a.draws.size() == 50);
  for (std::size_t i = 0; i < 50; ++i) CHECK(a.draws[i].element == b.draws[i].element);
  CHECK(a.source_fingerprint == fingerprint(zeros));
  CHECK_THROWS_AS(draw_sample(zeros, 0, 1), Error);
}

TEST_CASE("empirical_instance") {
  const Instance src({{"a", 0.5, 0.5, 0.2}, {"b", 0.25, 0.5, 0.7}, {"c", 0.25, 0.5, 0.9}});
  const auto emp = empirical_instance(
      sample_of(src, {{0, true}, {0, false}, {1, true}}), src);
  REQUIRE(emp.size() == 2);
  CHECK(emp[0].id == "a");
  CHECK(emp[0].mass == near(2.0 / 3.0));
  CHECK(emp[0].mu == near(0.5));
  CHECK(emp[0].f == 0.2);
  CHECK(emp[1].mass == near(1.0 / 3.0));
  CHECK(emp[1].mu == near(1.0));

  const auto single = empirical_instance(sample_of(src, {{2, false}}), src);
  REQUIRE(single.size() == 1);
  CHECK(single[0].mass == 1.0);

  try {
    empirical_instance(sample_of(src, {}), src);
    FAIL("expected EmptySample");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kEmptySample);
  }
  const auto other = src.with_predictions(std::vector<double>{0.2, 0.7, 0.8});
  try {
    empirical_instance(sample_of(src, {{0, true}}), other);
    FAIL("expected DomainMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDomainMismatch);
  }
}

TEST_CASE("property: empirical masses are counts over m") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 50; ++t) {
    const auto inst = testing::random_instance(rng, 1 + rng() % 10);
    const std::size_t m = 1 + rng() % 300;
    const auto s = draw_sample(inst, m, rng());
    const auto emp = empirical_instance(s, inst);
    double total = 0.0;
    for (const auto& e : emp) {
      total += e.mass;
      const double count = e.mass * static_cast<double>(m);
      CHECK(std::abs(count - std::round(count)) < 1e-9);
      CHECK(e.f == inst[inst.index_of(e.id)].f);
    }
    CHECK(total == near(1.0));
  }
}

TEST_CASE("empirical_caldist") {
  const Instance det({{"a", 0.3, 0.0, 0.0}, {"b", 0.3, 1.0, 1.0}, {"c", 0.4, 1.0, 1.0}});
  for (std::size_t m : {1u, 10u, 1000u}) {
    CHECK(empirical_caldist(det, m, 5, SolverKind::kOracle) == near(0.0));
  }

  const auto lb = gen_one_sided_lb(4);
  const double v = empirical_caldist(lb, 64, 2024, SolverKind::kOracle);
  CHECK(v >= 0.0);
  CHECK(v == empirical_caldist(lb, 64, 2024, SolverKind::kOracle));
  CHECK(v == near(kOneSidedK4M64Seed2024));

  const double gamma = 0.5;
  const auto pure = gen_distinguishing(2, gamma, DistinguishingMode::kPure, 0);
  const double big = empirical_caldist(pure, 100000, 11, SolverKind::kTypeSparse);
  CHECK(std::abs(big - gamma / 12.0) <= 0.1 * gamma / 12.0);
}

TEST_CASE("property: upper-bound witness transfers to the empirical instance") {
  std::mt19937_64 rng(72);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng() % 7;
    const auto inst = testing::random_instance(rng, n);
    const auto p = testing::random_partition(rng, n);
    const auto g = induced_predictor(inst, p);
    REQUIRE(is_calibrated(inst, g, 1e-9));

    const auto emp = empirical_instance(draw_sample(inst, 1 + rng() % 40, rng()), inst);
    std::vector<double> g_emp;
    std::vector<std::size_t> labels;
    for (const auto& e : emp) {
      const std::size_t i = inst.index_of(e.id);
      g_emp.push_back(g[i]);
      labels.push_back(p.part_of(i));
    }
    const Partition restricted(labels);
    const double transfer =
        l1_distance(emp, Predictor(emp.predictions()), Predictor(g_emp)) +
        cost_of_partition(emp.with_predictions(g_emp), restricted);
    CHECK(oracle_caldist(emp).value <= transfer + 1e-9);
  }
}

TEST_CASE("quantiles") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK(quantile({0.0, 10.0}, 0.1) == near(1.0));
  CHECK(quantile({5.0}, 0.9) == 5.0);
}

TEST_CASE("experiments are seed-deterministic") {
  const auto a = experiment_one_sided(3, 10, 99);
  const auto b = experiment_one_sided(3, 10, 99);
  REQUIRE(a.trials.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(a.trials[i].value == b.trials[i].value);
    CHECK(a.trials[i].seed == b.trials[i].seed);
    CHECK(a.trials[i].m == 27);
  }
  CHECK(a.summary == b.summary);

  const auto t1 = experiment_two_sided(gen_bghn(0.01), {0.2}, 5, 3);
  const auto t2 = experiment_two_sided(gen_bghn(0.01), {0.2}, 5, 3);
  CHECK(t1.summary == t2.summary);

  const auto d1 = experiment_distinguishing(1, 0.5, {4}, 100, 8, 3);
  const auto d2 = experiment_distinguishing(1, 0.5, {4}, 100, 8, 3);
  CHECK(d1.summary == d2.summary);
  CHECK(d1.summary.at("pure_caldist") == near(0.5 / 12.0));
}

TEST_CASE("two-sided experiment") {
  // A huge eps makes every trial succeed.
  const auto r = experiment_two_sided(gen_bghn(0.01), {1.0}, 20, 5);
  CHECK(r.summary.at("success_fraction@1") == 1.0);
  CHECK(r.summary.at("implication_failures@1") == 0.0);
  for (const auto& trial : r.trials) {
    // tv <= eps/5 must force a small error.
    if (trial.extras.at("tv") <= trial.extras.at("eps") / 5.0) {
      CHECK(trial.extras.at("abs_error") <= trial.extras.at("eps") + 1e-9);
    }
  }
}

TEST_CASE("one-sided typicality at k = 10") {
  // Calibration over seeds 1..3 gave fractions 0.985 to 0.995; 0.9 is pinned.
  const auto r = experiment_one_sided(10, 200, 1);
  CHECK(r.summary.at("fraction_mostly_typical") >= 0.9);
  CHECK(r.summary.at("fraction_positive") >= 0.5);
}
