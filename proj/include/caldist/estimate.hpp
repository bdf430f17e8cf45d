#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "caldist/instance.hpp"
#include "caldist/solve.hpp"

namespace caldist {

// Hash of ids and the exact bit patterns of every mass, mu and f.
std::uint64_t fingerprint(const Instance& inst);

struct Draw {
  std::size_t element = 0;  // position in the source instance
  bool label = false;
};

struct LabeledSample {
  std::vector<Draw> draws;
  std::uint64_t seed = 0;
  std::uint64_t source_fingerprint = 0;
};

// m i.i.d. draws: the element by inverse CDF over the cumulative masses
// (first index whose cumulative mass exceeds u), the label by u' < mu.
// Throws kInvalidArgument for m = 0.
LabeledSample draw_sample(const Instance& inst, std::size_t m, std::uint64_t seed);

// Empirical distribution of the sample over the sampled support, in source
// order: mass = count / m, mu = mean label, f copied from `source`.
// Throws kEmptySample, and kDomainMismatch if `source` is not the instance the
// sample was drawn from.
Instance empirical_instance(const LabeledSample& sample, const Instance& source);

// Sample, build the empirical instance, solve.
double empirical_caldist(const Instance& inst, std::size_t m, std::uint64_t seed,
                         SolverKind solver, const SolveOptions& options = {});

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t m = 0;
  double value = 0.0;
  std::map<std::string, double> extras;
};

struct ExperimentReport {
  std::string name;
  std::uint64_t seed = 0;
  std::map<std::string, double> parameters;
  std::vector<TrialRecord> trials;
  std::map<std::string, double> summary;
};

// Median of a non-empty list (mean of the middle pair for even sizes).
double median(std::vector<double> values);
// Linear-interpolated quantile, q in [0, 1].
double quantile(std::vector<double> values, double q);

// Draws m (default k^3) samples from gen_one_sided_lb(k) per trial and solves
// the empirical instance with the oracle. Extras per trial: typical count,
// support size. Requires k <= 12.
ExperimentReport experiment_one_sided(std::size_t k, std::size_t trials, std::uint64_t seed,
                                      std::size_t m = 0);

// Sample-size constant for the two-sided experiment: m = ceil(c |X| / eps^2).
// Fixed by a calibration run; see tests/acceptance.cpp.
inline constexpr double kTwoSidedSampleConstant = 1.0;

// For each eps: m = ceil(c |X| / eps^2) samples per trial, |empirical - true|
// against eps, and tv(empirical, true) against eps / 5.
ExperimentReport experiment_two_sided(const Instance& inst, const std::vector<double>& eps_grid,
                                      std::size_t trials, std::uint64_t seed,
                                      double c = kTwoSidedSampleConstant);

// (a) Pure CalDist and, over `mixed_instances` seeded mixed instances, the
// mixed CalDist with the drawn count N of mu = 1 elements (oracle cross-check
// when 4k + 3 <= 13). Counts of mixed instances under gamma/16 are reported
// for N in [k, 3k] and for |N - 2k| <= k/6 separately. (b) For each m in m_grid, the fraction of `trials`
// samples of size m in which some x_i repeats, against m^2 gamma^2 / (32k).
ExperimentReport experiment_distinguishing(std::size_t k, double gamma,
                                           const std::vector<std::size_t>& m_grid,
                                           std::size_t trials, std::uint64_t seed,
                                           std::size_t mixed_instances = 20);

}  // namespace caldist
