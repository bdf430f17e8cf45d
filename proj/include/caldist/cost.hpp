#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "caldist/instance.hpp"

namespace caldist {

// Positions of the given ids; throws kDomainMismatch on unknown ids.
std::vector<std::size_t> indices_of(const Instance& inst,
                                    std::span<const std::string> ids);

// Mass-weighted average of mu over `subset` (element positions).
// Throws kEmptySubset for an empty subset, kZeroMass when its mass is 0.
double mu_of_subset(const Instance& inst, std::span<const std::size_t> subset);

// sum_{x in subset} mass(x) * |f(x) - mu(subset)|.
double cost_of_subset(const Instance& inst, std::span<const std::size_t> subset);

// Sum of the part costs. Parts carrying zero mass contribute nothing.
// Throws kPartitionMismatch if the partition covers a different domain size.
double cost_of_partition(const Instance& inst, const Partition& p);

// The perfectly calibrated predictor g(x) = mu(part of x). Zero-mass parts
// predict 0.
Predictor induced_predictor(const Instance& inst, const Partition& p);

// Groups elements by exact predicted value and checks, for every group with
// positive mass, that its label rate is within `tol` of the prediction.
bool is_calibrated(const Instance& inst, const Predictor& g, double tol);

// E_x |f(x) - g(x)|. Throws kDomainMismatch on size mismatch.
double l1_distance(const Instance& inst, const Predictor& f, const Predictor& g);

// Total variation distance between the joint distributions over X x {0,1}.
// Elements are matched by id; an id present on one side only contributes its
// whole joint mass.
double tv_distance(const Instance& a, const Instance& b);

}  // namespace caldist
