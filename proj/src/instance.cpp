#include "caldist/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "caldist/error.hpp"

namespace caldist {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInstance: return "InvalidInstance";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kEmptySubset: return "EmptySubset";
    case ErrorKind::kZeroMass: return "ZeroMass";
    case ErrorKind::kPartitionMismatch: return "PartitionMismatch";
    case ErrorKind::kDomainMismatch: return "DomainMismatch";
    case ErrorKind::kDomainTooLarge: return "DomainTooLarge";
    case ErrorKind::kStateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorKind::kNotUniform: return "NotUniform";
    case ErrorKind::kDegenerateInstance: return "DegenerateInstance";
    case ErrorKind::kEpsOutOfRange: return "EpsOutOfRange";
    case ErrorKind::kEmptySample: return "EmptySample";
    case ErrorKind::kAllZero: return "AllZero";
    case ErrorKind::kMalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

namespace {

bool in_unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

double total_mass(const std::vector<Element>& elements) {
  double total = 0.0;
  for (const auto& e : elements) total += e.mass;
  return total;
}

void check_fields(const std::vector<Element>& elements) {
  if (elements.empty()) {
    throw Error(ErrorKind::kInvalidInstance, "instance has no elements");
  }
  for (const auto& e : elements) {
    if (e.id.empty()) {
      throw Error(ErrorKind::kInvalidInstance, "element with empty id");
    }
    if (!std::isfinite(e.mass) || e.mass < 0.0) {
      throw Error(ErrorKind::kInvalidInstance,
                  "element '" + e.id + "': mass must be finite and >= 0");
    }
    if (!in_unit_interval(e.mu)) {
      throw Error(ErrorKind::kInvalidInstance,
                  "element '" + e.id + "': mu must lie in [0,1]");
    }
    if (!in_unit_interval(e.f)) {
      throw Error(ErrorKind::kInvalidInstance,
                  "element '" + e.id + "': f must lie in [0,1]");
    }
  }
}

}  // namespace

Instance::Instance(std::vector<Element> elements)
    : elements_(std::move(elements)) {
  check_fields(elements_);
  const double total = total_mass(elements_);
  if (std::abs(total - 1.0) > kTolerance) {
    throw Error(ErrorKind::kInvalidInstance,
                "masses sum to " + std::to_string(total) + ", expected 1");
  }
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!index_.emplace(elements_[i].id, i).second) {
      throw Error(ErrorKind::kInvalidInstance,
                  "duplicate element id '" + elements_[i].id + "'");
    }
  }
}

Instance Instance::normalized(std::vector<Element> elements, double tolerance) {
  check_fields(elements);
  const double total = total_mass(elements);
  if (std::abs(total - 1.0) > tolerance) {
    throw Error(ErrorKind::kInvalidInstance,
                "masses sum to " + std::to_string(total) +
                    ", outside the accepted tolerance of 1");
  }
  for (auto& e : elements) e.mass /= total;
  return Instance(std::move(elements));
}

std::optional<std::size_t> Instance::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Instance::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorKind::kDomainMismatch,
              "unknown element id '" + std::string(id) + "'");
}

bool Instance::is_uniform() const {
  if (elements_.empty()) return true;
  const double m = elements_.front().mass;
  return std::all_of(elements_.begin(), elements_.end(), [m](const Element& e) {
    return std::abs(e.mass - m) <= 1e-12;
  });
}

bool Instance::is_noiseless() const {
  return std::all_of(elements_.begin(), elements_.end(), [](const Element& e) {
    return e.mu == 0.0 || e.mu == 1.0;
  });
}

double Instance::positive_rate() const {
  double rate = 0.0;
  for (const auto& e : elements_) rate += e.mass * e.mu;
  return rate;
}

std::vector<double> Instance::predictions() const {
  std::vector<double> f(elements_.size());
  std::transform(elements_.begin(), elements_.end(), f.begin(),
                 [](const Element& e) { return e.f; });
  return f;
}

Instance Instance::with_predictions(std::span<const double> f) const {
  if (f.size() != elements_.size()) {
    throw Error(ErrorKind::kDomainMismatch, "prediction count differs from domain size");
  }
  auto elements = elements_;
  for (std::size_t i = 0; i < f.size(); ++i) elements[i].f = f[i];
  return Instance(std::move(elements));
}

Partition::Partition(std::span<const std::size_t> labels)
    : assignment_(labels.size()) {
  std::unordered_map<std::size_t, std::size_t> relabel;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = relabel.emplace(labels[i], relabel.size());
    assignment_[i] = it->second;
  }
  num_parts_ = relabel.size();
}

Partition Partition::singletons(std::size_t n) {
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  return Partition(labels);
}

Partition Partition::single_part(std::size_t n) {
  return Partition(std::vector<std::size_t>(n, 0));
}

std::vector<std::vector<std::size_t>> Partition::parts() const {
  std::vector<std::vector<std::size_t>> out(num_parts_);
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    out[assignment_[i]].push_back(i);
  }
  return out;
}

Predictor::Predictor(std::vector<double> v) : values(std::move(v)) {
  for (double x : values) {
    if (!in_unit_interval(x)) {
      throw Error(ErrorKind::kInvalidArgument, "predictor value outside [0,1]");
    }
  }
}

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::kOracle: return "oracle";
    case SolverKind::kTypeSparse: return "typesparse";
    case SolverKind::kPtas: return "ptas";
    case SolverKind::kPipeline: return "pipeline";
  }
  return "unknown";
}

SolverKind solver_kind_from_string(std::string_view name) {
  if (name == "oracle") return SolverKind::kOracle;
  if (name == "typesparse") return SolverKind::kTypeSparse;
  if (name == "ptas") return SolverKind::kPtas;
  if (name == "pipeline") return SolverKind::kPipeline;
  throw Error(ErrorKind::kInvalidArgument, "unknown solver '" + std::string(name) + "'");
}

}  // namespace caldist
