#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace caldist {

// Absolute tolerance used for every equality comparison on reals.
inline constexpr double kTolerance = 1e-9;
// Masses read from files may be off by this much before renormalisation.
inline constexpr double kLoadTolerance = 1e-6;

// One domain point: marginal mass D_x(x), conditional label rate
// mu(x) = Pr[y = 1 | x] and the prediction f(x).
struct Element {
  std::string id;
  double mass = 0.0;
  double mu = 0.0;
  double f = 0.0;

  bool operator==(const Element&) const = default;
};

// A finite distribution over X x {0,1} together with a predictor f on X.
//
// Invariants (checked on construction): ids unique and non-empty, masses
// non-negative and summing to 1 within kTolerance, mu and f inside [0,1].
class Instance {
 public:
  Instance() = default;
  explicit Instance(std::vector<Element> elements);

  // Accepts masses summing to 1 within `tolerance` and rescales them so the
  // stored masses sum to 1.
  static Instance normalized(std::vector<Element> elements,
                             double tolerance = kLoadTolerance);

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const Element& operator[](std::size_t i) const { return elements_[i]; }
  std::span<const Element> elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  std::optional<std::size_t> find(std::string_view id) const;
  // Throws kDomainMismatch when the id is unknown.
  std::size_t index_of(std::string_view id) const;

  // All masses equal (within 1e-12).
  bool is_uniform() const;
  // All mu in {0, 1}.
  bool is_noiseless() const;
  // E[y].
  double positive_rate() const;

  std::vector<double> predictions() const;
  // Same distribution, different predictor.
  Instance with_predictions(std::span<const double> f) const;

  bool operator==(const Instance& other) const {
    return elements_ == other.elements_;
  }

 private:
  std::vector<Element> elements_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Assignment of every element (by position) to a part. Always stored in
// canonical form: labels are 0..num_parts()-1, numbered by first occurrence.
class Partition {
 public:
  Partition() = default;
  // Arbitrary non-negative labels; relabelled into canonical form.
  explicit Partition(std::span<const std::size_t> labels);
  explicit Partition(std::vector<std::size_t> labels)
      : Partition(std::span<const std::size_t>(labels)) {}

  static Partition singletons(std::size_t n);
  static Partition single_part(std::size_t n);

  std::size_t size() const { return assignment_.size(); }
  std::size_t num_parts() const { return num_parts_; }
  std::size_t part_of(std::size_t element) const {
    return assignment_[element];
  }
  const std::vector<std::size_t>& assignment() const { return assignment_; }
  // Members of every part, in element order.
  std::vector<std::vector<std::size_t>> parts() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<std::size_t> assignment_;
  std::size_t num_parts_ = 0;
};

// Values of a predictor on the elements of an instance, by position.
struct Predictor {
  std::vector<double> values;

  Predictor() = default;
  // Throws kInvalidArgument unless every value lies in [0, 1].
  explicit Predictor(std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

enum class SolverKind { kOracle, kTypeSparse, kPtas, kPipeline };

std::string_view to_string(SolverKind kind);
SolverKind solver_kind_from_string(std::string_view name);

struct SolverResult {
  double value = 0.0;
  std::optional<Partition> witness;
  SolverKind solver = SolverKind::kOracle;
  // Zero for exact solvers.
  double additive_error_budget = 0.0;
  std::chrono::nanoseconds wall_time{0};
  // Solver-specific audit values (interval count, discretisation size, ...).
  std::map<std::string, double> details;
};

}  // namespace caldist
