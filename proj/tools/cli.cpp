#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "caldist/cost.hpp"
#include "caldist/error.hpp"
#include "caldist/estimate.hpp"
#include "caldist/generators.hpp"
#include "caldist/json_io.hpp"
#include "caldist/oracle.hpp"
#include "caldist/solve.hpp"
#include "caldist/sparsify.hpp"
#include "caldist/typesparse.hpp"

namespace caldist::cli {
namespace {

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::string read_all(const std::string& path, std::istream& fallback) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << fallback.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw Error(ErrorKind::kInvalidArgument, "cannot open '" + path + "'");
    buf << file.rdbuf();
  }
  return buf.str();
}

void write_all(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorKind::kInvalidArgument, "cannot write '" + path + "'");
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Instance load_instance(const std::string& path, std::istream& in) {
  return instance_from_json(parse_json(read_all(path, in)));
}

struct ComputeArgs {
  std::string input, output, solver;
  double eps = 0.1;
  std::optional<std::size_t> max_states;
  bool omit_timing = false;
};

struct OracleArgs {
  std::string input, output;
  std::size_t max_n = OracleOptions{}.max_n;
  bool prune = false;
  bool omit_timing = false;
};

struct SparsifyArgs {
  std::string input, output, mode;
  double eps = 0.0;
};

struct GenerateArgs {
  std::string output;
  double eps = 0.0;
  std::vector<std::int64_t> a;
  std::int64_t theta = 0;
  std::size_t k = 1;
  double gamma = 0.0;
  std::string mode = "pure";
  std::optional<std::uint64_t> seed;
  bool rounded = false;
};

struct EstimateArgs {
  std::string input, output, solver = "oracle";
  std::size_t m = 0;
  std::optional<std::uint64_t> seed;
  double eps = 0.1;
};

struct ExperimentArgs {
  std::string input, output, csv;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 100;
  std::size_t k = 4;
  std::size_t m = 0;
  std::vector<double> eps_grid;
  double c = kTwoSidedSampleConstant;
  double gamma = 0.5;
  std::vector<std::size_t> m_grid;
  std::size_t mixed_instances = 20;
};

struct VerifyArgs {
  std::string input, predictor, output;
  double tol = kTolerance;
};

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed) {
  if (!seed) throw Error(ErrorKind::kInvalidArgument, "--seed is required for randomized commands");
  return *seed;
}

int do_compute(const ComputeArgs& a, Io io) {
  const Instance inst = load_instance(a.input, io.in);
  SolveOptions options;
  options.eps = a.eps;
  options.max_states = a.max_states;
  const SolverResult r = solve(inst, solver_kind_from_string(a.solver), options);
  write_all(a.output, dump(to_json(r, inst, !a.omit_timing)), io.out);
  return kOk;
}

int do_oracle(const OracleArgs& a, Io io) {
  const Instance inst = load_instance(a.input, io.in);
  const SolverResult r = oracle_caldist(inst, {.max_n = a.max_n, .prune = a.prune});
  write_all(a.output, dump(to_json(r, inst, !a.omit_timing)), io.out);
  return kOk;
}

int do_sparsify(const SparsifyArgs& a, Io io) {
  const Instance inst = load_instance(a.input, io.in);
  Instance result;
  double tv = 0.0;
  std::ostringstream stats;
  if (a.mode == "uniform" || a.mode == "general") {
    const auto s = a.mode == "uniform" ? type_sparsify_uniform(inst, a.eps)
                                       : type_sparsify_general(inst, a.eps);
    result = s.instance;
    tv = s.tv;
  } else {
    const auto d = discretize(inst, a.eps);
    result = d.instance;
    tv = d.tv;
    stats << "N=" << d.resolution << " M=" << d.denominator << ' ';
  }
  stats << "tv=" << tv << " types=" << build_type_index(result).k()
        << " elements=" << result.size() << '\n';
  io.err << stats.str();
  write_all(a.output, dump(to_json(result)), io.out);
  return kOk;
}

Json with_metadata(const Instance& inst, Json metadata) {
  Json j = to_json(inst);
  j["metadata"] = std::move(metadata);
  return j;
}

int do_generate(const std::string& family, const GenerateArgs& a, Io io) {
  Json j;
  if (family == "bghn") {
    j = with_metadata(gen_bghn(a.eps), {{"family", family}, {"eps", a.eps}, {"caldist", a.eps}});
  } else if (family == "noiseless-ssp") {
    const auto r = gen_noiseless_reduction(SspInstance(a.a, a.theta));
    j = with_metadata(r.instance, {{"family", family},
                                   {"a", a.a},
                                   {"theta", a.theta},
                                   {"threshold", r.threshold}});
  } else if (family == "uniform-bssp" || family == "partition-to-bssp") {
    const BalancedSspInstance bssp =
        family == "uniform-bssp" ? BalancedSspInstance(a.a) : partition_to_balanced_ssp(a.a);
    const auto r = gen_uniform_reduction(bssp);
    Json meta = {{"family", family},
                 {"a", a.a},
                 {"balanced", bssp.a()},
                 {"k", bssp.k()},
                 {"threshold", r.threshold},
                 {"rounded", a.rounded}};
    j = with_metadata(a.rounded ? gen_rounded_uniform_reduction(bssp) : r.instance,
                      std::move(meta));
  } else if (family == "distinguish") {
    if (a.mode != "pure" && a.mode != "mixed") {
      throw Error(ErrorKind::kInvalidArgument, "--mode must be pure or mixed");
    }
    const bool mixed = a.mode == "mixed";
    const std::uint64_t seed = mixed ? require_seed(a.seed) : a.seed.value_or(0);
    const Instance inst = gen_distinguishing(
        a.k, a.gamma, mixed ? DistinguishingMode::kMixed : DistinguishingMode::kPure, seed);
    Json meta = {{"family", family}, {"k", a.k}, {"gamma", a.gamma}, {"mode", a.mode}};
    if (mixed) meta["seed"] = seed;
    j = with_metadata(inst, std::move(meta));
  } else {
    j = with_metadata(gen_one_sided_lb(a.k), {{"family", family}, {"k", a.k}, {"caldist", 0.0}});
  }
  write_all(a.output, dump(j), io.out);
  return kOk;
}

int do_estimate(const EstimateArgs& a, Io io) {
  const std::uint64_t seed = require_seed(a.seed);
  const Instance inst = load_instance(a.input, io.in);
  const auto sample = draw_sample(inst, a.m, seed);
  const Instance emp = empirical_instance(sample, inst);
  SolveOptions options;
  options.eps = a.eps;
  const SolverResult r = solve(emp, solver_kind_from_string(a.solver), options);
  Json j = {{"schema", kSchemaVersion},
            {"m", a.m},
            {"seed", seed},
            {"support", emp.size()},
            {"solver", a.solver},
            {"value", r.value},
            {"error_budget", r.additive_error_budget},
            {"tv_to_source", tv_distance(emp, inst)}};
  write_all(a.output, dump(j), io.out);
  return kOk;
}

int do_experiment(const std::string& kind, const ExperimentArgs& a, Io io) {
  const std::uint64_t seed = require_seed(a.seed);
  ExperimentReport report;
  if (kind == "one-sided") {
    report = experiment_one_sided(a.k, a.trials, seed, a.m);
  } else if (kind == "two-sided") {
    const Instance inst = load_instance(a.input, io.in);
    const auto grid = a.eps_grid.empty() ? std::vector<double>{0.1} : a.eps_grid;
    report = experiment_two_sided(inst, grid, a.trials, seed, a.c);
  } else {
    auto grid = a.m_grid;
    if (grid.empty()) {
      grid.push_back(static_cast<std::size_t>(
          std::ceil(std::sqrt(8.0 * static_cast<double>(a.k)) / a.gamma)));
    }
    report = experiment_distinguishing(a.k, a.gamma, grid, a.trials, seed, a.mixed_instances);
  }
  if (!a.csv.empty()) write_all(a.csv, report_csv(report), io.out);
  write_all(a.output, dump(report_summary(report)), io.out);
  return kOk;
}

int do_verify(const VerifyArgs& a, Io io) {
  const Instance inst = load_instance(a.input, io.in);
  const Predictor g = predictor_from_json(parse_json(read_all(a.predictor, io.in)), inst);
  const bool calibrated = is_calibrated(inst, g, a.tol);
  Json j = {{"schema", kSchemaVersion},
            {"calibrated", calibrated},
            {"tolerance", a.tol},
            {"distance_to_f", l1_distance(inst, Predictor(inst.predictions()), g)}};
  write_all(a.output, dump(j), io.out);
  return calibrated ? kOk : kNotCalibrated;
}

void add_io(CLI::App* cmd, std::string& input, std::string& output) {
  cmd->add_option("-i,--input", input, "Instance JSON file (default: stdin)");
  cmd->add_option("-o,--output", output, "Output file (default: stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Distance from calibration: exact solvers, approximation, sampling."};
  app.name("caldist");
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Solve an instance with a chosen solver");
  add_io(c, compute.input, compute.output);
  c->add_option("--solver", compute.solver, "typesparse | ptas | pipeline | oracle")
      ->required()
      ->check(CLI::IsMember({"typesparse", "ptas", "pipeline", "oracle"}));
  c->add_option("--eps", compute.eps, "Accuracy for ptas and pipeline")->capture_default_str();
  c->add_option("--max-states", compute.max_states, "State cap for the dynamic programs");
  c->add_flag("--omit-timing", compute.omit_timing, "Leave wall_time_ms out of the output");

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Exact value by enumerating every partition");
  add_io(o, oracle.input, oracle.output);
  o->add_option("--max-n", oracle.max_n, "Refuse domains larger than this")->capture_default_str();
  o->add_flag("--prune", oracle.prune, "Cut branches that cannot beat the incumbent");
  o->add_flag("--omit-timing", oracle.omit_timing, "Leave wall_time_ms out of the output");

  SparsifyArgs sparsify;
  auto* s = app.add_subcommand("sparsify", "Apply a distribution transform");
  add_io(s, sparsify.input, sparsify.output);
  s->add_option("--mode", sparsify.mode, "uniform | general | discretize")
      ->required()
      ->check(CLI::IsMember({"uniform", "general", "discretize"}));
  s->add_option("--eps", sparsify.eps, "TV budget")->required();

  GenerateArgs gen;
  std::string family;
  auto* g = app.add_subcommand("generate", "Emit an instance from a named family");
  g->add_option("family", family,
                "bghn | noiseless-ssp | uniform-bssp | partition-to-bssp | distinguish | "
                "one-sided")
      ->required()
      ->check(CLI::IsMember({"bghn", "noiseless-ssp", "uniform-bssp", "partition-to-bssp",
                             "distinguish", "one-sided"}));
  g->add_option("-o,--output", gen.output, "Output file (default: stdout)");
  g->add_option("--eps", gen.eps, "bghn offset");
  g->add_option("--a", gen.a, "Integer list, comma separated")->delimiter(',');
  g->add_option("--theta", gen.theta, "Subset-sum target");
  g->add_option("--k", gen.k, "Family size parameter")->capture_default_str();
  g->add_option("--gamma", gen.gamma, "distinguish: mass outside bot");
  g->add_option("--mode", gen.mode, "distinguish: pure | mixed")->capture_default_str();
  g->add_option("--seed", gen.seed, "Seed for mixed mode");
  g->add_flag("--rounded", gen.rounded, "uniform-bssp: emit the rounded variant");

  EstimateArgs est;
  auto* e = app.add_subcommand("estimate", "Empirical distance from one seeded sample");
  add_io(e, est.input, est.output);
  e->add_option("--m", est.m, "Sample size")->required();
  e->add_option("--seed", est.seed, "Sampling seed");
  e->add_option("--solver", est.solver, "Solver for the empirical instance")
      ->check(CLI::IsMember({"typesparse", "ptas", "pipeline", "oracle"}))
      ->capture_default_str();
  e->add_option("--eps", est.eps, "Accuracy for ptas and pipeline")->capture_default_str();

  ExperimentArgs exp;
  std::string kind;
  auto* x = app.add_subcommand("experiment", "Seeded sampling experiments");
  x->add_option("kind", kind, "one-sided | two-sided | distinguish")
      ->required()
      ->check(CLI::IsMember({"one-sided", "two-sided", "distinguish"}));
  add_io(x, exp.input, exp.output);
  x->add_option("--csv", exp.csv, "Write per-trial rows here");
  x->add_option("--seed", exp.seed, "Run seed");
  x->add_option("--trials", exp.trials, "Trials per setting")->capture_default_str();
  x->add_option("--k", exp.k, "one-sided / distinguish: k")->capture_default_str();
  x->add_option("--m", exp.m, "one-sided: sample size (default k^3)");
  x->add_option("--eps", exp.eps_grid, "two-sided: eps grid")->delimiter(',');
  x->add_option("--c", exp.c, "two-sided: sample-size constant")->capture_default_str();
  x->add_option("--gamma", exp.gamma, "distinguish: gamma")->capture_default_str();
  x->add_option("--m-grid", exp.m_grid, "distinguish: sample sizes")->delimiter(',');
  x->add_option("--mixed-instances", exp.mixed_instances, "distinguish: mixed draws")
      ->capture_default_str();

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check a predictor for perfect calibration");
  add_io(v, verify.input, verify.output);
  v->add_option("--predictor", verify.predictor, "Predictor JSON file")->required();
  v->add_option("--tol", verify.tol, "Tolerance")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kValidationError;
  }

  const Io io{in, out, err};
  try {
    if (*c) return do_compute(compute, io);
    if (*o) return do_oracle(oracle, io);
    if (*s) return do_sparsify(sparsify, io);
    if (*g) return do_generate(family, gen, io);
    if (*e) return do_estimate(est, io);
    if (*x) return do_experiment(kind, exp, io);
    if (*v) return do_verify(verify, io);
  } catch (const Error& ex) {
    err << "error: " << to_string(ex.kind()) << ": " << ex.what() << '\n';
    return is_refusal(ex.kind()) ? kRefused : kValidationError;
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << '\n';
    return kInternalError;
  }
  return kValidationError;
}

}  // namespace caldist::cli
