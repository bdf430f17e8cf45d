#include "caldist/json_io.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "caldist/error.hpp"

namespace caldist {
namespace {

[[noreturn]] void malformed(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::kMalformedInput, where + ": " + what);
}

void check_schema(const Json& j, const std::string& what) {
  if (!j.is_object()) malformed(what, "expected a JSON object");
  if (auto it = j.find("schema"); it != j.end()) {
    if (!it->is_number_integer() || it->get<int>() != kSchemaVersion) {
      malformed(what + ".schema", "unsupported schema version " + it->dump());
    }
  }
}

double number_field(const Json& obj, const std::string& name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end()) malformed(where, "missing field '" + name + "'");
  if (!it->is_number()) malformed(where + "." + name, "expected a number, got " + it->dump());
  return it->get<double>();
}

const Json& object_field(const Json& obj, const std::string& name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end()) malformed(where, "missing field '" + name + "'");
  if (!it->is_object()) malformed(where + "." + name, "expected an object");
  return *it;
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kMalformedInput, std::string("invalid JSON: ") + e.what());
  }
}

Instance instance_from_json(const Json& j) {
  check_schema(j, "instance");
  auto it = j.find("elements");
  if (it == j.end()) malformed("instance", "missing field 'elements'");
  if (!it->is_array()) malformed("instance.elements", "expected an array");

  std::vector<Element> elements;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const Json& e = (*it)[i];
    const std::string where = "instance.elements[" + std::to_string(i) + "]";
    if (!e.is_object()) malformed(where, "expected an object");
    auto id = e.find("id");
    if (id == e.end()) malformed(where, "missing field 'id'");
    if (!id->is_string()) malformed(where + ".id", "expected a string");
    elements.push_back({id->get<std::string>(), number_field(e, "mass", where),
                        number_field(e, "mu", where), number_field(e, "f", where)});
  }
  return Instance::normalized(std::move(elements), kLoadTolerance);
}

Json to_json(const Instance& inst) {
  Json elements = Json::array();
  for (const auto& e : inst) {
    elements.push_back({{"id", e.id}, {"mass", e.mass}, {"mu", e.mu}, {"f", e.f}});
  }
  return {{"schema", kSchemaVersion}, {"elements", std::move(elements)}};
}

Partition partition_from_json(const Json& j, const Instance& inst) {
  check_schema(j, "partition");
  const Json& assignment = object_field(j, "assignment", "partition");
  if (assignment.size() != inst.size()) {
    throw Error(ErrorKind::kPartitionMismatch,
                "partition assigns " + std::to_string(assignment.size()) +
                    " ids, instance has " + std::to_string(inst.size()));
  }
  std::vector<std::size_t> labels(inst.size());
  for (const auto& [id, part] : assignment.items()) {
    const auto i = inst.find(id);
    if (!i) throw Error(ErrorKind::kPartitionMismatch, "partition names unknown id '" + id + "'");
    if (!part.is_number_unsigned()) {
      malformed("partition.assignment." + id, "expected a non-negative integer");
    }
    labels[*i] = part.get<std::size_t>();
  }
  return Partition(labels);
}

Json to_json(const Partition& p, const Instance& inst) {
  Json assignment = Json::object();
  for (std::size_t i = 0; i < inst.size(); ++i) assignment[inst[i].id] = p.part_of(i);
  return {{"schema", kSchemaVersion}, {"assignment", std::move(assignment)}};
}

Predictor predictor_from_json(const Json& j, const Instance& inst) {
  check_schema(j, "predictor");
  const Json& values = object_field(j, "values", "predictor");
  if (values.size() != inst.size()) {
    throw Error(ErrorKind::kDomainMismatch,
                "predictor covers " + std::to_string(values.size()) +
                    " ids, instance has " + std::to_string(inst.size()));
  }
  std::vector<double> g(inst.size());
  for (const auto& [id, v] : values.items()) {
    const auto i = inst.find(id);
    if (!i) throw Error(ErrorKind::kDomainMismatch, "predictor names unknown id '" + id + "'");
    if (!v.is_number()) malformed("predictor.values." + id, "expected a number");
    g[*i] = v.get<double>();
  }
  return Predictor(std::move(g));
}

Json to_json(const Predictor& g, const Instance& inst) {
  Json values = Json::object();
  for (std::size_t i = 0; i < inst.size(); ++i) values[inst[i].id] = g[i];
  return {{"schema", kSchemaVersion}, {"values", std::move(values)}};
}

Json to_json(const SolverResult& r, const Instance& inst, bool include_timing) {
  Json out = {{"schema", kSchemaVersion},
              {"value", r.value},
              {"error_budget", r.additive_error_budget},
              {"solver", std::string(to_string(r.solver))}};
  if (r.witness) out["witness"] = to_json(*r.witness, inst)["assignment"];
  Json details = Json::object();
  for (const auto& [k, v] : r.details) details[k] = v;
  out["details"] = std::move(details);
  if (include_timing) {
    out["wall_time_ms"] = std::chrono::duration<double, std::milli>(r.wall_time).count();
  }
  return out;
}

std::string report_csv(const ExperimentReport& report) {
  std::set<std::string> columns;
  for (const auto& t : report.trials) {
    for (const auto& [k, v] : t.extras) columns.insert(k);
  }
  std::ostringstream out;
  out << "trial_index,seed,m,value";
  for (const auto& c : columns) out << ',' << c;
  out << '\n';
  for (const auto& t : report.trials) {
    out << t.index << ',' << t.seed << ',' << t.m << ',' << format_double(t.value);
    for (const auto& c : columns) {
      out << ',';
      if (auto it = t.extras.find(c); it != t.extras.end()) out << format_double(it->second);
    }
    out << '\n';
  }
  return out.str();
}

Json report_summary(const ExperimentReport& report) {
  Json parameters = Json::object();
  for (const auto& [k, v] : report.parameters) parameters[k] = v;
  Json summary = Json::object();
  for (const auto& [k, v] : report.summary) summary[k] = v;
  return {{"schema", kSchemaVersion},
          {"experiment", report.name},
          {"seed", report.seed},
          {"trials", report.trials.size()},
          {"parameters", std::move(parameters)},
          {"summary", std::move(summary)}};
}

}  // namespace caldist
