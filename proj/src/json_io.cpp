#include "fairknap/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "fairknap/version.hpp"

namespace fairknap {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& why) {
  throw std::invalid_argument(where + ": " + why);
}

const Json& member(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object()) fail(where, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

Rational rational_field(const Json& node, const std::string& where) {
  if (!node.is_string()) fail(where, "rationals must be strings like \"3\" or \"1/2\"");
  try {
    return parse_rational(node.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

std::vector<Rational> rational_array(const Json& node, const std::string& where) {
  if (!node.is_array()) fail(where, "expected an array");
  std::vector<Rational> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i)
    out.push_back(rational_field(node[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<int> id_array(const Json& node, const std::string& where) {
  if (!node.is_array()) fail(where, "expected an array of good ids");
  std::vector<int> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    const Json& e = node[i];
    if (!e.is_number_integer()) fail(where + "[" + std::to_string(i) + "]", "expected an integer");
    out.push_back(e.get<int>());
  }
  return out;
}

}  // namespace

Json instance_to_json(const Instance& inst) {
  const bool agent_specific = inst.family() == Family::agent_specific;
  Json doc;
  doc["n"] = inst.num_agents();
  Json budgets = Json::array();
  for (const Rational& b : inst.budgets()) budgets.push_back(to_string(b));
  doc["budgets"] = std::move(budgets);
  Json goods = Json::array();
  for (const Good& good : inst.goods()) {
    Json g;
    g["id"] = good.id;
    g["value"] = to_string(good.value);
    if (!agent_specific) g["size"] = to_string(good.sizes[0]);
    goods.push_back(std::move(g));
  }
  doc["goods"] = std::move(goods);
  if (agent_specific) {
    Json rows = Json::array();
    for (int a = 0; a < inst.num_agents(); ++a) {
      Json row = Json::array();
      for (const Good& good : inst.goods()) row.push_back(to_string(good.sizes[a]));
      rows.push_back(std::move(row));
    }
    doc["agent_sizes"] = std::move(rows);
  }
  doc["family"] = std::string(family_name(inst.family()));
  return doc;
}

Instance instance_from_json(const Json& doc) {
  const Json& n_node = member(doc, "n", "instance");
  if (!n_node.is_number_integer()) fail("instance.n", "expected an integer");
  const int n = n_node.get<int>();
  if (n < 1) fail("instance.n", "must be >= 1");

  std::vector<Rational> budgets = rational_array(member(doc, "budgets", "instance"),
                                                 "instance.budgets");
  if (static_cast<int>(budgets.size()) != n)
    fail("instance.budgets", "expected one budget per agent");

  const bool has_agent_sizes = doc.is_object() && doc.contains("agent_sizes");
  Family family = Family::general;
  if (doc.contains("family")) {
    const Json& fam = doc["family"];
    if (!fam.is_string()) fail("instance.family", "expected a string");
    auto parsed = family_from_name(fam.get<std::string>());
    if (!parsed) fail("instance.family", "unknown family \"" + fam.get<std::string>() + "\"");
    family = *parsed;
  }
  if (has_agent_sizes && family != Family::agent_specific)
    fail("instance.family", "must be \"agent_specific\" when agent_sizes is present");
  if (!has_agent_sizes && family == Family::agent_specific)
    fail("instance.agent_sizes", "required for the agent_specific family");

  const Json& goods_node = member(doc, "goods", "instance");
  if (!goods_node.is_array()) fail("instance.goods", "expected an array");
  const std::size_t m = goods_node.size();

  std::vector<int> ids;
  std::vector<Rational> values;
  std::vector<Rational> sizes;
  ids.reserve(m);
  values.reserve(m);
  sizes.reserve(m);
  for (std::size_t g = 0; g < m; ++g) {
    const std::string where = "instance.goods[" + std::to_string(g) + "]";
    const Json& entry = goods_node[g];
    const Json& id_node = member(entry, "id", where);
    if (!id_node.is_number_integer()) fail(where + ".id", "expected an integer");
    ids.push_back(id_node.get<int>());
    values.push_back(rational_field(member(entry, "value", where), where + ".value"));
    if (has_agent_sizes) {
      if (entry.contains("size"))
        fail(where + ".size", "omit per-good sizes when agent_sizes is present");
    } else {
      sizes.push_back(rational_field(member(entry, "size", where), where + ".size"));
    }
  }

  if (has_agent_sizes) {
    const Json& rows = doc["agent_sizes"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      fail("instance.agent_sizes", "expected one row per agent");
    std::vector<std::vector<Rational>> per_good(m, std::vector<Rational>(n));
    for (int a = 0; a < n; ++a) {
      const std::string where = "instance.agent_sizes[" + std::to_string(a) + "]";
      std::vector<Rational> row = rational_array(rows[a], where);
      if (row.size() != m) fail(where, "expected one size per good");
      for (std::size_t g = 0; g < m; ++g) per_good[g][a] = std::move(row[g]);
    }
    return Instance::agent_specific(std::move(values), std::move(per_good), std::move(budgets),
                                    std::move(ids));
  }
  return Instance::common(std::move(values), std::move(sizes), std::move(budgets), family,
                          std::move(ids));
}

Json allocation_to_json(const Allocation& alloc) {
  Json doc;
  Json agents = Json::array();
  for (int a = 0; a + 1 < alloc.num_bundles(); ++a) agents.push_back(alloc.bundle(a));
  doc["agents"] = std::move(agents);
  doc["charity"] = alloc.bundle(alloc.num_bundles() - 1);
  return doc;
}

Allocation allocation_from_json(const Json& doc, int num_real_agents) {
  const Json& node = (doc.is_object() && doc.contains("allocation")) ? doc["allocation"] : doc;
  const Json& agents = member(node, "agents", "allocation");
  if (!agents.is_array() || static_cast<int>(agents.size()) != num_real_agents)
    fail("allocation.agents", "expected one bundle per real agent");
  std::vector<std::vector<int>> bundles;
  bundles.reserve(num_real_agents + 1);
  for (std::size_t a = 0; a < agents.size(); ++a)
    bundles.push_back(id_array(agents[a], "allocation.agents[" + std::to_string(a) + "]"));
  bundles.push_back(id_array(member(node, "charity", "allocation"), "allocation.charity"));
  return Allocation(std::move(bundles));
}

Json witness_to_json(const EnvyWitness& w) {
  Json doc;
  doc["envier"] = w.envier;
  doc["envied"] = w.envied;
  doc["subset"] = w.subset;
  doc["size_under_envier"] = to_string(w.size_under_envier);
  doc["efcount"] = w.efcount;
  return doc;
}

Json trace_to_json(std::span<const TraceEvent> trace) {
  Json out = Json::array();
  for (const TraceEvent& e : trace) {
    Json node;
    node["step"] = e.step;
    node["kind"] = e.kind == TraceKind::assigned ? "assigned" : "deactivated";
    node["agent"] = e.agent;
    if (e.good) node["good"] = *e.good;
    node["agent_value_after"] = to_string(e.agent_value_after);
    out.push_back(std::move(node));
  }
  return out;
}

Report build_report(const Instance& inst, const Allocation& alloc,
                    const std::vector<TraceEvent>* trace, const ReportOptions& opts) {
  Report report;
  report.feasible = is_feasible(alloc, inst);

  Json witnesses = Json::array();
  int max_efcount = 0;
  const int agents = inst.num_agents() + 1;
  for (int a = 0; a < agents; ++a) {
    for (int b = 0; b < agents; ++b) {
      if (a == b) continue;
      EnvyWitness w = worst_witness(alloc, inst, a, b);
      max_efcount = std::max(max_efcount, w.efcount);
      witnesses.push_back(witness_to_json(w));
    }
  }
  report.max_efcount = max_efcount;

  Json doc;
  doc["allocation"] = allocation_to_json(alloc);
  doc["feasible"] = report.feasible;
  doc["ef1"] = max_efcount <= 1;
  doc["ef2"] = max_efcount <= 2;
  doc["witnesses"] = std::move(witnesses);
  if (opts.solver_produced && max_efcount > 2)
    throw std::logic_error("solver produced an allocation that is not EF2; this is a bug");
  if (opts.include_trace && trace != nullptr) doc["trace"] = trace_to_json(*trace);
  Json meta;
  meta["version"] = std::string(kVersion);
  meta["seed"] = opts.seed ? Json(*opts.seed) : Json(nullptr);
  doc["meta"] = std::move(meta);
  report.json = std::move(doc);
  return report;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return Json::parse(in);
}

void save_json(const Json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
  out << dump(doc);
  if (!out) throw std::invalid_argument("failed writing " + path);
}

Instance load_instance(const std::string& path) { return instance_from_json(load_json(path)); }

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace fairknap
