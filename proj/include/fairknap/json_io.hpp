#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "fairknap/core.hpp"
#include "fairknap/greedy.hpp"
#include "fairknap/verify.hpp"

namespace fairknap {

// Field order in emitted documents is fixed so serialization is
// byte-deterministic. All rationals travel as strings ("p" or "p/q"), never
// as JSON numbers.
using Json = nlohmann::ordered_json;

Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& doc);

Json allocation_to_json(const Allocation& alloc);
/// Accepts either a bare allocation object {"agents": ..., "charity": ...}
/// or a whole report (its "allocation" field is used).
Allocation allocation_from_json(const Json& doc, int num_real_agents);

Json witness_to_json(const EnvyWitness& w);
Json trace_to_json(std::span<const TraceEvent> trace);

struct ReportOptions {
  bool include_trace = false;
  std::optional<std::uint64_t> seed;
  // Solver-produced allocations must be EF2; report generation throws
  // std::logic_error otherwise, since that indicates a solver bug.
  bool solver_produced = true;
};

struct Report {
  Json json;
  bool feasible = false;
  int max_efcount = 0;
};

Report build_report(const Instance& inst, const Allocation& alloc,
                    const std::vector<TraceEvent>* trace, const ReportOptions& opts);

Json load_json(const std::string& path);
void save_json(const Json& doc, const std::string& path);
Instance load_instance(const std::string& path);

std::string dump(const Json& doc);  // 2-space indent, trailing newline

}  // namespace fairknap
