#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fairknap/core.hpp"

namespace fairknap {

enum class TraceKind { assigned, deactivated };

struct TraceEvent {
  int step = 0;  // 1-based, consecutive
  TraceKind kind = TraceKind::assigned;
  int agent = 0;
  std::optional<int> good;  // present iff kind == assigned
  Rational agent_value_after;

  bool operator==(const TraceEvent&) const = default;
};

struct GreedyResult {
  Allocation allocation;
  std::vector<TraceEvent> trace;
  std::vector<int> sigma;  // goods in allocation order
};

class ReplayDivergence : public std::runtime_error {
 public:
  ReplayDivergence(int step, const std::string& what);
  int step() const { return step_; }

 private:
  int step_;
};

/// The density-greedy allocator. Repeatedly selects the minimum-valued
/// active agent (lowest index on ties; the charity has the largest index, so
/// real agents win ties). If no remaining good fits that agent's residual
/// budget it is deactivated; otherwise it receives the fitting good of
/// maximum density under its own size function (lowest good id on ties).
/// The charity's infinite budget means it never deactivates and every good
/// ends up allocated. Deterministic: equal inputs give equal results.
GreedyResult densest_greedy(const Instance& inst);

/// Re-runs the solver and checks the given trace against it event by event.
/// Returns the reconstructed allocation; throws ReplayDivergence naming the
/// first step at which the trace is inconsistent with the instance.
Allocation replay(std::span<const TraceEvent> trace, const Instance& inst);

}  // namespace fairknap
