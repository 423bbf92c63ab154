#include "fairknap/greedy.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace fairknap {

ReplayDivergence::ReplayDivergence(int step, const std::string& what)
    : std::runtime_error("replay diverged at step " + std::to_string(step) + ": " + what),
      step_(step) {}

GreedyResult densest_greedy(const Instance& inst) {
  if (auto violations = validate_instance(inst); !violations.empty())
    throw std::invalid_argument("invalid instance: " + describe(violations));

  const int n = inst.num_agents();
  const int m = inst.num_goods();
  const int agents = n + 1;  // charity is agent n

  std::vector<std::vector<Rational>> rho(agents, std::vector<Rational>(m));
  for (int a = 0; a < agents; ++a)
    for (int g = 0; g < m; ++g) rho[a][g] = inst.value(g) / inst.size(g, a);

  std::vector<Rational> value(agents, Rational(0));
  std::vector<Rational> used(agents, Rational(0));
  std::vector<bool> active(agents, true);
  std::vector<bool> allocated(m, false);
  std::vector<std::vector<int>> bundles(agents);
  std::vector<TraceEvent> trace;
  std::vector<int> sigma;
  sigma.reserve(m);

  int remaining = m;
  int step = 0;
  while (remaining > 0) {
    // Minimum-valued active agent; lowest index wins ties, so real agents
    // beat the charity when tied.
    int a = -1;
    for (int b = 0; b < agents; ++b) {
      if (active[b] && (a < 0 || value[b] < value[a])) a = b;
    }

    const Budget cap = inst.budget(a);
    int pick = -1;
    for (int g = 0; g < m; ++g) {
      if (allocated[g]) continue;
      if (!cap.fits(used[a] + inst.size(g, a))) continue;
      if (pick < 0 || rho[a][g] > rho[a][pick]) pick = g;  // strict: lowest id wins ties
    }

    ++step;
    if (pick < 0) {
      // Never the charity: everything fits an infinite budget.
      active[a] = false;
      trace.push_back({step, TraceKind::deactivated, a, std::nullopt, value[a]});
    } else {
      allocated[pick] = true;
      --remaining;
      bundles[a].push_back(pick);
      used[a] += inst.size(pick, a);
      value[a] += inst.value(pick);
      sigma.push_back(pick);
      trace.push_back({step, TraceKind::assigned, a, pick, value[a]});
    }
  }

  return GreedyResult{Allocation(std::move(bundles)), std::move(trace), std::move(sigma)};
}

Allocation replay(std::span<const TraceEvent> trace, const Instance& inst) {
  GreedyResult canonical = densest_greedy(inst);
  const std::size_t common = std::min(trace.size(), canonical.trace.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (!(trace[i] == canonical.trace[i]))
      throw ReplayDivergence(static_cast<int>(i) + 1, "event does not match this instance's run");
  }
  if (trace.size() < canonical.trace.size())
    throw ReplayDivergence(static_cast<int>(trace.size()) + 1, "trace ends early");
  if (trace.size() > canonical.trace.size())
    throw ReplayDivergence(static_cast<int>(canonical.trace.size()) + 1,
                           "trace continues past the run's end");
  return canonical.allocation;
}

}  // namespace fairknap
