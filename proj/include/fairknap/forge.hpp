#pragma once

#include <cstdint>
#include <utility>

#include "fairknap/core.hpp"

namespace fairknap {

struct RationalInterval {
  Rational lo;
  Rational hi;
};

struct GenConfig {
  int n = 2;
  int m = 4;
  RationalInterval value_range{Rational(1, 12), Rational(10)};
  RationalInterval size_range{Rational(1, 12), Rational(6)};
  RationalInterval budget_range{Rational(1, 2), Rational(8)};
  Family family = Family::general;
  std::uint64_t seed = 0;
};

struct ScaleFactors {
  Integer gamma_v;  // value scale
  Integer gamma_s;  // size and budget scale
};

/// Seeded random instance. Deterministic in cfg. Family constraints are
/// enforced by construction; the general and agent_specific families are
/// resampled until all densities (per relevant agent) are pairwise distinct.
/// Rational samples are fractions p/q with q <= 12.
Instance random_instance(const GenConfig& cfg);

/// Two agents with unit budgets and three goods (eps, 10), (1/2, 1/2),
/// (1-eps, 1-2*eps); densities strictly decreasing for all eps in (0, 1/2).
Instance tightness_instance(const Rational& eps);

/// Scales values by the lcm of their denominators and sizes/budgets by the
/// lcm of theirs, yielding an all-integer instance. Feasibility and every
/// EFk verdict are invariant under this scaling. Common-size instances only.
std::pair<Instance, ScaleFactors> integerize(const Instance& inst);

/// Adds 1/M^(g+1) to the value of good g (0-based), M = m * prod of sizes,
/// making densities pairwise distinct without touching sizes or budgets.
/// Requires an integerized instance. Warns on stderr for m > 16, where the
/// perturbation terms get astronomically small.
Instance perturb_distinct(const Instance& inst);

/// Checks that EF2 of `alloc` in the perturbed instance implies EF2 in the
/// original. Requires perturbed == perturb_distinct(integerize(original))
/// and alloc feasible in perturbed. Always true; used as a property oracle.
bool ef2_transfer_check(const Instance& original, const Instance& perturbed,
                        const Allocation& alloc);

/// Seeded random feasible allocation: goods in shuffled order, each assigned
/// uniformly among the agents it still fits (the charity always qualifies).
Allocation random_feasible_allocation(const Instance& inst, std::uint64_t seed);

}  // namespace fairknap
