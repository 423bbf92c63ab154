#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairknap/rational.hpp"

namespace fairknap {

enum class Family { general, proportional, equal_size, cardinality, agent_specific };

std::string_view family_name(Family family);
std::optional<Family> family_from_name(std::string_view name);

/// An agent's budget: a finite rational bound, or infinite for the charity.
class Budget {
 public:
  static Budget infinite() { return Budget(); }
  explicit Budget(Rational limit) : limit_(std::move(limit)) {}

  bool is_infinite() const { return !limit_.has_value(); }
  const Rational& finite() const;  // throws std::logic_error when infinite
  bool fits(const Rational& size) const { return is_infinite() || size <= *limit_; }

 private:
  Budget() = default;
  std::optional<Rational> limit_;
};

struct Good {
  int id = 0;
  Rational value;
  // One entry in the common-size families; one entry per real agent when
  // sizes are agent-specific.
  std::vector<Rational> sizes;

  bool operator==(const Good&) const = default;
};

/// An immutable problem instance: m goods, n real agents with budgets, and a
/// family flag describing which structural constraints the data claims to
/// satisfy. Agent index n denotes the charity (infinite budget). In the
/// common-size families the charity measures goods by the stored sizes; with
/// agent-specific sizes the charity's size is 1 per good.
class Instance {
 public:
  Instance() = default;

  static Instance common(std::vector<Rational> values, std::vector<Rational> sizes,
                         std::vector<Rational> budgets, Family family = Family::general,
                         std::vector<int> ids = {});
  static Instance agent_specific(std::vector<Rational> values,
                                 std::vector<std::vector<Rational>> sizes_per_good,
                                 std::vector<Rational> budgets, std::vector<int> ids = {});

  int num_goods() const { return static_cast<int>(goods_.size()); }
  int num_agents() const { return static_cast<int>(budgets_.size()); }
  int charity() const { return num_agents(); }
  Family family() const { return family_; }
  const std::vector<Good>& goods() const { return goods_; }
  const std::vector<Rational>& budgets() const { return budgets_; }

  const Rational& value(int good) const;
  const Rational& size(int good, int agent) const;  // agent may be the charity
  Budget budget(int agent) const;

  bool operator==(const Instance&) const = default;

 private:
  std::vector<Good> goods_;
  std::vector<Rational> budgets_;
  Family family_ = Family::general;
};

struct Violation {
  std::string field;
  std::string rule;
};

/// Checks all type invariants and the declared family flag. Violations are
/// data, not failures; an empty list means the instance is well-formed.
std::vector<Violation> validate_instance(const Instance& inst);
std::string describe(const std::vector<Violation>& violations);

/// An (n+1)-partition of the goods; the last bundle belongs to the charity.
/// Bundles are kept sorted by good id.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::vector<std::vector<int>> bundles);
  static Allocation all_empty(int num_real_agents);

  int num_bundles() const { return static_cast<int>(bundles_.size()); }
  const std::vector<int>& bundle(int agent) const;
  const std::vector<std::vector<int>>& bundles() const { return bundles_; }

  bool operator==(const Allocation&) const = default;

 private:
  std::vector<std::vector<int>> bundles_;
};

Rational bundle_value(std::span<const int> bundle, const Instance& inst);
Rational bundle_size(std::span<const int> bundle, int agent, const Instance& inst);
Rational density(int good, int agent, const Instance& inst);

/// Why `alloc` is not an (n+1)-partition of the instance's goods, or nullopt.
std::optional<std::string> partition_error(const Allocation& alloc, const Instance& inst);

/// True iff every real agent's bundle fits its budget (the charity always
/// does). Throws std::invalid_argument when `alloc` is not a partition.
bool is_feasible(const Allocation& alloc, const Instance& inst);

}  // namespace fairknap
