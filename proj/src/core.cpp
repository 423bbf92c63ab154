#include "fairknap/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace fairknap {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::general: return "general";
    case Family::proportional: return "proportional";
    case Family::equal_size: return "equal_size";
    case Family::cardinality: return "cardinality";
    case Family::agent_specific: return "agent_specific";
  }
  return "general";
}

std::optional<Family> family_from_name(std::string_view name) {
  if (name == "general") return Family::general;
  if (name == "proportional") return Family::proportional;
  if (name == "equal_size") return Family::equal_size;
  if (name == "cardinality") return Family::cardinality;
  if (name == "agent_specific") return Family::agent_specific;
  return std::nullopt;
}

const Rational& Budget::finite() const {
  if (!limit_) throw std::logic_error("Budget::finite on an infinite budget");
  return *limit_;
}

namespace {

std::vector<int> default_ids(std::size_t m, std::vector<int> ids) {
  if (ids.empty()) {
    ids.resize(m);
    for (std::size_t i = 0; i < m; ++i) ids[i] = static_cast<int>(i);
  } else if (ids.size() != m) {
    throw std::invalid_argument("Instance: ids length does not match goods");
  }
  return ids;
}

}  // namespace

Instance Instance::common(std::vector<Rational> values, std::vector<Rational> sizes,
                          std::vector<Rational> budgets, Family family, std::vector<int> ids) {
  if (values.size() != sizes.size())
    throw std::invalid_argument("Instance::common: values and sizes lengths differ");
  if (budgets.empty()) throw std::invalid_argument("Instance: at least one real agent required");
  if (family == Family::agent_specific)
    throw std::invalid_argument("Instance::common: use agent_specific for per-agent sizes");
  ids = default_ids(values.size(), std::move(ids));
  Instance inst;
  inst.goods_.reserve(values.size());
  for (std::size_t g = 0; g < values.size(); ++g) {
    inst.goods_.push_back(Good{ids[g], std::move(values[g]), {std::move(sizes[g])}});
  }
  inst.budgets_ = std::move(budgets);
  inst.family_ = family;
  return inst;
}

Instance Instance::agent_specific(std::vector<Rational> values,
                                  std::vector<std::vector<Rational>> sizes_per_good,
                                  std::vector<Rational> budgets, std::vector<int> ids) {
  if (values.size() != sizes_per_good.size())
    throw std::invalid_argument("Instance::agent_specific: values and sizes lengths differ");
  if (budgets.empty()) throw std::invalid_argument("Instance: at least one real agent required");
  ids = default_ids(values.size(), std::move(ids));
  Instance inst;
  inst.goods_.reserve(values.size());
  for (std::size_t g = 0; g < values.size(); ++g) {
    if (sizes_per_good[g].size() != budgets.size())
      throw std::invalid_argument("Instance::agent_specific: need one size per real agent");
    inst.goods_.push_back(Good{ids[g], std::move(values[g]), std::move(sizes_per_good[g])});
  }
  inst.budgets_ = std::move(budgets);
  inst.family_ = Family::agent_specific;
  return inst;
}

const Rational& Instance::value(int good) const {
  if (good < 0 || good >= num_goods()) throw std::out_of_range("unknown good id");
  return goods_[good].value;
}

const Rational& Instance::size(int good, int agent) const {
  if (good < 0 || good >= num_goods()) throw std::out_of_range("unknown good id");
  if (agent < 0 || agent > num_agents()) throw std::out_of_range("invalid agent index");
  if (family_ == Family::agent_specific) {
    if (agent == charity()) {
      // Charity measures every good as one unit in the agent-specific model.
      static const Rational kOne{1};
      return kOne;
    }
    return goods_[good].sizes[agent];
  }
  return goods_[good].sizes[0];
}

Budget Instance::budget(int agent) const {
  if (agent < 0 || agent > num_agents()) throw std::out_of_range("invalid agent index");
  if (agent == charity()) return Budget::infinite();
  return Budget(budgets_[agent]);
}

std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;
  const int n = inst.num_agents();
  const int m = inst.num_goods();
  const bool agent_specific = inst.family() == Family::agent_specific;

  for (int a = 0; a < n; ++a) {
    if (inst.budgets()[a] <= 0)
      out.push_back({"budgets[" + std::to_string(a) + "]", "must be > 0"});
  }

  bool structure_ok = true;
  for (int g = 0; g < m; ++g) {
    const Good& good = inst.goods()[g];
    const std::string where = "goods[" + std::to_string(g) + "]";
    if (good.id != g) {
      out.push_back({where + ".id", "ids must be 0..m-1 in order"});
      structure_ok = false;
    }
    if (good.value <= 0) out.push_back({where + ".value", "must be > 0"});
    const std::size_t expected = agent_specific ? static_cast<std::size_t>(n) : 1u;
    if (good.sizes.size() != expected) {
      out.push_back({where + ".sizes",
                     agent_specific ? "expected one size per real agent"
                                    : "expected a single common size"});
      structure_ok = false;
      continue;
    }
    for (std::size_t a = 0; a < good.sizes.size(); ++a) {
      if (good.sizes[a] <= 0)
        out.push_back({where + ".sizes[" + std::to_string(a) + "]", "must be > 0"});
    }
  }

  if (structure_ok && m > 0) {
    switch (inst.family()) {
      case Family::proportional: {
        const Rational rho = inst.goods()[0].value / inst.goods()[0].sizes[0];
        for (int g = 1; g < m; ++g) {
          if (inst.goods()[g].value / inst.goods()[g].sizes[0] != rho) {
            out.push_back({"family", "proportional requires a common value/size ratio"});
            break;
          }
        }
        break;
      }
      case Family::equal_size: {
        for (int g = 1; g < m; ++g) {
          if (inst.goods()[g].sizes[0] != inst.goods()[0].sizes[0]) {
            out.push_back({"family", "equal_size requires all sizes equal"});
            break;
          }
        }
        break;
      }
      case Family::cardinality: {
        for (int g = 1; g < m; ++g) {
          if (inst.goods()[g].value != inst.goods()[0].value) {
            out.push_back({"family", "cardinality requires all values equal"});
            break;
          }
        }
        break;
      }
      case Family::general:
      case Family::agent_specific:
        break;
    }
  }
  return out;
}

std::string describe(const std::vector<Violation>& violations) {
  std::string out;
  for (const Violation& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.field + ": " + v.rule;
  }
  return out;
}

Allocation::Allocation(std::vector<std::vector<int>> bundles) : bundles_(std::move(bundles)) {
  for (auto& bundle : bundles_) {
    std::sort(bundle.begin(), bundle.end());
    for (int id : bundle) {
      if (id < 0) throw std::invalid_argument("Allocation: negative good id");
    }
  }
}

Allocation Allocation::all_empty(int num_real_agents) {
  if (num_real_agents < 1) throw std::invalid_argument("Allocation: need at least one agent");
  return Allocation(std::vector<std::vector<int>>(num_real_agents + 1));
}

const std::vector<int>& Allocation::bundle(int agent) const {
  if (agent < 0 || agent >= num_bundles()) throw std::out_of_range("invalid agent index");
  return bundles_[agent];
}

Rational bundle_value(std::span<const int> bundle, const Instance& inst) {
  Rational sum = 0;
  for (int id : bundle) sum += inst.value(id);
  return sum;
}

Rational bundle_size(std::span<const int> bundle, int agent, const Instance& inst) {
  Rational sum = 0;
  for (int id : bundle) sum += inst.size(id, agent);
  return sum;
}

Rational density(int good, int agent, const Instance& inst) {
  return inst.value(good) / inst.size(good, agent);
}

std::optional<std::string> partition_error(const Allocation& alloc, const Instance& inst) {
  const int m = inst.num_goods();
  if (alloc.num_bundles() != inst.num_agents() + 1) {
    return "expected " + std::to_string(inst.num_agents() + 1) + " bundles, got " +
           std::to_string(alloc.num_bundles());
  }
  std::vector<int> owner(m, -1);
  for (int a = 0; a < alloc.num_bundles(); ++a) {
    for (int id : alloc.bundle(a)) {
      if (id < 0 || id >= m) return "unknown good id " + std::to_string(id);
      if (owner[id] != -1)
        return "good " + std::to_string(id) + " appears in bundles " +
               std::to_string(owner[id]) + " and " + std::to_string(a);
      owner[id] = a;
    }
  }
  for (int g = 0; g < m; ++g) {
    if (owner[g] == -1) return "good " + std::to_string(g) + " is unallocated";
  }
  return std::nullopt;
}

bool is_feasible(const Allocation& alloc, const Instance& inst) {
  if (auto err = partition_error(alloc, inst))
    throw std::invalid_argument("not a partition: " + *err);
  for (int a = 0; a < inst.num_agents(); ++a) {
    if (!inst.budget(a).fits(bundle_size(alloc.bundle(a), a, inst))) return false;
  }
  return true;
}

}  // namespace fairknap
