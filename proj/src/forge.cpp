#include "fairknap/forge.hpp"

#include <algorithm>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>

#include "fairknap/rng.hpp"
#include "fairknap/verify.hpp"

namespace fairknap {

namespace {

constexpr int kMaxDenominator = 12;
constexpr int kMaxResampleAttempts = 10000;

void require_positive_interval(const RationalInterval& iv, const char* name) {
  if (iv.lo <= 0)
    throw std::invalid_argument(std::string(name) + ": lower bound must be > 0");
  if (iv.lo > iv.hi) throw std::invalid_argument(std::string(name) + ": empty range");
}

// Uniform-ish rational from [lo, hi]: a denominator q <= 12 admitting some
// p/q in the interval is drawn first, then p uniformly.
Rational sample_rational(Rng& rng, const RationalInterval& iv, const char* name) {
  struct Choice {
    int q;
    Integer lo_p;
    Integer hi_p;
  };
  std::vector<Choice> feasible;
  for (int q = 1; q <= kMaxDenominator; ++q) {
    Integer lo_p = rational_ceil(iv.lo * q);
    Integer hi_p = rational_floor(iv.hi * q);
    if (lo_p <= hi_p) feasible.push_back({q, std::move(lo_p), std::move(hi_p)});
  }
  if (feasible.empty())
    throw std::invalid_argument(std::string(name) +
                                ": no rational with denominator <= 12 in range");
  const Choice& c = feasible[rng.uniform(0, feasible.size() - 1)];
  const Integer span = c.hi_p - c.lo_p;
  if (span > std::numeric_limits<std::uint64_t>::max() / 2)
    throw std::invalid_argument(std::string(name) + ": range too wide to sample");
  const Integer p = c.lo_p + Integer(rng.uniform(0, span.convert_to<std::uint64_t>()));
  return Rational(p, c.q);
}

bool pairwise_distinct(std::vector<Rational> xs) {
  std::sort(xs.begin(), xs.end());
  return std::adjacent_find(xs.begin(), xs.end()) == xs.end();
}

}  // namespace

Instance random_instance(const GenConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("GenConfig: n must be >= 1");
  if (cfg.m < 0) throw std::invalid_argument("GenConfig: m must be >= 0");
  require_positive_interval(cfg.value_range, "value_range");
  require_positive_interval(cfg.size_range, "size_range");
  require_positive_interval(cfg.budget_range, "budget_range");

  Rng rng(cfg.seed);
  for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
    std::vector<Rational> values(cfg.m);
    std::vector<Rational> sizes(cfg.m);
    std::vector<std::vector<Rational>> agent_sizes;
    bool distinct = true;

    switch (cfg.family) {
      case Family::general:
        for (int g = 0; g < cfg.m; ++g) {
          values[g] = sample_rational(rng, cfg.value_range, "value_range");
          sizes[g] = sample_rational(rng, cfg.size_range, "size_range");
        }
        {
          std::vector<Rational> densities(cfg.m);
          for (int g = 0; g < cfg.m; ++g) densities[g] = values[g] / sizes[g];
          distinct = pairwise_distinct(densities);
        }
        break;
      case Family::proportional: {
        // value_range doubles as the range of the shared density here;
        // values are rho * size and may land outside it.
        const Rational rho = sample_rational(rng, cfg.value_range, "value_range");
        for (int g = 0; g < cfg.m; ++g) {
          sizes[g] = sample_rational(rng, cfg.size_range, "size_range");
          values[g] = rho * sizes[g];
        }
        break;
      }
      case Family::equal_size: {
        const Rational s = sample_rational(rng, cfg.size_range, "size_range");
        for (int g = 0; g < cfg.m; ++g) {
          values[g] = sample_rational(rng, cfg.value_range, "value_range");
          sizes[g] = s;
        }
        break;
      }
      case Family::cardinality: {
        const Rational v = sample_rational(rng, cfg.value_range, "value_range");
        for (int g = 0; g < cfg.m; ++g) {
          values[g] = v;
          sizes[g] = sample_rational(rng, cfg.size_range, "size_range");
        }
        break;
      }
      case Family::agent_specific: {
        agent_sizes.assign(cfg.m, std::vector<Rational>(cfg.n));
        for (int g = 0; g < cfg.m; ++g) {
          values[g] = sample_rational(rng, cfg.value_range, "value_range");
          for (int a = 0; a < cfg.n; ++a)
            agent_sizes[g][a] = sample_rational(rng, cfg.size_range, "size_range");
        }
        for (int a = 0; a < cfg.n && distinct; ++a) {
          std::vector<Rational> densities(cfg.m);
          for (int g = 0; g < cfg.m; ++g) densities[g] = values[g] / agent_sizes[g][a];
          distinct = pairwise_distinct(densities);
        }
        break;
      }
    }

    if (!distinct) continue;

    std::vector<Rational> budgets(cfg.n);
    for (int a = 0; a < cfg.n; ++a)
      budgets[a] = sample_rational(rng, cfg.budget_range, "budget_range");

    if (cfg.family == Family::agent_specific)
      return Instance::agent_specific(std::move(values), std::move(agent_sizes),
                                      std::move(budgets));
    return Instance::common(std::move(values), std::move(sizes), std::move(budgets), cfg.family);
  }
  throw std::invalid_argument(
      "random_instance: could not sample pairwise-distinct densities for these ranges");
}

Instance tightness_instance(const Rational& eps) {
  if (eps <= 0 || eps >= Rational(1, 2))
    throw std::invalid_argument("tightness_instance: eps must lie in (0, 1/2)");
  std::vector<Rational> values{Rational(10), Rational(1, 2), 1 - 2 * eps};
  std::vector<Rational> sizes{eps, Rational(1, 2), 1 - eps};
  std::vector<Rational> budgets{Rational(1), Rational(1)};
  return Instance::common(std::move(values), std::move(sizes), std::move(budgets));
}

std::pair<Instance, ScaleFactors> integerize(const Instance& inst) {
  if (inst.family() == Family::agent_specific)
    throw std::invalid_argument("integerize: agent-specific sizes are not supported");
  std::vector<Rational> values, sizes;
  values.reserve(inst.num_goods());
  sizes.reserve(inst.num_goods());
  for (const Good& good : inst.goods()) {
    values.push_back(good.value);
    sizes.push_back(good.sizes[0]);
  }
  std::vector<Rational> size_like = sizes;
  size_like.insert(size_like.end(), inst.budgets().begin(), inst.budgets().end());

  ScaleFactors scale{denominator_lcm(values), denominator_lcm(size_like)};
  for (Rational& v : values) v *= scale.gamma_v;
  for (Rational& s : sizes) s *= scale.gamma_s;
  std::vector<Rational> budgets = inst.budgets();
  for (Rational& b : budgets) b *= scale.gamma_s;

  return {Instance::common(std::move(values), std::move(sizes), std::move(budgets),
                           inst.family()),
          std::move(scale)};
}

Instance perturb_distinct(const Instance& inst) {
  if (inst.family() == Family::agent_specific)
    throw std::invalid_argument("perturb_distinct: agent-specific sizes are not supported");
  const int m = inst.num_goods();
  if (m == 0) return inst;

  for (const Good& good : inst.goods()) {
    if (!is_integral(good.value) || !is_integral(good.sizes[0]))
      throw std::invalid_argument("perturb_distinct: instance must be integerized first");
  }
  for (const Rational& b : inst.budgets()) {
    if (!is_integral(b))
      throw std::invalid_argument("perturb_distinct: instance must be integerized first");
  }
  if (m > 16) {
    std::cerr << "warning: density perturbation on " << m
              << " goods produces terms below 1/M^16; expect very large rationals\n";
  }

  Integer big_m = m;
  for (const Good& good : inst.goods()) big_m *= numerator(good.sizes[0]);

  std::vector<Rational> values, sizes;
  values.reserve(m);
  sizes.reserve(m);
  for (int g = 0; g < m; ++g) {
    values.push_back(inst.goods()[g].value + Rational(1, pow(big_m, g + 1)));
    sizes.push_back(inst.goods()[g].sizes[0]);
  }
  Instance out = Instance::common(std::move(values), std::move(sizes), inst.budgets(),
                                  Family::general);

  std::vector<Rational> densities(m);
  for (int g = 0; g < m; ++g) densities[g] = out.value(g) / out.size(g, 0);
  std::sort(densities.begin(), densities.end());
  if (std::adjacent_find(densities.begin(), densities.end()) != densities.end())
    throw std::logic_error("perturb_distinct: perturbed densities are not pairwise distinct");
  return out;
}

bool ef2_transfer_check(const Instance& original, const Instance& perturbed,
                        const Allocation& alloc) {
  const Instance expected = perturb_distinct(integerize(original).first);
  if (!(expected == perturbed))
    throw std::invalid_argument(
        "ef2_transfer_check: perturbed does not match the pipeline output for original");
  if (!is_feasible(alloc, perturbed))
    throw std::invalid_argument("ef2_transfer_check: allocation infeasible in perturbed");
  const bool ef2_perturbed = is_efk(alloc, perturbed, 2).holds;
  const bool ef2_original = is_efk(alloc, original, 2).holds;
  return !ef2_perturbed || ef2_original;
}

Allocation random_feasible_allocation(const Instance& inst, std::uint64_t seed) {
  Rng rng(seed);
  const int n = inst.num_agents();
  const int m = inst.num_goods();
  std::vector<int> order(m);
  for (int g = 0; g < m; ++g) order[g] = g;
  for (int i = m - 1; i > 0; --i)
    std::swap(order[i], order[rng.uniform(0, static_cast<std::uint64_t>(i))]);

  std::vector<std::vector<int>> bundles(n + 1);
  std::vector<Rational> used(n, Rational(0));
  std::vector<int> candidates;
  for (int g : order) {
    candidates.clear();
    for (int a = 0; a < n; ++a) {
      if (inst.budget(a).fits(used[a] + inst.size(g, a))) candidates.push_back(a);
    }
    candidates.push_back(n);  // the charity always fits
    const int a = candidates[rng.uniform(0, candidates.size() - 1)];
    bundles[a].push_back(g);
    if (a < n) used[a] += inst.size(g, a);
  }
  return Allocation(std::move(bundles));
}

}  // namespace fairknap
