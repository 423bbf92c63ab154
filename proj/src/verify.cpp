#include "fairknap/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

namespace fairknap {

namespace {

void require_nonnegative(const Rational& x_value) {
  if (x_value < 0) throw std::invalid_argument("ef_count: x_value must be nonnegative");
}

}  // namespace

FractionalBundle FractionalBundle::whole(std::span<const int> goods) {
  FractionalBundle fb;
  for (int id : goods) fb.append(id, Rational(1));
  return fb;
}

void FractionalBundle::append(int good, Rational fraction) {
  if (fraction == 0) return;
  if (fraction < 0 || fraction > 1)
    throw std::invalid_argument("FractionalBundle: fraction outside [0, 1]");
  if (fraction != 1 && fractional_part_count() == 1)
    throw std::logic_error("FractionalBundle: at most one part may be fractional");
  parts_.push_back({good, std::move(fraction)});
}

Rational FractionalBundle::value(const Instance& inst) const {
  Rational sum = 0;
  for (const FractionalPart& p : parts_) sum += p.fraction * inst.value(p.good);
  return sum;
}

Rational FractionalBundle::size(int agent, const Instance& inst) const {
  Rational sum = 0;
  for (const FractionalPart& p : parts_) sum += p.fraction * inst.size(p.good, agent);
  return sum;
}

int FractionalBundle::fractional_part_count() const {
  int count = 0;
  for (const FractionalPart& p : parts_) {
    if (p.fraction != 1) ++count;
  }
  return count;
}

int enumeration_cap() {
  constexpr int kDefault = 20;
  const char* env = std::getenv("FAIRKNAP_MAX_ENUM");
  if (env == nullptr) return kDefault;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v <= 0 || v > 62) return kDefault;
  return static_cast<int>(v);
}

int ef_count(const Rational& x_value, std::span<const int> y, const Instance& inst) {
  require_nonnegative(x_value);
  Rational excess = bundle_value(y, inst) - x_value;
  if (excess <= 0) return 0;
  std::vector<Rational> values;
  values.reserve(y.size());
  for (int id : y) values.push_back(inst.value(id));
  std::sort(values.begin(), values.end(), std::greater<>());
  Rational removed = 0;
  int count = 0;
  for (const Rational& v : values) {
    removed += v;
    ++count;
    if (removed >= excess) break;
  }
  return count;
}

int ef_count_bruteforce(const Rational& x_value, std::span<const int> y, const Instance& inst) {
  require_nonnegative(x_value);
  const int k = static_cast<int>(y.size());
  if (k > enumeration_cap())
    throw EnumerationCapError("ef_count_bruteforce: bundle of " + std::to_string(k) +
                              " goods exceeds the enumeration cap of " +
                              std::to_string(enumeration_cap()));
  Rational excess = bundle_value(y, inst) - x_value;
  if (excess <= 0) return 0;
  std::vector<Rational> values;
  values.reserve(y.size());
  for (int id : y) values.push_back(inst.value(id));

  int best = k;  // removing everything always works
  auto dfs = [&](auto&& self, int i, int count, const Rational& removed) -> void {
    if (count >= best) return;
    if (removed >= excess) {
      best = count;
      return;
    }
    if (i == k) return;
    self(self, i + 1, count + 1, removed + values[i]);
    self(self, i + 1, count, removed);
  };
  dfs(dfs, 0, 0, Rational(0));
  return best;
}

namespace {

// Exhaustive search for the subset of the envied bundle that is hardest to
// compensate. Goods are visited in decreasing-value order so a leaf's
// removal count is a prefix of the inclusion stack, found by binary search
// over the running value prefix sums.
class WitnessSearch {
 public:
  WitnessSearch(const Allocation& alloc, const Instance& inst, int envier, int envied)
      : inst_(inst), envier_(envier) {
    x_value_ = bundle_value(alloc.bundle(envier), inst);
    cap_ = inst.budget(envier);
    order_ = alloc.bundle(envied);
    std::sort(order_.begin(), order_.end(), [&](int lhs, int rhs) {
      const Rational& lv = inst.value(lhs);
      const Rational& rv = inst.value(rhs);
      if (lv != rv) return lv > rv;
      return lhs < rhs;
    });
    k_ = static_cast<int>(order_.size());
    sizes_.reserve(k_);
    for (int id : order_) sizes_.push_back(inst.size(id, envier));
    best_ = EnvyWitness{envier, envied, {}, Rational(0), 0};
  }

  EnvyWitness run() {
    dfs(0);
    best_.size_under_envier = bundle_size(best_.subset, envier_, inst_);
    return best_;
  }

 private:
  void evaluate_leaf() {
    int count = 0;
    if (!prefix_value_.empty()) {
      const Rational excess = prefix_value_.back() - x_value_;
      if (excess > 0) {
        auto it = std::lower_bound(prefix_value_.begin(), prefix_value_.end(), excess);
        count = static_cast<int>(it - prefix_value_.begin()) + 1;
      }
    }
    if (count < best_.efcount) return;
    if (count == best_.efcount && best_.subset.empty()) return;  // empty set is lex-minimal
    std::vector<int> ids(included_.begin(), included_.end());
    std::sort(ids.begin(), ids.end());
    if (count > best_.efcount ||
        std::lexicographical_compare(ids.begin(), ids.end(), best_.subset.begin(),
                                     best_.subset.end())) {
      best_.efcount = count;
      best_.subset = std::move(ids);
    }
  }

  void dfs(int i) {
    if (i == k_) {
      evaluate_leaf();
      return;
    }
    if (cap_.fits(size_sum_ + sizes_[i])) {
      size_sum_ += sizes_[i];
      included_.push_back(order_[i]);
      prefix_value_.push_back((prefix_value_.empty() ? Rational(0) : prefix_value_.back()) +
                              inst_.value(order_[i]));
      dfs(i + 1);
      prefix_value_.pop_back();
      included_.pop_back();
      size_sum_ -= sizes_[i];
    }
    // Branches that cannot reach the current best count are dead: any
    // completion's efcount is at most |F|.
    if (static_cast<int>(included_.size()) + (k_ - i - 1) >= best_.efcount) dfs(i + 1);
  }

  const Instance& inst_;
  int envier_;
  Rational x_value_;
  Budget cap_ = Budget::infinite();
  std::vector<int> order_;
  std::vector<Rational> sizes_;
  int k_ = 0;
  Rational size_sum_ = 0;
  std::vector<int> included_;
  std::vector<Rational> prefix_value_;
  EnvyWitness best_;
};

}  // namespace

EnvyWitness worst_witness(const Allocation& alloc, const Instance& inst, int envier, int envied) {
  if (envier < 0 || envier > inst.num_agents() || envied < 0 || envied > inst.num_agents())
    throw std::out_of_range("invalid agent index");
  const int k = static_cast<int>(alloc.bundle(envied).size());
  if (k > enumeration_cap())
    throw EnumerationCapError("worst_witness: bundle of " + std::to_string(k) +
                              " goods exceeds the enumeration cap of " +
                              std::to_string(enumeration_cap()));
  return WitnessSearch(alloc, inst, envier, envied).run();
}

EfkVerdict is_efk(const Allocation& alloc, const Instance& inst, int k) {
  if (k < 0) throw std::invalid_argument("is_efk: k must be nonnegative");
  if (auto err = partition_error(alloc, inst))
    throw std::invalid_argument("not a partition: " + *err);
  std::optional<EnvyWitness> worst;
  const int agents = inst.num_agents() + 1;
  for (int a = 0; a < agents; ++a) {
    for (int b = 0; b < agents; ++b) {
      if (a == b) continue;  // a bundle never envies itself
      EnvyWitness w = worst_witness(alloc, inst, a, b);
      if (!worst || w.efcount > worst->efcount) worst = std::move(w);
    }
  }
  if (!worst || worst->efcount <= k) return {true, std::nullopt};
  return {false, std::move(worst)};
}

std::vector<int> density_order(std::span<const int> goods, int agent, const Instance& inst) {
  std::vector<std::pair<int, Rational>> keyed;
  keyed.reserve(goods.size());
  for (int id : goods) keyed.emplace_back(id, density(id, agent, inst));
  std::sort(keyed.begin(), keyed.end(), [](const auto& lhs, const auto& rhs) {
    if (lhs.second != rhs.second) return lhs.second > rhs.second;
    return lhs.first < rhs.first;
  });
  std::vector<int> out;
  out.reserve(goods.size());
  for (const auto& [id, rho] : keyed) out.push_back(id);
  return out;
}

std::vector<int> sigma_order(std::span<const int> goods, std::span<const int> sigma) {
  std::vector<int> pos;
  int max_id = -1;
  for (int id : sigma) max_id = std::max(max_id, id);
  pos.assign(max_id + 1, -1);
  for (std::size_t i = 0; i < sigma.size(); ++i) pos[sigma[i]] = static_cast<int>(i);
  std::vector<int> out(goods.begin(), goods.end());
  for (int id : out) {
    if (id < 0 || id > max_id || pos[id] < 0)
      throw std::invalid_argument("sigma_order: good " + std::to_string(id) + " not in sigma");
  }
  std::sort(out.begin(), out.end(), [&](int lhs, int rhs) { return pos[lhs] < pos[rhs]; });
  return out;
}

std::vector<int> prefix_by_count(std::span<const int> ordered, std::size_t count) {
  if (count > ordered.size()) throw std::out_of_range("prefix_by_count: index out of range");
  return std::vector<int>(ordered.begin(), ordered.begin() + count);
}

FractionalBundle prefix_by_size(std::span<const int> ordered, const Rational& threshold,
                                int agent, const Instance& inst) {
  if (threshold < 0) throw std::invalid_argument("prefix_by_size: negative size threshold");
  FractionalBundle fb;
  Rational used = 0;
  for (int id : ordered) {
    const Rational& s = inst.size(id, agent);
    if (used + s <= threshold) {
      fb.append(id, Rational(1));
      used += s;
    } else {
      fb.append(id, (threshold - used) / s);  // fraction 0 is dropped by append
      return fb;
    }
  }
  return fb;  // threshold >= total size: the whole bundle
}

int ef_count_fractional(const FractionalBundle& x, const FractionalBundle& y,
                        const Instance& inst) {
  const Rational x_value = x.value(inst);
  Rational excess = y.value(inst) - x_value;
  if (excess <= 0) return 0;
  std::vector<Rational> part_values;
  part_values.reserve(y.parts().size());
  for (const FractionalPart& p : y.parts()) part_values.push_back(p.fraction * inst.value(p.good));
  std::sort(part_values.begin(), part_values.end(), std::greater<>());
  Rational removed = 0;
  int count = 0;
  for (const Rational& v : part_values) {
    removed += v;
    ++count;
    if (removed >= excess) break;
  }
  return count;
}

bool check_lipschitz(std::span<const int> x, std::span<const int> y, std::size_t i, int agent,
                     const Instance& inst) {
  if (i >= y.size()) throw std::out_of_range("check_lipschitz: index out of range");
  const std::vector<int> xo = density_order(x, agent, inst);
  const std::vector<int> yo = density_order(y, agent, inst);
  Rational t = 0;
  for (std::size_t j = 0; j < i; ++j) t += inst.size(yo[j], agent);
  const Rational t_hat = t + inst.size(yo[i], agent);
  const int at_t = ef_count_fractional(prefix_by_size(xo, t, agent, inst),
                                       prefix_by_size(yo, t, agent, inst), inst);
  const int at_t_hat = ef_count_fractional(prefix_by_size(xo, t_hat, agent, inst),
                                           prefix_by_size(yo, t_hat, agent, inst), inst);
  return at_t_hat <= at_t + 1;
}

std::size_t find_two_cut(std::span<const int> x, std::span<const int> y, int agent,
                         const Instance& inst) {
  if (ef_count(bundle_value(x, inst), y, inst) < 2)
    throw NoTwoCutError("find_two_cut: requires an envy count of at least 2");
  const std::vector<int> xo = density_order(x, agent, inst);
  const std::vector<int> yo = density_order(y, agent, inst);
  Rational h = 0;
  int prev = 0;
  for (std::size_t t = 1; t <= yo.size(); ++t) {
    h += inst.size(yo[t - 1], agent);
    const FractionalBundle y_prefix = FractionalBundle::whole(prefix_by_count(yo, t));
    const int count = ef_count_fractional(prefix_by_size(xo, h, agent, inst), y_prefix, inst);
    if (count == 2) {
      if (prev != 1)
        throw std::logic_error("find_two_cut: envy count at t-1 is " + std::to_string(prev) +
                               ", expected 1");
      return t;
    }
    prev = count;
  }
  throw std::logic_error("find_two_cut: no prefix reaches an envy count of exactly 2");
}

}  // namespace fairknap
