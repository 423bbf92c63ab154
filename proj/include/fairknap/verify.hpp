#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fairknap/core.hpp"

namespace fairknap {

struct FractionalPart {
  int good = 0;
  Rational fraction;  // in (0, 1]

  bool operator==(const FractionalPart&) const = default;
};

/// A bundle in which at most one good is partially included. Analysis
/// construct for size-threshold prefixes; zero-fraction parts are never
/// stored.
class FractionalBundle {
 public:
  FractionalBundle() = default;
  static FractionalBundle whole(std::span<const int> goods);

  /// Appends a part. Fractions outside (0, 1] are rejected; a fraction of 0
  /// is silently dropped. At most one strictly fractional part may exist.
  void append(int good, Rational fraction);

  const std::vector<FractionalPart>& parts() const { return parts_; }
  Rational value(const Instance& inst) const;
  Rational size(int agent, const Instance& inst) const;
  int fractional_part_count() const;

  bool operator==(const FractionalBundle&) const = default;

 private:
  std::vector<FractionalPart> parts_;
};

struct EnvyWitness {
  int envier = 0;
  int envied = 0;
  std::vector<int> subset;  // sorted good ids, a subset of the envied bundle
  Rational size_under_envier;
  int efcount = 0;
};

class EnumerationCapError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Largest bundle the exhaustive witness search will enumerate. Defaults to
/// 20 goods; the FAIRKNAP_MAX_ENUM environment variable overrides it.
int enumeration_cap();

/// Minimum number of goods whose removal from y leaves value at most
/// x_value. Removing goods in decreasing value order is optimal for additive
/// values, so this runs in O(|y| log |y|).
int ef_count(const Rational& x_value, std::span<const int> y, const Instance& inst);

/// Reference oracle for ef_count: exhaustive minimum over all R subseteq y.
int ef_count_bruteforce(const Rational& x_value, std::span<const int> y, const Instance& inst);

/// Enumerates every F subseteq A_envied with size (under the envier's size
/// function) within the envier's budget and returns one maximizing
/// ef_count(v(A_envier), F); ties broken by lexicographically smallest
/// subset. The empty set always qualifies, so a witness always exists.
EnvyWitness worst_witness(const Allocation& alloc, const Instance& inst, int envier, int envied);

struct EfkVerdict {
  bool holds = true;
  std::optional<EnvyWitness> witness;  // maximal-efcount witness when !holds
};

/// EFk over all ordered agent pairs, the charity included as both envier and
/// envied. Throws std::invalid_argument when alloc is not a partition.
EfkVerdict is_efk(const Allocation& alloc, const Instance& inst, int k);

/// Goods sorted by decreasing density under `agent`, ties by lowest id.
std::vector<int> density_order(std::span<const int> goods, int agent, const Instance& inst);

/// Goods sorted by their position in the allocation order sigma.
std::vector<int> sigma_order(std::span<const int> goods, std::span<const int> sigma);

/// The first `count` goods of an ordered bundle.
std::vector<int> prefix_by_count(std::span<const int> ordered, std::size_t count);

/// The largest whole-good prefix of size <= threshold plus a fractional part
/// of the next good so the result's size is exactly min(threshold, total).
FractionalBundle prefix_by_size(std::span<const int> ordered, const Rational& threshold,
                                int agent, const Instance& inst);

/// ef_count over fractional bundles: a fractional part counts as one
/// removable good.
int ef_count_fractional(const FractionalBundle& x, const FractionalBundle& y,
                        const Instance& inst);

/// Oracle for the one-step envy-count bound: extending both prefixes from
/// s_a(Y^(i)) to s_a(Y^(i+1)) raises the fractional envy count by at most 1.
/// Always true; exercised as a property test.
bool check_lipschitz(std::span<const int> x, std::span<const int> y, std::size_t i, int agent,
                     const Instance& inst);

class NoTwoCutError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Requires ef_count(v(x), y) >= 2. Returns the minimum prefix length t of y
/// (density order under `agent`) at which the fractional envy count against
/// x's equal-size prefix is exactly 2; also checks the count is 1 at t-1.
std::size_t find_two_cut(std::span<const int> x, std::span<const int> y, int agent,
                         const Instance& inst);

}  // namespace fairknap
