#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fle/formula.hpp"
#include "fle/rng.hpp"

namespace fle {

// A finite pointed commutative residuated lattice given by tables. Only leq,
// fuse, unit and zero are primary data; meet, join and imp are derived (and
// therefore always consistent): imp(y,z) is the maximum of {x : x·y ≤ z},
// which from_tables requires to exist, and the full adjunction
// x ≤ y→z iff x·y ≤ z is re-checked pointwise. Elements are 0..size-1.
class Pcrl {
public:
  // Validates every invariant; AlgebraError with a reason on failure.
  // leq and fuse are row-major size×size tables (leq entries 0/1).
  static Pcrl from_tables(int size, std::vector<std::uint8_t> leq,
                          std::vector<std::uint8_t> fuse, int unit, int zero,
                          LanguageProfile profile = LanguageProfile::Core);

  int size() const { return size_; }
  LanguageProfile profile() const { return profile_; }
  bool leq(int x, int y) const { return leq_[idx(x, y)] != 0; }
  int meet(int x, int y) const { return meet_[idx(x, y)]; }
  int join(int x, int y) const { return join_[idx(x, y)]; }
  int fuse(int x, int y) const { return fuse_[idx(x, y)]; }
  int imp(int x, int y) const { return imp_[idx(x, y)]; }
  int unit() const { return unit_; }
  int zero() const { return zero_; }
  int bot() const;  // ProfileError under the core profile
  int top() const;

  // Raw tables for the compiled evaluator.
  const std::uint8_t* leq_data() const { return leq_.data(); }
  const std::uint8_t* meet_data() const { return meet_.data(); }
  const std::uint8_t* join_data() const { return join_.data(); }
  const std::uint8_t* fuse_data() const { return fuse_.data(); }
  const std::uint8_t* imp_data() const { return imp_.data(); }

  // Serialization of (leq, fuse, unit, zero) minimized over all element
  // permutations; two algebras are isomorphic iff their keys are equal.
  std::vector<std::uint8_t> canonical_key() const;

private:
  Pcrl() = default;
  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(size_) +
           static_cast<std::size_t>(y);
  }

  int size_ = 0;
  LanguageProfile profile_ = LanguageProfile::Core;
  std::vector<std::uint8_t> leq_, meet_, join_, fuse_, imp_;
  int unit_ = 0, zero_ = 0, bot_ = 0, top_ = 0;
};

using Valuation = std::map<std::string, int>;

// Homomorphic evaluation; UsageError on a variable missing from v,
// ProfileError when the formula mentions bot/top but the algebra was built
// under the core profile.
int eval(const Pcrl& algebra, const Valuation& v, const Formula& formula);

// Validity of φ in A means 1∧φ = 1, i.e. unit ≤ eval(φ).
struct CheckPolicy {
  enum class Kind : std::uint8_t { Exhaustive, Sample };
  Kind kind = Kind::Exhaustive;
  long long samples = 0;          // Sample only
  std::uint64_t seed = kDefaultSeed;  // Sample only

  static CheckPolicy exhaustive() { return {}; }
  static CheckPolicy sample(long long count, std::uint64_t seed) {
    return {Kind::Sample, count, seed};
  }
};

struct ValidityResult {
  bool valid = true;
  std::optional<Valuation> counterexample;  // first one found
};

// Exhaustive iterates all size^|vars| valuations in odometer order over the
// sorted variable list; Sample draws `samples` valuations from a SplitMix64
// stream seeded with policy.seed. Both report the first counterexample.
ValidityResult is_valid(const Pcrl& algebra, const Formula& formula,
                        const CheckPolicy& policy);

// Rule validity: every (sampled) valuation making all premises valid must
// make the conclusion valid. Variables range over the union of all formulas'
// variables.
ValidityResult is_rule_valid(const Pcrl& algebra,
                             const std::vector<Formula>& premises,
                             const Formula& conclusion,
                             const CheckPolicy& policy);

// A formula is the special case with no premises.
struct RuleInstance {
  std::vector<Formula> premises;
  Formula conclusion;
};

// Concrete rule syntax: "<premise>, ..., <premise> / <conclusion>", where the
// separating '/' is one that is part of neither /\ nor \/. A bare formula
// (no separator) denotes the premise-free rule.
RuleInstance parse_rule(std::string_view text,
                        LanguageProfile profile = LanguageProfile::Core);

struct CatalogEntry {
  Pcrl algebra;
  int size = 0;   // carrier size
  int index = 0;  // enumeration index within this size
};

class ModelCatalog {
public:
  const std::vector<CatalogEntry>& entries() const { return entries_; }
  std::size_t model_count() const { return entries_.size(); }
  std::map<int, int> counts_by_size() const;
  void add(Pcrl algebra, int size, int index) {
    entries_.push_back({std::move(algebra), size, index});
  }

private:
  std::vector<CatalogEntry> entries_;
};

// OrderFirst enumerates lattice orders and then compatible monoid tables;
// MonoidFirst enumerates commutative monoids and then compatible lattice
// orders. Both must produce identical catalogs (the cross-check of the
// enumeration machinery).
enum class EnumerationStrategy : std::uint8_t { OrderFirst, MonoidFirst };

// All pointed commutative residuated lattices on carriers of size 1..maxSize,
// deduplicated up to isomorphism when pruneIsomorphic is set (canonical-key
// order within each size). The carrier-size ceiling is 4 without pruning and
// 5 with it; CeilingError beyond that.
ModelCatalog enumerate_pcrls(int maxSize,
                             LanguageProfile profile = LanguageProfile::Core,
                             bool pruneIsomorphic = true,
                             EnumerationStrategy strategy = EnumerationStrategy::OrderFirst);

// Line-oriented catalog file: per model a header `pcrl size=<n>`, a `leq`
// line followed by n rows of n 0/1 entries (row x, column y holds x ≤ y), a
// `fuse` line followed by n rows of element indices, and a trailing
// `unit=<i> zero=<i>` line (plus ` bot=<i> top=<i>` under the bounded
// profile). Loading revalidates everything and recomputes meet/join/imp.
void save_catalog(const ModelCatalog& catalog, std::ostream& out);
ModelCatalog load_catalog(std::istream& in,
                          LanguageProfile profile = LanguageProfile::Core);

struct BatteryBudget {
  long long exhaustive_limit = 1'000'000;  // max valuations for Exhaustive
  long long samples = 10'000;
  std::uint64_t seed = kDefaultSeed;
};

struct BatteryItem {
  std::string label;
  RuleInstance rule;
};

struct BatteryFinding {
  std::string label;
  int model_size = 0;
  int model_index = 0;
  CheckPolicy::Kind policy = CheckPolicy::Kind::Exhaustive;
  Valuation counterexample;
};

struct BatteryReport {
  long long checks = 0;  // (item, model) pairs examined
  long long sampled_checks = 0;  // pairs that fell back to sampling
  std::vector<BatteryFinding> findings;  // in (item, model) order

  bool all_valid() const { return findings.empty(); }
};

// Runs every item against every catalog model. A pair uses the Exhaustive
// policy when size^|vars| ≤ budget.exhaustive_limit and otherwise
// Sample(budget.samples) with a per-(item, model) stream derived from
// budget.seed, so results do not depend on iteration order.
BatteryReport battery_check(const std::vector<BatteryItem>& items,
                            const ModelCatalog& catalog,
                            const BatteryBudget& budget = {});

}  // namespace fle
