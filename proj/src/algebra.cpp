#include "fle/algebra.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace fle {

// ---------------------------------------------------------------------------
// FinitePCRL construction and validation
// ---------------------------------------------------------------------------

namespace {

// Greatest lower bound of {x : pred(x)} under leq, or -1 when the set has no
// maximum member. `candidates` holds the member set.
int max_of_set(int n, const std::vector<std::uint8_t>& leq,
               const std::vector<int>& members) {
  for (int m : members) {
    bool greatest = true;
    for (int x : members) {
      if (!leq[static_cast<std::size_t>(x) * n + m]) {
        greatest = false;
        break;
      }
    }
    if (greatest) return m;
  }
  return -1;
}

}  // namespace

Pcrl Pcrl::from_tables(int size, std::vector<std::uint8_t> leq,
                       std::vector<std::uint8_t> fuse, int unit, int zero,
                       LanguageProfile profile) {
  if (size < 1) throw AlgebraError("carrier must be nonempty");
  std::size_t n = static_cast<std::size_t>(size);
  if (leq.size() != n * n || fuse.size() != n * n) {
    throw AlgebraError("operation tables must be size x size");
  }
  if (unit < 0 || unit >= size || zero < 0 || zero >= size) {
    throw AlgebraError("designated elements out of range");
  }
  auto at = [n](const std::vector<std::uint8_t>& t, int x, int y) {
    return t[static_cast<std::size_t>(x) * n + y];
  };

  for (int x = 0; x < size; ++x) {
    for (int y = 0; y < size; ++y) {
      if (at(leq, x, y) > 1) throw AlgebraError("leq entries must be 0 or 1");
      if (at(fuse, x, y) >= size) throw AlgebraError("fuse entry out of range");
    }
  }

  // Partial order.
  for (int x = 0; x < size; ++x) {
    if (!at(leq, x, x)) throw AlgebraError("leq is not reflexive");
    for (int y = 0; y < size; ++y) {
      if (x != y && at(leq, x, y) && at(leq, y, x)) {
        throw AlgebraError("leq is not antisymmetric");
      }
      for (int z = 0; z < size; ++z) {
        if (at(leq, x, y) && at(leq, y, z) && !at(leq, x, z)) {
          throw AlgebraError("leq is not transitive");
        }
      }
    }
  }

  // Lattice structure: every pair needs a meet and a join.
  std::vector<std::uint8_t> meet(n * n), join(n * n);
  for (int x = 0; x < size; ++x) {
    for (int y = 0; y < size; ++y) {
      std::vector<int> lower, upper;
      for (int z = 0; z < size; ++z) {
        if (at(leq, z, x) && at(leq, z, y)) lower.push_back(z);
        if (at(leq, x, z) && at(leq, y, z)) upper.push_back(z);
      }
      int m = max_of_set(size, leq, lower);
      if (m < 0) throw AlgebraError("not a lattice: meet missing");
      int j = -1;
      for (int c : upper) {
        bool least = true;
        for (int u : upper) {
          if (!at(leq, c, u)) {
            least = false;
            break;
          }
        }
        if (least) {
          j = c;
          break;
        }
      }
      if (j < 0) throw AlgebraError("not a lattice: join missing");
      meet[static_cast<std::size_t>(x) * n + y] = static_cast<std::uint8_t>(m);
      join[static_cast<std::size_t>(x) * n + y] = static_cast<std::uint8_t>(j);
    }
  }

  // Commutative monoid with `unit` as identity.
  for (int x = 0; x < size; ++x) {
    if (at(fuse, unit, x) != x || at(fuse, x, unit) != x) {
      throw AlgebraError("unit is not a monoid identity");
    }
    for (int y = 0; y < size; ++y) {
      if (at(fuse, x, y) != at(fuse, y, x)) {
        throw AlgebraError("fuse is not commutative");
      }
      for (int z = 0; z < size; ++z) {
        if (at(fuse, at(fuse, x, y), z) != at(fuse, x, at(fuse, y, z))) {
          throw AlgebraError("fuse is not associative");
        }
      }
    }
  }

  // Residual: imp(y,z) = max{x : x·y ≤ z}, which must exist ...
  std::vector<std::uint8_t> imp(n * n);
  for (int y = 0; y < size; ++y) {
    for (int z = 0; z < size; ++z) {
      std::vector<int> members;
      for (int x = 0; x < size; ++x) {
        if (at(leq, at(fuse, x, y), z)) members.push_back(x);
      }
      int m = max_of_set(size, leq, members);
      if (m < 0) throw AlgebraError("residual missing: {x : x*y <= z} has no maximum");
      imp[static_cast<std::size_t>(y) * n + z] = static_cast<std::uint8_t>(m);
    }
  }
  // ... and the law x ≤ y→z iff x·y ≤ z is asserted for all triples (a
  // maximum alone does not guarantee downward closure of {x : x·y ≤ z}).
  for (int x = 0; x < size; ++x) {
    for (int y = 0; y < size; ++y) {
      for (int z = 0; z < size; ++z) {
        bool lhs = at(leq, x, imp[static_cast<std::size_t>(y) * n + z]);
        bool rhs = at(leq, at(fuse, x, y), z);
        if (lhs != rhs) throw AlgebraError("residuation law fails");
      }
    }
  }

  Pcrl a;
  a.size_ = size;
  a.profile_ = profile;
  a.leq_ = std::move(leq);
  a.meet_ = std::move(meet);
  a.join_ = std::move(join);
  a.fuse_ = std::move(fuse);
  a.imp_ = std::move(imp);
  a.unit_ = unit;
  a.zero_ = zero;
  // A finite lattice is bounded; fold to find the bounds (used only under
  // the bounded profile, but harmless to compute).
  int b = 0, t = 0;
  for (int x = 1; x < size; ++x) {
    b = a.meet(b, x);
    t = a.join(t, x);
  }
  a.bot_ = b;
  a.top_ = t;
  return a;
}

int Pcrl::bot() const {
  if (profile_ != LanguageProfile::WithBounds) {
    throw ProfileError("bot is not designated under the core profile");
  }
  return bot_;
}

int Pcrl::top() const {
  if (profile_ != LanguageProfile::WithBounds) {
    throw ProfileError("top is not designated under the core profile");
  }
  return top_;
}

std::vector<std::uint8_t> Pcrl::canonical_key() const {
  int n = size_;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint8_t> best;
  std::vector<std::uint8_t> cur(2 * n * n + 2);
  do {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        std::size_t to = static_cast<std::size_t>(perm[x]) * n + perm[y];
        cur[to] = leq_[idx(x, y)];
        cur[n * n + to] = static_cast<std::uint8_t>(perm[fuse_[idx(x, y)]]);
      }
    }
    cur[2 * n * n] = static_cast<std::uint8_t>(perm[unit_]);
    cur[2 * n * n + 1] = static_cast<std::uint8_t>(perm[zero_]);
    if (best.empty() || cur < best) best = cur;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

int element_of_constant(const Pcrl& a, ConstKind kind) {
  switch (kind) {
    case ConstKind::Zero: return a.zero();
    case ConstKind::One: return a.unit();
    case ConstKind::Bot: return a.bot();  // ProfileError under core
    case ConstKind::Top: return a.top();
  }
  throw UsageError("corrupt constant");
}

}  // namespace

int eval(const Pcrl& algebra, const Valuation& v, const Formula& formula) {
  switch (formula.kind()) {
    case Formula::Kind::Var: {
      auto it = v.find(formula.var_name());
      if (it == v.end()) {
        throw UsageError("valuation misses variable '" + formula.var_name() +
                         "'");
      }
      if (it->second < 0 || it->second >= algebra.size()) {
        throw UsageError("valuation value out of range");
      }
      return it->second;
    }
    case Formula::Kind::Const:
      return element_of_constant(algebra, formula.const_kind());
    case Formula::Kind::Bin: {
      int l = eval(algebra, v, formula.left());
      int r = eval(algebra, v, formula.right());
      switch (formula.op()) {
        case BinOp::Imp: return algebra.imp(l, r);
        case BinOp::Fuse: return algebra.fuse(l, r);
        case BinOp::And: return algebra.meet(l, r);
        case BinOp::Or: return algebra.join(l, r);
      }
      break;
    }
  }
  throw UsageError("corrupt formula node");
}

namespace {

// Postfix program over one algebra's flat tables: the valuation loops in
// is_valid / is_rule_valid are the hot path of every battery run.
struct Compiled {
  struct Ins {
    std::uint8_t kind;  // 0 imp, 1 fuse, 2 meet, 3 join, 4 const, 5 var slot
    std::uint16_t arg;
  };
  std::vector<Ins> code;
  int stack_need = 0;
};

Compiled compile(const Pcrl& a, const Formula& f,
                 const std::map<std::string, int>& slots) {
  Compiled c;
  int sp = 0;
  auto emit = [&](auto&& self, const Formula& g) -> void {
    switch (g.kind()) {
      case Formula::Kind::Var: {
        auto it = slots.find(g.var_name());
        if (it == slots.end()) throw UsageError("unmapped variable");
        c.code.push_back({5, static_cast<std::uint16_t>(it->second)});
        c.stack_need = std::max(c.stack_need, ++sp);
        return;
      }
      case Formula::Kind::Const:
        c.code.push_back(
            {4, static_cast<std::uint16_t>(element_of_constant(a, g.const_kind()))});
        c.stack_need = std::max(c.stack_need, ++sp);
        return;
      case Formula::Kind::Bin: {
        self(self, g.left());
        self(self, g.right());
        std::uint8_t kind = 0;
        switch (g.op()) {
          case BinOp::Imp: kind = 0; break;
          case BinOp::Fuse: kind = 1; break;
          case BinOp::And: kind = 2; break;
          case BinOp::Or: kind = 3; break;
        }
        c.code.push_back({kind, 0});
        --sp;
        return;
      }
    }
    throw UsageError("corrupt formula node");
  };
  emit(emit, f);
  return c;
}

int run(const Pcrl& a, const Compiled& c, const std::uint8_t* slots,
        std::uint8_t* stack) {
  const std::uint8_t* tables[4] = {a.imp_data(), a.fuse_data(), a.meet_data(),
                                   a.join_data()};
  const int n = a.size();
  int sp = 0;
  for (const Compiled::Ins& ins : c.code) {
    if (ins.kind < 4) {
      std::uint8_t rhs = stack[--sp];
      std::uint8_t lhs = stack[--sp];
      stack[sp++] = tables[ins.kind][static_cast<std::size_t>(lhs) * n + rhs];
    } else if (ins.kind == 4) {
      stack[sp++] = static_cast<std::uint8_t>(ins.arg);
    } else {
      stack[sp++] = slots[ins.arg];
    }
  }
  return stack[0];
}

std::vector<std::string> sorted_variable_union(
    const std::vector<Formula>& premises, const Formula& conclusion) {
  std::vector<std::string> vars = conclusion.variables();
  for (const Formula& p : premises) {
    std::vector<std::string> more = p.variables();
    std::vector<std::string> merged;
    std::set_union(vars.begin(), vars.end(), more.begin(), more.end(),
                   std::back_inserter(merged));
    vars = std::move(merged);
  }
  return vars;
}

ValidityResult check_valuations(const Pcrl& a,
                                const std::vector<Formula>& premises,
                                const Formula& conclusion,
                                const CheckPolicy& policy) {
  std::vector<std::string> vars = sorted_variable_union(premises, conclusion);
  if (vars.size() > 0xFFFF) throw UsageError("too many variables");
  std::map<std::string, int> slot_of;
  for (std::size_t i = 0; i < vars.size(); ++i) slot_of[vars[i]] = static_cast<int>(i);

  std::vector<Compiled> pre;
  pre.reserve(premises.size());
  for (const Formula& p : premises) pre.push_back(compile(a, p, slot_of));
  Compiled con = compile(a, conclusion, slot_of);

  int stack_need = con.stack_need;
  for (const Compiled& c : pre) stack_need = std::max(stack_need, c.stack_need);
  std::vector<std::uint8_t> stack(static_cast<std::size_t>(stack_need) + 1);
  std::vector<std::uint8_t> slots(std::max<std::size_t>(vars.size(), 1), 0);

  const int n = a.size();
  const int unit = a.unit();
  auto valid_here = [&]() {
    for (const Compiled& c : pre) {
      if (!a.leq(unit, run(a, c, slots.data(), stack.data()))) return true;
    }
    return a.leq(unit, run(a, con, slots.data(), stack.data()));
  };
  auto as_counterexample = [&]() {
    Valuation v;
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = slots[i];
    // Guard the compiled evaluator against itself: the reported valuation
    // must reproduce the failure through the plain tree evaluator.
    for (const Formula& p : premises) {
      if (!a.leq(unit, eval(a, v, p))) {
        throw AlgebraError("internal: evaluator disagreement on a premise");
      }
    }
    if (a.leq(unit, eval(a, v, conclusion))) {
      throw AlgebraError("internal: evaluator disagreement on a conclusion");
    }
    return ValidityResult{false, std::move(v)};
  };

  if (policy.kind == CheckPolicy::Kind::Exhaustive) {
    if (vars.empty()) {
      return valid_here() ? ValidityResult{} : as_counterexample();
    }
    // Odometer order: the lexicographically last variable cycles fastest, so
    // the first counterexample reported is deterministic.
    while (true) {
      if (!valid_here()) return as_counterexample();
      int i = static_cast<int>(vars.size()) - 1;
      while (i >= 0 && ++slots[i] == n) slots[i--] = 0;
      if (i < 0) break;
    }
    return {};
  }

  SplitMix64 gen(policy.seed);
  for (long long s = 0; s < policy.samples; ++s) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      slots[i] = static_cast<std::uint8_t>(gen.below(static_cast<std::uint32_t>(n)));
    }
    if (!valid_here()) return as_counterexample();
  }
  return {};
}

}  // namespace

ValidityResult is_valid(const Pcrl& algebra, const Formula& formula,
                        const CheckPolicy& policy) {
  return check_valuations(algebra, {}, formula, policy);
}

ValidityResult is_rule_valid(const Pcrl& algebra,
                             const std::vector<Formula>& premises,
                             const Formula& conclusion,
                             const CheckPolicy& policy) {
  return check_valuations(algebra, premises, conclusion, policy);
}

RuleInstance parse_rule(std::string_view text, LanguageProfile profile) {
  std::vector<std::size_t> seps;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '/') continue;
    bool after_backslash = i > 0 && text[i - 1] == '\\';
    bool before_backslash = i + 1 < text.size() && text[i + 1] == '\\';
    if (!after_backslash && !before_backslash) seps.push_back(i);
  }
  if (seps.empty()) return {{}, parse_formula(text, profile)};
  if (seps.size() > 1) {
    throw ParseError("a rule has exactly one premises/conclusion separator",
                     seps[1]);
  }
  std::string_view front = text.substr(0, seps[0]);
  std::string_view back = text.substr(seps[0] + 1);

  RuleInstance rule{{}, parse_formula(back, profile)};
  std::size_t start = 0;
  bool any_premise = front.find_first_not_of(" \t") != std::string_view::npos;
  while (any_premise && start <= front.size()) {
    std::size_t comma = front.find(',', start);
    std::string_view chunk = front.substr(
        start, comma == std::string_view::npos ? front.size() - start
                                               : comma - start);
    rule.premises.push_back(parse_formula(chunk, profile));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return rule;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace {

struct Lattice {
  int size;
  std::vector<std::uint8_t> leq;
};

bool is_lattice(int n, const std::vector<std::uint8_t>& leq) {
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      std::vector<int> lower, upper;
      for (int z = 0; z < n; ++z) {
        if (leq[static_cast<std::size_t>(z) * n + x] &&
            leq[static_cast<std::size_t>(z) * n + y]) {
          lower.push_back(z);
        }
        if (leq[static_cast<std::size_t>(x) * n + z] &&
            leq[static_cast<std::size_t>(y) * n + z]) {
          upper.push_back(z);
        }
      }
      if (max_of_set(n, leq, lower) < 0) return false;
      bool has_least = false;
      for (int c : upper) {
        bool least = true;
        for (int u : upper) {
          if (!leq[static_cast<std::size_t>(c) * n + u]) {
            least = false;
            break;
          }
        }
        if (least) {
          has_least = true;
          break;
        }
      }
      if (!has_least) return false;
    }
  }
  return true;
}

// All labeled lattice orders on n elements: assign each unordered pair one of
// {incomparable, below, above}, keep transitive relations that are lattices.
std::vector<Lattice> all_lattices(int n) {
  std::vector<Lattice> out;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<int> choice(pairs.size(), 0);
  while (true) {
    std::vector<std::uint8_t> leq(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) leq[static_cast<std::size_t>(i) * n + i] = 1;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (choice[k] == 1) leq[static_cast<std::size_t>(pairs[k].first) * n + pairs[k].second] = 1;
      if (choice[k] == 2) leq[static_cast<std::size_t>(pairs[k].second) * n + pairs[k].first] = 1;
    }
    bool transitive = true;
    for (int x = 0; x < n && transitive; ++x) {
      for (int y = 0; y < n && transitive; ++y) {
        if (!leq[static_cast<std::size_t>(x) * n + y]) continue;
        for (int z = 0; z < n; ++z) {
          if (leq[static_cast<std::size_t>(y) * n + z] &&
              !leq[static_cast<std::size_t>(x) * n + z]) {
            transitive = false;
            break;
          }
        }
      }
    }
    if (transitive && is_lattice(n, leq)) out.push_back({n, leq});

    std::size_t k = 0;
    while (k < choice.size() && choice[k] == 2) choice[k++] = 0;
    if (k == choice.size()) break;
    ++choice[k];
  }
  return out;
}

constexpr std::uint8_t kUnsetEntry = 0xFF;

// Backtracking fill of a commutative fuse table with the unit row preset.
// `leq` may be null (monoid-first), in which case no monotonicity pruning is
// available. Yields every completed associative table.
template <typename Fn>
void fill_monoids(int n, int unit, const std::vector<std::uint8_t>* leq, Fn&& yield) {
  std::vector<std::uint8_t> fuse(static_cast<std::size_t>(n) * n, kUnsetEntry);
  auto at = [&](int x, int y) -> std::uint8_t& {
    return fuse[static_cast<std::size_t>(x) * n + y];
  };
  for (int x = 0; x < n; ++x) {
    at(unit, x) = static_cast<std::uint8_t>(x);
    at(x, unit) = static_cast<std::uint8_t>(x);
  }
  std::vector<std::pair<int, int>> free_entries;
  for (int i = 0; i < n; ++i) {
    if (i == unit) continue;
    for (int j = i; j < n; ++j) {
      if (j == unit) continue;
      free_entries.emplace_back(i, j);
    }
  }

  auto partial_ok = [&]() {
    // Associativity over fully assigned triples.
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        std::uint8_t ab = at(a, b);
        if (ab == kUnsetEntry) continue;
        for (int c = 0; c < n; ++c) {
          std::uint8_t bc = at(b, c);
          if (bc == kUnsetEntry) continue;
          std::uint8_t l = at(ab, c), r = at(a, bc);
          if (l != kUnsetEntry && r != kUnsetEntry && l != r) return false;
        }
      }
    }
    if (!leq) return true;
    // Monotonicity (a consequence of residuation) over assigned entries.
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        std::uint8_t ab = at(a, b);
        if (ab == kUnsetEntry) continue;
        for (int c = 0; c < n; ++c) {
          if (!(*leq)[static_cast<std::size_t>(a) * n + c]) continue;
          for (int d = 0; d < n; ++d) {
            if (!(*leq)[static_cast<std::size_t>(b) * n + d]) continue;
            std::uint8_t cd = at(c, d);
            if (cd != kUnsetEntry &&
                !(*leq)[static_cast<std::size_t>(ab) * n + cd]) {
              return false;
            }
          }
        }
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == free_entries.size()) {
      yield(fuse);
      return;
    }
    auto [i, j] = free_entries[k];
    for (int v = 0; v < n; ++v) {
      at(i, j) = static_cast<std::uint8_t>(v);
      at(j, i) = static_cast<std::uint8_t>(v);
      if (partial_ok()) self(self, k + 1);
    }
    at(i, j) = kUnsetEntry;
    at(j, i) = kUnsetEntry;
  };
  rec(rec, 0);
}

// Residual existence screen (cheap reject before full validation).
bool residuals_exist(int n, const std::vector<std::uint8_t>& leq,
                     const std::vector<std::uint8_t>& fuse) {
  for (int y = 0; y < n; ++y) {
    for (int z = 0; z < n; ++z) {
      std::vector<int> members;
      for (int x = 0; x < n; ++x) {
        if (leq[static_cast<std::size_t>(fuse[static_cast<std::size_t>(x) * n + y]) * n + z]) {
          members.push_back(x);
        }
      }
      if (max_of_set(n, leq, members) < 0) return false;
    }
  }
  return true;
}

std::vector<Pcrl> enumerate_size(int n, LanguageProfile profile,
                                 EnumerationStrategy strategy) {
  std::vector<Pcrl> found;
  auto monotone = [n](const std::vector<std::uint8_t>& leq,
                      const std::vector<std::uint8_t>& fuse) {
    for (int a = 0; a < n; ++a) {
      for (int c = 0; c < n; ++c) {
        if (!leq[static_cast<std::size_t>(a) * n + c]) continue;
        for (int b = 0; b < n; ++b) {
          std::uint8_t ab = fuse[static_cast<std::size_t>(a) * n + b];
          std::uint8_t cb = fuse[static_cast<std::size_t>(c) * n + b];
          if (!leq[static_cast<std::size_t>(ab) * n + cb]) return false;
        }
      }
    }
    return true;
  };
  auto try_candidate = [&](const std::vector<std::uint8_t>& leq,
                           const std::vector<std::uint8_t>& fuse, int unit) {
    // Under MonoidFirst the fill ran without an order, so monotonicity has
    // not been enforced yet; screen here so from_tables cannot reject.
    if (!monotone(leq, fuse)) return;
    if (!residuals_exist(n, leq, fuse)) return;
    for (int zero = 0; zero < n; ++zero) {
      // from_tables re-derives meet/join/imp and asserts every invariant,
      // including the residuation law on all triples.
      found.push_back(Pcrl::from_tables(n, leq, fuse, unit, zero, profile));
    }
  };

  std::vector<Lattice> lattices = all_lattices(n);
  if (strategy == EnumerationStrategy::OrderFirst) {
    for (const Lattice& lat : lattices) {
      for (int unit = 0; unit < n; ++unit) {
        fill_monoids(n, unit, &lat.leq, [&](const std::vector<std::uint8_t>& fuse) {
          try_candidate(lat.leq, fuse, unit);
        });
      }
    }
  } else {
    for (int unit = 0; unit < n; ++unit) {
      fill_monoids(n, unit, nullptr, [&](const std::vector<std::uint8_t>& fuse) {
        for (const Lattice& lat : lattices) {
          try_candidate(lat.leq, fuse, unit);
        }
      });
    }
  }
  return found;
}

std::vector<std::uint8_t> labeled_key(const Pcrl& a) {
  int n = a.size();
  std::vector<std::uint8_t> key;
  key.reserve(2 * n * n + 2);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) key.push_back(a.leq(x, y) ? 1 : 0);
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) key.push_back(static_cast<std::uint8_t>(a.fuse(x, y)));
  }
  key.push_back(static_cast<std::uint8_t>(a.unit()));
  key.push_back(static_cast<std::uint8_t>(a.zero()));
  return key;
}

}  // namespace

ModelCatalog enumerate_pcrls(int maxSize, LanguageProfile profile,
                             bool pruneIsomorphic,
                             EnumerationStrategy strategy) {
  if (maxSize < 1) throw UsageError("maxSize must be positive");
  int ceiling = pruneIsomorphic ? 5 : 4;
  if (maxSize > ceiling) {
    throw CeilingError("carrier-size ceiling is " + std::to_string(ceiling) +
                       (pruneIsomorphic ? " with" : " without") +
                       " isomorphism pruning");
  }
  ModelCatalog catalog;
  for (int n = 1; n <= maxSize; ++n) {
    std::vector<Pcrl> models = enumerate_size(n, profile, strategy);
    // Sort by a deterministic key so both strategies and any internal
    // fan-out produce the same catalog. Under pruning the stored model is
    // rebuilt from the canonical key itself (not the first-found labeled
    // copy), so the representative is strategy-independent too.
    std::map<std::vector<std::uint8_t>, Pcrl> by_key;
    for (Pcrl& m : models) {
      std::vector<std::uint8_t> key =
          pruneIsomorphic ? m.canonical_key() : labeled_key(m);
      by_key.emplace(std::move(key), std::move(m));
    }
    int index = 0;
    for (auto& [key, model] : by_key) {
      if (pruneIsomorphic) {
        std::size_t nn = static_cast<std::size_t>(n) * n;
        std::vector<std::uint8_t> leq(key.begin(), key.begin() + nn);
        std::vector<std::uint8_t> fuse(key.begin() + nn, key.begin() + 2 * nn);
        catalog.add(Pcrl::from_tables(n, std::move(leq), std::move(fuse),
                                      key[2 * nn], key[2 * nn + 1], profile),
                    n, index++);
      } else {
        catalog.add(std::move(model), n, index++);
      }
    }
  }
  return catalog;
}

std::map<int, int> ModelCatalog::counts_by_size() const {
  std::map<int, int> counts;
  for (const CatalogEntry& e : entries_) ++counts[e.size];
  return counts;
}

// ---------------------------------------------------------------------------
// Catalog files
// ---------------------------------------------------------------------------

void save_catalog(const ModelCatalog& catalog, std::ostream& out) {
  for (const CatalogEntry& entry : catalog.entries()) {
    const Pcrl& a = entry.algebra;
    int n = a.size();
    out << "pcrl size=" << n << "\n";
    out << "leq\n";
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) out << (y ? " " : "") << (a.leq(x, y) ? 1 : 0);
      out << "\n";
    }
    out << "fuse\n";
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) out << (y ? " " : "") << a.fuse(x, y);
      out << "\n";
    }
    out << "unit=" << a.unit() << " zero=" << a.zero();
    if (a.profile() == LanguageProfile::WithBounds) {
      out << " bot=" << a.bot() << " top=" << a.top();
    }
    out << "\n\n";
  }
}

namespace {

std::string next_content_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::size_t last = line.find_last_not_of(" \t\r");
    return line.substr(first, last - first + 1);
  }
  return {};
}

std::vector<int> parse_row(const std::string& line, int n) {
  std::istringstream iss(line);
  std::vector<int> row;
  int v;
  while (iss >> v) row.push_back(v);
  if (static_cast<int>(row.size()) != n) {
    throw AlgebraError("catalog row has wrong arity: '" + line + "'");
  }
  return row;
}

}  // namespace

ModelCatalog load_catalog(std::istream& in, LanguageProfile profile) {
  ModelCatalog catalog;
  std::map<int, int> next_index;
  while (true) {
    std::string header = next_content_line(in);
    if (header.empty()) break;
    int n = 0;
    if (std::sscanf(header.c_str(), "pcrl size=%d", &n) != 1 || n < 1) {
      throw AlgebraError("bad catalog header: '" + header + "'");
    }
    if (next_content_line(in) != "leq") throw AlgebraError("expected leq table");
    std::vector<std::uint8_t> leq;
    for (int x = 0; x < n; ++x) {
      for (int v : parse_row(next_content_line(in), n)) {
        leq.push_back(static_cast<std::uint8_t>(v));
      }
    }
    if (next_content_line(in) != "fuse") throw AlgebraError("expected fuse table");
    std::vector<std::uint8_t> fuse;
    for (int x = 0; x < n; ++x) {
      for (int v : parse_row(next_content_line(in), n)) {
        fuse.push_back(static_cast<std::uint8_t>(v));
      }
    }
    std::string tail = next_content_line(in);
    int unit = -1, zero = -1, bot = -1, top = -1;
    int with_bounds =
        std::sscanf(tail.c_str(), "unit=%d zero=%d bot=%d top=%d", &unit, &zero, &bot, &top);
    if (with_bounds != 2 && with_bounds != 4) {
      throw AlgebraError("bad catalog trailer: '" + tail + "'");
    }
    bool bounded_entry = with_bounds == 4;
    if (bounded_entry != (profile == LanguageProfile::WithBounds)) {
      throw AlgebraError("catalog profile mismatch");
    }
    Pcrl a = Pcrl::from_tables(n, std::move(leq), std::move(fuse), unit, zero, profile);
    if (bounded_entry && (a.bot() != bot || a.top() != top)) {
      throw AlgebraError("declared bounds disagree with the lattice order");
    }
    catalog.add(std::move(a), n, next_index[n]++);
  }
  return catalog;
}

// ---------------------------------------------------------------------------
// Battery
// ---------------------------------------------------------------------------

BatteryReport battery_check(const std::vector<BatteryItem>& items,
                            const ModelCatalog& catalog,
                            const BatteryBudget& budget) {
  BatteryReport report;
  for (std::size_t item_i = 0; item_i < items.size(); ++item_i) {
    const RuleInstance& rule = items[item_i].rule;
    std::size_t var_count =
        sorted_variable_union(rule.premises, rule.conclusion).size();
    for (std::size_t model_j = 0; model_j < catalog.entries().size(); ++model_j) {
      const CatalogEntry& entry = catalog.entries()[model_j];
      long long valuations = 1;
      bool within = true;
      for (std::size_t i = 0; i < var_count && within; ++i) {
        valuations *= entry.algebra.size();
        if (valuations > budget.exhaustive_limit) within = false;
      }
      CheckPolicy policy =
          within ? CheckPolicy::exhaustive()
                 : CheckPolicy::sample(
                       budget.samples,
                       mix_seed(budget.seed, (static_cast<std::uint64_t>(item_i) << 32) |
                                                 model_j));
      ++report.checks;
      if (!within) ++report.sampled_checks;
      ValidityResult r = is_rule_valid(entry.algebra, rule.premises,
                                       rule.conclusion, policy);
      if (!r.valid) {
        report.findings.push_back({items[item_i].label, entry.size, entry.index,
                                   policy.kind, *r.counterexample});
      }
    }
  }
  return report;
}

}  // namespace fle
