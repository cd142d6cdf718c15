#include "fle/hierarchy.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <unordered_map>

namespace fle {

HierarchyLevel classify(const Formula& formula) {
  switch (formula.kind()) {
    case Formula::Kind::Var:
      return {0, 0};
    case Formula::Kind::Const:
      switch (formula.const_kind()) {
        case ConstKind::One:
        case ConstKind::Bot:
          return {1, 2};
        case ConstKind::Zero:
        case ConstKind::Top:
          return {2, 1};
      }
      break;
    case Formula::Kind::Bin: {
      HierarchyLevel l = classify(formula.left());
      HierarchyLevel r = classify(formula.right());
      switch (formula.op()) {
        case BinOp::Fuse:
        case BinOp::Or: {
          int p = std::max({1, l.pLevel, r.pLevel});
          return {p, p + 1};
        }
        case BinOp::And: {
          int n = std::max({1, l.nLevel, r.nLevel});
          return {n + 1, n};
        }
        case BinOp::Imp: {
          int n = std::max({1, l.pLevel, r.nLevel});
          return {n + 1, n};
        }
      }
      break;
    }
  }
  throw UsageError("corrupt formula node");
}

namespace {

constexpr int kUnset = std::numeric_limits<int>::max();

// Distinct subformulas in a children-before-parents order.
std::vector<Formula> distinct_subformulas(const Formula& formula) {
  std::vector<Formula> out;
  std::unordered_map<Formula, bool, FormulaHash> seen;
  auto walk = [&](auto&& self, const Formula& f) -> void {
    if (seen.count(f)) return;
    if (f.is_bin()) {
      self(self, f.left());
      self(self, f.right());
    }
    if (seen.emplace(f, true).second) out.push_back(f);
  };
  walk(walk, formula);
  return out;
}

}  // namespace

HierarchyLevel classify_oracle(const Formula& formula, int kMax) {
  if (kMax < 0) throw UsageError("kMax must be nonnegative");
  std::vector<Formula> subs = distinct_subformulas(formula);
  std::unordered_map<Formula, std::size_t, FormulaHash> pos;
  for (std::size_t i = 0; i < subs.size(); ++i) pos.emplace(subs[i], i);

  // leastP[i]/leastN[i]: least witnessed level of membership in P_k / N_k.
  std::vector<int> leastP(subs.size(), kUnset), leastN(subs.size(), kUnset);

  // Level 0: exactly the variables.
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i].is_var()) leastP[i] = leastN[i] = 0;
  }

  for (int k = 1; k <= kMax; ++k) {
    // P_k and N_k are the smallest sets closed under the five clauses; the
    // clauses at level k reference level k itself, so iterate to a fixpoint
    // over the (finite) subformula universe.
    std::vector<bool> inP(subs.size()), inN(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
      inP[i] = leastP[i] < k || leastN[i] < k;  // P_{k-1} ∪ N_{k-1} ⊆ P_k
      inN[i] = inP[i];                          // ... ⊆ N_k
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < subs.size(); ++i) {
        const Formula& f = subs[i];
        if (!inP[i]) {
          bool add = false;
          if (f.is_const(ConstKind::One) || f.is_const(ConstKind::Bot)) {
            add = true;
          } else if (f.is_bin() &&
                     (f.op() == BinOp::Fuse || f.op() == BinOp::Or)) {
            add = inP[pos.at(f.left())] && inP[pos.at(f.right())];
          }
          if (add) inP[i] = changed = true;
        }
        if (!inN[i]) {
          bool add = false;
          if (f.is_const(ConstKind::Zero) || f.is_const(ConstKind::Top)) {
            add = true;
          } else if (f.is_bin() && f.op() == BinOp::And) {
            add = inN[pos.at(f.left())] && inN[pos.at(f.right())];
          } else if (f.is_bin() && f.op() == BinOp::Imp) {
            add = inP[pos.at(f.left())] && inN[pos.at(f.right())];
          }
          if (add) inN[i] = changed = true;
        }
      }
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (inP[i] && leastP[i] == kUnset) leastP[i] = k;
      if (inN[i] && leastN[i] == kUnset) leastN[i] = k;
    }
  }

  std::size_t root = pos.at(formula);
  if (leastP[root] == kUnset || leastN[root] == kUnset) {
    throw OracleBoundError("no membership witnessed up to level " +
                           std::to_string(kMax));
  }
  return {leastP[root], leastN[root]};
}

namespace {

class RewriteBudget {
public:
  explicit RewriteBudget(const Formula& formula)
      : remaining_(10 * static_cast<long long>(formula.node_count())) {}

  void emit(long long count = 1) {
    remaining_ -= count;
    if (remaining_ < 0) {
      throw BudgetError("normal-form rewriting exceeded its step budget");
    }
  }

private:
  long long remaining_;
};

std::vector<PNormalForm::Disjunct> norm_p(const Formula& f, RewriteBudget& budget);

std::vector<NNormalForm::Conjunct> norm_n(const Formula& f, RewriteBudget& budget) {
  if (f.is_const(ConstKind::Top)) return {};  // top = empty conjunction
  if (f.is_bin() && f.op() == BinOp::And) {
    auto out = norm_n(f.left(), budget);
    auto rest = norm_n(f.right(), budget);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }
  if (f.is_bin() && f.op() == BinOp::Imp) {
    // χ→(α∧β) splits before (α∨β)→χ, so the consequent's conjuncts are the
    // outer loop; currying prepends the antecedent's factors.
    auto ante = norm_p(f.left(), budget);
    auto cons = norm_n(f.right(), budget);
    std::vector<NNormalForm::Conjunct> out;
    out.reserve(ante.size() * cons.size());
    for (const auto& conjunct : cons) {
      for (const auto& disjunct : ante) {
        budget.emit();
        NNormalForm::Conjunct merged{disjunct.factors, conjunct.consequent};
        merged.antecedent.insert(merged.antecedent.end(),
                                 conjunct.antecedent.begin(),
                                 conjunct.antecedent.end());
        out.push_back(std::move(merged));
      }
    }
    return out;
  }
  // Var, 0, 1, fuse, disjunction: an atom of the conjunctive layer.
  budget.emit();
  return {{{}, f}};
}

std::vector<PNormalForm::Disjunct> norm_p(const Formula& f, RewriteBudget& budget) {
  if (f.is_const(ConstKind::Bot)) return {};   // bot = empty disjunction
  if (f.is_const(ConstKind::One)) {
    budget.emit();
    return {{{}}};  // 1 = the empty product
  }
  if (f.is_bin() && f.op() == BinOp::Or) {
    auto out = norm_p(f.left(), budget);
    auto rest = norm_p(f.right(), budget);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }
  if (f.is_bin() && f.op() == BinOp::Fuse) {
    auto lhs = norm_p(f.left(), budget);
    auto rhs = norm_p(f.right(), budget);
    std::vector<PNormalForm::Disjunct> out;
    out.reserve(lhs.size() * rhs.size());
    for (const auto& l : lhs) {
      for (const auto& r : rhs) {
        budget.emit();
        PNormalForm::Disjunct merged;
        merged.factors = l.factors;
        merged.factors.insert(merged.factors.end(), r.factors.begin(),
                              r.factors.end());
        out.push_back(std::move(merged));
      }
    }
    return out;
  }
  // Var, 0, top, implication, conjunction: a factor of the product layer.
  budget.emit();
  return {{{f}}};
}

}  // namespace

NNormalForm normalize_n(const Formula& formula, int k) {
  if (k < 1) throw LevelError("normal-form level must be positive");
  if (classify(formula).nLevel > k) {
    throw LevelError("formula is not N" + std::to_string(k));
  }
  RewriteBudget budget(formula);
  return {norm_n(formula, budget)};
}

PNormalForm normalize_p(const Formula& formula, int k) {
  if (k < 1) throw LevelError("normal-form level must be positive");
  if (classify(formula).pLevel > k) {
    throw LevelError("formula is not P" + std::to_string(k));
  }
  RewriteBudget budget(formula);
  return {norm_p(formula, budget)};
}

Formula reassemble(const NNormalForm& nf) {
  if (nf.conjuncts.empty()) return Formula::top();
  std::optional<Formula> acc;
  for (const auto& conjunct : nf.conjuncts) {
    Formula part =
        Formula::imp(mk_product(conjunct.antecedent), conjunct.consequent);
    acc = acc ? Formula::conj(*acc, part) : part;
  }
  return *acc;
}

Formula reassemble(const PNormalForm& nf) {
  if (nf.disjuncts.empty()) return Formula::bot();
  std::optional<Formula> acc;
  for (const auto& disjunct : nf.disjuncts) {
    Formula part = mk_product(disjunct.factors);
    acc = acc ? Formula::disj(*acc, part) : part;
  }
  return *acc;
}

bool matches_shape(const NNormalForm& nf, int k) {
  if (k < 1) return false;
  for (const auto& conjunct : nf.conjuncts) {
    for (const auto& factor : conjunct.antecedent) {
      if (classify(factor).nLevel > k) return false;
    }
    if (!conjunct.consequent.is_const(ConstKind::Zero) &&
        classify(conjunct.consequent).pLevel > k) {
      return false;
    }
  }
  return true;
}

bool matches_shape(const PNormalForm& nf, int k) {
  if (k < 1) return false;
  for (const auto& disjunct : nf.disjuncts) {
    for (const auto& factor : disjunct.factors) {
      if (classify(factor).nLevel > k) return false;
    }
  }
  return true;
}

}  // namespace fle
