#pragma once

#include <vector>

#include "fle/formula.hpp"

namespace fle {

// Least levels k with membership in P_k / N_k of the substructural
// hierarchy. The closure rule P_k ∪ N_k ⊆ P_{k+1} ∩ N_{k+1} forces
// |pLevel − nLevel| ≤ 1, and both are 0 exactly for variables.
struct HierarchyLevel {
  int pLevel = 0;
  int nLevel = 0;

  bool operator==(const HierarchyLevel& other) const {
    return pLevel == other.pLevel && nLevel == other.nLevel;
  }
};

// Closed-form structural recursion:
//   Var        -> (0, 0)
//   1, bot     -> (p=1, n=2)
//   0, top     -> (p=2, n=1)
//   a·b, a∨b   -> p = max(1, p(a), p(b)), n = p+1
//   a∧b        -> n = max(1, n(a), n(b)), p = n+1
//   a→b        -> n = max(1, p(a), n(b)), p = n+1
// Validated against classify_oracle, which materializes the closure rules
// directly.
HierarchyLevel classify(const Formula& formula);

// Independent fixpoint oracle: iterates the closure clauses over the
// subformulas of `formula` for k = 0..kMax and reads off the least witnessed
// levels. OracleBoundError if kMax is too small to witness membership.
HierarchyLevel classify_oracle(const Formula& formula, int kMax);

// Normal form for N_k formulas: a conjunction of (product-of-antecedents →
// consequent) clauses. Each antecedent has nLevel ≤ k; each consequent is a
// P_k formula or the constant 0. The empty conjunct list denotes top; an
// empty antecedent list denotes the product 1.
struct NNormalForm {
  struct Conjunct {
    std::vector<Formula> antecedent;
    Formula consequent;
  };
  std::vector<Conjunct> conjuncts;
};

// Normal form for P_k formulas: a disjunction of products. Each factor has
// nLevel ≤ k; the empty disjunct list denotes bot; an empty factor list
// denotes 1.
struct PNormalForm {
  struct Disjunct {
    std::vector<Formula> factors;
  };
  std::vector<Disjunct> disjuncts;
};

// Rewrite the formula into the level-k normal form. Preconditions:
// classify(formula).nLevel ≤ k (normalize_n) resp. pLevel ≤ k (normalize_p),
// k ≥ 1; LevelError otherwise. The rewriting budget is 10·node_count emitted
// conjuncts/disjuncts; distribution of · over ∨ can exceed it on adversarial
// inputs, in which case BudgetError is thrown.
NNormalForm normalize_n(const Formula& formula, int k);
PNormalForm normalize_p(const Formula& formula, int k);

// Reassembled formulas: ⋀(∏antecedent → consequent) and ⋁∏factors, folding
// conjunctions/disjunctions to the left. Empty top-level lists reassemble to
// top resp. bot (only reachable from inputs that contain those constants).
Formula reassemble(const NNormalForm& nf);
Formula reassemble(const PNormalForm& nf);

// Structural check that a normal form fits the Lemma-nf shape at level k.
bool matches_shape(const NNormalForm& nf, int k);
bool matches_shape(const PNormalForm& nf, int k);

}  // namespace fle
