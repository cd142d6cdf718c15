#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fle/formula.hpp"
#include "fle/polarity.hpp"

namespace fle {

// PerOccurrence gives every covered occurrence its own fresh variable; under
// PerFormula two occurrences share a variable exactly when their subformulas
// are structurally equal.
enum class Sharing : std::uint8_t { PerOccurrence, PerFormula };

enum class TranslationMode : std::uint8_t { Equiv, Mono };

// Assignment of fresh extension variables p_ψ to subformula occurrences.
// Fresh names are x0, x1, ... in allocation (occurrence) order, skipping any
// name already used by a variable of the source formula. Each fresh name
// also carries a human-readable alias p_{<printed subformula>,<i>} where i
// disambiguates equal printed texts in allocation order.
class ExtVarAllocation {
public:
  // Allocates names for occurrences(source, filter) in order. The Mono
  // translation passes NonVariable (variables act as their own shorthands);
  // the Equiv translation passes All.
  static ExtVarAllocation build(const Formula& source, OccurrenceFilter filter,
                                Sharing sharing);

  Sharing sharing() const { return sharing_; }
  OccurrenceFilter filter() const { return filter_; }
  const std::map<OccurrenceRef, std::string>& mapping() const { return mapping_; }

  // Allocated name at `ref`; UsageError when the occurrence is uncovered.
  const std::string& name_at(const OccurrenceRef& ref) const;

  // The formula standing for the occurrence: its allocated variable, or the
  // subformula itself when it is a variable left out by the NonVariable
  // filter.
  Formula proxy(const Formula& source, const OccurrenceRef& ref) const;

  // (fresh name, alias) pairs in allocation order, one per distinct fresh
  // name, e.g. ("x4", "p_{r -> 0,0}").
  const std::vector<std::pair<std::string, std::string>>& aliases() const {
    return aliases_;
  }

private:
  Sharing sharing_ = Sharing::PerOccurrence;
  OccurrenceFilter filter_ = OccurrenceFilter::All;
  std::map<OccurrenceRef, std::string> mapping_;
  std::vector<std::pair<std::string, std::string>> aliases_;
};

struct TranslationResult {
  Formula source;
  Formula output;
  ExtVarAllocation allocation;
  Substitution sigma;  // every allocated variable ↦ its source subformula
  TranslationMode mode = TranslationMode::Mono;
  int n = 1;  // exponent of the Equiv factors; 1 in Mono mode
};

// Extension axiom E_ψ for the occurrence at `ref`:
//   p_ψ ≡ ψ               when ψ is a variable or constant,
//   p_ψ ≡ (p_ψ0 ∘ p_ψ1)   when ψ = ψ0 ∘ ψ1,
// with ≡ expanded to (a→b)∧(b→a).
Formula extension_axiom_equiv(const Formula& source, const OccurrenceRef& ref,
                              const ExtVarAllocation& alloc);

// Monotone extension axiom E⁺_ψ (ψ must not be a variable; UsageError):
//   ψ ↠ p_ψ                    constant occurring positively,
//   p_ψ ↠ ψ                    constant occurring negatively,
//   (p_ψ0 ∘ p_ψ1) ↠ p_ψ        compound occurring positively,
//   p_ψ ↠ (p_ψ0 ∘ p_ψ1)        compound occurring negatively,
// with ↠ expanded to (a→b)∧1 and variables standing for themselves.
Formula extension_axiom_mono(const Formula& source, const OccurrenceRef& ref,
                             Polarity polarity, const ExtVarAllocation& alloc);

// φ′ = ∏_{ψ⊆φ} (E_ψ∧1)ⁿ → p_φ, factors in occurrence order over ALL
// occurrences. Requires n ≥ 1 (UsageError otherwise); defaults to n = 1.
// The output is always N3.
TranslationResult translate_equiv(const Formula& formula, int n = 1,
                                  Sharing sharing = Sharing::PerOccurrence);

// φ⁺ = ∏_{ψ⊆′φ} E⁺_ψ → p_φ, factors in occurrence order over non-variable
// occurrences. When φ is itself a variable the product is empty and the
// output is 1→φ. The output is always N3.
TranslationResult translate_mono(const Formula& formula,
                                 Sharing sharing = Sharing::PerOccurrence);

// The substitution σ(p_ψ) = ψ recomputed from the allocation.
Substitution inverse_sigma(const TranslationResult& result);

}  // namespace fle
