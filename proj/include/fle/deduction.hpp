#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fle/formula.hpp"

namespace fle {

// Axiom schemata with schematic variables (every variable of a schema is
// schematic). The default base is a transcription of the usual Hilbert-style
// presentation of FL_e; it is configuration rather than logic, and each
// schema is screened for soundness by the model battery in the test suite.
class AxiomBase {
public:
  AxiomBase(std::string source_tag, std::vector<Formula> schemata)
      : source_tag_(std::move(source_tag)), schemata_(std::move(schemata)) {}

  static AxiomBase fle_default(LanguageProfile profile = LanguageProfile::Core);

  const std::string& source_tag() const { return source_tag_; }
  const std::vector<Formula>& schemata() const { return schemata_; }

  // True when the formula is a substitution instance of some schema.
  bool matches(const Formula& formula) const;

private:
  std::string source_tag_;
  std::vector<Formula> schemata_;
};

// True when `formula` = σ(schema) for some substitution σ of the schema's
// variables; σ's entries are appended to `out` when non-null.
bool match_schema(const Formula& schema, const Formula& formula,
                  Substitution* out = nullptr);

// A Hilbert-style derivation over (mp) φ, φ→ψ / ψ and (adj) φ / φ∧1. The
// file encoding is a DAG (steps may be referenced more than once); the
// derivation it denotes is the tree unfolding, so premise-use counts follow
// tree multiplicity.
class Derivation {
public:
  enum class Rule : std::uint8_t { Premise, Axiom, Mp, Adj };

  struct Step {
    std::string id;
    Rule rule = Rule::Premise;
    std::optional<Formula> formula;  // Premise/Axiom payload
    int left = -1;   // Mp: derivation of χ; Adj: the single child
    int right = -1;  // Mp: derivation of χ→ψ
  };

  // Line format: `<id>: premise <formula>` | `<id>: axiom <formula>` |
  // `<id>: mp <id> <id>` | `<id>: adj <id>`. Ids match [A-Za-z0-9_]+ and may
  // only reference earlier lines; blank lines and lines starting with '#' are
  // skipped; the conclusion is the last step.
  static Derivation parse(std::string_view text,
                          LanguageProfile profile = LanguageProfile::Core);

  const std::vector<Step>& steps() const { return steps_; }
  const Step& root() const;  // DeductionError when empty

private:
  std::vector<Step> steps_;
};

struct CheckResult {
  bool ok = false;
  std::optional<Formula> conclusion;  // set when ok
  std::string node_id;                // first failing step when rejected
  std::string reason;
};

// Verifies every step against Γ and the axiom base in file order and reports
// the first failure: a premise outside Γ, an axiom matching no schema, or an
// (mp) application whose right child is not an implication of the left
// child's yield.
CheckResult check(const Derivation& d, const std::vector<Formula>& gamma,
                  const AxiomBase& base);

// Number of Premise leaves structurally equal to φ in the tree unfolding.
long long premise_use_count(const Derivation& d, const Formula& phi);

// Local deduction theorem, constructively: given check(d, Γ∪{φ}) = Ok(ψ),
// returns (φ∧1)ⁿ → ψ with n = premise_use_count(d, φ). DeductionError when
// the check rejects.
Formula deduction_transform(const Derivation& d,
                            const std::vector<Formula>& gamma,
                            const Formula& phi, const AxiomBase& base);

}  // namespace fle
