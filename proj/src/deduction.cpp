#include "fle/deduction.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace fle {

// ---------------------------------------------------------------------------
// Axiom base
// ---------------------------------------------------------------------------

AxiomBase AxiomBase::fle_default(LanguageProfile profile) {
  static const char* const kCore[] = {
      "p -> p",
      "(p -> q) -> ((q -> r) -> (p -> r))",
      "(p -> (q -> r)) -> (q -> (p -> r))",
      "p -> (q -> p * q)",
      "(p -> (q -> r)) -> (p * q -> r)",
      "(p * q -> r) -> (p -> (q -> r))",
      "p /\\ q -> p",
      "p /\\ q -> q",
      "(p -> q) /\\ (p -> r) -> (p -> q /\\ r)",
      "p -> p \\/ q",
      "q -> p \\/ q",
      "(p -> r) /\\ (q -> r) -> (p \\/ q -> r)",
      "1",
      "p -> (1 -> p)",
      "(1 -> p) -> p",
  };
  std::vector<Formula> schemata;
  for (const char* text : kCore) schemata.push_back(parse_formula(text));
  if (profile == LanguageProfile::WithBounds) {
    schemata.push_back(parse_formula("bot -> p", profile));
    schemata.push_back(parse_formula("p -> top", profile));
  }
  return AxiomBase("fle-hilbert", std::move(schemata));
}

bool match_schema(const Formula& schema, const Formula& formula,
                  Substitution* out) {
  std::map<std::string, Formula> binding;
  auto walk = [&](auto&& self, const Formula& s, const Formula& f) -> bool {
    switch (s.kind()) {
      case Formula::Kind::Var: {
        auto [it, inserted] = binding.emplace(s.var_name(), f);
        return inserted || it->second == f;
      }
      case Formula::Kind::Const:
        return f.kind() == Formula::Kind::Const &&
               f.const_kind() == s.const_kind();
      case Formula::Kind::Bin:
        return f.kind() == Formula::Kind::Bin && f.op() == s.op() &&
               self(self, s.left(), f.left()) &&
               self(self, s.right(), f.right());
    }
    return false;
  };
  if (!walk(walk, schema, formula)) return false;
  if (out) {
    for (const auto& [name, value] : binding) out->set(name, value);
  }
  return true;
}

bool AxiomBase::matches(const Formula& formula) const {
  return std::any_of(schemata_.begin(), schemata_.end(),
                     [&](const Formula& s) { return match_schema(s, formula); });
}

// ---------------------------------------------------------------------------
// Derivation files
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void parse_fail(std::size_t lineno, const std::string& what) {
  throw DeductionError("line " + std::to_string(lineno) + ": " + what);
}

bool valid_id(const std::string& id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

std::string trim(std::string_view s) {
  std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  std::size_t last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

Derivation Derivation::parse(std::string_view text, LanguageProfile profile) {
  Derivation d;
  std::map<std::string, int> index_of;
  std::istringstream lines{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;

    std::size_t colon = body.find(':');
    if (colon == std::string::npos) parse_fail(lineno, "missing ':' after step id");
    Step step;
    step.id = trim(body.substr(0, colon));
    if (!valid_id(step.id)) parse_fail(lineno, "bad step id '" + step.id + "'");
    if (index_of.count(step.id)) parse_fail(lineno, "duplicate step id '" + step.id + "'");

    std::string rest = trim(body.substr(colon + 1));
    std::istringstream toks(rest);
    std::string keyword;
    toks >> keyword;

    auto ref = [&](const std::string& target) {
      auto it = index_of.find(target);
      if (it == index_of.end()) {
        parse_fail(lineno, "reference to unknown step '" + target + "'");
      }
      return it->second;
    };

    if (keyword == "premise" || keyword == "axiom") {
      step.rule = keyword == "premise" ? Rule::Premise : Rule::Axiom;
      std::string formula_text = trim(rest.substr(keyword.size()));
      if (formula_text.empty()) parse_fail(lineno, keyword + " needs a formula");
      try {
        step.formula = parse_formula(formula_text, profile);
      } catch (const ParseError& e) {
        parse_fail(lineno, e.what());
      }
    } else if (keyword == "mp") {
      step.rule = Rule::Mp;
      std::string a, b, extra;
      toks >> a >> b;
      if (a.empty() || b.empty()) parse_fail(lineno, "mp needs two step ids");
      if (toks >> extra) parse_fail(lineno, "trailing input '" + extra + "'");
      step.left = ref(a);
      step.right = ref(b);
    } else if (keyword == "adj") {
      step.rule = Rule::Adj;
      std::string a, extra;
      toks >> a;
      if (a.empty()) parse_fail(lineno, "adj needs a step id");
      if (toks >> extra) parse_fail(lineno, "trailing input '" + extra + "'");
      step.left = ref(a);
    } else {
      parse_fail(lineno, "unknown rule '" + keyword + "'");
    }

    index_of[step.id] = static_cast<int>(d.steps_.size());
    d.steps_.push_back(std::move(step));
  }
  if (d.steps_.empty()) throw DeductionError("derivation file has no steps");
  return d;
}

const Derivation::Step& Derivation::root() const {
  if (steps_.empty()) throw DeductionError("empty derivation");
  return steps_.back();
}

// ---------------------------------------------------------------------------
// Checking and the local deduction theorem
// ---------------------------------------------------------------------------

CheckResult check(const Derivation& d, const std::vector<Formula>& gamma,
                  const AxiomBase& base) {
  using Step = Derivation::Step;
  std::vector<Formula> yields;
  yields.reserve(d.steps().size());
  auto fail = [&](const Step& step, std::string reason) {
    return CheckResult{false, std::nullopt, step.id, std::move(reason)};
  };
  for (const Step& step : d.steps()) {
    switch (step.rule) {
      case Derivation::Rule::Premise: {
        bool in_gamma = std::any_of(gamma.begin(), gamma.end(),
                                    [&](const Formula& g) { return g == *step.formula; });
        if (!in_gamma) {
          return fail(step, "premise '" + print_formula(*step.formula) +
                                "' is not among the hypotheses");
        }
        yields.push_back(*step.formula);
        break;
      }
      case Derivation::Rule::Axiom:
        if (!base.matches(*step.formula)) {
          return fail(step, "'" + print_formula(*step.formula) +
                                "' instantiates no axiom schema");
        }
        yields.push_back(*step.formula);
        break;
      case Derivation::Rule::Mp: {
        const Formula& minor = yields[step.left];
        const Formula& major = yields[step.right];
        if (!major.is_bin() || major.op() != BinOp::Imp) {
          return fail(step, "mp major premise '" + print_formula(major) +
                                "' is not an implication");
        }
        if (major.left() != minor) {
          return fail(step, "mp premises do not match: '" + print_formula(minor) +
                                "' vs '" + print_formula(major) + "'");
        }
        yields.push_back(major.right());
        break;
      }
      case Derivation::Rule::Adj:
        yields.push_back(Formula::conj(yields[step.left], Formula::one()));
        break;
    }
  }
  return CheckResult{true, yields.back(), {}, {}};
}

long long premise_use_count(const Derivation& d, const Formula& phi) {
  std::vector<long long> count;
  count.reserve(d.steps().size());
  auto add = [](long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) {
      throw DeductionError("premise-use count overflows");
    }
    return r;
  };
  for (const Derivation::Step& step : d.steps()) {
    switch (step.rule) {
      case Derivation::Rule::Premise:
        count.push_back(*step.formula == phi ? 1 : 0);
        break;
      case Derivation::Rule::Axiom:
        count.push_back(0);
        break;
      case Derivation::Rule::Mp:
        count.push_back(add(count[step.left], count[step.right]));
        break;
      case Derivation::Rule::Adj:
        count.push_back(count[step.left]);
        break;
    }
  }
  return count.back();
}

Formula deduction_transform(const Derivation& d,
                            const std::vector<Formula>& gamma,
                            const Formula& phi, const AxiomBase& base) {
  std::vector<Formula> extended = gamma;
  extended.push_back(phi);
  CheckResult r = check(d, extended, base);
  if (!r.ok) {
    throw DeductionError("derivation rejected at step '" + r.node_id +
                         "': " + r.reason);
  }
  long long n = premise_use_count(d, phi);
  // The use count follows the tree unfolding, so a compact DAG can denote an
  // exponent far too large to spell out as a product.
  constexpr long long kMaxExponent = 100'000;
  if (n > kMaxExponent) {
    throw BudgetError("deduction exponent " + std::to_string(n) +
                      " exceeds the materialization budget");
  }
  Formula factor = Formula::conj(phi, Formula::one());
  return Formula::imp(mk_power(factor, static_cast<int>(n)), *r.conclusion);
}

}  // namespace fle
