#include "fle/translate.hpp"

#include <set>
#include <unordered_map>

namespace fle {

ExtVarAllocation ExtVarAllocation::build(const Formula& source,
                                         OccurrenceFilter filter,
                                         Sharing sharing) {
  ExtVarAllocation alloc;
  alloc.sharing_ = sharing;
  alloc.filter_ = filter;

  std::vector<std::string> source_vars = source.variables();
  std::set<std::string> used(source_vars.begin(), source_vars.end());
  int counter = 0;
  auto next_fresh = [&]() {
    std::string name;
    do {
      name = "x" + std::to_string(counter++);
    } while (used.count(name));
    used.insert(name);
    return name;
  };

  // Disambiguation index per printed subformula, in allocation order.
  std::map<std::string, int> per_text;
  std::unordered_map<Formula, std::string, FormulaHash> shared;

  for (const OccurrenceRef& occ : occurrences(source, filter)) {
    Formula sub = subformula_at(source, occ);
    if (sharing == Sharing::PerFormula) {
      auto hit = shared.find(sub);
      if (hit != shared.end()) {
        alloc.mapping_.emplace(occ, hit->second);
        continue;
      }
    }
    std::string name = next_fresh();
    std::string text = print_formula(sub);
    int index = per_text[text]++;
    alloc.aliases_.emplace_back(
        name, "p_{" + text + "," + std::to_string(index) + "}");
    alloc.mapping_.emplace(occ, name);
    if (sharing == Sharing::PerFormula) shared.emplace(std::move(sub), std::move(name));
  }
  return alloc;
}

const std::string& ExtVarAllocation::name_at(const OccurrenceRef& ref) const {
  auto it = mapping_.find(ref);
  if (it == mapping_.end()) {
    throw UsageError("no extension variable allocated at occurrence '" +
                     ref.to_string() + "'");
  }
  return it->second;
}

Formula ExtVarAllocation::proxy(const Formula& source,
                                const OccurrenceRef& ref) const {
  Formula sub = subformula_at(source, ref);
  if (filter_ == OccurrenceFilter::NonVariable && sub.is_var()) return sub;
  return Formula::var(name_at(ref));
}

Formula extension_axiom_equiv(const Formula& source, const OccurrenceRef& ref,
                              const ExtVarAllocation& alloc) {
  Formula sub = subformula_at(source, ref);
  Formula p = Formula::var(alloc.name_at(ref));
  if (!sub.is_bin()) return mk_equiv(p, sub);
  Formula rhs = Formula::bin(sub.op(), alloc.proxy(source, ref.child(Step::Left)),
                             alloc.proxy(source, ref.child(Step::Right)));
  return mk_equiv(p, rhs);
}

Formula extension_axiom_mono(const Formula& source, const OccurrenceRef& ref,
                             Polarity polarity, const ExtVarAllocation& alloc) {
  Formula sub = subformula_at(source, ref);
  if (sub.is_var()) {
    throw UsageError(
        "monotone extension axioms are not defined for variable occurrences");
  }
  Formula p = Formula::var(alloc.name_at(ref));
  if (sub.is_const()) {
    return polarity == Polarity::Positive ? mk_sq_arrow(sub, p)
                                          : mk_sq_arrow(p, sub);
  }
  Formula inner =
      Formula::bin(sub.op(), alloc.proxy(source, ref.child(Step::Left)),
                   alloc.proxy(source, ref.child(Step::Right)));
  return polarity == Polarity::Positive ? mk_sq_arrow(inner, p)
                                        : mk_sq_arrow(p, inner);
}

namespace {

Substitution sigma_of(const Formula& source, const ExtVarAllocation& alloc) {
  Substitution sigma;
  for (const auto& [occ, name] : alloc.mapping()) {
    sigma.set(name, subformula_at(source, occ));
  }
  return sigma;
}

}  // namespace

TranslationResult translate_equiv(const Formula& formula, int n,
                                  Sharing sharing) {
  if (n < 1) throw UsageError("the Equiv translation requires n >= 1");
  ExtVarAllocation alloc =
      ExtVarAllocation::build(formula, OccurrenceFilter::All, sharing);
  std::vector<Formula> factors;
  for (const OccurrenceRef& occ : occurrences(formula, OccurrenceFilter::All)) {
    Formula e = extension_axiom_equiv(formula, occ, alloc);
    factors.push_back(mk_power(Formula::conj(std::move(e), Formula::one()), n));
  }
  Formula head = Formula::var(alloc.name_at(OccurrenceRef{}));
  Formula output = Formula::imp(mk_product(factors), std::move(head));
  Substitution sigma = sigma_of(formula, alloc);
  return {formula, std::move(output), std::move(alloc), std::move(sigma),
          TranslationMode::Equiv, n};
}

TranslationResult translate_mono(const Formula& formula, Sharing sharing) {
  ExtVarAllocation alloc =
      ExtVarAllocation::build(formula, OccurrenceFilter::NonVariable, sharing);
  PolarityMap polarity = annotate(formula);
  std::vector<Formula> factors;
  for (const OccurrenceRef& occ :
       occurrences(formula, OccurrenceFilter::NonVariable)) {
    factors.push_back(
        extension_axiom_mono(formula, occ, polarity.at(occ), alloc));
  }
  Formula head = alloc.proxy(formula, OccurrenceRef{});
  Formula output = Formula::imp(mk_product(factors), std::move(head));
  Substitution sigma = sigma_of(formula, alloc);
  return {formula, std::move(output), std::move(alloc), std::move(sigma),
          TranslationMode::Mono, 1};
}

Substitution inverse_sigma(const TranslationResult& result) {
  return sigma_of(result.source, result.allocation);
}

}  // namespace fle
