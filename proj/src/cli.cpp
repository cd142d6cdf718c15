#include "fle/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fle/algebra.hpp"
#include "fle/deduction.hpp"
#include "fle/hierarchy.hpp"
#include "fle/translate.hpp"

namespace fle {

namespace {

using nlohmann::json;

std::string read_source(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PathError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string hex_seed(std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(seed));
  return buf;
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(text, &used, 0);
    if (used != text.size()) throw UsageError("bad seed '" + text + "'");
    return v;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("bad seed '" + text + "'");
  }
}

LanguageProfile profile_of(const std::string& name) {
  if (name == "core") return LanguageProfile::Core;
  if (name == "bounds") return LanguageProfile::WithBounds;
  throw UsageError("unknown profile '" + name + "'");
}

const char* profile_name(LanguageProfile p) {
  return p == LanguageProfile::WithBounds ? "bounds" : "core";
}

// Shared --formula/--file plumbing: exactly one way to supply the input.
struct FormulaInput {
  std::string inline_text;
  std::string file;

  void attach(CLI::App* cmd) {
    cmd->add_option("formula", inline_text, "formula text");
    cmd->add_option("--file", file, "read the formula from a file ('-' = stdin)");
  }
  std::string text() const {
    if (!inline_text.empty() && !file.empty()) {
      throw UsageError("give the formula either inline or via --file, not both");
    }
    if (!inline_text.empty()) return inline_text;
    if (!file.empty()) return read_source(file);
    throw UsageError("missing formula (inline or --file)");
  }
};

void emit(std::ostream& out, json& report, bool timing,
          std::chrono::steady_clock::time_point started) {
  if (timing) {
    auto elapsed = std::chrono::steady_clock::now() - started;
    report["timing"] = {
        {"ms", std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()}};
  }
  out << report.dump(2) << "\n";
}

json valuation_json(const Valuation& v) {
  json j = json::object();
  for (const auto& [name, value] : v) j[name] = value;
  return j;
}

json finding_json(const BatteryFinding& f) {
  return json{{"label", f.label},
              {"model", {{"size", f.model_size}, {"index", f.model_index}}},
              {"policy", f.policy == CheckPolicy::Kind::Exhaustive ? "exhaustive"
                                                                   : "sample"},
              {"valuation", valuation_json(f.counterexample)}};
}

// The policy battery_check will select for a (rule, model) pair; recomputed
// here so reports can state it per model.
const char* policy_name(const RuleInstance& rule, const Pcrl& model,
                        const BatteryBudget& budget) {
  std::set<std::string> vars;
  for (const Formula& p : rule.premises) {
    auto pv = p.variables();
    vars.insert(pv.begin(), pv.end());
  }
  auto cv = rule.conclusion.variables();
  vars.insert(cv.begin(), cv.end());
  long long valuations = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    valuations *= model.size();
    if (valuations > budget.exhaustive_limit) return "sample";
  }
  return "exhaustive";
}

struct VerifyOptions {
  bool enabled = false;
  int max_size = 4;
  long long samples = 10'000;
  std::string seed_text = "0xF1E3";
};

int cmd_classify(const FormulaInput& input, const std::string& profile_text,
                 bool timing, std::ostream& out) {
  auto started = std::chrono::steady_clock::now();
  LanguageProfile profile = profile_of(profile_text);
  Formula f = parse_formula(input.text(), profile);
  HierarchyLevel level = classify(f);
  json report{{"command", "classify"},
              {"input", {{"formula", print_formula(f)}}},
              {"settings", {{"profile", profile_name(profile)}}},
              {"result", {{"pLevel", level.pLevel}, {"nLevel", level.nLevel}}}};
  emit(out, report, timing, started);
  return 0;
}

int cmd_translate(const FormulaInput& input, const std::string& mode_text,
                  int n, const std::string& share_text,
                  const std::string& profile_text, const VerifyOptions& verify,
                  bool timing, std::ostream& out, std::ostream& err) {
  auto started = std::chrono::steady_clock::now();
  LanguageProfile profile = profile_of(profile_text);
  Formula f = parse_formula(input.text(), profile);

  Sharing sharing;
  if (share_text == "occurrence") {
    sharing = Sharing::PerOccurrence;
  } else if (share_text == "formula") {
    sharing = Sharing::PerFormula;
  } else {
    throw UsageError("unknown sharing '" + share_text + "'");
  }

  TranslationResult result = [&] {
    if (mode_text == "mono") {
      if (n != 1) throw UsageError("--n applies to --mode equiv only");
      return translate_mono(f, sharing);
    }
    if (mode_text == "equiv") return translate_equiv(f, n, sharing);
    throw UsageError("unknown mode '" + mode_text + "'");
  }();

  json aliases = json::array();
  json sigma = json::array();
  for (const auto& [fresh, alias] : result.allocation.aliases()) {
    aliases.push_back({{"var", fresh}, {"alias", alias}});
    sigma.push_back(
        {{"var", fresh}, {"formula", print_formula(*result.sigma.find(fresh))}});
  }

  json report{
      {"command", "translate"},
      {"input", {{"formula", print_formula(f)}}},
      {"settings",
       {{"mode", mode_text},
        {"n", result.n},
        {"share", share_text},
        {"profile", profile_name(profile)}}},
      {"result",
       {{"output", print_formula(result.output)},
        {"nLevel", classify(result.output).nLevel},
        {"aliases", aliases},
        {"sigma", sigma}}}};

  int code = 0;
  if (verify.enabled) {
    BatteryBudget budget;
    budget.samples = verify.samples;
    budget.seed = parse_seed(verify.seed_text);
    ModelCatalog catalog = enumerate_pcrls(verify.max_size, profile);

    Formula forward = Formula::imp(substitute(result.sigma, result.output), f);
    Formula backward = Formula::imp(f, result.output);
    std::vector<BatteryItem> items{{"sigma(output) -> source", {{}, forward}},
                                   {"source -> output", {{}, backward}}};
    BatteryReport battery = battery_check(items, catalog, budget);

    json directions = json::object();
    for (std::size_t i = 0; i < items.size(); ++i) {
      json policies = json::array();
      for (const CatalogEntry& entry : catalog.entries()) {
        policies.push_back({{"size", entry.size},
                            {"index", entry.index},
                            {"policy", policy_name(items[i].rule, entry.algebra,
                                                   budget)}});
      }
      json findings = json::array();
      for (const BatteryFinding& finding : battery.findings) {
        if (finding.label == items[i].label) findings.push_back(finding_json(finding));
      }
      directions[items[i].label] = {{"valid", findings.empty()},
                                    {"policies", policies},
                                    {"findings", findings}};
    }
    report["settings"]["verify"] = {{"max_size", verify.max_size},
                                    {"samples", budget.samples},
                                    {"seed", hex_seed(budget.seed)},
                                    {"exhaustive_limit", budget.exhaustive_limit}};
    report["result"]["verify"] = {
        {"models", catalog.model_count()},
        {"directions", directions},
        {"verdict", battery.all_valid() ? "valid" : "counterexample"}};
    if (!battery.all_valid()) {
      err << "verification found a counterexample\n";
      code = 2;
    }
  }
  emit(out, report, timing, started);
  return code;
}

int cmd_models_enumerate(int max_size, const std::string& out_path,
                         const std::string& strategy_text, bool no_prune,
                         const std::string& profile_text, bool timing,
                         std::ostream& out) {
  auto started = std::chrono::steady_clock::now();
  LanguageProfile profile = profile_of(profile_text);
  EnumerationStrategy strategy;
  if (strategy_text == "order") {
    strategy = EnumerationStrategy::OrderFirst;
  } else if (strategy_text == "monoid") {
    strategy = EnumerationStrategy::MonoidFirst;
  } else {
    throw UsageError("unknown strategy '" + strategy_text + "'");
  }
  ModelCatalog catalog = enumerate_pcrls(max_size, profile, !no_prune, strategy);

  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw PathError("cannot write '" + out_path + "'");
  save_catalog(catalog, file);
  file.close();
  if (!file) throw PathError("failed writing '" + out_path + "'");

  json counts = json::object();
  for (const auto& [size, count] : catalog.counts_by_size()) {
    counts[std::to_string(size)] = count;
  }
  json report{{"command", "models.enumerate"},
              {"settings",
               {{"max_size", max_size},
                {"strategy", strategy_text},
                {"prune_isomorphic", !no_prune},
                {"profile", profile_name(profile)},
                {"out", out_path}}},
              {"result",
               {{"models", catalog.model_count()}, {"counts_by_size", counts}}}};
  emit(out, report, timing, started);
  return 0;
}

int cmd_models_check(const std::string& formula_text,
                     const std::string& rule_text,
                     const std::string& catalog_path, int max_size,
                     long long samples, const std::string& seed_text,
                     const std::string& profile_text, bool timing,
                     std::ostream& out, std::ostream& err) {
  auto started = std::chrono::steady_clock::now();
  LanguageProfile profile = profile_of(profile_text);
  if (formula_text.empty() == rule_text.empty()) {
    throw UsageError("give exactly one of a formula or --rule");
  }
  std::string text = formula_text.empty() ? rule_text : formula_text;
  RuleInstance rule = parse_rule(text, profile);

  ModelCatalog catalog;
  if (catalog_path.empty()) {
    catalog = enumerate_pcrls(max_size, profile);
  } else {
    std::ifstream file(catalog_path, std::ios::binary);
    if (!file) throw PathError("cannot open '" + catalog_path + "'");
    catalog = load_catalog(file, profile);
  }

  BatteryBudget budget;
  budget.samples = samples;
  budget.seed = parse_seed(seed_text);
  std::string label = rule.premises.empty() ? "formula" : "rule";
  BatteryReport battery = battery_check({{label, rule}}, catalog, budget);

  json premises = json::array();
  for (const Formula& p : rule.premises) premises.push_back(print_formula(p));
  json findings = json::array();
  for (const BatteryFinding& finding : battery.findings) {
    findings.push_back(finding_json(finding));
  }
  json report{
      {"command", "models.check"},
      {"input",
       {{"premises", premises}, {"conclusion", print_formula(rule.conclusion)}}},
      {"settings",
       {{"catalog", catalog_path.empty() ? "builtin" : catalog_path},
        {"max_size", max_size},
        {"samples", budget.samples},
        {"seed", hex_seed(budget.seed)},
        {"exhaustive_limit", budget.exhaustive_limit},
        {"profile", profile_name(profile)}}},
      {"result",
       {{"models", catalog.model_count()},
        {"checks", battery.checks},
        {"sampled_checks", battery.sampled_checks},
        {"valid", battery.all_valid()},
        {"findings", findings}}}};
  emit(out, report, timing, started);
  if (!battery.all_valid()) {
    err << "counterexample found\n";
    return 2;
  }
  return 0;
}

int cmd_deduce(const std::string& file, const std::string& premise_text,
               const std::string& profile_text, bool timing, std::ostream& out,
               std::ostream& err) {
  auto started = std::chrono::steady_clock::now();
  LanguageProfile profile = profile_of(profile_text);
  Derivation derivation = Derivation::parse(read_source(file), profile);
  AxiomBase base = AxiomBase::fle_default(profile);

  // Γ is the set of premise formulas used by the file, minus the --premise
  // formula being discharged.
  std::optional<Formula> phi;
  if (!premise_text.empty()) phi = parse_formula(premise_text, profile);
  std::vector<Formula> gamma;
  for (const Derivation::Step& step : derivation.steps()) {
    if (step.rule != Derivation::Rule::Premise) continue;
    if (phi && *step.formula == *phi) continue;
    bool seen = std::any_of(gamma.begin(), gamma.end(),
                            [&](const Formula& g) { return g == *step.formula; });
    if (!seen) gamma.push_back(*step.formula);
  }

  json gamma_json = json::array();
  for (const Formula& g : gamma) gamma_json.push_back(print_formula(g));
  json report{{"command", "deduce"},
              {"input", {{"file", file}}},
              {"settings",
               {{"profile", profile_name(profile)},
                {"axiom_base", base.source_tag()}}},
              {"result", {{"gamma", gamma_json}}}};
  if (phi) report["input"]["premise"] = print_formula(*phi);

  std::vector<Formula> hypotheses = gamma;
  if (phi) hypotheses.push_back(*phi);
  CheckResult checked = check(derivation, hypotheses, base);
  if (!checked.ok) {
    report["result"]["ok"] = false;
    report["result"]["node"] = checked.node_id;
    report["result"]["reason"] = checked.reason;
    emit(out, report, timing, started);
    err << "derivation rejected at step '" << checked.node_id
        << "': " << checked.reason << "\n";
    return 2;
  }
  report["result"]["ok"] = true;
  report["result"]["conclusion"] = print_formula(*checked.conclusion);
  if (phi) {
    Formula output = deduction_transform(derivation, gamma, *phi, base);
    report["result"]["n"] = premise_use_count(derivation, *phi);
    report["result"]["output"] = print_formula(output);
  }
  emit(out, report, timing, started);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Substructural formula toolkit: hierarchy classification, "
               "N3 extension-variable translations, finite PCRL batteries "
               "and Hilbert derivations"};
  app.require_subcommand(1);

  bool timing = false;
  app.add_flag("--timing", timing, "append wall-clock timing to the report");

  std::string profile_text = "core";
  app.add_option("--profile", profile_text, "language profile: core | bounds")
      ->capture_default_str();

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "substructural hierarchy level");
  FormulaInput classify_input;
  classify_input.attach(classify_cmd);

  // translate
  auto* translate_cmd =
      app.add_subcommand("translate", "extension-variable N3 translation");
  FormulaInput translate_input;
  translate_input.attach(translate_cmd);
  std::string mode_text;
  translate_cmd->add_option("--mode", mode_text, "mono | equiv")->required();
  int n = 1;
  translate_cmd->add_option("--n", n, "factor exponent (equiv mode)")
      ->capture_default_str();
  std::string share_text = "occurrence";
  translate_cmd->add_option("--share", share_text, "occurrence | formula")
      ->capture_default_str();
  VerifyOptions verify;
  translate_cmd->add_flag("--verify", verify.enabled,
                          "check both translation directions on a model catalog");
  translate_cmd->add_option("--max-size", verify.max_size, "catalog carrier ceiling")
      ->capture_default_str();
  translate_cmd->add_option("--samples", verify.samples, "samples per sampled check")
      ->capture_default_str();
  translate_cmd->add_option("--seed", verify.seed_text, "sampling seed")
      ->capture_default_str();

  // models
  auto* models_cmd = app.add_subcommand("models", "finite PCRL catalogs");
  models_cmd->require_subcommand(1);

  auto* enumerate_cmd =
      models_cmd->add_subcommand("enumerate", "write a catalog file");
  int enum_max_size = 4;
  enumerate_cmd->add_option("--max-size", enum_max_size, "largest carrier size")
      ->capture_default_str();
  std::string out_path;
  enumerate_cmd->add_option("--out", out_path, "catalog output path")->required();
  std::string strategy_text = "order";
  enumerate_cmd->add_option("--strategy", strategy_text, "order | monoid")
      ->capture_default_str();
  bool no_prune = false;
  enumerate_cmd->add_flag("--no-prune", no_prune,
                          "keep isomorphic copies (lowers the size ceiling)");

  auto* check_cmd = models_cmd->add_subcommand("check", "battery-check a rule");
  std::string check_formula;
  check_cmd->add_option("formula", check_formula, "formula to check");
  std::string rule_text;
  check_cmd->add_option("--rule", rule_text,
                        "rule 'premise, ... / conclusion' to check");
  std::string catalog_path;
  check_cmd->add_option("--catalog", catalog_path, "catalog file (default: built-in)");
  int check_max_size = 4;
  check_cmd->add_option("--max-size", check_max_size,
                        "built-in catalog carrier ceiling")
      ->capture_default_str();
  long long check_samples = 10'000;
  check_cmd->add_option("--samples", check_samples, "samples per sampled check")
      ->capture_default_str();
  std::string check_seed = "0xF1E3";
  check_cmd->add_option("--seed", check_seed, "sampling seed")->capture_default_str();

  // deduce
  auto* deduce_cmd = app.add_subcommand("deduce", "check a Hilbert derivation");
  std::string deduce_file;
  deduce_cmd->add_option("file", deduce_file, "derivation file ('-' = stdin)")
      ->required();
  std::string premise_text;
  deduce_cmd->add_option("--premise", premise_text,
                         "premise to discharge via the local deduction theorem");

  // Global flags (--timing, --profile) may appear after the subcommand.
  for (CLI::App* sub : {classify_cmd, translate_cmd, models_cmd, enumerate_cmd,
                        check_cmd, deduce_cmd}) {
    sub->fallthrough();
  }

  std::vector<const char*> argv;
  argv.push_back("fle");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*classify_cmd) {
      return cmd_classify(classify_input, profile_text, timing, out);
    }
    if (*translate_cmd) {
      return cmd_translate(translate_input, mode_text, n, share_text,
                           profile_text, verify, timing, out, err);
    }
    if (*enumerate_cmd) {
      return cmd_models_enumerate(enum_max_size, out_path, strategy_text,
                                  no_prune, profile_text, timing, out);
    }
    if (*check_cmd) {
      return cmd_models_check(check_formula, rule_text, catalog_path,
                              check_max_size, check_samples, check_seed,
                              profile_text, timing, out, err);
    }
    if (*deduce_cmd) {
      return cmd_deduce(deduce_file, premise_text, profile_text, timing, out, err);
    }
    err << "error: no command\n";
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const BudgetError& e) {  // includes oracle-bound and ceiling
    err << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace fle
