// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Tolerances and budgets are pinned as constants below.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fle/algebra.hpp"
#include "fle/cli.hpp"
#include "fle/deduction.hpp"
#include "fle/hierarchy.hpp"
#include "fle/translate.hpp"
#include "support.hpp"

using namespace fle;

namespace {

// Pinned tolerances.
constexpr double kGoldenSeconds = 1.0;        // criterion 1
constexpr double kOracleSeconds = 60.0;       // criterion 3
constexpr double kSoundnessSeconds = 600.0;   // criterion 5
constexpr int kOracleConnectives = 4;         // criterion 3 corpus bound
constexpr int kSoundnessCorpusSize = 500;     // criteria 4, 5
constexpr int kSoundnessMaxDepth = 5;         // criteria 4, 5
constexpr int kNormalFormCount = 200;         // criterion 8
constexpr int kRoundTripCount = 10'000;       // criterion 10
constexpr int kCatalogMaxSize = 4;            // criteria 4, 5, 6, 8, 9
constexpr int kOracleKMax = 8;                // ≥ levels reachable by corpus

int failures = 0;

void report(int number, const std::string& label, bool pass, double seconds,
            const std::string& detail) {
  std::printf("%s %d: %s (%.2fs)%s%s\n", pass ? "PASS" : "FAIL", number,
              label.c_str(), seconds, detail.empty() ? "" : " — ",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <typename Body>
void criterion(int number, const std::string& label, Body&& body) {
  auto started = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  report(number, label, pass, seconds, detail);
}

Formula cintula() { return parse_formula(testsupport::kCintulaText); }

// The corpus of named axioms from the collapse discussion: left weakening,
// linearity, excluded middle, right weakening, the KP axiom, and the running
// example.
std::vector<Formula> classification_corpus() {
  return {
      parse_formula("p -> (q -> p)"),
      parse_formula("(p -> q) \\/ (q -> p)"),
      parse_formula("p \\/ (p -> 0)"),
      parse_formula("0 -> p"),
      parse_formula("((p -> 0) -> q \\/ r) -> ((p -> 0) -> q) \\/ ((p -> 0) -> r)"),
      cintula(),
  };
}

std::vector<Formula> soundness_corpus() {
  std::vector<Formula> corpus = classification_corpus();
  SplitMix64 gen(mix_seed(kDefaultSeed, 401));
  for (int i = 0; i < kSoundnessCorpusSize; ++i) {
    corpus.push_back(testsupport::random_formula(gen, kSoundnessMaxDepth));
  }
  return corpus;
}

const ModelCatalog& full_catalog() {
  static const ModelCatalog catalog = enumerate_pcrls(kCatalogMaxSize);
  return catalog;
}

bool criterion1(std::string& detail) {
  Formula source = cintula();
  TranslationResult mono = translate_mono(source);
  TranslationResult equiv = translate_equiv(source, 1);

  std::vector<Formula> mono_factors, equiv_factors;
  testsupport::flatten_product(mono.output.left(), mono_factors);
  testsupport::flatten_product(equiv.output.left(), equiv_factors);
  if (mono_factors.size() != 13) {
    detail = "expected 13 mono factors, got " +
             std::to_string(mono_factors.size());
    return false;
  }
  if (equiv_factors.size() != 19) {
    detail = "expected 19 equiv factors, got " +
             std::to_string(equiv_factors.size());
    return false;
  }

  Formula mono_golden =
      parse_formula(testsupport::read_fixture("cintula_mono.golden"));
  Formula equiv_golden =
      parse_formula(testsupport::read_fixture("cintula_equiv.golden"));
  auto protected_vars = testsupport::variable_set(source);
  if (!testsupport::alpha_equivalent_translation(mono.output, mono_golden,
                                                 protected_vars, true)) {
    detail = "mono output is not alpha-equivalent to the published form";
    return false;
  }
  if (!testsupport::alpha_equivalent_translation(equiv.output, equiv_golden,
                                                 protected_vars, false)) {
    detail = "equiv output is not alpha-equivalent to the recorded golden form";
    return false;
  }
  return true;
}

bool criterion2(std::string& detail) {
  auto expect = [&](const char* text, int pLevel, int nLevel) {
    HierarchyLevel level = classify(parse_formula(text));
    if (level.pLevel != pLevel || level.nLevel != nLevel) {
      detail += std::string(text) + " classified (" +
                std::to_string(level.pLevel) + "," +
                std::to_string(level.nLevel) + "); ";
      return false;
    }
    return true;
  };
  bool ok = true;
  ok &= expect(testsupport::kCintulaText, 5, 4);
  ok &= expect("p -> (q -> p)", 2, 1);
  ok &= expect("(p -> q) \\/ (q -> p)", 2, 3);
  ok &= expect("p \\/ (p -> 0)", 2, 3);
  ok &= expect("0 -> p", 3, 2);
  for (const Formula& f : classification_corpus()) {
    for (const Formula& translated :
         {translate_mono(f).output, translate_equiv(f).output}) {
      int nLevel = classify(translated).nLevel;
      if (nLevel > 3) {
        detail += "translation left N3 (nLevel " + std::to_string(nLevel) +
                  ") for " + print_formula(f) + "; ";
        ok = false;
      }
    }
  }
  return ok;
}

bool criterion3(std::string& detail) {
  const std::vector<Formula> leaves{Formula::var("p"), Formula::var("q"),
                                    Formula::zero(), Formula::one()};
  const std::vector<BinOp> ops{BinOp::Imp, BinOp::Fuse, BinOp::And, BinOp::Or};

  long long mismatches = 0;
  long long total = 0;
  auto check_one = [&](const Formula& f) {
    ++total;
    if (!(classify(f) == classify_oracle(f, kOracleKMax))) {
      ++mismatches;
      if (mismatches == 1) detail = "first mismatch: " + print_formula(f);
    }
  };

  // tiers[k] holds every formula with exactly k connectives; the top tier is
  // streamed instead of stored.
  std::vector<std::vector<Formula>> tiers(kOracleConnectives);
  tiers[0] = leaves;
  for (const Formula& f : tiers[0]) check_one(f);
  for (int k = 1; k < kOracleConnectives; ++k) {
    for (int i = 0; i + 1 <= k; ++i) {
      int j = k - 1 - i;
      for (const Formula& a : tiers[i]) {
        for (const Formula& b : tiers[j]) {
          for (BinOp op : ops) {
            Formula f = Formula::bin(op, a, b);
            check_one(f);
            tiers[k].push_back(std::move(f));
          }
        }
      }
    }
  }
  for (int i = 0; i + 1 <= kOracleConnectives; ++i) {
    int j = kOracleConnectives - 1 - i;
    for (const Formula& a : tiers[i]) {
      for (const Formula& b : tiers[j]) {
        for (BinOp op : ops) check_one(Formula::bin(op, a, b));
      }
    }
  }

  // Level-quotient closure through depth 4: both classifiers are
  // compositional (a compound's least levels are determined by its
  // children's least levels), so checking one representative per reachable
  // (child levels, connective) combination covers every deeper formula.
  std::map<std::pair<int, int>, Formula> reps{
      {{0, 0}, Formula::var("p")},
      {{1, 2}, Formula::one()},
      {{2, 1}, Formula::zero()},
  };
  long long quotient_checks = 0;
  for (int depth = 1; depth <= 4; ++depth) {
    std::map<std::pair<int, int>, Formula> next = reps;
    for (const auto& left : reps) {
      for (const auto& right : reps) {
        for (BinOp op : ops) {
          Formula f = Formula::bin(op, left.second, right.second);
          HierarchyLevel closed = classify(f);
          ++quotient_checks;
          if (!(closed == classify_oracle(f, 16))) {
            ++mismatches;
            if (detail.empty()) detail = "quotient mismatch: " + print_formula(f);
          }
          next.emplace(std::make_pair(closed.pLevel, closed.nLevel), f);
        }
      }
    }
    reps = std::move(next);
  }

  if (mismatches != 0) {
    detail = std::to_string(mismatches) + " mismatches; " + detail;
    return false;
  }
  detail = std::to_string(total) + " formulas + " +
           std::to_string(quotient_checks) + " quotient representatives";
  return true;
}

bool criterion4(std::string& detail) {
  long long counterexamples = 0;
  for (const Formula& f : soundness_corpus()) {
    for (const TranslationResult& result :
         {translate_mono(f), translate_equiv(f, 1)}) {
      Formula claim = Formula::imp(substitute(result.sigma, result.output), f);
      for (const CatalogEntry& entry : full_catalog().entries()) {
        ValidityResult r =
            is_valid(entry.algebra, claim, CheckPolicy::exhaustive());
        if (!r.valid) {
          ++counterexamples;
          if (counterexamples == 1) {
            detail = "sigma direction fails on " + print_formula(f);
          }
        }
      }
    }
  }
  if (counterexamples != 0) {
    detail = std::to_string(counterexamples) + " counterexamples; " + detail;
    return false;
  }
  return true;
}

bool criterion5(std::string& detail) {
  long long findings = 0;
  long long sampled = 0;
  for (const Formula& f : soundness_corpus()) {
    std::vector<BatteryItem> items{
        {"mono", {{}, Formula::imp(f, translate_mono(f).output)}},
        {"equiv", {{}, Formula::imp(f, translate_equiv(f, 1).output)}},
    };
    BatteryReport report = battery_check(items, full_catalog());
    sampled += report.sampled_checks;
    if (!report.findings.empty()) {
      findings += static_cast<long long>(report.findings.size());
      if (detail.empty()) {
        detail = "direction (18) fails on " + print_formula(f) + " [" +
                 report.findings.front().label + "]";
      }
    }
  }
  if (findings != 0) {
    detail = std::to_string(findings) + " counterexamples; " + detail;
    return false;
  }
  detail = "sampled pairs: " + std::to_string(sampled);
  return true;
}

bool criterion6(std::string& detail) {
  const std::vector<BatteryItem> items{
      {"sq-arrow refl", parse_rule("(a -> a) /\\ 1")},
      {"sq-arrow transitivity",
       parse_rule("((a -> b) /\\ 1) * ((b -> c) /\\ 1) -> ((a -> c) /\\ 1)")},
      {"sq-arrow imp congruence",
       parse_rule("((a' -> a) /\\ 1) * ((b -> b') /\\ 1) -> "
                  "(((a -> b) -> (a' -> b')) /\\ 1)")},
      {"sq-arrow fuse congruence", parse_rule("((a -> a') /\\ 1) * ((b -> b') /\\ 1) -> "
                               "((a * b -> a' * b') /\\ 1)")},
      {"sq-arrow meet congruence", parse_rule("((a -> a') /\\ 1) * ((b -> b') /\\ 1) -> "
                              "((a /\\ b -> a' /\\ b') /\\ 1)")},
      {"sq-arrow join congruence", parse_rule("((a -> a') /\\ 1) * ((b -> b') /\\ 1) -> "
                             "((a \\/ b -> a' \\/ b') /\\ 1)")},
      {"equi refl", parse_rule("a <-> a")},
      {"equi euclid", parse_rule("a <-> b, a <-> c / b <-> c")},
      {"equi detach", parse_rule("a, a <-> b / b")},
      {"equi imp congruence", parse_rule("a <-> a', b <-> b' / (a -> b) <-> (a' -> b')")},
      {"equi fuse congruence", parse_rule("a <-> a', b <-> b' / a * b <-> a' * b'")},
      {"equi meet congruence", parse_rule("a <-> a', b <-> b' / a /\\ b <-> a' /\\ b'")},
      {"equi join congruence", parse_rule("a <-> a', b <-> b' / a \\/ b <-> a' \\/ b'")},
      {"mp", parse_rule("a, a -> b / b")},
      {"adj", parse_rule("a / a /\\ 1")},
  };
  BatteryReport report = battery_check(items, full_catalog());
  if (report.sampled_checks != 0) {
    detail = "expected every pair to run exhaustively";
    return false;
  }
  if (!report.findings.empty()) {
    detail = std::to_string(report.findings.size()) +
             " counterexamples; first on '" + report.findings.front().label +
             "' (size " + std::to_string(report.findings.front().model_size) +
             ")";
    return false;
  }
  detail = std::to_string(report.checks) + " exhaustive pairs";
  return true;
}

bool criterion7(std::string& detail) {
  ModelCatalog order =
      enumerate_pcrls(3, LanguageProfile::Core, true,
                      EnumerationStrategy::OrderFirst);
  ModelCatalog monoid =
      enumerate_pcrls(3, LanguageProfile::Core, true,
                      EnumerationStrategy::MonoidFirst);
  std::map<int, int> expected{{1, 1}, {2, 2}, {3, 9}};
  if (order.counts_by_size() != expected) {
    detail = "order-first counts deviate from 1/2/9";
    return false;
  }
  if (monoid.counts_by_size() != expected) {
    detail = "monoid-first counts deviate from 1/2/9";
    return false;
  }
  std::ostringstream a, b;
  save_catalog(order, a);
  save_catalog(monoid, b);
  if (a.str() != b.str()) {
    detail = "strategies emit different catalogs";
    return false;
  }
  // Residuation assertion, every triple of every emitted algebra.
  for (const CatalogEntry& entry : full_catalog().entries()) {
    const Pcrl& m = entry.algebra;
    for (int x = 0; x < m.size(); ++x) {
      for (int y = 0; y < m.size(); ++y) {
        for (int z = 0; z < m.size(); ++z) {
          if (m.leq(x, m.imp(y, z)) != m.leq(m.fuse(x, y), z)) {
            detail = "residuation fails at size " + std::to_string(m.size());
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool criterion8(std::string& detail) {
  SplitMix64 gen(mix_seed(kDefaultSeed, 801));
  int accepted = 0;
  int budget_skips = 0;
  while (accepted < kNormalFormCount) {
    Formula f = testsupport::random_formula(gen, 4);
    int k = classify(f).nLevel;
    if (k < 1) k = 1;
    NNormalForm nf;
    try {
      nf = normalize_n(f, k);
    } catch (const BudgetError&) {
      ++budget_skips;
      continue;
    }
    ++accepted;
    if (!matches_shape(nf, k)) {
      detail = "shape violation for " + print_formula(f);
      return false;
    }
    Formula back = reassemble(nf);
    for (const CatalogEntry& entry : full_catalog().entries()) {
      for (const Formula& dir :
           {Formula::imp(f, back), Formula::imp(back, f)}) {
        if (!is_valid(entry.algebra, dir, CheckPolicy::exhaustive()).valid) {
          detail = "equivalence fails for " + print_formula(f) + " at size " +
                   std::to_string(entry.size);
          return false;
        }
      }
    }
  }
  detail = std::to_string(accepted) + " formulas, " +
           std::to_string(budget_skips) + " budget skips";
  return true;
}

bool criterion9(std::string& detail) {
  struct Case {
    const char* name;
    long long n;
    const char* conclusion;
    std::vector<Formula> gamma;
  };
  const std::vector<Case> cases{
      {"d01_single_premise", 1, "a", {}},
      {"d02_unused_premise", 0, "1", {}},
      {"d03_mp_once", 1, "1 -> a", {}},
      {"d04_adj", 1, "a /\\ 1", {}},
      {"d05_double_use", 2, "a * a", {}},
      {"d06_dag_sharing", 2, "a * a", {}},
      {"d07_side_premise", 1, "a * b", {Formula::var("b")}},
      {"d08_triple_use", 3, "a * (a * a)", {}},
      {"d09_axiom_only", 0, "(a -> b) -> ((b -> c) -> (a -> c))", {}},
      {"d10_adj_chain", 1, "(a /\\ 1) /\\ 1", {}},
      {"d11_unused_with_gamma", 0, "b /\\ 1", {Formula::var("b")}},
      {"d12_quadruple_dag", 4, "a * a * (a * a)", {}},
  };
  const AxiomBase base = AxiomBase::fle_default();
  const Formula a = Formula::var("a");
  for (const Case& c : cases) {
    Derivation d = Derivation::parse(
        testsupport::read_fixture(std::string("derivations/") + c.name + ".txt"));
    long long n = premise_use_count(d, a);
    if (n != c.n) {
      detail = std::string(c.name) + ": premise-use count " +
               std::to_string(n) + ", expected " + std::to_string(c.n);
      return false;
    }
    Formula transformed = deduction_transform(d, c.gamma, a, base);
    Formula expected =
        Formula::imp(mk_power(Formula::conj(a, Formula::one()),
                              static_cast<int>(c.n)),
                     parse_formula(c.conclusion));
    if (transformed != expected) {
      detail = std::string(c.name) + ": transform shape mismatch";
      return false;
    }
    for (const CatalogEntry& entry : full_catalog().entries()) {
      if (!is_rule_valid(entry.algebra, c.gamma, transformed,
                         CheckPolicy::exhaustive())
               .valid) {
        detail = std::string(c.name) + ": invalid on a size-" +
                 std::to_string(entry.size) + " model";
        return false;
      }
    }
  }
  detail = std::to_string(cases.size()) + " fixtures";
  return true;
}

bool criterion10(std::string& detail) {
  SplitMix64 gen(mix_seed(kDefaultSeed, 1001));
  for (int i = 0; i < kRoundTripCount; ++i) {
    Formula f = testsupport::random_formula(gen, 5);
    Formula back = parse_formula(print_formula(f));
    if (!(back == f)) {
      detail = "round-trip mismatch: " + print_formula(f);
      return false;
    }
  }

  const std::vector<std::vector<std::string>> invocations{
      {"translate", testsupport::kCintulaText, "--mode", "mono", "--verify",
       "--max-size", "3", "--samples", "1000", "--seed", "0xF1E3"},
      {"models", "check", "p \\/ (p -> 0)", "--max-size", "3", "--seed",
       "0xF1E3"},
      {"deduce", testsupport::fixture_path("derivations/d12_quadruple_dag.txt"),
       "--premise", "a"},
  };
  for (const auto& args : invocations) {
    std::ostringstream out1, err1, out2, err2;
    int code1 = run_cli(args, out1, err1);
    int code2 = run_cli(args, out2, err2);
    if (code1 != code2 || out1.str() != out2.str() || err1.str() != err2.str()) {
      detail = "unstable report for '" + args.front() + "'";
      return false;
    }
  }
  detail = std::to_string(kRoundTripCount) + " round-trips";
  return true;
}

}  // namespace

int main() {
  criterion(1, "Cintula golden translations", [](std::string& detail) {
    auto started = std::chrono::steady_clock::now();
    if (!criterion1(detail)) return false;
    double seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - started)
                         .count();
    if (seconds >= kGoldenSeconds) {
      detail = "runtime " + std::to_string(seconds) + "s exceeds budget";
      return false;
    }
    return true;
  });
  criterion(2, "classification corpus", criterion2);
  criterion(3, "classify agrees with the fixpoint oracle",
            [](std::string& detail) {
              auto started = std::chrono::steady_clock::now();
              if (!criterion3(detail)) return false;
              double seconds =
                  std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - started)
                      .count();
              if (seconds >= kOracleSeconds) {
                detail = "runtime " + std::to_string(seconds) +
                         "s exceeds budget";
                return false;
              }
              return true;
            });
  criterion(4, "translation soundness, sigma direction", criterion4);
  criterion(5, "translation soundness, forward direction",
            [](std::string& detail) {
              auto started = std::chrono::steady_clock::now();
              if (!criterion5(detail)) return false;
              double seconds =
                  std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - started)
                      .count();
              if (seconds >= kSoundnessSeconds) {
                detail = "runtime " + std::to_string(seconds) +
                         "s exceeds budget";
                return false;
              }
              return true;
            });
  criterion(6, "schema battery", criterion6);
  criterion(7, "enumeration cross-check", criterion7);
  criterion(8, "normal-form shape and equivalence", criterion8);
  criterion(9, "deduction fixtures", criterion9);
  criterion(10, "round-trip and report stability", criterion10);

  if (failures == 0) {
    std::printf("all 10 criteria passed\n");
  } else {
    std::printf("%d criteria failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
