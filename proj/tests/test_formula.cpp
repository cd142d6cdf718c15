#include <doctest.h>

#include "fle/formula.hpp"
#include "support.hpp"

using namespace fle;

TEST_CASE("parse respects associativity and precedence") {
  Formula f = parse_formula("p -> q -> p");
  REQUIRE(f.op() == BinOp::Imp);
  CHECK(f.left() == Formula::var("p"));
  CHECK(f.right() == Formula::imp(Formula::var("q"), Formula::var("p")));

  Formula g = parse_formula("p * q \\/ r");
  CHECK(g == Formula::disj(Formula::fuse(Formula::var("p"), Formula::var("q")),
                           Formula::var("r")));

  // Tightest-to-weakest: * > /\ > \/ > ->.
  Formula h = parse_formula("a * b /\\ c \\/ d -> e");
  REQUIRE(h.op() == BinOp::Imp);
  REQUIRE(h.left().op() == BinOp::Or);
  REQUIRE(h.left().left().op() == BinOp::And);
  CHECK(h.left().left().left().op() == BinOp::Fuse);

  // Left-associative chains.
  CHECK(parse_formula("a * b * c") ==
        Formula::fuse(Formula::fuse(Formula::var("a"), Formula::var("b")),
                      Formula::var("c")));
  CHECK(parse_formula("a /\\ b /\\ c").left().op() == BinOp::And);
  CHECK(parse_formula("a \\/ b \\/ c").left().op() == BinOp::Or);
}

TEST_CASE("parse handles constants, identifiers and sugar") {
  CHECK(parse_formula("0") == Formula::zero());
  CHECK(parse_formula("1") == Formula::one());
  CHECK(parse_formula("x_1'") == Formula::var("x_1'"));
  CHECK(parse_formula("p <-> q") ==
        mk_equiv(Formula::var("p"), Formula::var("q")));

  Formula cintula = parse_formula(testsupport::kCintulaText);
  CHECK(cintula.node_count() == 19);
  CHECK(cintula.depth() == 5);
  CHECK(cintula.variables() == std::vector<std::string>{"q", "r"});
}

TEST_CASE("parse reports positions and rejects out-of-profile constants") {
  CHECK_THROWS_AS(parse_formula("p ->"), ParseError);
  CHECK_THROWS_AS(parse_formula("(p -> q"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("p q"), ParseError);
  CHECK_THROWS_AS(parse_formula("p ? q"), ParseError);
  try {
    parse_formula("p -> $");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }

  CHECK_THROWS_AS(parse_formula("bot"), ParseError);
  CHECK_THROWS_AS(parse_formula("p -> top"), ParseError);
  CHECK(parse_formula("bot", LanguageProfile::WithBounds) == Formula::bot());
  CHECK(parse_formula("top", LanguageProfile::WithBounds) == Formula::top());

  CHECK_THROWS_AS(check_profile(Formula::bot(), LanguageProfile::Core),
                  ProfileError);
  CHECK_NOTHROW(check_profile(Formula::bot(), LanguageProfile::WithBounds));
}

TEST_CASE("print emits minimal parentheses and inverts parse") {
  CHECK(print_formula(parse_formula("p -> (q -> p)")) == "p -> q -> p");
  CHECK(print_formula(parse_formula("(p -> q) -> r")) == "(p -> q) -> r");
  CHECK(print_formula(parse_formula("(p * q) * r")) == "p * q * r");
  CHECK(print_formula(parse_formula("p * (q * r)")) == "p * (q * r)");
  CHECK(print_formula(parse_formula("(p \\/ q) /\\ r")) == "(p \\/ q) /\\ r");
  CHECK(print_formula(parse_formula("p * (q \\/ r)")) == "p * (q \\/ r)");

  SplitMix64 gen(kDefaultSeed);
  for (int i = 0; i < 500; ++i) {
    Formula f = testsupport::random_formula(gen, 5);
    CHECK(parse_formula(print_formula(f)) == f);
  }
}

TEST_CASE("subformula_at resolves paths") {
  Formula f = parse_formula("p -> q");
  CHECK(subformula_at(f, OccurrenceRef{}) == f);
  CHECK(subformula_at(f, OccurrenceRef{{Step::Left}}) == Formula::var("p"));

  Formula g = parse_formula("p * (q \\/ r)");
  CHECK(subformula_at(g, OccurrenceRef{{Step::Right, Step::Left}}) ==
        Formula::var("q"));
  CHECK_THROWS_AS(
      subformula_at(f, OccurrenceRef{{Step::Left, Step::Left}}), PathError);
}

TEST_CASE("occurrence refs round-trip through strings") {
  OccurrenceRef ref{{Step::Left, Step::Right, Step::Left}};
  CHECK(ref.to_string() == "LRL");
  CHECK(OccurrenceRef::from_string("LRL") == ref);
  CHECK(OccurrenceRef::from_string("").path.empty());
  CHECK_THROWS_AS(OccurrenceRef::from_string("LXR"), ParseError);
}

TEST_CASE("occurrences enumerates post-order with optional filter") {
  CHECK(occurrences(Formula::var("p")).size() == 1);
  CHECK(occurrences(Formula::var("p"), OccurrenceFilter::NonVariable).empty());
  CHECK(occurrences(parse_formula("p -> p")).size() == 3);

  Formula f = parse_formula("p -> q");
  std::vector<OccurrenceRef> all = occurrences(f);
  REQUIRE(all.size() == 3);
  CHECK(all[0].to_string() == "L");
  CHECK(all[1].to_string() == "R");
  CHECK(all[2].to_string() == "");

  Formula cintula = parse_formula(testsupport::kCintulaText);
  CHECK(occurrences(cintula).size() == 19);
  std::vector<OccurrenceRef> nv =
      occurrences(cintula, OccurrenceFilter::NonVariable);
  CHECK(nv.size() == 13);
  int zeros = 0;
  for (const OccurrenceRef& ref : nv) {
    if (subformula_at(cintula, ref).is_const(ConstKind::Zero)) ++zeros;
  }
  CHECK(zeros == 4);

  SplitMix64 gen(mix_seed(kDefaultSeed, 7));
  for (int i = 0; i < 200; ++i) {
    Formula g = testsupport::random_formula(gen, 5);
    std::vector<OccurrenceRef> refs = occurrences(g);
    CHECK(refs.size() == g.node_count());
    for (const OccurrenceRef& ref : refs) CHECK_NOTHROW(subformula_at(g, ref));
  }
}

TEST_CASE("substitution is simultaneous and distributes over connectives") {
  Substitution empty;
  Formula pa1 = parse_formula("p /\\ 1");
  CHECK(substitute(empty, pa1) == pa1);

  Substitution sigma;
  sigma.set("p", parse_formula("q * r"));
  CHECK(substitute(sigma, parse_formula("p -> p")) ==
        parse_formula("q * r -> q * r"));

  // One E+ factor of Thm. n3-mon's sigma.
  Substitution tau;
  tau.set("v", parse_formula("r * q"));
  CHECK(substitute(tau, parse_formula("(r * q -> v) /\\ 1")) ==
        parse_formula("(r * q -> r * q) /\\ 1"));

  // Simultaneous, not sequential: p and q swap cleanly.
  Substitution swap;
  swap.set("p", Formula::var("q"));
  swap.set("q", Formula::var("p"));
  CHECK(substitute(swap, parse_formula("p -> q")) == parse_formula("q -> p"));

  SplitMix64 gen(mix_seed(kDefaultSeed, 8));
  for (int i = 0; i < 100; ++i) {
    Formula a = testsupport::random_formula(gen, 3);
    Formula b = testsupport::random_formula(gen, 3);
    CHECK(substitute(sigma, Formula::conj(a, b)) ==
          Formula::conj(substitute(sigma, a), substitute(sigma, b)));
    CHECK(substitute(sigma, Formula::imp(a, b)) ==
          Formula::imp(substitute(sigma, a), substitute(sigma, b)));
  }
}

TEST_CASE("abbreviation builders") {
  CHECK(mk_product({}) == Formula::one());
  CHECK(mk_product({Formula::var("a")}) == Formula::var("a"));
  CHECK(mk_product({Formula::var("a"), Formula::var("b"), Formula::var("c")}) ==
        parse_formula("a * b * c"));
  CHECK(mk_power(Formula::var("p"), 0) == Formula::one());
  CHECK(mk_power(Formula::var("p"), 2) == parse_formula("p * p"));
  CHECK(mk_power(Formula::var("p"), 3) ==
        Formula::fuse(mk_power(Formula::var("p"), 2), Formula::var("p")));
  CHECK(mk_sq_arrow(Formula::var("p"), Formula::var("q")) ==
        parse_formula("(p -> q) /\\ 1"));
  CHECK(mk_equiv(Formula::var("p"), Formula::var("q")) ==
        parse_formula("(p -> q) /\\ (q -> p)"));
}

TEST_CASE("structural equality, hashing and accessors") {
  Formula a = parse_formula("p * q -> r");
  Formula b = parse_formula("p * q -> r");
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  CHECK(a != parse_formula("p * q -> q"));

  CHECK_THROWS_AS(a.var_name(), UsageError);
  CHECK_THROWS_AS(Formula::var("p").left(), UsageError);
  CHECK_THROWS_AS(Formula::one().op(), UsageError);

  CHECK(a.node_count() == 5);
  CHECK(a.depth() == 2);
  CHECK(a.variables() == std::vector<std::string>{"p", "q", "r"});
}
