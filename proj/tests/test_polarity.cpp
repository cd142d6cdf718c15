#include <doctest.h>

#include <string>

#include "fle/polarity.hpp"
#include "support.hpp"

using namespace fle;

namespace {

Polarity at(const PolarityMap& map, const char* path) {
  return map.at(OccurrenceRef::from_string(path));
}

}  // namespace

TEST_CASE("annotate on anchored examples") {
  PolarityMap var = annotate(Formula::var("p"));
  CHECK(var.entries().size() == 1);
  CHECK(at(var, "") == Polarity::Positive);

  PolarityMap imp = annotate(parse_formula("p -> q"));
  CHECK(at(imp, "") == Polarity::Positive);
  CHECK(at(imp, "L") == Polarity::Negative);
  CHECK(at(imp, "R") == Polarity::Positive);

  // The antecedent of an antecedent is positive again.
  PolarityMap nested = annotate(parse_formula("(p -> q) -> r"));
  CHECK(at(nested, "L") == Polarity::Negative);
  CHECK(at(nested, "LL") == Polarity::Positive);
  CHECK(at(nested, "LR") == Polarity::Negative);
  CHECK(at(nested, "R") == Polarity::Positive);

  // ·, ∧, ∨ all preserve the ambient polarity.
  PolarityMap lattice = annotate(parse_formula("(p * q) -> (r /\\ s) \\/ t"));
  CHECK(at(lattice, "LL") == Polarity::Negative);
  CHECK(at(lattice, "LR") == Polarity::Negative);
  CHECK(at(lattice, "RLL") == Polarity::Positive);
  CHECK(at(lattice, "RLR") == Polarity::Positive);
  CHECK(at(lattice, "RR") == Polarity::Positive);
}

TEST_CASE("annotate is total and matches the left-of-imp parity rule") {
  SplitMix64 gen(mix_seed(kDefaultSeed, 31));
  for (int i = 0; i < 250; ++i) {
    Formula f = testsupport::random_formula(gen, 5);
    PolarityMap map = annotate(f);
    std::vector<OccurrenceRef> occ = occurrences(f);
    CHECK(map.entries().size() == occ.size());
    CHECK(map.entries().size() == f.node_count());
    for (const OccurrenceRef& ref : occ) {
      // Count Left steps taken out of an implication node along the path.
      int flips = 0;
      Formula cursor = f;
      for (Step s : ref.path) {
        if (cursor.op() == BinOp::Imp && s == Step::Left) ++flips;
        cursor = s == Step::Left ? cursor.left() : cursor.right();
      }
      Polarity expected =
          flips % 2 == 0 ? Polarity::Positive : Polarity::Negative;
      CHECK(map.at(ref) == expected);
    }
  }
}

TEST_CASE("PolarityMap::at rejects unknown paths") {
  PolarityMap map = annotate(parse_formula("p -> q"));
  CHECK_THROWS_AS(map.at(OccurrenceRef::from_string("LL")), PathError);
  CHECK_THROWS_AS(map.at(OccurrenceRef::from_string("RRR")), PathError);
}
