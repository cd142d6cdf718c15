#pragma once

#include <map>

#include "fle/formula.hpp"

namespace fle {

enum class Polarity : std::uint8_t { Positive, Negative };

inline Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

// Total annotation of every subformula occurrence. The root is positive;
// children of ·,∧,∨ inherit the parent polarity; for a→b the occurrence of a
// flips it and b inherits it. Equivalently: an occurrence is negative iff its
// path takes an odd number of Left steps through implication nodes.
class PolarityMap {
public:
  Polarity at(const OccurrenceRef& ref) const;  // PathError if unknown
  const std::map<OccurrenceRef, Polarity>& entries() const { return entries_; }

private:
  friend PolarityMap annotate(const Formula& formula);
  std::map<OccurrenceRef, Polarity> entries_;
};

PolarityMap annotate(const Formula& formula);

}  // namespace fle
