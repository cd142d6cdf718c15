#include "fle/polarity.hpp"

namespace fle {

Polarity PolarityMap::at(const OccurrenceRef& ref) const {
  auto it = entries_.find(ref);
  if (it == entries_.end()) {
    throw PathError("no polarity recorded for occurrence '" + ref.to_string() +
                    "'");
  }
  return it->second;
}

namespace {

void annotate_rec(const Formula& f, OccurrenceRef& here, Polarity polarity,
                  std::map<OccurrenceRef, Polarity>& out) {
  out.emplace(here, polarity);
  if (!f.is_bin()) return;
  Polarity left =
      f.op() == BinOp::Imp ? flip(polarity) : polarity;
  here.path.push_back(Step::Left);
  annotate_rec(f.left(), here, left, out);
  here.path.back() = Step::Right;
  annotate_rec(f.right(), here, polarity, out);
  here.path.pop_back();
}

}  // namespace

PolarityMap annotate(const Formula& formula) {
  PolarityMap map;
  OccurrenceRef scratch;
  annotate_rec(formula, scratch, Polarity::Positive, map.entries_);
  return map;
}

}  // namespace fle
