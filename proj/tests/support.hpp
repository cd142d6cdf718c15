#pragma once

// Shared helpers for the unit and acceptance suites: the seeded random
// formula generator and the alpha-equivalence checker used by the golden
// translation tests.

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fle/formula.hpp"
#include "fle/rng.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
  return std::string(FLE_FIXTURES_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw fle::PathError("missing fixture " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Seeded random formula over {p,q,r} and constants {0,1}. A node is a leaf
// with probability 0.35 (always at depth 0), otherwise a uniformly chosen
// binary connective. Subterm order is fixed by explicit sequencing, so the
// same generator state yields the same formula on every platform.
inline fle::Formula random_formula(fle::SplitMix64& gen, int max_depth) {
  static const char* const kVars[] = {"p", "q", "r"};
  if (max_depth == 0 || gen.below(100) < 35) {
    switch (gen.below(5)) {
      case 0: return fle::Formula::var(kVars[0]);
      case 1: return fle::Formula::var(kVars[1]);
      case 2: return fle::Formula::var(kVars[2]);
      case 3: return fle::Formula::zero();
      default: return fle::Formula::one();
    }
  }
  fle::BinOp op;
  switch (gen.below(4)) {
    case 0: op = fle::BinOp::Imp; break;
    case 1: op = fle::BinOp::Fuse; break;
    case 2: op = fle::BinOp::And; break;
    default: op = fle::BinOp::Or; break;
  }
  fle::Formula lhs = random_formula(gen, max_depth - 1);
  fle::Formula rhs = random_formula(gen, max_depth - 1);
  return fle::Formula::bin(op, std::move(lhs), std::move(rhs));
}

// --- alpha-equivalence up to bijective renaming of extension variables ----

struct AlphaState {
  std::set<std::string> protected_vars;  // must map to themselves
  std::map<std::string, std::string> fwd, rev;
};

inline bool alpha_unify(const fle::Formula& a, const fle::Formula& b,
                        AlphaState& st) {
  using fle::Formula;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Const:
      return a.const_kind() == b.const_kind();
    case Formula::Kind::Var: {
      const std::string& an = a.var_name();
      const std::string& bn = b.var_name();
      bool ap = st.protected_vars.count(an) != 0;
      bool bp = st.protected_vars.count(bn) != 0;
      if (ap || bp) return an == bn;
      auto fit = st.fwd.find(an);
      auto rit = st.rev.find(bn);
      if (fit != st.fwd.end() || rit != st.rev.end()) {
        return fit != st.fwd.end() && rit != st.rev.end() &&
               fit->second == bn && rit->second == an;
      }
      st.fwd.emplace(an, bn);
      st.rev.emplace(bn, an);
      return true;
    }
    case Formula::Kind::Bin:
      return a.op() == b.op() && alpha_unify(a.left(), b.left(), st) &&
             alpha_unify(a.right(), b.right(), st);
  }
  return false;
}

inline void flatten_product(const fle::Formula& f, std::vector<fle::Formula>& out) {
  if (f.is_bin() && f.op() == fle::BinOp::Fuse) {
    flatten_product(f.left(), out);
    out.push_back(f.right());
  } else {
    out.push_back(f);
  }
}

inline bool match_factors(const std::vector<fle::Formula>& as,
                          const std::vector<fle::Formula>& bs,
                          std::vector<bool>& used, std::size_t i,
                          AlphaState& st) {
  if (i == as.size()) return true;
  for (std::size_t j = 0; j < bs.size(); ++j) {
    if (used[j]) continue;
    AlphaState saved = st;
    if (alpha_unify(as[i], bs[j], st)) {
      used[j] = true;
      if (match_factors(as, bs, used, i + 1, st)) return true;
      used[j] = false;
    }
    st = saved;
  }
  return false;
}

// Both formulas must be `product -> head`. Factors are matched as a multiset
// (a fixed display order is not guaranteed), variables bijectively
// renamed except for `protected_vars` (the source formula's own variables).
// With `ordered` set, factor i must match factor i.
inline bool alpha_equivalent_translation(const fle::Formula& lhs,
                                         const fle::Formula& rhs,
                                         const std::set<std::string>& protected_vars,
                                         bool ordered) {
  using fle::BinOp;
  if (!lhs.is_bin() || lhs.op() != BinOp::Imp) return false;
  if (!rhs.is_bin() || rhs.op() != BinOp::Imp) return false;
  std::vector<fle::Formula> lf, rf;
  flatten_product(lhs.left(), lf);
  flatten_product(rhs.left(), rf);
  if (lf.size() != rf.size()) return false;

  AlphaState st;
  st.protected_vars = protected_vars;
  if (!alpha_unify(lhs.right(), rhs.right(), st)) return false;
  if (ordered) {
    for (std::size_t i = 0; i < lf.size(); ++i) {
      if (!alpha_unify(lf[i], rf[i], st)) return false;
    }
    return true;
  }
  std::vector<bool> used(rf.size(), false);
  return match_factors(lf, rf, used, 0, st);
}

inline std::set<std::string> variable_set(const fle::Formula& f) {
  auto v = f.variables();
  return {v.begin(), v.end()};
}

inline const char* kCintulaText =
    "((r->0)->0) -> ((r -> r*q) -> q*((q->0)->0))";

}  // namespace testsupport
