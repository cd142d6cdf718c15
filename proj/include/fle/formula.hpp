#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fle/errors.hpp"

namespace fle {

enum class ConstKind : std::uint8_t { Zero, One, Bot, Top };
enum class BinOp : std::uint8_t { Imp, Fuse, And, Or };

// The lattice bounds bot/top are optional in the language; the core profile
// excludes them. Profile checks happen at the profile-aware surfaces (parser,
// evaluator, CLI), not inside the AST constructors.
enum class LanguageProfile : std::uint8_t { Core, WithBounds };

// Immutable formula tree with structural equality. Copies share nodes, so
// passing formulas around is cheap and thread-safe.
class Formula {
public:
  enum class Kind : std::uint8_t { Var, Const, Bin };

  static Formula var(std::string name);
  static Formula constant(ConstKind kind);
  static Formula zero() { return constant(ConstKind::Zero); }
  static Formula one() { return constant(ConstKind::One); }
  static Formula bot() { return constant(ConstKind::Bot); }
  static Formula top() { return constant(ConstKind::Top); }
  static Formula bin(BinOp op, Formula lhs, Formula rhs);
  static Formula imp(Formula lhs, Formula rhs) { return bin(BinOp::Imp, std::move(lhs), std::move(rhs)); }
  static Formula fuse(Formula lhs, Formula rhs) { return bin(BinOp::Fuse, std::move(lhs), std::move(rhs)); }
  static Formula conj(Formula lhs, Formula rhs) { return bin(BinOp::And, std::move(lhs), std::move(rhs)); }
  static Formula disj(Formula lhs, Formula rhs) { return bin(BinOp::Or, std::move(lhs), std::move(rhs)); }

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_const() const { return kind() == Kind::Const; }
  bool is_bin() const { return kind() == Kind::Bin; }
  bool is_const(ConstKind k) const { return is_const() && const_kind() == k; }

  const std::string& var_name() const;  // UsageError unless Var
  ConstKind const_kind() const;         // UsageError unless Const
  BinOp op() const;                     // UsageError unless Bin
  const Formula& left() const;
  const Formula& right() const;

  std::size_t node_count() const;
  int depth() const;  // leaves have depth 0
  std::size_t hash() const;
  std::vector<std::string> variables() const;  // distinct, sorted

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Path from the root; Left/Right index into binary nodes. Multiple
// occurrences of equal subformulas are distinct because their paths differ.
enum class Step : std::uint8_t { Left, Right };

struct OccurrenceRef {
  std::vector<Step> path;

  OccurrenceRef() = default;
  explicit OccurrenceRef(std::vector<Step> p) : path(std::move(p)) {}

  OccurrenceRef child(Step s) const;
  std::string to_string() const;  // "" for the root, else e.g. "LRL"
  static OccurrenceRef from_string(std::string_view text);

  bool operator==(const OccurrenceRef& other) const { return path == other.path; }
  bool operator<(const OccurrenceRef& other) const { return path < other.path; }
};

enum class OccurrenceFilter : std::uint8_t { All, NonVariable };

// Subtree at `ref`; PathError when the path walks off the tree.
Formula subformula_at(const Formula& formula, const OccurrenceRef& ref);

// All subformula occurrences in left-to-right, leaves-before-root order
// (post-order). NonVariable drops variable occurrences.
std::vector<OccurrenceRef> occurrences(const Formula& formula,
                                       OccurrenceFilter filter = OccurrenceFilter::All);

// Finite map from variable names to formulas; unmapped variables stay put.
class Substitution {
public:
  Substitution() = default;
  void set(std::string var, Formula replacement);
  const Formula* find(const std::string& var) const;
  const std::map<std::string, Formula>& entries() const { return entries_; }
  Formula apply(const Formula& formula) const;

private:
  std::map<std::string, Formula> entries_;
};

inline Formula substitute(const Substitution& sigma, const Formula& formula) {
  return sigma.apply(formula);
}

// Abbreviations. Products nest to the left; the empty product is 1 and the
// zeroth power is 1. mk_equiv and mk_sq_arrow expand to their definitions
// ((a->b)/\(b->a) and (a->b)/\1); they are not AST constructors.
Formula mk_product(const std::vector<Formula>& factors);
Formula mk_power(const Formula& base, int exponent);
Formula mk_equiv(const Formula& lhs, const Formula& rhs);
Formula mk_sq_arrow(const Formula& lhs, const Formula& rhs);

// Concrete syntax:
//   imp  := or (('->' | '<->') imp)?          right-associative, weakest
//   or   := and ('\/' and)*                   left-associative
//   and  := fuse ('/\' fuse)*                 left-associative
//   fuse := atom ('*' atom)*                  left-associative, tightest
//   atom := variable | '0' | '1' | 'bot' | 'top' | '(' imp ')'
// Variables match [a-z][A-Za-z0-9_']* except the reserved words bot/top.
// '<->' is sugar for mk_equiv, expanded while parsing.
Formula parse_formula(std::string_view text, LanguageProfile profile = LanguageProfile::Core);

// Minimal-parentheses rendering under the precedence above; parse is a left
// inverse of print on every formula.
std::string print_formula(const Formula& formula);
std::ostream& operator<<(std::ostream& os, const Formula& formula);

// ProfileError if the formula mentions bot/top under the core profile.
void check_profile(const Formula& formula, LanguageProfile profile);

}  // namespace fle
