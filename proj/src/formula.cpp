#include "fle/formula.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

namespace fle {

namespace {

std::size_t hash_mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

struct Formula::Node {
  Kind kind;
  BinOp op = BinOp::Imp;
  ConstKind ck = ConstKind::Zero;
  std::string name;
  std::vector<Formula> kids;  // empty or {left, right}
  std::size_t cached_hash = 0;
  std::size_t cached_nodes = 1;
  int cached_depth = 0;
};

Formula Formula::var(std::string name) {
  if (name.empty()) throw UsageError("variable name must be nonempty");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Var;
  node->name = std::move(name);
  node->cached_hash = hash_mix(1, std::hash<std::string>{}(node->name));
  return Formula(std::move(node));
}

Formula Formula::constant(ConstKind kind) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Const;
  node->ck = kind;
  node->cached_hash = hash_mix(2, static_cast<std::size_t>(kind));
  return Formula(std::move(node));
}

Formula Formula::bin(BinOp op, Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Bin;
  node->op = op;
  node->cached_hash = hash_mix(hash_mix(hash_mix(3, static_cast<std::size_t>(op)),
                                        lhs.hash()),
                               rhs.hash());
  node->cached_nodes = 1 + lhs.node_count() + rhs.node_count();
  node->cached_depth = 1 + std::max(lhs.depth(), rhs.depth());
  node->kids.push_back(std::move(lhs));
  node->kids.push_back(std::move(rhs));
  return Formula(std::move(node));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::var_name() const {
  if (!is_var()) throw UsageError("var_name() on a non-variable formula");
  return node_->name;
}

ConstKind Formula::const_kind() const {
  if (!is_const()) throw UsageError("const_kind() on a non-constant formula");
  return node_->ck;
}

BinOp Formula::op() const {
  if (!is_bin()) throw UsageError("op() on a non-binary formula");
  return node_->op;
}

const Formula& Formula::left() const {
  if (!is_bin()) throw UsageError("left() on a non-binary formula");
  return node_->kids[0];
}

const Formula& Formula::right() const {
  if (!is_bin()) throw UsageError("right() on a non-binary formula");
  return node_->kids[1];
}

std::size_t Formula::node_count() const { return node_->cached_nodes; }
int Formula::depth() const { return node_->cached_depth; }
std::size_t Formula::hash() const { return node_->cached_hash; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->cached_hash != other.node_->cached_hash) return false;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::Var:
      return node_->name == other.node_->name;
    case Kind::Const:
      return node_->ck == other.node_->ck;
    case Kind::Bin:
      return node_->op == other.node_->op &&
             node_->kids[0] == other.node_->kids[0] &&
             node_->kids[1] == other.node_->kids[1];
  }
  return false;
}

std::vector<std::string> Formula::variables() const {
  std::set<std::string> names;
  std::vector<const Formula*> stack{this};
  while (!stack.empty()) {
    const Formula* f = stack.back();
    stack.pop_back();
    if (f->is_var()) {
      names.insert(f->var_name());
    } else if (f->is_bin()) {
      stack.push_back(&f->left());
      stack.push_back(&f->right());
    }
  }
  return {names.begin(), names.end()};
}

OccurrenceRef OccurrenceRef::child(Step s) const {
  std::vector<Step> p = path;
  p.push_back(s);
  return OccurrenceRef(std::move(p));
}

std::string OccurrenceRef::to_string() const {
  std::string out;
  out.reserve(path.size());
  for (Step s : path) out.push_back(s == Step::Left ? 'L' : 'R');
  return out;
}

OccurrenceRef OccurrenceRef::from_string(std::string_view text) {
  std::vector<Step> p;
  p.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == 'L') {
      p.push_back(Step::Left);
    } else if (text[i] == 'R') {
      p.push_back(Step::Right);
    } else {
      throw ParseError("occurrence path step must be 'L' or 'R'", i);
    }
  }
  return OccurrenceRef(std::move(p));
}

Formula subformula_at(const Formula& formula, const OccurrenceRef& ref) {
  Formula cur = formula;
  for (std::size_t i = 0; i < ref.path.size(); ++i) {
    if (!cur.is_bin()) {
      throw PathError("occurrence path descends below a leaf at step " + std::to_string(i) +
                      " of " + ref.to_string());
    }
    cur = ref.path[i] == Step::Left ? cur.left() : cur.right();
  }
  return cur;
}

namespace {

void collect_occurrences(const Formula& f, OccurrenceRef& here, OccurrenceFilter filter,
                         std::vector<OccurrenceRef>& out) {
  if (f.is_bin()) {
    here.path.push_back(Step::Left);
    collect_occurrences(f.left(), here, filter, out);
    here.path.back() = Step::Right;
    collect_occurrences(f.right(), here, filter, out);
    here.path.pop_back();
  }
  if (filter == OccurrenceFilter::NonVariable && f.is_var()) return;
  out.push_back(here);
}

}  // namespace

std::vector<OccurrenceRef> occurrences(const Formula& formula, OccurrenceFilter filter) {
  std::vector<OccurrenceRef> out;
  out.reserve(formula.node_count());
  OccurrenceRef scratch;
  collect_occurrences(formula, scratch, filter, out);
  return out;
}

void Substitution::set(std::string var, Formula replacement) {
  entries_.insert_or_assign(std::move(var), std::move(replacement));
}

const Formula* Substitution::find(const std::string& var) const {
  auto it = entries_.find(var);
  return it == entries_.end() ? nullptr : &it->second;
}

Formula Substitution::apply(const Formula& formula) const {
  switch (formula.kind()) {
    case Formula::Kind::Var:
      if (const Formula* hit = find(formula.var_name())) return *hit;
      return formula;
    case Formula::Kind::Const:
      return formula;
    case Formula::Kind::Bin:
      return Formula::bin(formula.op(), apply(formula.left()), apply(formula.right()));
  }
  throw UsageError("corrupt formula node");
}

Formula mk_product(const std::vector<Formula>& factors) {
  if (factors.empty()) return Formula::one();
  Formula acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = Formula::fuse(acc, factors[i]);
  return acc;
}

Formula mk_power(const Formula& base, int exponent) {
  if (exponent < 0) throw UsageError("negative power");
  std::vector<Formula> reps(static_cast<std::size_t>(exponent), base);
  return mk_product(reps);
}

Formula mk_equiv(const Formula& lhs, const Formula& rhs) {
  return Formula::conj(Formula::imp(lhs, rhs), Formula::imp(rhs, lhs));
}

Formula mk_sq_arrow(const Formula& lhs, const Formula& rhs) {
  return Formula::conj(Formula::imp(lhs, rhs), Formula::one());
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

enum class Tok : std::uint8_t {
  Ident, Zero, One, BotKw, TopKw, Arrow, Iff, Star, Wedge, Vee, LParen, RParen, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    std::size_t start = i_;
    if (i_ >= text_.size()) return {Tok::End, "", start};
    char c = text_[i_];
    if (c == '(') { ++i_; return {Tok::LParen, "(", start}; }
    if (c == ')') { ++i_; return {Tok::RParen, ")", start}; }
    if (c == '*') { ++i_; return {Tok::Star, "*", start}; }
    if (c == '0') { ++i_; return {Tok::Zero, "0", start}; }
    if (c == '1') { ++i_; return {Tok::One, "1", start}; }
    if (c == '-') {
      if (i_ + 1 < text_.size() && text_[i_ + 1] == '>') { i_ += 2; return {Tok::Arrow, "->", start}; }
      throw ParseError("expected '->'", start);
    }
    if (c == '<') {
      if (i_ + 2 < text_.size() && text_[i_ + 1] == '-' && text_[i_ + 2] == '>') {
        i_ += 3;
        return {Tok::Iff, "<->", start};
      }
      throw ParseError("expected '<->'", start);
    }
    if (c == '/') {
      if (i_ + 1 < text_.size() && text_[i_ + 1] == '\\') { i_ += 2; return {Tok::Wedge, "/\\", start}; }
      throw ParseError("expected '/\\'", start);
    }
    if (c == '\\') {
      if (i_ + 1 < text_.size() && text_[i_ + 1] == '/') { i_ += 2; return {Tok::Vee, "\\/", start}; }
      throw ParseError("expected '\\/'", start);
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i_ + 1;
      while (j < text_.size()) {
        char d = text_[j];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'') {
          ++j;
        } else {
          break;
        }
      }
      std::string name(text_.substr(i_, j - i_));
      i_ = j;
      if (name == "bot") return {Tok::BotKw, name, start};
      if (name == "top") return {Tok::TopKw, name, start};
      return {Tok::Ident, std::move(name), start};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

private:
  std::string_view text_;
  std::size_t i_ = 0;
};

class Parser {
public:
  Parser(std::string_view text, LanguageProfile profile)
      : lexer_(text), profile_(profile) {
    advance();
  }

  Formula parse() {
    Formula f = parse_imp();
    if (tok_.kind != Tok::End) throw ParseError("trailing input after formula", tok_.pos);
    return f;
  }

private:
  void advance() { tok_ = lexer_.next(); }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (tok_.kind == Tok::Arrow) {
      advance();
      return Formula::imp(std::move(lhs), parse_imp());
    }
    if (tok_.kind == Tok::Iff) {
      advance();
      return mk_equiv(lhs, parse_imp());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (tok_.kind == Tok::Vee) {
      advance();
      lhs = Formula::disj(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_fuse();
    while (tok_.kind == Tok::Wedge) {
      advance();
      lhs = Formula::conj(std::move(lhs), parse_fuse());
    }
    return lhs;
  }

  Formula parse_fuse() {
    Formula lhs = parse_atom();
    while (tok_.kind == Tok::Star) {
      advance();
      lhs = Formula::fuse(std::move(lhs), parse_atom());
    }
    return lhs;
  }

  Formula parse_atom() {
    switch (tok_.kind) {
      case Tok::Ident: {
        Formula f = Formula::var(tok_.text);
        advance();
        return f;
      }
      case Tok::Zero:
        advance();
        return Formula::zero();
      case Tok::One:
        advance();
        return Formula::one();
      case Tok::BotKw:
      case Tok::TopKw: {
        if (profile_ == LanguageProfile::Core) {
          throw ParseError("'" + tok_.text + "' is not in the core profile", tok_.pos);
        }
        Formula f = tok_.kind == Tok::BotKw ? Formula::bot() : Formula::top();
        advance();
        return f;
      }
      case Tok::LParen: {
        advance();
        Formula f = parse_imp();
        if (tok_.kind != Tok::RParen) throw ParseError("expected ')'", tok_.pos);
        advance();
        return f;
      }
      default:
        throw ParseError("expected a formula", tok_.pos);
    }
  }

  Lexer lexer_;
  LanguageProfile profile_;
  Token tok_{Tok::End, "", 0};
};

int precedence(const Formula& f) {
  if (!f.is_bin()) return 5;
  switch (f.op()) {
    case BinOp::Imp: return 1;
    case BinOp::Or: return 2;
    case BinOp::And: return 3;
    case BinOp::Fuse: return 4;
  }
  return 5;
}

void print_rec(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Var:
      out += f.var_name();
      return;
    case Formula::Kind::Const:
      switch (f.const_kind()) {
        case ConstKind::Zero: out += '0'; return;
        case ConstKind::One: out += '1'; return;
        case ConstKind::Bot: out += "bot"; return;
        case ConstKind::Top: out += "top"; return;
      }
      return;
    case Formula::Kind::Bin:
      break;
  }
  int prec = precedence(f);
  bool right_assoc = f.op() == BinOp::Imp;
  const Formula& l = f.left();
  const Formula& r = f.right();
  bool lparen = precedence(l) < prec || (precedence(l) == prec && right_assoc);
  bool rparen = precedence(r) < prec || (precedence(r) == prec && !right_assoc);
  if (lparen) out += '(';
  print_rec(l, out);
  if (lparen) out += ')';
  switch (f.op()) {
    case BinOp::Imp: out += " -> "; break;
    case BinOp::Fuse: out += " * "; break;
    case BinOp::And: out += " /\\ "; break;
    case BinOp::Or: out += " \\/ "; break;
  }
  if (rparen) out += '(';
  print_rec(r, out);
  if (rparen) out += ')';
}

}  // namespace

Formula parse_formula(std::string_view text, LanguageProfile profile) {
  return Parser(text, profile).parse();
}

std::string print_formula(const Formula& formula) {
  std::string out;
  out.reserve(formula.node_count() * 4);
  print_rec(formula, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& formula) {
  return os << print_formula(formula);
}

void check_profile(const Formula& formula, LanguageProfile profile) {
  if (profile == LanguageProfile::WithBounds) return;
  if (formula.is_const() &&
      (formula.const_kind() == ConstKind::Bot || formula.const_kind() == ConstKind::Top)) {
    throw ProfileError("bot/top are not in the core profile");
  }
  if (formula.is_bin()) {
    check_profile(formula.left(), profile);
    check_profile(formula.right(), profile);
  }
}

}  // namespace fle
