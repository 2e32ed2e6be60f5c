#include "imlkit/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace imlkit {

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<Formula> kids;
  std::size_t hash;
  std::size_t length;
  std::size_t depth;
  std::string str;
};

namespace {

// Binding strength used by the printer; higher binds tighter.
int precedence(Kind k) {
  switch (k) {
    case Kind::Impl: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    case Kind::Box:
    case Kind::Dia: return 4;
    default: return 5;
  }
}

bool is_negation(Kind k, const std::vector<Formula>& kids) {
  return k == Kind::Impl && kids[1].kind() == Kind::Bot;
}

int print_precedence(const Formula& f) {
  if (f.kind() == Kind::Impl && f.rhs().kind() == Kind::Bot) return 4;
  return precedence(f.kind());
}

std::string wrap(const Formula& f, bool parens) {
  return parens ? "(" + f.str() + ")" : f.str();
}

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Kind k, std::string name, const Formula* l, const Formula* r) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  if (l) n->kids.push_back(*l);
  if (r) n->kids.push_back(*r);

  std::size_t h = std::hash<int>{}(static_cast<int>(k));
  if (k == Kind::Atom) h = mix(h, std::hash<std::string>{}(n->name));
  n->length = 1;
  n->depth = 0;
  for (const auto& kid : n->kids) {
    h = mix(h, kid.hash());
    n->length += kid.length();
    n->depth = std::max(n->depth, kid.depth() + 1);
  }
  n->hash = h;

  switch (k) {
    case Kind::Atom: n->str = n->name; break;
    case Kind::Top: n->str = "T"; break;
    case Kind::Bot: n->str = "F"; break;
    case Kind::Box: n->str = "[]" + wrap(*l, print_precedence(*l) < 4); break;
    case Kind::Dia: n->str = "<>" + wrap(*l, print_precedence(*l) < 4); break;
    case Kind::Impl:
      if (is_negation(k, n->kids)) {
        n->str = "~" + wrap(*l, print_precedence(*l) < 4);
        break;
      }
      [[fallthrough]];
    case Kind::Or:
    case Kind::And: {
      int p = precedence(k);
      const char* op = k == Kind::Impl ? " -> " : (k == Kind::Or ? " | " : " & ");
      // All binary connectives associate to the right.
      n->str = wrap(*l, print_precedence(*l) <= p) + op + wrap(*r, print_precedence(*r) < p);
      break;
    }
  }
  return Formula(std::move(n));
}

Formula Formula::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("atom name must be nonempty");
  return make(Kind::Atom, std::move(name), nullptr, nullptr);
}
Formula Formula::top() {
  static const Formula t = make(Kind::Top, "", nullptr, nullptr);
  return t;
}
Formula Formula::bot() {
  static const Formula b = make(Kind::Bot, "", nullptr, nullptr);
  return b;
}
Formula Formula::impl(Formula a, Formula b) { return make(Kind::Impl, "", &a, &b); }
Formula Formula::disj(Formula a, Formula b) { return make(Kind::Or, "", &a, &b); }
Formula Formula::conj(Formula a, Formula b) { return make(Kind::And, "", &a, &b); }
Formula Formula::box(Formula a) { return make(Kind::Box, "", &a, nullptr); }
Formula Formula::dia(Formula a) { return make(Kind::Dia, "", &a, nullptr); }

Kind Formula::kind() const { return n_->kind; }
const std::string& Formula::name() const { return n_->name; }
const Formula& Formula::lhs() const { return n_->kids.at(0); }
const Formula& Formula::rhs() const { return n_->kids.at(1); }
bool Formula::is_binary() const {
  Kind k = kind();
  return k == Kind::Impl || k == Kind::Or || k == Kind::And;
}
std::size_t Formula::hash() const { return n_->hash; }
std::size_t Formula::length() const { return n_->length; }
std::size_t Formula::depth() const { return n_->depth; }
const std::string& Formula::str() const { return n_->str; }

bool Formula::operator==(const Formula& other) const {
  if (n_ == other.n_) return true;
  if (n_->hash != other.n_->hash || n_->length != other.n_->length || n_->kind != other.n_->kind)
    return false;
  if (n_->name != other.n_->name) return false;
  for (std::size_t i = 0; i < n_->kids.size(); ++i)
    if (!(n_->kids[i] == other.n_->kids[i])) return false;
  return true;
}

bool Formula::canonical_less(const Formula& a, const Formula& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.str() < b.str();
}

FormulaSet::FormulaSet(std::initializer_list<Formula> fs) {
  for (const auto& f : fs) insert(f);
}

bool FormulaSet::insert(const Formula& f) { return items_.insert(f).second; }

void FormulaSet::merge(const FormulaSet& other) {
  for (const auto& f : other) insert(f);
}

bool FormulaSet::operator==(const FormulaSet& other) const {
  return size() == other.size() && std::equal(begin(), end(), other.begin());
}

ParseError::ParseError(const std::string& what, std::size_t off)
    : std::runtime_error(what + " at offset " + std::to_string(off)), offset(off) {}

namespace {

enum class Tok { Atom, Top, Bot, Not, Box, Dia, And, Or, Impl, Iff, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

struct Alias {
  const char* spelling;
  Tok kind;
};

// Longest spellings first so that "<->" wins over "<>".
const Alias kAliases[] = {
    {"<->", Tok::Iff},        {"->", Tok::Impl},        {"<>", Tok::Dia},
    {"[]", Tok::Box},         {"&", Tok::And},          {"|", Tok::Or},
    {"~", Tok::Not},          {"(", Tok::LParen},       {")", Tok::RParen},
    {"⊤", Tok::Top},     {"⊥", Tok::Bot},     {"¬", Tok::Not},
    {"∧", Tok::And},     {"∨", Tok::Or},      {"→", Tok::Impl},
    {"↔", Tok::Iff},     {"□", Tok::Box},     {"◊", Tok::Dia},
    {"◇", Tok::Dia},
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Atom, i, std::string(s.substr(i, j - i))});
      i = j;
      continue;
    }
    if (c == 'T' || c == 'F') {
      std::size_t j = i + 1;
      if (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        throw ParseError("unknown token", i);
      out.push_back({c == 'T' ? Tok::Top : Tok::Bot, i, std::string(1, static_cast<char>(c))});
      ++i;
      continue;
    }
    bool found = false;
    for (const auto& a : kAliases) {
      std::string_view sp(a.spelling);
      if (s.substr(i, sp.size()) == sp) {
        out.push_back({a.kind, i, std::string(sp)});
        i += sp.size();
        found = true;
        break;
      }
    }
    if (!found) throw ParseError("unknown token", i);
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Formula f = iff();
    if (peek().kind == Tok::RParen) throw ParseError("unbalanced parenthesis", peek().offset);
    if (peek().kind != Tok::End) throw ParseError("unexpected token", peek().offset);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  Formula iff() {
    Formula lhs = impl();
    if (accept(Tok::Iff)) return Formula::iff(lhs, iff());
    return lhs;
  }
  Formula impl() {
    Formula lhs = disj();
    if (accept(Tok::Impl)) return Formula::impl(lhs, impl());
    return lhs;
  }
  Formula disj() {
    Formula lhs = conj();
    if (accept(Tok::Or)) return Formula::disj(lhs, disj());
    return lhs;
  }
  Formula conj() {
    Formula lhs = unary();
    if (accept(Tok::And)) return Formula::conj(lhs, conj());
    return lhs;
  }
  Formula unary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Not: return Formula::neg(unary());
      case Tok::Box: return Formula::box(unary());
      case Tok::Dia: return Formula::dia(unary());
      case Tok::Atom: return Formula::atom(t.text);
      case Tok::Top: return Formula::top();
      case Tok::Bot: return Formula::bot();
      case Tok::LParen: {
        Formula f = iff();
        if (!accept(Tok::RParen)) {
          if (peek().kind == Tok::End) throw ParseError("unbalanced parenthesis", peek().offset);
          throw ParseError("expected ')'", peek().offset);
        }
        return f;
      }
      case Tok::End: throw ParseError("unexpected end of input", t.offset);
      case Tok::RParen: throw ParseError("unbalanced parenthesis", t.offset);
      default: throw ParseError("unexpected token '" + t.text + "'", t.offset);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(lex(text)).run(); }

std::string print(const Formula& f) { return f.str(); }

std::size_t length(const Formula& f) { return f.length(); }

namespace {

void collect_closure(const Formula& f, FormulaSet& out) {
  if (!out.insert(f)) return;
  if (f.is_binary()) {
    collect_closure(f.lhs(), out);
    collect_closure(f.rhs(), out);
  } else if (f.is_modal()) {
    collect_closure(f.arg(), out);
  }
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.is_atom()) {
    out.insert(f.name());
  } else if (f.is_binary()) {
    collect_atoms(f.lhs(), out);
    collect_atoms(f.rhs(), out);
  } else if (f.is_modal()) {
    collect_atoms(f.arg(), out);
  }
}

}  // namespace

FormulaSet closure(const Formula& f) {
  FormulaSet out;
  collect_closure(f, out);
  return out;
}

FormulaSet closure(const FormulaSet& fs) {
  FormulaSet out;
  for (const auto& f : fs) collect_closure(f, out);
  return out;
}

bool is_closed(const FormulaSet& fs) {
  for (const auto& f : fs) {
    if (f.is_binary() && (!fs.contains(f.lhs()) || !fs.contains(f.rhs()))) return false;
    if (f.is_modal() && !fs.contains(f.arg())) return false;
  }
  return true;
}

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::set<std::string> atoms(const FormulaSet& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) collect_atoms(f, out);
  return out;
}

Formula substitute(const Formula& f, const Substitution& sigma) {
  switch (f.kind()) {
    case Kind::Atom: {
      auto it = sigma.find(f.name());
      return it == sigma.end() ? f : it->second;
    }
    case Kind::Top:
    case Kind::Bot: return f;
    case Kind::Box: return Formula::box(substitute(f.arg(), sigma));
    case Kind::Dia: return Formula::dia(substitute(f.arg(), sigma));
    case Kind::Impl: return Formula::impl(substitute(f.lhs(), sigma), substitute(f.rhs(), sigma));
    case Kind::Or: return Formula::disj(substitute(f.lhs(), sigma), substitute(f.rhs(), sigma));
    case Kind::And: return Formula::conj(substitute(f.lhs(), sigma), substitute(f.rhs(), sigma));
  }
  return f;
}

bool match(const Formula& pattern, const Formula& target, Substitution& sigma) {
  if (pattern.is_atom()) {
    auto [it, fresh] = sigma.emplace(pattern.name(), target);
    return fresh || it->second == target;
  }
  if (pattern.kind() != target.kind()) return false;
  if (pattern.is_binary())
    return match(pattern.lhs(), target.lhs(), sigma) && match(pattern.rhs(), target.rhs(), sigma);
  if (pattern.is_modal()) return match(pattern.arg(), target.arg(), sigma);
  return true;
}

bool bowtie(const FormulaSet& delta, const FormulaSet& lambda) {
  for (const auto& f : delta)
    if (f.kind() == Kind::Box && !lambda.contains(f.arg())) return false;
  for (const auto& b : lambda)
    if (!delta.contains(Formula::dia(b))) return false;
  return true;
}

bool bowtie_gamma(const FormulaSet& gamma, const FormulaSet& delta, const FormulaSet& lambda) {
  for (const auto& f : delta) {
    if (f.kind() != Kind::Or || f.rhs().kind() != Kind::Box) continue;
    if (!gamma.contains(f.lhs()) && !lambda.contains(f.rhs().arg())) return false;
  }
  for (const auto& b : lambda)
    if (!delta.contains(Formula::dia(b))) return false;
  return true;
}

}  // namespace imlkit
