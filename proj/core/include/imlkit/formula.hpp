#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace imlkit {

enum class Kind : std::uint8_t { Atom, Impl, Top, Bot, Or, And, Box, Dia };

// Immutable, structurally compared formula. Copies share the node.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula top();
  static Formula bot();
  static Formula impl(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula conj(Formula a, Formula b);
  static Formula box(Formula a);
  static Formula dia(Formula a);
  // Surface abbreviations, expanded at construction.
  static Formula neg(Formula a) { return impl(std::move(a), bot()); }
  static Formula iff(const Formula& a, const Formula& b) { return conj(impl(a, b), impl(b, a)); }

  Kind kind() const;
  const std::string& name() const;  // atoms only
  const Formula& lhs() const;       // binary connectives, and the argument of box/dia
  const Formula& rhs() const;
  const Formula& arg() const { return lhs(); }

  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_binary() const;
  bool is_modal() const { return kind() == Kind::Box || kind() == Kind::Dia; }

  std::size_t hash() const;
  std::size_t length() const;  // AST node count
  std::size_t depth() const;   // connective nesting, atoms and constants have depth 0
  const std::string& str() const;

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  // Total order used everywhere a canonical formula order is needed:
  // by length, then by printed form.
  static bool canonical_less(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static Formula make(Kind k, std::string name, const Formula* l, const Formula* r);
  std::shared_ptr<const Node> n_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

struct CanonicalLess {
  bool operator()(const Formula& a, const Formula& b) const { return Formula::canonical_less(a, b); }
};

// Finite set of formulas under structural equality, iterated in canonical order.
class FormulaSet {
 public:
  FormulaSet() = default;
  FormulaSet(std::initializer_list<Formula> fs);

  bool insert(const Formula& f);
  bool contains(const Formula& f) const { return items_.count(f) != 0; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  std::vector<Formula> to_vector() const { return {items_.begin(), items_.end()}; }
  void merge(const FormulaSet& other);

  bool operator==(const FormulaSet& other) const;

 private:
  std::set<Formula, CanonicalLess> items_;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset;
};

Formula parse(std::string_view text);
std::string print(const Formula& f);

std::size_t length(const Formula& f);
FormulaSet closure(const Formula& f);
FormulaSet closure(const FormulaSet& fs);
bool is_closed(const FormulaSet& fs);
std::set<std::string> atoms(const Formula& f);
std::set<std::string> atoms(const FormulaSet& fs);

using Substitution = std::map<std::string, Formula>;
Formula substitute(const Formula& f, const Substitution& sigma);

// One-way matching: extends `sigma` so that substitute(pattern, sigma) == target.
bool match(const Formula& pattern, const Formula& target, Substitution& sigma);

// Accessibility between finite sets of formulas.
bool bowtie(const FormulaSet& delta, const FormulaSet& lambda);
// Restricted to disjunctions A | []B that occur in delta.
bool bowtie_gamma(const FormulaSet& gamma, const FormulaSet& delta, const FormulaSet& lambda);

}  // namespace imlkit
