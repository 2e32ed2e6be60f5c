#include "imlkit/proofsys.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>

namespace imlkit {

namespace {

struct SchemaText {
  const char* name;
  const char* text;
};

constexpr SchemaText kSchemas[] = {
    {"A1", "[](p -> q) -> ([]p -> []q)"},
    {"A2", "[](p | q) -> ((<>p -> []q) -> []q)"},
    {"A3", "<>(p | q) -> <>p | <>q"},
    {"A4", "~<>F"},
    {"A5", "[]p & []q -> [](p & q)"},
    {"A6", "[]T"},
    {"Af", "<>(p -> q) -> ([]p -> <>q)"},
    {"Ab", "(<>p -> []q) -> [](p -> q)"},
    {"Ad", "[](p | q) -> <>p | []q"},
    {"Auref", "[]p -> p"},
    {"Adref", "p -> <>p"},
    {"Ausym", "<>[]p -> p"},
    {"Adsym", "p -> []<>p"},
    {"Autra", "[]p -> [][]p"},
    {"Adtra", "<><>p -> <>p"},
    {"IPL1", "p -> (q -> p)"},
    {"IPL2", "(p -> (q -> r)) -> ((p -> q) -> (p -> r))"},
    {"IPL3", "p & q -> p"},
    {"IPL4", "p & q -> q"},
    {"IPL5", "p -> (q -> p & q)"},
    {"IPL6", "p -> p | q"},
    {"IPL7", "q -> p | q"},
    {"IPL8", "(p -> r) -> ((q -> r) -> (p | q -> r))"},
    {"IPL9", "F -> p"},
    {"IPL10", "T"},
};

const std::map<std::string, Formula, std::less<>>& schema_table() {
  static const auto table = [] {
    std::map<std::string, Formula, std::less<>> t;
    for (const auto& s : kSchemas) t.emplace(s.name, parse(s.text));
    return t;
  }();
  return table;
}

bool is_ipl_basis(std::string_view name) { return name.substr(0, 3) == "IPL"; }

}  // namespace

const std::vector<std::string>& schema_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : kSchemas) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

const Formula& schema(std::string_view name) {
  const auto& t = schema_table();
  auto it = t.find(name);
  if (it == t.end()) throw UnknownSchema("unknown axiom schema '" + std::string(name) + "'");
  return it->second;
}

Formula instantiate_schema(std::string_view name, const Substitution& sigma) {
  return substitute(schema(name), sigma);
}

// ---------------------------------------------------------------------------
// Contraction-free sequent calculus for intuitionistic propositional logic.

namespace {

bool atomic(const Formula& f) { return f.is_atom() || f.is_modal(); }

using Context = std::vector<Formula>;

void normalize(Context& g) {
  std::sort(g.begin(), g.end(), Formula::canonical_less);
  g.erase(std::unique(g.begin(), g.end()), g.end());
}

bool contains(const Context& g, const Formula& f) {
  return std::binary_search(g.begin(), g.end(), f, Formula::canonical_less);
}

class Prover {
 public:
  bool prove(Context g, const Formula& goal) {
    normalize(g);
    std::string key;
    for (const auto& f : g) key += f.str() + "\x1f";
    key += "\x1e" + goal.str();
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool r = search(std::move(g), goal);
    memo_[key] = r;
    return r;
  }

 private:
  bool search(Context g, const Formula& goal) {
    // Invertible left rules, applied one at a time.
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Formula f = g[i];
      auto rest = [&] {
        Context h = g;
        h.erase(h.begin() + static_cast<std::ptrdiff_t>(i));
        return h;
      };
      switch (f.kind()) {
        case Kind::Bot: return true;
        case Kind::Top: return prove(rest(), goal);
        case Kind::And: {
          Context h = rest();
          h.push_back(f.lhs());
          h.push_back(f.rhs());
          return prove(std::move(h), goal);
        }
        case Kind::Or: {
          Context h1 = rest();
          Context h2 = h1;
          h1.push_back(f.lhs());
          h2.push_back(f.rhs());
          return prove(std::move(h1), goal) && prove(std::move(h2), goal);
        }
        case Kind::Impl: {
          const Formula& a = f.lhs();
          const Formula& b = f.rhs();
          if (a.kind() == Kind::Bot) return prove(rest(), goal);
          if (a.kind() == Kind::Top || (atomic(a) && contains(g, a))) {
            Context h = rest();
            h.push_back(b);
            return prove(std::move(h), goal);
          }
          if (a.kind() == Kind::And) {
            Context h = rest();
            h.push_back(Formula::impl(a.lhs(), Formula::impl(a.rhs(), b)));
            return prove(std::move(h), goal);
          }
          if (a.kind() == Kind::Or) {
            Context h = rest();
            h.push_back(Formula::impl(a.lhs(), b));
            h.push_back(Formula::impl(a.rhs(), b));
            return prove(std::move(h), goal);
          }
          break;
        }
        default: break;
      }
    }

    // Invertible right rules.
    switch (goal.kind()) {
      case Kind::Top: return true;
      case Kind::And: return prove(g, goal.lhs()) && prove(g, goal.rhs());
      case Kind::Impl: {
        Context h = g;
        h.push_back(goal.lhs());
        return prove(std::move(h), goal.rhs());
      }
      default: break;
    }
    if (atomic(goal) && contains(g, goal)) return true;

    // Non-invertible choices.
    if (goal.kind() == Kind::Or && (prove(g, goal.lhs()) || prove(g, goal.rhs()))) return true;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Formula& f = g[i];
      if (f.kind() != Kind::Impl || f.lhs().kind() != Kind::Impl) continue;
      const Formula& c = f.lhs().lhs();
      const Formula& d = f.lhs().rhs();
      const Formula& b = f.rhs();
      Context rest = g;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      Context left = rest;
      left.push_back(Formula::impl(d, b));
      if (!prove(std::move(left), Formula::impl(c, d))) continue;
      Context right = rest;
      right.push_back(b);
      if (prove(std::move(right), goal)) return true;
    }
    return false;
  }

  std::unordered_map<std::string, bool> memo_;
};

}  // namespace

bool ipl_prove(const std::vector<Formula>& premises, const Formula& goal) {
  Prover p;
  return p.prove(premises, goal);
}

// ---------------------------------------------------------------------------
// Justifications.

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::Hyp: return "hyp";
    case Rule::Axiom: return "axiom";
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R3: return "R3";
    case Rule::R4: return "R4";
    case Rule::MP: return "MP";
    case Rule::IPL: return "IPL";
    case Rule::DiaConj: return "DIACONJ";
  }
  return "?";
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<int> parse_refs(std::string_view s) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    try {
      std::size_t used = 0;
      int v = std::stoi(cur, &used);
      if (used != cur.size() || v < 1) throw FormatError("");
      out.push_back(v);
    } catch (const std::exception&) {
      throw FormatError("bad line reference '" + cur + "'");
    }
    cur.clear();
  };
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      cur += c;
  }
  flush();
  return out;
}

Substitution parse_substitution(std::string_view s) {
  std::string body = trim(s);
  if (body.size() < 2 || body.front() != '{' || body.back() != '}')
    throw FormatError("substitution must be written {p: A, q: B}");
  body = body.substr(1, body.size() - 2);
  Substitution sigma;
  std::size_t i = 0;
  while (i < body.size()) {
    std::size_t j = body.find(',', i);
    if (j == std::string::npos) j = body.size();
    std::string item = trim(std::string_view(body).substr(i, j - i));
    i = j + 1;
    if (item.empty()) continue;
    std::size_t colon = item.find(':');
    if (colon == std::string::npos) throw FormatError("substitution entry '" + item + "' lacks ':'");
    std::string var = trim(std::string_view(item).substr(0, colon));
    if (var.empty()) throw FormatError("substitution entry '" + item + "' lacks a variable");
    sigma.insert_or_assign(var, parse(trim(std::string_view(item).substr(colon + 1))));
  }
  return sigma;
}

}  // namespace

Justification parse_justification(std::string_view text) {
  std::string t = trim(text);
  Justification j;
  if (t == "hyp" || t == "hypothesis") {
    j.rule = Rule::Hyp;
    return j;
  }
  if (t.rfind("axiom:", 0) == 0) {
    j.rule = Rule::Axiom;
    std::string rest = t.substr(6);
    std::size_t brace = rest.find('{');
    j.axiom = trim(rest.substr(0, brace));
    if (j.axiom.empty()) throw FormatError("axiom justification without a schema name");
    if (brace != std::string::npos) j.sigma = parse_substitution(rest.substr(brace));
    return j;
  }
  std::size_t sp = t.find_first_of(" \t");
  std::string head = t.substr(0, sp);
  std::string tail = sp == std::string::npos ? "" : t.substr(sp + 1);
  static const std::pair<const char*, Rule> kRules[] = {
      {"R1", Rule::R1}, {"R2", Rule::R2}, {"R3", Rule::R3},   {"R4", Rule::R4},
      {"MP", Rule::MP}, {"IPL", Rule::IPL}, {"DIACONJ", Rule::DiaConj},
  };
  for (auto [name, rule] : kRules) {
    if (head != name) continue;
    j.rule = rule;
    j.refs = parse_refs(tail);
    std::size_t want = rule == Rule::IPL ? j.refs.size() : (rule == Rule::MP ? 2 : 1);
    if (j.refs.size() != want)
      throw FormatError(std::string(name) + " expects " + std::to_string(want) + " line reference(s)");
    return j;
  }
  throw FormatError("unknown justification '" + t + "'");
}

std::string print_justification(const Justification& j) {
  switch (j.rule) {
    case Rule::Hyp: return "hyp";
    case Rule::Axiom: {
      std::string out = "axiom:" + j.axiom;
      if (j.sigma) {
        out += " {";
        bool first = true;
        for (const auto& [v, f] : *j.sigma) {
          out += (first ? "" : ", ") + v + ": " + f.str();
          first = false;
        }
        out += "}";
      }
      return out;
    }
    default: {
      std::string out(rule_name(j.rule));
      for (std::size_t i = 0; i < j.refs.size(); ++i)
        out += (i == 0 ? " " : (j.rule == Rule::MP ? " " : ",")) + std::to_string(j.refs[i]);
      return out;
    }
  }
}

// ---------------------------------------------------------------------------
// Logics.

Logic Logic::minimal() {
  Logic l;
  l.name = "min";
  for (const auto& n : schema_names()) {
    bool modal_base = n.size() == 2 && n[0] == 'A' && n[1] >= '1' && n[1] <= '6';
    if (modal_base || is_ipl_basis(n)) l.axioms.insert(n);
  }
  l.rules = {Rule::Hyp, Rule::Axiom, Rule::R1, Rule::R2, Rule::R3,
             Rule::R4,  Rule::MP,    Rule::IPL, Rule::DiaConj};
  return l;
}

Logic Logic::with_axiom(const std::string& a) const {
  schema(a);
  Logic l = *this;
  if (l.axioms.insert(a).second) l.name += "+" + a;
  return l;
}

Logic Logic::parse(std::string_view text) {
  std::string t = trim(text);
  std::vector<std::string> toks;
  std::string cur;
  for (char c : t) {
    if (c == ',' || c == '+' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) toks.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  if (toks.empty()) throw FormatError("empty logic description");

  Logic l;
  if (toks.front() == "min") {
    l = minimal();
    toks.erase(toks.begin());
  } else {
    l.name = t;
    l.rules = {Rule::Hyp, Rule::Axiom, Rule::MP};
  }
  for (const auto& tok : toks) {
    if (tok == "R1") l.rules.insert(Rule::R1);
    else if (tok == "R2") l.rules.insert(Rule::R2);
    else if (tok == "R3") l.rules.insert(Rule::R3);
    else if (tok == "R4") l.rules.insert(Rule::R4);
    else if (tok == "DIACONJ") l.rules.insert(Rule::DiaConj);
    else if (tok == "IPL") {
      l.rules.insert(Rule::IPL);
      for (const auto& n : schema_names())
        if (is_ipl_basis(n)) l.axioms.insert(n);
    } else {
      try {
        schema(tok);
      } catch (const UnknownSchema&) {
        throw FormatError("unknown axiom or rule '" + tok + "' in logic description");
      }
      if (l.axioms.insert(tok).second && l.name == "min") l.name = "min+" + tok;
      else if (l.name.rfind("min", 0) == 0 && l.name.find(tok) == std::string::npos) l.name += "+" + tok;
    }
  }
  return l;
}

FrameClassSpec Logic::frame_class() const {
  static const std::pair<const char*, Predicate> kClass[] = {
      {"Af", Predicate::fc},      {"Ab", Predicate::bc},      {"Ad", Predicate::dc},
      {"Auref", Predicate::uref}, {"Adref", Predicate::dref}, {"Ausym", Predicate::usym},
      {"Adsym", Predicate::dsym}, {"Autra", Predicate::utra}, {"Adtra", Predicate::dtra},
  };
  std::string spec;
  for (auto [ax, p] : kClass)
    if (axioms.count(ax)) spec += (spec.empty() ? "" : ",") + std::string(predicate_name(p));
  return spec.empty() ? FrameClassSpec{} : FrameClassSpec::parse(spec);
}

std::string CheckReport::verdict() const {
  if (!ok) return "rejected";
  return hypotheses.empty() ? "theorem" : "derivation from hypotheses";
}

// ---------------------------------------------------------------------------
// Checking.

namespace {

// The shape ◊A→B∨□(A→C); fills a, b, c on success.
bool r3_premise(const Formula& f, Formula* a, Formula* b, Formula* c) {
  if (f.kind() != Kind::Impl || f.lhs().kind() != Kind::Dia) return false;
  const Formula& rhs = f.rhs();
  if (rhs.kind() != Kind::Or || rhs.rhs().kind() != Kind::Box) return false;
  const Formula& inner = rhs.rhs().arg();
  if (inner.kind() != Kind::Impl || !(inner.lhs() == f.lhs().arg())) return false;
  *a = f.lhs().arg();
  *b = rhs.lhs();
  *c = inner.rhs();
  return true;
}

std::string check_line(const std::vector<ProofLine>& lines, std::size_t i, const Logic& logic) {
  const ProofLine& line = lines[i];
  const Justification& j = line.by;
  const Formula& f = line.formula;
  if (!logic.rules.count(j.rule))
    return "rule " + std::string(rule_name(j.rule)) + " is not available in logic " + logic.name;
  for (int ref : j.refs)
    if (ref < 1 || static_cast<std::size_t>(ref) > i)
      return "line reference " + std::to_string(ref) + " out of range";
  auto at = [&](std::size_t k) -> const Formula& { return lines[j.refs[k] - 1].formula; };

  switch (j.rule) {
    case Rule::Hyp: return "";
    case Rule::Axiom: {
      if (!logic.axioms.count(j.axiom)) {
        try {
          schema(j.axiom);
        } catch (const UnknownSchema& e) {
          return e.what();
        }
        return "axiom " + j.axiom + " is not available in logic " + logic.name;
      }
      if (j.sigma) {
        if (!(instantiate_schema(j.axiom, *j.sigma) == f))
          return "shape mismatch: not the stated instance of " + j.axiom;
      } else {
        Substitution s;
        if (!match(schema(j.axiom), f, s)) return "shape mismatch: not an instance of " + j.axiom;
      }
      return "";
    }
    case Rule::R1:
      if (f.kind() == Kind::Box && f.arg() == at(0)) return "";
      return "shape mismatch: R1 needs []A from A";
    case Rule::R2:
    case Rule::R4: {
      const Formula& p = at(0);
      Kind m = j.rule == Rule::R2 ? Kind::Dia : Kind::Box;
      if (p.kind() == Kind::Impl && f.kind() == Kind::Impl && f.lhs().kind() == m &&
          f.rhs().kind() == m && f.lhs().arg() == p.lhs() && f.rhs().arg() == p.rhs())
        return "";
      return std::string("shape mismatch: ") + (j.rule == Rule::R2 ? "R2 needs <>A -> <>B" : "R4 needs []A -> []B") +
             " from A -> B";
    }
    case Rule::R3: {
      Formula a = Formula::top(), b = a, c = a;
      if (!r3_premise(at(0), &a, &b, &c))
        return "shape mismatch: R3 needs a premise <>A -> B | [](A -> C)";
      if (f == Formula::impl(Formula::dia(a), Formula::disj(b, Formula::dia(c)))) return "";
      return "shape mismatch: R3 conclusion must be <>A -> B | <>C";
    }
    case Rule::DiaConj: {
      // From <>A -> []B | C infer <>A -> <>(B & A) | C.
      const Formula& p = at(0);
      if (p.kind() == Kind::Impl && p.lhs().kind() == Kind::Dia && p.rhs().kind() == Kind::Or &&
          p.rhs().lhs().kind() == Kind::Box) {
        const Formula& a = p.lhs().arg();
        Formula expect = Formula::impl(
            p.lhs(), Formula::disj(Formula::dia(Formula::conj(p.rhs().lhs().arg(), a)), p.rhs().rhs()));
        if (f == expect) return "";
      }
      return "shape mismatch: DIACONJ needs <>A -> []B | C and yields <>A -> <>(B & A) | C";
    }
    case Rule::MP: {
      const Formula& x = at(0);
      const Formula& y = at(1);
      bool fwd = y.kind() == Kind::Impl && y.lhs() == x && y.rhs() == f;
      bool rev = x.kind() == Kind::Impl && x.lhs() == y && x.rhs() == f;
      if (fwd || rev) return "";
      return "shape mismatch: MP needs A and A -> B";
    }
    case Rule::IPL: {
      std::vector<Formula> prem;
      for (std::size_t k = 0; k < j.refs.size(); ++k) prem.push_back(at(k));
      if (ipl_prove(prem, f)) return "";
      return "IPL check failed: not an intuitionistic consequence of the cited lines";
    }
  }
  return "unknown rule";
}

}  // namespace

CheckReport check_derivation(const Derivation& d) {
  CheckReport rep;
  if (d.logic) {
    rep.logic = *d.logic;
  } else {
    rep.logic = Logic::minimal();
    for (const auto& line : d.lines)
      if (line.by.rule == Rule::Axiom && !rep.logic.axioms.count(line.by.axiom)) {
        try {
          rep.logic = rep.logic.with_axiom(line.by.axiom);
        } catch (const UnknownSchema&) {
          // reported when the line is checked
        }
      }
  }
  rep.from_hypotheses.assign(d.lines.size(), false);
  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    std::string why = check_line(d.lines, i, rep.logic);
    if (!why.empty()) {
      rep.ok = false;
      rep.failing_line = static_cast<int>(i) + 1;
      rep.reason = why;
      rep.from_hypotheses.resize(i);
      return rep;
    }
    const Justification& j = d.lines[i].by;
    if (j.rule == Rule::Hyp) {
      rep.hypotheses.push_back(static_cast<int>(i) + 1);
      rep.from_hypotheses[i] = true;
    }
    for (int ref : j.refs)
      if (rep.from_hypotheses[ref - 1]) rep.from_hypotheses[i] = true;
  }
  return rep;
}

bool EquivalenceEntry::ok() const {
  return std::all_of(scripts.begin(), scripts.end(), [](const auto& s) { return s.second.ok; });
}

}  // namespace imlkit
