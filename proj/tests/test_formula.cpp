#include <doctest.h>

#include "imlkit/formula.hpp"
#include "support.hpp"

using namespace imlkit;

TEST_SUITE("formula") {
  TEST_CASE("parse builds the expected trees") {
    CHECK(parse("p") == Formula::atom("p"));
    Formula f = parse("<>(p|q)-><>p|<>q");
    Formula p = Formula::atom("p"), q = Formula::atom("q");
    CHECK(f == Formula::impl(Formula::dia(Formula::disj(p, q)), Formula::disj(Formula::dia(p), Formula::dia(q))));
    CHECK(parse("~p") == Formula::impl(p, Formula::bot()));
    CHECK(parse("p <-> q") == Formula::iff(p, q));
    CHECK(parse("T") == Formula::top());
    CHECK(parse("F") == Formula::bot());
  }

  TEST_CASE("precedence and associativity") {
    Formula p = Formula::atom("p"), q = Formula::atom("q"), r = Formula::atom("r");
    CHECK(parse("p & q | r") == Formula::disj(Formula::conj(p, q), r));
    CHECK(parse("p | q -> r") == Formula::impl(Formula::disj(p, q), r));
    CHECK(parse("p -> q -> r") == Formula::impl(p, Formula::impl(q, r)));
    CHECK(parse("p & q & r") == Formula::conj(p, Formula::conj(q, r)));
    CHECK(parse("[]p & q") == Formula::conj(Formula::box(p), q));
    CHECK(parse("~p & q") == Formula::conj(Formula::neg(p), q));
    CHECK(parse("p -> q <-> r") == Formula::iff(Formula::impl(p, q), r));
  }

  TEST_CASE("unicode aliases") {
    CHECK(parse("◊(p∨q)→◊p∨◊q") == parse("<>(p|q)-><>p|<>q"));
    CHECK(parse("□⊤ ∧ ¬⊥") == parse("[]T & ~F"));
    CHECK(parse("p ↔ q") == parse("p <-> q"));
  }

  TEST_CASE("syntax errors carry offsets") {
    try {
      parse("p->");
      FAIL("expected an error");
    } catch (const ParseError& e) {
      CHECK(e.offset == 3);
    }
    CHECK_THROWS_AS(parse("(p & q"), ParseError);
    CHECK_THROWS_AS(parse("p & q)"), ParseError);
    CHECK_THROWS_AS(parse("p $ q"), ParseError);
    CHECK_THROWS_AS(parse("Tx"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
  }

  TEST_CASE("printing is minimal and re-parses") {
    CHECK(parse("<>(p->q)->([]p-><>q)").str() == "<>(p -> q) -> []p -> <>q");
    CHECK(parse("(p->q)->r").str() == "(p -> q) -> r");
    CHECK(parse("(p -> F)").str() == "~p");
    CHECK(parse("(p&q)&r").str() == "(p & q) & r");
    std::mt19937 rng(7);
    for (int i = 0; i < 2000; ++i) {
      Formula f = gen::formula(rng, 5, {"p", "q", "r", "s1"});
      CHECK(parse(print(f)) == f);
    }
  }

  TEST_CASE("length counts nodes") {
    CHECK(length(parse("p")) == 1);
    CHECK(length(parse("[]p")) == 2);
    CHECK(length(parse("<>(p|q)-><>p|<>q")) == 10);
    CHECK(length(parse("~p")) == 3);
  }

  TEST_CASE("closure") {
    CHECK(closure(parse("p")) == FormulaSet{parse("p")});
    CHECK(closure(parse("[]p")) == FormulaSet{parse("[]p"), parse("p")});
    CHECK(closure(parse("(p->q)|p")) == FormulaSet{parse("(p->q)|p"), parse("p->q"), parse("p"), parse("q")});
    CHECK_FALSE(is_closed(FormulaSet{parse("[]p")}));
    std::mt19937 rng(11);
    for (int i = 0; i < 1000; ++i) {
      Formula f = gen::formula(rng, 5, {"p", "q", "r"});
      FormulaSet c = closure(f);
      CHECK(c.contains(f));
      CHECK(c.size() <= f.length());
      CHECK(is_closed(c));
      CHECK(closure(c) == c);
    }
  }

  TEST_CASE("atoms") {
    CHECK(atoms(parse("T")).empty());
    CHECK(atoms(parse("[]p-><>q")) == std::set<std::string>{"p", "q"});
    CHECK(atoms(parse("p&p")) == std::set<std::string>{"p"});
  }

  TEST_CASE("substitution") {
    CHECK(substitute(parse("[]p->p"), {{"p", parse("q&r")}}) == parse("[](q&r)->(q&r)"));
    CHECK(substitute(parse("p"), {}) == parse("p"));
    CHECK(substitute(parse("p|q"), {{"p", parse("F")}, {"q", parse("F")}}) == parse("F|F"));
    // simultaneous, not sequential
    CHECK(substitute(parse("p->q"), {{"p", parse("q")}, {"q", parse("p")}}) == parse("q->p"));
    // composition with disjoint domains and ranges
    std::mt19937 rng(3);
    for (int i = 0; i < 300; ++i) {
      Formula f = gen::formula(rng, 4, {"p", "q"});
      Substitution s1{{"p", gen::formula(rng, 2, {"a", "b"})}};
      Substitution s2{{"a", gen::formula(rng, 2, {"x", "y"})}};
      Substitution both = s1;
      for (auto& [k, v] : both) v = substitute(v, s2);
      both.insert(s2.begin(), s2.end());
      CHECK(substitute(substitute(f, s1), s2) == substitute(f, both));
    }
  }

  TEST_CASE("one-way matching") {
    Substitution s;
    CHECK(match(parse("[](p -> q) -> ([]p -> []q)"), parse("[](a&b -> c) -> ([](a&b) -> []c)"), s));
    CHECK(s.at("p") == parse("a&b"));
    Substitution t;
    CHECK_FALSE(match(parse("p -> p"), parse("a -> b"), t));
  }

  TEST_CASE("accessibility between sets") {
    CHECK(bowtie({}, {}));
    CHECK_FALSE(bowtie({parse("[]p")}, {parse("p")}));
    CHECK(bowtie({parse("[]p"), parse("<>p")}, {parse("p")}));
    CHECK(bowtie_gamma({}, {parse("q|[]p"), parse("<>p")}, {parse("p")}));
    CHECK(bowtie_gamma({parse("q")}, {parse("q|[]p")}, {}));
    CHECK_FALSE(bowtie_gamma({}, {parse("q|[]p")}, {}));
  }
}
