#include <doctest.h>

#include "imlkit/decide.hpp"
#include "imlkit/io.hpp"
#include "imlkit/semantics.hpp"
#include "support.hpp"

using namespace imlkit;

namespace {
Model fixture(const std::string& name) { return load_model(std::string(IMLKIT_FIXTURES) + "/" + name); }
const std::vector<std::string> kAtoms = {"p", "q", "r"};
}  // namespace

TEST_SUITE("semantics") {
  TEST_CASE("satisfaction on the fixture models") {
    Model m = fixture("af_refuted.json");
    CHECK_FALSE(sat(m, 2, parse("<>(p->q)->([]p-><>q)")));
    for (int s = 0; s < 3; ++s) {
      CHECK(sat(m, s, parse("T")));
      CHECK_FALSE(sat(m, s, parse("F")));
    }
    Model w = fixture("wij_dia_disjunction.json");
    Formula f = parse("<>(p|q)-><>p|<>q");
    CHECK_FALSE(sat(w, 0, f, Variant::Wijesekera));
    CHECK(sat(w, 0, f, Variant::New));
    CHECK_THROWS(sat(m, 7, f));
  }

  TEST_CASE("truth in single-state models") {
    Model dead(Frame(Relation::identity(1), Relation(1)), {});
    Model loop(Frame(Relation::identity(1), Relation::full(1)), {});
    CHECK(true_in_model(dead, parse("[]F")));
    CHECK(true_in_model(loop, parse("<>T")));
    CHECK_FALSE(true_in_model(loop, parse("F")));
    CHECK(truth_set(dead, parse("unused")) == 0);
  }

  TEST_CASE("validity in frames") {
    std::mt19937 rng(2);
    for (int i = 0; i < 50; ++i) {
      Frame f = gen::frame(rng, gen::size(rng, 1, 5));
      CHECK(valid_in_frame(f, parse("[](p->q)->([]p->[]q)")).valid);
    }
    Model m = fixture("af_refuted.json");
    ValidityResult r = valid_in_frame(m.frame(), parse("<>(p->q)->([]p-><>q)"));
    REQUIRE_FALSE(r.valid);
    CHECK(r.witness->state == 0);  // fails at c, hence at a below it
    CHECK(r.witness->val.at("p") == 0);
    CHECK(r.witness->val.at("q") == 0);
    CHECK_FALSE(valid_in_frame(fixture("single_dead.json").frame(), parse("<>T")).valid);
  }

  TEST_CASE("up-set enumeration matches the oracle") {
    std::mt19937 rng(4);
    for (int i = 0; i < 300; ++i) {
      Frame f = gen::frame(rng, gen::size(rng, 1, 7));
      std::vector<StateSet> ups = up_sets(f);
      std::vector<unsigned> want = oracle::up_sets(oracle::NFrame(f));
      REQUIRE(ups.size() == want.size());
      for (std::size_t k = 0; k < ups.size(); ++k) CHECK(ups[k] == want[k]);
    }
  }

  TEST_CASE("satisfaction matches the naive oracle under all three variants") {
    std::mt19937 rng(1);
    for (int i = 0; i < 1500; ++i) {
      Frame f = gen::frame(rng, gen::size(rng, 1, 6));
      Model m = gen::model(rng, f, kAtoms);
      Formula a = gen::formula(rng, 4, kAtoms);
      oracle::NFrame nf(f);
      oracle::Val v = oracle::to_val(m);
      for (Variant var : {Variant::New, Variant::FischerServi, Variant::Wijesekera}) {
        StateSet t = truth_set(m, a, var);
        for (int s = 0; s < m.size(); ++s)
          REQUIRE_MESSAGE(((t >> s) & 1U) == oracle::sat(nf, v, s, a, var), a.str());
      }
    }
  }

  TEST_CASE("validity and its first witness match the oracle") {
    std::mt19937 rng(8);
    for (int i = 0; i < 400; ++i) {
      Frame f = gen::frame(rng, gen::size(rng, 1, 4));
      Formula a = gen::formula(rng, 3, {"p", "q"});
      ValidityResult r = valid_in_frame(f, a);
      auto want = oracle::refute(oracle::NFrame(f), a);
      REQUIRE(r.valid == !want.has_value());
      if (!want) continue;
      CHECK(r.witness->state == want->state);
      for (const auto& [atom, xs] : want->val) CHECK(r.witness->val.at(atom) == xs);
    }
  }

  TEST_CASE("bit-parallel validity handles many valuations") {
    // 3 atoms over a discrete 4-state frame: 16^3 valuations, crossing word boundaries.
    Frame f(Relation::identity(4), Relation::from_pairs(4, {{0, 1}, {1, 2}}));
    Formula a = parse("p & q & r -> []p");
    ValidityResult r = valid_in_frame(f, a);
    auto want = oracle::refute(oracle::NFrame(f), a);
    REQUIRE_FALSE(r.valid);
    CHECK(r.witness->state == want->state);
    for (const auto& [atom, xs] : want->val) CHECK(r.witness->val.at(atom) == xs);
    CHECK(valid_in_frame(f, parse("p & q & r -> p")).valuations_checked == 4096);
  }

  TEST_CASE("heredity holds for the new variant") {
    std::mt19937 rng(12);
    for (int i = 0; i < 500; ++i) {
      Frame f = gen::frame(rng, gen::size(rng, 1, 6));
      Model m = gen::model(rng, f, kAtoms);
      CHECK(heredity_check(m, gen::formula(rng, 4, kAtoms)));
    }
    Model one(Frame(Relation::identity(1), Relation::full(1)), {});
    CHECK(heredity_check(one, parse("<>T"), Variant::FischerServi));
  }

  TEST_CASE("heredity can fail for the Fischer Servi diamond off forward confluence") {
    Model m = fixture("fs_divergence.json");
    auto v = heredity_violation(m, parse("<>p"), Variant::FischerServi);
    REQUIRE(v.has_value());
    CHECK(v->from == 0);
    CHECK(v->to == 2);
    CHECK(heredity_check(m, parse("<>p"), Variant::New));
  }

  TEST_CASE("variants agree on forward confluent frames") {
    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
      Frame f = gen::fc_frame(rng, gen::size(rng, 1, 5));
      REQUIRE(check_property(f, Predicate::fc));
      Model m = gen::model(rng, f, kAtoms);
      Formula a = gen::formula(rng, 4, kAtoms);
      for (const Formula& b : closure(a)) {
        StateSet t = truth_set(m, b);
        CHECK(truth_set(m, b, Variant::FischerServi) == t);
        CHECK(truth_set(m, b, Variant::Wijesekera) == t);
      }
    }
  }

  TEST_CASE("generated subframes preserve satisfaction") {
    std::mt19937 rng(14);
    for (int i = 0; i < 300; ++i) {
      Frame f = gen::frame(rng, gen::size(rng, 1, 6), 0.2, 0.15);
      Model m = gen::model(rng, f, kAtoms);
      int s = gen::size(rng, 0, f.size() - 1);
      Subframe sub = generated_subframe(f, s);
      Model ms = restrict_model(m, sub.origin);
      Formula a = gen::formula(rng, 4, kAtoms);
      StateSet big = truth_set(m, a);
      StateSet small = truth_set(ms, a);
      for (int k = 0; k < ms.size(); ++k) CHECK(((small >> k) & 1U) == ((big >> sub.origin[k]) & 1U));
    }
  }

  TEST_CASE("validity is monotone under class containment") {
    std::mt19937 rng(15);
    std::vector<Frame> all = enumerate_frames(2, FrameClassSpec{});
    for (int i = 0; i < 40; ++i) {
      Formula a = gen::formula(rng, 3, {"p"});
      bool on_all = std::all_of(all.begin(), all.end(), [&](const Frame& f) { return valid_in_frame(f, a).valid; });
      if (!on_all) continue;
      for (const Frame& f : all)
        if (check_property(f, Predicate::fc)) CHECK(valid_in_frame(f, a).valid);
    }
  }

  TEST_CASE("variant names") {
    CHECK(variant_from_name("fs") == Variant::FischerServi);
    CHECK(variant_from_name("wij") == Variant::Wijesekera);
    CHECK(variant_from_name("new") == Variant::New);
    CHECK_THROWS(variant_from_name("other"));
  }
}
