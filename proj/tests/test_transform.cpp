#include <doctest.h>

#include "imlkit/decide.hpp"
#include "imlkit/io.hpp"
#include "imlkit/semantics.hpp"
#include "imlkit/transform.hpp"
#include "support.hpp"

using namespace imlkit;

namespace {

Model fixture(const std::string& name) { return load_model(std::string(IMLKIT_FIXTURES) + "/" + name); }
const std::vector<std::string> kAtoms = {"p", "q", "r"};

// Every subformula of `a` has the same truth value at each new state as at the
// state it came from.
void check_transfer(const Model& orig, const Constructed& c, const Formula& a) {
  REQUIRE(static_cast<int>(c.map.size()) == c.model.size());
  for (const Formula& b : closure(a)) {
    StateSet before = truth_set(orig, b);
    StateSet after = truth_set(c.model, b);
    for (int s = 0; s < c.model.size(); ++s)
      REQUIRE_MESSAGE(((after >> s) & 1U) == ((before >> c.map[s].state) & 1U), b.str());
  }
}

Model reflexive_model(std::mt19937& rng, int n, bool symmetric) {
  Frame f = gen::frame(rng, n);
  Relation r = f.r() | Relation::identity(n);
  if (symmetric) r = r | r.transpose();
  return gen::model(rng, Frame(f.le(), r), kAtoms);
}

}  // namespace

TEST_SUITE("transform") {
  TEST_CASE("intersectional update examples") {
    Model loop = fixture("single_loop.json");
    CHECK(intersectional_update(loop).frame() == loop.frame());
    Model m = fixture("af_refuted.json");
    Model u = intersectional_update(m);
    CHECK(u.frame().r() == Relation::from_pairs(3, {{0, 1}}));
    CHECK(u.frame().le() == m.frame().le());
    CHECK(u.val() == m.val());
    CHECK(intersectional_update(fixture("single_dead.json")).frame().r().empty());
  }

  TEST_CASE("intersectional update preserves every formula") {
    std::mt19937 rng(21);
    for (int i = 0; i < 500; ++i) {
      Model m = gen::model(rng, gen::frame(rng, gen::size(rng, 1, 5)), kAtoms);
      Model u = intersectional_update(m);
      Formula a = gen::formula(rng, 4, kAtoms);
      for (const Formula& b : closure(a)) REQUIRE(truth_set(u, b) == truth_set(m, b));
    }
  }

  TEST_CASE("intersectional update turns up and down properties into plain ones") {
    auto check = [](const Frame& f) {
      Frame u = intersectional_update(Model(f, {})).frame();
      using P = Predicate;
      if (check_property(f, P::uref) && check_property(f, P::dref)) CHECK(check_property(u, P::ref));
      if (check_property(f, P::usym) && check_property(f, P::dsym)) CHECK(check_property(u, P::sym));
      if (check_property(f, P::utra) && check_property(f, P::dtra)) CHECK(check_property(u, P::tra));
    };
    for_each_frame(3, FrameClassSpec{}, false, [&](const Frame& f) {
      check(f);
      return true;
    });
    std::mt19937 rng(22);
    for (int i = 0; i < 3000; ++i) check(gen::frame(rng, gen::size(rng, 4, 6)));
  }

  TEST_CASE("strict doubling") {
    Constructed d = double_strict(fixture("single_loop.json"));
    REQUIRE(d.model.size() == 2);
    CHECK(d.map[0].state == 0);
    CHECK(d.map[0].copy == 0);
    CHECK(d.map[1].copy == 1);
    CHECK(d.model.frame().r() == Relation::from_pairs(2, {{0, 1}}));
    CHECK(check_property(d.model.frame(), Predicate::tra));
    CHECK(double_strict(fixture("single_dead.json")).model.frame().r().empty());

    Model m = fixture("fs_divergence.json");
    check_transfer(m, double_strict(m), parse("<>(p->q)->([]p-><>q)"));

    std::mt19937 rng(23);
    for (int i = 0; i < 500; ++i) {
      Model x = gen::model(rng, gen::frame(rng, gen::size(rng, 1, 5)), kAtoms);
      Constructed c = double_strict(x);
      CHECK(check_property(c.model.frame(), Predicate::tra));
      check_transfer(x, c, gen::formula(rng, 4, kAtoms));
    }
  }

  TEST_CASE("reflexive doubling") {
    Constructed d = double_reflexive(fixture("single_loop.json"));
    REQUIRE(d.model.size() == 2);
    CHECK(check_property(d.model.frame(), Predicate::ref));
    CHECK(check_property(d.model.frame(), Predicate::tra));
    CHECK(d.model.frame().r() == Relation::from_pairs(2, {{0, 0}, {0, 1}, {1, 1}}));
    CHECK_THROWS_AS(double_reflexive(fixture("single_dead.json")), NotReflexive);
    CHECK_THROWS_AS(double_reflexive(fixture("af_refuted.json")), NotReflexive);

    std::mt19937 rng(24);
    for (int i = 0; i < 500; ++i) {
      Model x = reflexive_model(rng, gen::size(rng, 1, 5), false);
      Constructed c = double_reflexive(x);
      CHECK(check_property(c.model.frame(), Predicate::ref));
      CHECK(check_property(c.model.frame(), Predicate::tra));
      check_transfer(x, c, gen::formula(rng, 4, kAtoms));
    }
  }

  TEST_CASE("partitionize") {
    Constructed p = partitionize(fixture("single_loop.json"));
    REQUIRE(p.model.size() == 1);
    CHECK(p.model.frame().r().test(0, 0));
    CHECK(p.map[0].state == 0);
    CHECK(p.map[0].partner == 0);
    CHECK(check_property(p.model.frame(), Predicate::par));
    CHECK_THROWS_AS(partitionize(fixture("single_dead.json")), PreconditionFailed);
    Model asym(Frame(Relation::identity(2), Relation::from_pairs(2, {{0, 0}, {1, 1}, {0, 1}})), {});
    CHECK_THROWS_AS(partitionize(asym), PreconditionFailed);

    std::mt19937 rng(25);
    for (int i = 0; i < 500; ++i) {
      Model x = reflexive_model(rng, gen::size(rng, 1, 4), true);
      Constructed c = partitionize(x);
      CHECK(check_property(c.model.frame(), Predicate::par));
      // One state per R-pair, counted with orientation.
      CHECK(c.model.size() == static_cast<int>(x.frame().r().pairs().size()));
      check_transfer(x, c, gen::formula(rng, 4, kAtoms));
    }
  }

  TEST_CASE("rooted join") {
    Model loop = fixture("single_loop.json");
    Model dead = fixture("single_dead.json");
    Joined j = rooted_join(loop, 0, dead, 0);
    REQUIRE(j.model.size() == 3);
    const Frame& f = j.model.frame();
    for (int t = 0; t < 3; ++t) CHECK(f.le().test(j.root, t));
    CHECK(j.map[j.root].state == -1);
    for (int t = 0; t < 3; ++t)
      if (t != j.root) CHECK_FALSE(f.le().test(t, j.root));
    CHECK(f.r().pairs().size() == 1);
    CHECK_FALSE(sat(j.model, j.root, parse("[]F|<>T")));
  }

  TEST_CASE("rooted join keeps old states and has the disjunction property") {
    std::mt19937 rng(26);
    for (int i = 0; i < 500; ++i) {
      Model m1 = gen::model(rng, gen::frame(rng, gen::size(rng, 1, 4)), kAtoms);
      Model m2 = gen::model(rng, gen::frame(rng, gen::size(rng, 1, 4)), kAtoms);
      int s1 = gen::size(rng, 0, m1.size() - 1);
      int s2 = gen::size(rng, 0, m2.size() - 1);
      Joined j = rooted_join(m1, s1, m2, s2);
      REQUIRE(j.model.size() == m1.size() + m2.size() + 1);
      Formula a = gen::formula(rng, 3, kAtoms);
      Formula b = gen::formula(rng, 3, kAtoms);
      for (const Formula& c : closure(Formula::disj(a, b))) {
        StateSet t = truth_set(j.model, c), t1 = truth_set(m1, c), t2 = truth_set(m2, c);
        for (int s = 0; s < j.model.size(); ++s) {
          if (s == j.root) continue;
          const Origin& o = j.map[s];
          StateSet src = o.component == 1 ? t1 : t2;
          REQUIRE(((t >> s) & 1U) == ((src >> o.state) & 1U));
        }
      }
      if (sat(j.model, j.root, Formula::disj(a, b))) {
        bool left = sat(m1, s1, a) && sat(m2, s2, a);
        bool right = sat(m1, s1, b) && sat(m2, s2, b);
        CHECK((left || right));
      }
    }
  }
}
