#include <cstdlib>
#include <string>
#include <vector>

#include <doctest.h>

#include "announce/check.hpp"
#include "announce/parser.hpp"
#include "announce/random.hpp"
#include "test_helpers.hpp"

using namespace announce;

namespace {

bool holds_at(const Model& m, const std::string& state, const std::string& formula,
              CheckOptions opt = {}) {
  CheckContext ctx(m, opt);
  return ctx.check(state, parse_formula(formula));
}

}  // namespace

TEST_CASE("knowledge and booleans on the two-bit model") {
  Model m = testutil::two_bit_model();
  CHECK(holds_at(m, "w10", "p"));
  CHECK_FALSE(holds_at(m, "w10", "q"));
  CHECK(holds_at(m, "w10", "K a p"));       // both a-neighbours satisfy p
  CHECK_FALSE(holds_at(m, "w10", "K b p"));  // b cannot rule out w00
  CHECK(holds_at(m, "w10", "Kh b p"));
  CHECK(holds_at(m, "w10", "K b ~q"));
  CHECK(holds_at(m, "w10", "p & ~q & (q -> false)"));
  CHECK(holds_at(m, "w10", "true | false"));
  CHECK_FALSE(holds_at(m, "w10", "K a q | K b q"));
}

TEST_CASE("announcements restrict and evaluate vacuously when false") {
  Model m = testutil::two_bit_model();
  CHECK(holds_at(m, "w01", "~K a q"));
  CHECK(holds_at(m, "w01", "[q] K a q"));  // q-worlds split a's blocks into singletons
  CHECK(holds_at(m, "w00", "[p] false"));  // p fails at w00, so the box is vacuous
  CHECK_FALSE(holds_at(m, "w00", "<p> true"));
  CHECK(holds_at(m, "w11", "[p] [q] (K a q & K b p)"));
  CHECK(holds_at(m, "w11", "<p | q> K a p"));
  CHECK_FALSE(holds_at(m, "w11", "<p | q> K a q"));
}

TEST_CASE("quantified boxes on the two-bit model") {
  Model m = testutil::two_bit_model();
  CHECK(holds_at(m, "w01", "~K a q & <!> K a q"));
  CHECK(holds_at(m, "w11", "[!] K a p"));  // every truthful announcement keeps K a p
  CHECK_FALSE(holds_at(m, "w11", "[!] K a q"));
  CHECK(holds_at(m, "w11", "<G{a}> K b p"));
  CHECK_FALSE(holds_at(m, "w11", "<G{b}> K b p"));
  CHECK(holds_at(m, "w11", "<G{a,b}> (K a (p & q) & K b (p & q))"));
  CHECK(holds_at(m, "w11", "<C{a}> (K b p | K b ~p)"));
}

TEST_CASE("the coalition box differs between dual and literal readings") {
  Model m = testutil::two_bit_model();
  // Dual reading: the opposing coalition must answer truthfully, so no answer
  // rescues a body that is plainly false.
  CHECK_FALSE(holds_at(m, "w11", "[C{a}] false"));
  // Literal reading: an answer that excludes the evaluation point satisfies
  // the clause vacuously.
  CheckOptions lit;
  lit.cal_literal = true;
  CHECK(holds_at(m, "w11", "[C{a}] false", lit));
  // With the full agent set as coalition both readings coincide with the
  // group box.
  for (const std::string& s : m.states()) {
    bool g = holds_at(m, s, "[G{a,b}] K a p");
    CHECK(holds_at(m, s, "[C{a,b}] K a p") == g);
    CHECK(holds_at(m, s, "[C{a,b}] K a p", lit) == g);
  }
}

TEST_CASE("gal_sets lists exactly the group-definable announcement extensions") {
  Model m = testutil::two_bit_model();
  CheckContext ctx(m);
  std::vector<StateSet> a_sets = ctx.gal_sets({"a"});
  REQUIRE(a_sets.size() == 3);
  CHECK(m.names_of(a_sets[0]) == std::vector<std::string>{"w00", "w01"});
  CHECK(m.names_of(a_sets[1]) == std::vector<std::string>{"w10", "w11"});
  CHECK(m.names_of(a_sets[2]) == std::vector<std::string>{"w00", "w01", "w10", "w11"});
  CHECK(ctx.gal_sets({}).size() == 1);
  CHECK(ctx.gal_sets({}).front() == m.all_states());
  CHECK(ctx.gal_sets({"a", "b"}).size() == 9);  // 4 cells + 2 rows + 2 columns + all
  CHECK(ctx.gal_sets({"b", "a", "b"}).size() == 9);
  CHECK_FAILS_WITH(Errc::signature_mismatch, ctx.gal_sets({"z"}));
}

TEST_CASE("extension evaluates under a restriction without materialising it") {
  Model m = testutil::two_bit_model();
  CheckContext ctx(m);
  CHECK(m.names_of(ctx.extension(parse_formula("K b q"))) ==
        std::vector<std::string>{"w01", "w11"});
  StateSet q_worlds = ctx.extension(parse_formula("q"));
  // Inside the q-worlds agent a tells the rows apart.
  CHECK(m.names_of(ctx.extension(q_worlds, parse_formula("K a q"))) ==
        std::vector<std::string>{"w01", "w11"});
  CHECK(ctx.extension(q_worlds, parse_formula("K a p")).members() ==
        std::vector<int>{m.state_index("w11")});
  CHECK_FAILS_WITH(Errc::bad_input, ctx.extension(StateSet(7), parse_formula("p")));
}

TEST_CASE("validity quantifies over all states") {
  Model m = testutil::two_bit_model();
  CheckContext ctx(m);
  CHECK(ctx.check_validity(parse_formula("p | ~p")));
  CHECK(ctx.check_validity(parse_formula("K a p -> p")));
  CHECK(ctx.check_validity(parse_formula("K a p -> K a K a p")));
  CHECK(ctx.check_validity(parse_formula("~K a p -> K a ~K a p")));
  CHECK_FALSE(ctx.check_validity(parse_formula("p")));
}

TEST_CASE("atoms outside the model are false; agents outside it are an error") {
  Model m = testutil::two_bit_model();
  CHECK_FALSE(holds_at(m, "w11", "zz"));
  CHECK(holds_at(m, "w11", "~zz & K a ~zz"));
  CHECK_FAILS_WITH(Errc::signature_mismatch, holds_at(m, "w11", "K z p"));
  CHECK_FAILS_WITH(Errc::signature_mismatch, holds_at(m, "w11", "p | [G{z}] p"));
  CHECK_FAILS_WITH(Errc::unknown_state, holds_at(m, "nope", "p"));
  CheckContext ctx(m);
  CHECK_FAILS_WITH(Errc::unknown_state, ctx.check(9, parse_formula("p")));
}

TEST_CASE("a tiny budget aborts quantifier enumeration loudly") {
  Model m = testutil::two_bit_model();
  CheckOptions opt;
  opt.budget = 1;  // the two-bit model has 4 stable classes = 15 masks
  CHECK_FAILS_WITH(Errc::quantifier_budget_exceeded, holds_at(m, "w11", "[!] true", opt));
  CHECK_FAILS_WITH(Errc::quantifier_budget_exceeded, holds_at(m, "w11", "[G{a,b}] true", opt));
  opt.budget = 1 << 20;
  CHECK(holds_at(m, "w11", "[!] true", opt));
}

TEST_CASE("the default budget honours the environment override") {
  unsetenv("ANNOUNCE_BUDGET");
  CHECK(default_budget() == (1ull << 22));
  setenv("ANNOUNCE_BUDGET", "123", 1);
  CHECK(default_budget() == 123);
  setenv("ANNOUNCE_BUDGET", "0", 1);
  CHECK_FAILS_WITH(Errc::bad_input, default_budget());
  setenv("ANNOUNCE_BUDGET", "12abc", 1);
  CHECK_FAILS_WITH(Errc::bad_input, default_budget());
  unsetenv("ANNOUNCE_BUDGET");
}

TEST_CASE("failed universal quantifiers report the first falsifying candidate") {
  Model m = testutil::two_bit_model();
  CheckContext ctx(m);
  CHECK_FALSE(ctx.check("w00", parse_formula("[!] false")));
  REQUIRE(ctx.failing_candidate().has_value());
  const FailingCandidate& fc = *ctx.failing_candidate();
  CHECK(fc.box == "[!]false");
  CHECK(fc.state == "w00");
  CHECK(fc.announcement == std::vector<std::string>{"w00"});
  // A succeeding check clears the diagnostic.
  CHECK(ctx.check("w00", parse_formula("[!] true")));
  CHECK_FALSE(ctx.failing_candidate().has_value());
}

TEST_CASE("checks are deterministic including their counters") {
  Rng rng(29);
  for (int iter = 0; iter < 20; ++iter) {
    Model m = random_model(rng, 6, 2, 2);
    Formula f = Formula::apal_dual(random_pal_formula(rng, m.props(), m.agents(), 2));
    CheckContext c1(m), c2(m);
    for (int s = 0; s < m.num_states(); ++s) CHECK(c1.check(s, f) == c2.check(s, f));
    CHECK(c1.stats().candidates_enumerated == c2.stats().candidates_enumerated);
    CHECK(c1.stats().quantifier_evals == c2.stats().quantifier_evals);
    // Re-checking in the same context hits the memo but gives the same answers.
    CheckContext c3(m);
    for (int s = 0; s < m.num_states(); ++s) {
      bool first = c3.check(s, f);
      CHECK(c3.check(s, f) == first);
    }
  }
}

TEST_CASE("group boxes with the full agent set match the coalition box everywhere") {
  Rng rng(31);
  for (int iter = 0; iter < 15; ++iter) {
    Model m = random_model(rng, 6, 2, 2);
    Formula body = random_pal_formula(rng, m.props(), m.agents(), 2);
    CheckContext ctx(m);
    CHECK(ctx.extension(Formula::gal(m.agents(), body)) ==
          ctx.extension(Formula::cal(m.agents(), body)));
  }
}

TEST_CASE("quantifier-free announcements coincide with model surgery") {
  // [psi] f is checked against physically restricting the model.
  Rng rng(37);
  for (int iter = 0; iter < 30; ++iter) {
    Model m = random_model(rng, 7, 3, 3);
    Formula psi = random_el_formula(rng, m.props(), m.agents(), 2);
    Formula body = random_el_formula(rng, m.props(), m.agents(), 2);
    CheckContext ctx(m);
    StateSet keep = ctx.extension(psi);
    for (int s = 0; s < m.num_states(); ++s) {
      bool announced = ctx.check(s, Formula::ann(psi, body));
      bool expected = true;  // vacuous when psi fails at s
      if (keep.test(s)) {
        Model cut = m.restrict(keep);
        CheckContext inner(cut);
        expected = inner.check(m.states()[s], body);
      }
      CHECK(announced == expected);
    }
  }
}
