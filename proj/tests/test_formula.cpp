#include <string>
#include <vector>

#include <doctest.h>

#include "announce/formula.hpp"
#include "announce/parser.hpp"
#include "announce/random.hpp"
#include "test_helpers.hpp"

using namespace announce;

namespace {

// The five dual operators are sugar; after construction only the connectives
// in Conn may appear, so a full walk must never see anything else.
void assert_core_connectives(const Formula& f) {
  switch (f.conn()) {
    case Conn::top:
    case Conn::bottom:
    case Conn::atom:
      return;
    case Conn::neg:
    case Conn::know:
    case Conn::apal:
    case Conn::gal:
    case Conn::cal:
      assert_core_connectives(f.child());
      return;
    case Conn::conj:
    case Conn::disj:
    case Conn::impl:
    case Conn::ann:
      assert_core_connectives(f.left());
      assert_core_connectives(f.right());
      return;
  }
  FAIL("connective outside the core set");
}

}  // namespace

TEST_CASE("duals normalise to negation around the matching box") {
  Formula p = Formula::atom("p");
  Formula f = Formula::know_dual("a", p);
  CHECK(f == Formula::neg(Formula::know("a", Formula::neg(p))));
  CHECK(Formula::ann_dual(p, p) == Formula::neg(Formula::ann(p, Formula::neg(p))));
  CHECK(Formula::apal_dual(p) == Formula::neg(Formula::apal(Formula::neg(p))));
  CHECK(Formula::gal_dual({"a"}, p) == Formula::neg(Formula::gal({"a"}, Formula::neg(p))));
  CHECK(Formula::cal_dual({"a"}, p) == Formula::neg(Formula::cal({"a"}, Formula::neg(p))));
  assert_core_connectives(parse_formula("Kh a <p> q & <!> p & <G{a}> p & <C{a}> p"));
}

TEST_CASE("groups are stored sorted and deduplicated") {
  Formula f = Formula::gal({"b", "a", "b"}, Formula::atom("p"));
  CHECK(f.group() == std::vector<std::string>{"a", "b"});
  CHECK(f.str() == "[G{a,b}]p");
  CHECK(parse_formula("[G{b,a,b}] p") == f);
  CHECK(parse_formula("[C{}] p").group().empty());
}

TEST_CASE("empty folds and fold shapes") {
  CHECK(Formula::conj_all({}) == Formula::top());
  CHECK(Formula::disj_all({}) == Formula::bottom());
  Formula p = Formula::atom("p"), q = Formula::atom("q"), r = Formula::atom("r");
  CHECK(Formula::conj_all({p}) == p);
  CHECK(Formula::conj_all({p, q, r}) == Formula::conj(Formula::conj(p, q), r));
  CHECK(Formula::conj_all({p, q, r}).str() == "p & q & r");
}

TEST_CASE("printing follows precedence and parses back") {
  CHECK(parse_formula("p -> q -> r") ==
        Formula::impl(Formula::atom("p"), Formula::impl(Formula::atom("q"), Formula::atom("r"))));
  CHECK(parse_formula("(p -> q) -> r").str() == "(p -> q) -> r");
  CHECK(parse_formula("~p & q | r").str() == "~p & q | r");
  CHECK(parse_formula("~(p & q)").str() == "~(p & q)");
  CHECK(parse_formula("p | q & r") ==
        Formula::disj(Formula::atom("p"), Formula::conj(Formula::atom("q"), Formula::atom("r"))));
  CHECK(parse_formula("K a p & q") ==
        Formula::conj(Formula::know("a", Formula::atom("p")), Formula::atom("q")));
  CHECK(parse_formula("K a (p & q)").str() == "K a (p & q)");
  CHECK(parse_formula("[p & q] r").str() == "[p & q]r");
  CHECK(parse_formula("[!] (p -> q)").str() == "[!](p -> q)");
  CHECK(parse_formula("true & ~false").str() == "true & ~false");
  // An identifier head without a brace is an announcement of that atom.
  CHECK(parse_formula("[G] p") == Formula::ann(Formula::atom("G"), Formula::atom("p")));
}

TEST_CASE("parse after print is the identity on random formulas") {
  Rng rng(5);
  std::vector<std::string> atoms = {"p", "q", "r"};
  std::vector<std::string> agents = {"a", "b"};
  for (int i = 0; i < 300; ++i) {
    Formula f = random_pal_formula(rng, atoms, agents, 4);
    Formula g = parse_formula(f.str());
    CHECK(g == f);
    CHECK(g.str() == f.str());
    assert_core_connectives(f);
  }
}

TEST_CASE("parser reports positions and unknown quantifier heads") {
  CHECK_FAILS_WITH(Errc::syntax_error, parse_formula(""));
  CHECK_FAILS_WITH(Errc::syntax_error, parse_formula("p &"));
  CHECK_FAILS_WITH(Errc::syntax_error, parse_formula("(p"));
  CHECK_FAILS_WITH(Errc::syntax_error, parse_formula("p q"));
  CHECK_FAILS_WITH(Errc::syntax_error, parse_formula("K p"));  // needs agent + body
  CHECK_FAILS_WITH(Errc::syntax_error, parse_formula("[p] "));
  CHECK_FAILS_WITH(Errc::syntax_error, parse_formula("p # q"));
  CHECK_FAILS_WITH(Errc::unknown_operator, parse_formula("[Z{a}] p"));
  CHECK_FAILS_WITH(Errc::unknown_operator, parse_formula("<Z{a}> p"));
  bool threw = false;
  try {
    parse_formula("p &\n& q");
  } catch (const Error& e) {
    threw = true;
    CHECK(std::string(e.what()).find("2:1") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("modal depth follows the structural laws") {
  Formula p = Formula::atom("p");
  CHECK(modal_depth(p) == 0);
  CHECK(modal_depth(Formula::top()) == 0);
  CHECK(modal_depth(Formula::neg(p)) == 0);
  CHECK(modal_depth(Formula::know("a", p)) == 1);
  CHECK(modal_depth(Formula::know("a", Formula::know("b", p))) == 2);
  CHECK(modal_depth(Formula::conj(Formula::know("a", p), p)) == 1);
  CHECK(modal_depth(parse_formula("K a p -> K b K a p")) == 2);
  CHECK(modal_depth(parse_formula("Kh a Kh b Kh a p")) == 3);
  CHECK_FAILS_WITH(Errc::not_epistemic, modal_depth(parse_formula("[p] q")));
  CHECK_FAILS_WITH(Errc::not_epistemic, modal_depth(parse_formula("[!] q")));
  CHECK_FAILS_WITH(Errc::not_epistemic, modal_depth(parse_formula("[G{a}] q")));
  CHECK_FAILS_WITH(Errc::not_epistemic, modal_depth(parse_formula("<C{a}> q")));
}

TEST_CASE("announcement-free recognisers") {
  CHECK(is_el(parse_formula("K a (p -> ~K b q)")));
  CHECK_FALSE(is_el(parse_formula("[p] q")));
  CHECK_FALSE(is_el(parse_formula("K a [!] p")));
  CHECK(is_el_group(parse_formula("K a p & K b q"), {"a", "b"}));
  CHECK(is_el_group(parse_formula("K b q & K a p"), {"a", "b"}));
  CHECK_FALSE(is_el_group(parse_formula("K a p"), {"a", "b"}));
  CHECK_FALSE(is_el_group(parse_formula("K a p & K a q"), {"a", "b"}));
  CHECK_FALSE(is_el_group(parse_formula("K a p & q"), {"a"}));
  CHECK_FALSE(is_el_group(parse_formula("K a [!] p"), {"a"}));
  CHECK(is_el_group(Formula::top(), {}));
  CHECK_FALSE(is_el_group(Formula::atom("p"), {}));
}

TEST_CASE("signature collectors are sorted and exhaustive") {
  Formula f = parse_formula("[K b q] (K a p & <G{c,a}> r)");
  CHECK(atoms_of(f) == std::vector<std::string>{"p", "q", "r"});
  CHECK(agents_of(f) == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("construction rejects empty names") {
  CHECK_FAILS_WITH(Errc::bad_input, Formula::atom(""));
  CHECK_FAILS_WITH(Errc::bad_input, Formula::know("", Formula::top()));
  CHECK_FAILS_WITH(Errc::bad_input, Formula::gal({""}, Formula::top()));
}

TEST_CASE("random formula generators are deterministic and depth-bounded") {
  Rng r1(9), r2(9);
  std::vector<std::string> atoms = {"p", "q"};
  std::vector<std::string> agents = {"a"};
  for (int i = 0; i < 50; ++i) {
    Formula a = random_el_formula(r1, atoms, agents, 3);
    Formula b = random_el_formula(r2, atoms, agents, 3);
    CHECK(a == b);
    CHECK(is_el(a));
    CHECK(modal_depth(a) <= 3);
  }
}
