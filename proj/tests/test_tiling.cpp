#include <algorithm>
#include <string>
#include <vector>

#include <doctest.h>

#include "announce/check.hpp"
#include "announce/json_io.hpp"
#include "announce/parser.hpp"
#include "announce/random.hpp"
#include "announce/tiling.hpp"
#include "test_helpers.hpp"

using namespace announce;

namespace {

TileSet uniform() { return TileSet({"red", "blue"}, {Tile{"red", "blue", "red", "blue"}}); }

TileSet dominos() {
  return TileSet({"red", "blue"}, {Tile{"red", "blue", "blue", "red"},
                                   Tile{"blue", "red", "red", "blue"}});
}

TileSet vertical_mismatch() {
  return TileSet({"red", "blue", "green"}, {Tile{"red", "blue", "green", "blue"}});
}

TileGrid grid_of(int w, int h, std::vector<std::vector<int>> cells) {
  TileGrid g;
  g.width = w;
  g.height = h;
  g.cells = std::move(cells);
  return g;
}

// Independent validity reference: a blind double loop over all cell pairs,
// matching colours only for horizontally/vertically adjacent ones.
bool oracle_valid(const TileSet& ts, const TileGrid& g) {
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i)
      for (int j2 = 0; j2 < g.height; ++j2)
        for (int i2 = 0; i2 < g.width; ++i2) {
          const Tile& t = ts.tiles()[g.at(i, j)];
          const Tile& u = ts.tiles()[g.at(i2, j2)];
          if (j2 == j && i2 == i + 1 && t.right != u.left) return false;
          if (i2 == i && j2 == j + 1 && t.up != u.down) return false;
        }
  return true;
}

}  // namespace

TEST_CASE("tile sets validate their palette") {
  CHECK_FAILS_WITH(Errc::bad_input, TileSet({"red"}, {}));
  CHECK_FAILS_WITH(Errc::bad_input, TileSet({}, {Tile{"red", "red", "red", "red"}}));
  CHECK_FAILS_WITH(Errc::bad_input, TileSet({""}, {Tile{"", "", "", ""}}));
  CHECK_FAILS_WITH(Errc::bad_input,
                   TileSet({"red", "red"}, {Tile{"red", "red", "red", "red"}}));
  CHECK_FAILS_WITH(Errc::bad_input,
                   TileSet({"red"}, {Tile{"red", "red", "blue", "red"}}));
  TileSet ts = dominos();
  CHECK(ts.size() == 2);
  CHECK(ts.colours() == std::vector<std::string>{"red", "blue"});
  CHECK(ts.tiles()[1].up == "blue");
}

TEST_CASE("validity agrees with the blind pairwise reference") {
  Rng rng(41);
  TileSet ts = dominos();
  for (int w = 1; w <= 4; ++w)
    for (int h = 1; h <= 4; ++h)
      for (int trial = 0; trial < 20; ++trial) {
        TileGrid g;
        g.width = w;
        g.height = h;
        g.cells.assign(h, std::vector<int>(w, 0));
        for (auto& row : g.cells)
          for (int& c : row) c = static_cast<int>(rng.below(ts.size()));
        CHECK(valid_tiling(ts, g) == oracle_valid(ts, g));
      }
}

TEST_CASE("validity rejects malformed grids") {
  TileSet ts = uniform();
  CHECK_FAILS_WITH(Errc::bad_input, valid_tiling(ts, grid_of(2, 1, {{0, 0}, {0, 0}})));
  CHECK_FAILS_WITH(Errc::bad_input, valid_tiling(ts, grid_of(2, 2, {{0, 0}, {0}})));
  CHECK_FAILS_WITH(Errc::index_out_of_range, valid_tiling(ts, grid_of(1, 1, {{5}})));
  CHECK_FAILS_WITH(Errc::index_out_of_range, valid_tiling(ts, grid_of(1, 1, {{-1}})));
}

TEST_CASE("search returns the lexicographically first tiling") {
  auto found = search_tiling(dominos(), 2, 2);
  REQUIRE(found.has_value());
  CHECK(*found == grid_of(2, 2, {{0, 1}, {1, 0}}));
  CHECK(valid_tiling(dominos(), *found));
  auto three = search_tiling(dominos(), 3, 3);
  REQUIRE(three.has_value());
  CHECK(valid_tiling(dominos(), *three));
}

TEST_CASE("search existence matches exhaustive enumeration on small boards") {
  Rng rng(43);
  for (int iter = 0; iter < 30; ++iter) {
    // Random 2-tile sets over 2 colours; 2x2 boards have only 16 candidates.
    std::vector<std::string> pal = {"red", "blue"};
    auto side = [&]() { return pal[rng.below(2)]; };
    TileSet ts(pal, {Tile{side(), side(), side(), side()},
                     Tile{side(), side(), side(), side()}});
    bool any = false;
    for (int bits = 0; bits < 16 && !any; ++bits) {
      TileGrid g = grid_of(2, 2, {{bits & 1, (bits >> 1) & 1},
                                  {(bits >> 2) & 1, (bits >> 3) & 1}});
      any = valid_tiling(ts, g);
    }
    auto found = search_tiling(ts, 2, 2);
    CHECK(found.has_value() == any);
    if (found) CHECK(valid_tiling(ts, *found));
  }
}

TEST_CASE("a vertical colour clash blocks columns but not rows") {
  CHECK(search_tiling(vertical_mismatch(), 3, 1).has_value());
  CHECK_FALSE(search_tiling(vertical_mismatch(), 1, 2).has_value());
  CHECK_FALSE(search_tiling(vertical_mismatch(), 2, 2).has_value());
  CHECK_FAILS_WITH(Errc::bad_input, search_tiling(uniform(), 0, 2));
}

TEST_CASE("generated satisfiability formulas stay in the announcement-free fragment") {
  Formula sat = gen_sat(uniform());
  CHECK(is_el(sat));
  CHECK(modal_depth(sat) == 4);
  CHECK(parse_formula(sat.str()) == sat);
  std::vector<std::string> atoms = atoms_of(sat);
  for (const std::string a : {"red", "blue", "white", "u", "d", "l", "r"})
    CHECK(std::find(atoms.begin(), atoms.end(), a) != atoms.end());
  CHECK(agents_of(sat) == std::vector<std::string>{"e", "s"});
}

TEST_CASE("user palettes may not shadow the reserved labels") {
  CHECK(reserved_atoms().size() == 9);
  for (const std::string bad : {"white", "u", "heart"}) {
    TileSet ts({bad, "x"}, {Tile{bad, "x", bad, "x"}});
    CHECK_FAILS_WITH(Errc::palette_clash, gen_sat(ts));
    CHECK_FAILS_WITH(Errc::palette_clash, gen_grid_model(ts, grid_of(1, 1, {{0}})));
  }
}

TEST_CASE("the local grid description is epistemic with the recorded depth") {
  Formula local = gen_local();
  CHECK(is_el(local));
  CHECK(modal_depth(local) == 8);
  CHECK(parse_formula(local.str()) == local);
  CHECK(agents_of(local) == std::vector<std::string>{"e", "s"});
}

TEST_CASE("the checkerboard variants carry their quantifier") {
  Formula apa = gen_cb(CbKind::apal);
  Formula ga = gen_cb(CbKind::gal);
  Formula ca = gen_cb(CbKind::cal);
  for (const Formula& f : {apa, ga, ca}) {
    CHECK_FALSE(is_el(f));
    CHECK(parse_formula(f.str()) == f);
  }
  CHECK(apa.str().find("[!]") != std::string::npos);
  CHECK(apa.str().find("[G{") == std::string::npos);
  CHECK(ga.str().find("[G{e}]") != std::string::npos);
  CHECK(ga.str().find("[G{s}]") != std::string::npos);
  CHECK(ga.str().find("[!]") == std::string::npos);
  CHECK(ca.str().find("[C{e,s}]") != std::string::npos);
}

TEST_CASE("grid models have five states per square and the documented relations") {
  PointedModel one = gen_grid_model(uniform(), grid_of(1, 1, {{0}}));
  CHECK(one.model.num_states() == 5);
  CHECK(one.point == "0_0_mid");
  CHECK(one.model.agents() == std::vector<std::string>{"e", "s"});

  PointedModel pm = gen_grid_model(uniform(), grid_of(2, 2, {{0, 0}, {0, 0}}));
  const Model& m = pm.model;
  CHECK(m.num_states() == 20);
  // Square agent: each square is one block.
  CHECK(m.equiv_class("s", "0_0_u") ==
        std::vector<std::string>{"0_0_u", "0_0_d", "0_0_l", "0_0_r", "0_0_mid"});
  // Edge agent: touching sides pair up, all middles fuse, boundary sides stay
  // alone.
  CHECK(m.equiv_class("e", "0_0_r") == std::vector<std::string>{"0_0_r", "1_0_l"});
  CHECK(m.equiv_class("e", "0_0_u") == std::vector<std::string>{"0_0_u", "0_1_d"});
  CHECK(m.equiv_class("e", "0_0_mid") ==
        std::vector<std::string>{"0_0_mid", "1_0_mid", "0_1_mid", "1_1_mid"});
  CHECK(m.equiv_class("e", "0_0_d") == std::vector<std::string>{"0_0_d"});
  CHECK(m.equiv_class("e", "1_0_r") == std::vector<std::string>{"1_0_r"});
  // Valuation: direction labels, tile colours on sides, white + suit by
  // parity on middles.
  auto has = [&](const std::string& st, const std::string& atom) {
    return m.prop_index(atom) >= 0 && m.holds(m.state_index(st), m.prop_index(atom));
  };
  CHECK(has("0_0_u", "u"));
  CHECK(has("0_0_u", "red"));
  CHECK(has("0_0_r", "blue"));
  CHECK(has("0_0_mid", "white"));
  CHECK(has("0_0_mid", "heart"));
  CHECK(has("1_0_mid", "club"));
  CHECK(has("0_1_mid", "spade"));
  CHECK(has("1_1_mid", "diamond"));
  CHECK_FALSE(has("0_0_mid", "u"));

  CHECK_FAILS_WITH(Errc::invalid_tiling,
                   gen_grid_model(dominos(), grid_of(2, 1, {{0, 0}})));
}

TEST_CASE("extraction inverts generation") {
  for (const TileSet& ts : {uniform(), dominos()}) {
    for (int w = 1; w <= 3; ++w)
      for (int h = 1; h <= 3; ++h) {
        auto g = search_tiling(ts, w, h);
        REQUIRE(g.has_value());
        PointedModel pm = gen_grid_model(ts, *g);
        CHECK(extract_tiling(pm, ts, w, h) == *g);
      }
  }
}

TEST_CASE("extraction fails loudly on butchered or mislabelled models") {
  TileSet ts = uniform();
  PointedModel pm = gen_grid_model(ts, grid_of(2, 2, {{0, 0}, {0, 0}}));
  // Remove the left side of the second square: the rightward walk breaks.
  StateSet keep = pm.model.all_states();
  keep.reset(pm.model.state_index("1_0_l"));
  PointedModel cut{pm.model.restrict(keep), pm.point};
  CHECK_FAILS_WITH(Errc::chain_broken, extract_tiling(cut, ts, 2, 2));
  // A tile set whose colours cannot produce the model's sides is rejected.
  TileSet other({"red", "blue"}, {Tile{"blue", "red", "blue", "red"}});
  CHECK_FAILS_WITH(Errc::invalid_tiling, extract_tiling(pm, other, 2, 2));
  CHECK_FAILS_WITH(Errc::bad_input, extract_tiling(pm, ts, 0, 1));
}

TEST_CASE("tile and grid json round trips with strict keys") {
  TileSet ts = dominos();
  nlohmann::json tj = tiles_to_json(ts);
  CHECK(tiles_to_json(tiles_from_json(tj)) == tj);
  nlohmann::json bad = tj;
  bad["spare"] = 1;
  CHECK_FAILS_WITH(Errc::bad_input, tiles_from_json(bad));
  bad = tj;
  bad["tiles"][0].erase("up");
  CHECK_FAILS_WITH(Errc::bad_input, tiles_from_json(bad));

  TileGrid g = grid_of(2, 2, {{0, 1}, {1, 0}});
  nlohmann::json gj = grid_to_json(g);
  CHECK(grid_from_json(gj) == g);
  bad = gj;
  bad["cells"][0] = {0, 1, 0};
  CHECK_FAILS_WITH(Errc::bad_input, grid_from_json(bad));
  bad = gj;
  bad["width"] = "two";
  CHECK_FAILS_WITH(Errc::bad_input, grid_from_json(bad));
}
