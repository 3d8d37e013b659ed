#include "announce/tiling.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace announce {

namespace {

const std::string kS = "s";
const std::string kE = "e";
const std::string kWhite = "white";
const std::vector<std::string> kDirs = {"u", "d", "l", "r"};
const std::vector<std::string> kSuits = {"heart", "club", "diamond", "spade"};

using F = Formula;

F K_s(F f) { return F::know(kS, std::move(f)); }
F K_e(F f) { return F::know(kE, std::move(f)); }
F Kh_s(F f) { return F::know_dual(kS, std::move(f)); }
F Kh_e(F f) { return F::know_dual(kE, std::move(f)); }
F at(const std::string& p) { return F::atom(p); }

void check_palette(const TileSet& ts) {
  const auto& reserved = reserved_atoms();
  for (const auto& c : ts.colours())
    if (std::find(reserved.begin(), reserved.end(), c) != reserved.end())
      fail(Errc::palette_clash, "colour \"" + c + "\" is reserved by the generated formulas");
}

// Colour set used by the generated formulas: the user palette followed by the
// centre colour.
std::vector<std::string> formula_palette(const TileSet& ts) {
  std::vector<std::string> c = ts.colours();
  c.push_back(kWhite);
  return c;
}

// For each suit, the suit of the square to the right and the square above.
struct SuitNeighbours {
  std::string suit, right, above;
};
const std::vector<SuitNeighbours> kAdj = {
    {"heart", "club", "spade"},
    {"club", "heart", "diamond"},
    {"diamond", "spade", "club"},
    {"spade", "diamond", "heart"},
};

F one_of(const std::vector<std::string>& atoms) {
  std::vector<F> disjuncts;
  for (const auto& a : atoms) {
    std::vector<F> cs = {at(a)};
    for (const auto& b : atoms)
      if (b != a) cs.push_back(F::neg(at(b)));
    disjuncts.push_back(F::conj_all(cs));
  }
  return F::disj_all(disjuncts);
}

F sq(const std::string& suit) {
  F dirs = F::disj_all({at("u"), at("d"), at("l"), at("r"), at(suit)});
  return F::conj_all({K_s(dirs), Kh_s(at("u")), Kh_s(at("d")), Kh_s(at("l")), Kh_s(at("r")),
                      Kh_s(at(suit))});
}

F edge_formula() {
  F row1 = F::impl(F::conj(K_e(F::disj(at("l"), at("r"))), Kh_e(at("r"))),
                   K_e(F::impl(at("l"), K_s(F::impl(at("u"), K_e(K_s(Kh_e(at("r")))))))));
  F row2 = F::impl(F::conj(K_e(F::disj(at("u"), at("d"))), Kh_e(at("u"))),
                   K_e(F::impl(at("d"), K_s(F::impl(at("r"), K_e(K_s(Kh_e(at("u")))))))));
  std::vector<F> suits;
  for (const auto& s : kSuits) suits.push_back(at(s));
  F row3 = F::conj_all(
      {K_e(F::disj_all(suits)), Kh_e(at("heart")), Kh_e(at("club")), Kh_e(at("diamond")),
       Kh_e(at("spade"))});
  return K_s(K_e(K_s(F::disj_all({row1, row2, row3}))));
}

F adj_formula() {
  std::vector<F> parts;
  for (const auto& a : kAdj) {
    F right = F::impl(at("r"), K_e(F::impl(at("l"), Kh_s(at(a.right)))));
    F up = F::impl(at("u"), K_e(F::impl(at("d"), Kh_s(at(a.above)))));
    parts.push_back(K_s(K_e(F::impl(at(a.suit), K_s(F::conj(right, up))))));
  }
  return F::conj_all(parts);
}

// The r,u,l,d cycle chain shared by all three cyc variants; `innermost` is
// the final link of the chain (the one mentioning "u").
F cycle_chain(F innermost) {
  F f = std::move(innermost);
  f = K_s(F::impl(at("d"), std::move(f)));
  f = K_e(F::impl(at("r"), std::move(f)));
  f = K_s(F::impl(at("l"), std::move(f)));
  f = K_e(F::impl(at("d"), std::move(f)));
  f = K_s(F::impl(at("u"), std::move(f)));
  f = K_e(F::impl(at("l"), std::move(f)));
  f = K_s(F::impl(at("r"), std::move(f)));
  return f;
}

F quantify(CbKind kind, F body) {
  switch (kind) {
    case CbKind::apal: return F::apal(std::move(body));
    case CbKind::gal: return F::gal({kS}, std::move(body));
    case CbKind::cal: return F::cal({kS, kE}, std::move(body));
  }
  fail(Errc::bad_input, "unknown quantifier kind");
}

F cyc_formula(CbKind kind) {
  std::vector<F> parts;
  for (const auto& s : kSuits) {
    // The group-quantified flavour asserts the final square positively (some
    // u-world whose square may be the suit); the other two keep it behind one
    // more K-link.
    F innermost = kind == CbKind::gal ? Kh_e(F::conj(at("u"), Kh_s(at(s))))
                                      : K_e(F::impl(at("u"), Kh_s(at(s))));
    parts.push_back(F::impl(at(s), quantify(kind, cycle_chain(std::move(innermost)))));
  }
  return F::conj_all(parts);
}

F ck_formula(CbKind kind) {
  auto leg = [&](const std::string& dir, const std::string& back, const std::string& other) {
    // [q](K_e ~other -> K_s(dir -> K_e(back -> K_s ~other)))
    F inner = K_s(F::neg(at(other)));
    inner = K_e(F::impl(at(back), std::move(inner)));
    inner = K_s(F::impl(at(dir), std::move(inner)));
    return quantify(kind, F::impl(K_e(F::neg(at(other))), std::move(inner)));
  };
  // t(X,Y,Z) instantiates Y as the suit to the right/left of X and Z as the
  // suit above/below, which is exactly the adjacency table.
  std::vector<F> parts;
  for (const auto& t : kAdj) {
    F conj;
    if (kind == CbKind::gal) {
      // t_ga(X,Y,Z) = X -> [G{e}] K_s /\ of the four direction legs.
      auto ga_leg = [&](const std::string& dir, const std::string& back,
                        const std::string& other) {
        return F::impl(at(dir), K_e(F::impl(at(back), Kh_s(at(other)))));
      };
      F body = F::conj_all({ga_leg("r", "l", t.right), ga_leg("u", "d", t.above),
                            ga_leg("l", "r", t.right), ga_leg("d", "u", t.above)});
      // Unlike the cycle clauses, these quantify over the edge agent's
      // announcements.
      conj = F::gal({kE}, K_s(std::move(body)));
    } else {
      conj = F::conj_all({leg("r", "l", t.right), leg("u", "d", t.above), leg("l", "r", t.right),
                          leg("d", "u", t.above)});
    }
    parts.push_back(F::impl(at(t.suit), std::move(conj)));
  }
  return F::conj_all(parts);
}

std::string state_name(int i, int j, const std::string& k) {
  return std::to_string(i) + "_" + std::to_string(j) + "_" + k;
}

}  // namespace

TileSet::TileSet(std::vector<std::string> colours, std::vector<Tile> tiles)
    : colours_(std::move(colours)), tiles_(std::move(tiles)) {
  if (tiles_.empty()) fail(Errc::bad_input, "tile set must contain at least one tile");
  std::set<std::string> seen;
  for (const auto& c : colours_) {
    if (c.empty()) fail(Errc::bad_input, "colour names must be nonempty");
    if (!seen.insert(c).second) fail(Errc::bad_input, "duplicate colour \"" + c + "\"");
  }
  for (size_t t = 0; t < tiles_.size(); ++t)
    for (const std::string* side : {&tiles_[t].up, &tiles_[t].right, &tiles_[t].down,
                                    &tiles_[t].left})
      if (!seen.count(*side))
        fail(Errc::bad_input, "tile " + std::to_string(t) + " uses colour \"" + *side +
                                  "\" missing from the palette");
}

bool valid_tiling(const TileSet& ts, const TileGrid& g) {
  if (g.width < 1 || g.height < 1 || static_cast<int>(g.cells.size()) != g.height)
    fail(Errc::bad_input, "grid cells must form a height x width array");
  for (const auto& row : g.cells)
    if (static_cast<int>(row.size()) != g.width)
      fail(Errc::bad_input, "grid cells must form a height x width array");
  for (const auto& row : g.cells)
    for (int c : row)
      if (c < 0 || c >= ts.size())
        fail(Errc::index_out_of_range,
             "tile index " + std::to_string(c) + " outside tile set of size " +
                 std::to_string(ts.size()));
  for (int j = 0; j < g.height; ++j) {
    for (int i = 0; i < g.width; ++i) {
      const Tile& t = ts.tiles()[g.at(i, j)];
      if (i + 1 < g.width && t.right != ts.tiles()[g.at(i + 1, j)].left) return false;
      if (j + 1 < g.height && t.up != ts.tiles()[g.at(i, j + 1)].down) return false;
    }
  }
  return true;
}

std::optional<TileGrid> search_tiling(const TileSet& ts, int width, int height) {
  if (width < 1 || height < 1) fail(Errc::bad_input, "grid dimensions must be positive");
  TileGrid g;
  g.width = width;
  g.height = height;
  g.cells.assign(height, std::vector<int>(width, 0));
  int total = width * height;
  // Depth-first over cells in row-major order (bottom row first); each cell
  // only needs to agree with its already-placed left and lower neighbours, so
  // the first complete assignment is the lexicographic least valid one.
  auto fits = [&](int pos, int tile) {
    int j = pos / width, i = pos % width;
    const Tile& t = ts.tiles()[tile];
    if (i > 0 && ts.tiles()[g.cells[j][i - 1]].right != t.left) return false;
    if (j > 0 && ts.tiles()[g.cells[j - 1][i]].up != t.down) return false;
    return true;
  };
  int pos = 0;
  std::vector<int> choice(total, -1);
  while (pos >= 0 && pos < total) {
    int next = choice[pos] + 1;
    while (next < ts.size() && !fits(pos, next)) ++next;
    if (next == ts.size()) {
      choice[pos] = -1;
      --pos;  // backtrack
      continue;
    }
    choice[pos] = next;
    g.cells[pos / width][pos % width] = next;
    ++pos;
  }
  if (pos < 0) return std::nullopt;
  return g;
}

const std::vector<std::string>& reserved_atoms() {
  static const std::vector<std::string> r = {"u",    "d",    "l",       "r",    "heart",
                                             "club", "diamond", "spade", "white"};
  return r;
}

Formula gen_sat(const TileSet& ts) {
  check_palette(ts);
  std::vector<std::string> palette = formula_palette(ts);

  F one_col = K_s(K_e(K_s(one_of(palette))));

  std::vector<F> tile_opts;
  for (const Tile& t : ts.tiles()) {
    tile_opts.push_back(F::conj_all({F::impl(at("u"), at(t.up)), F::impl(at("r"), at(t.right)),
                                     F::impl(at("d"), at(t.down)),
                                     F::impl(at("l"), at(t.left))}));
  }
  F tile_gamma = K_s(K_e(K_s(F::disj_all(tile_opts))));

  std::vector<F> known;
  for (const auto& c : palette) known.push_back(K_e(at(c)));
  F match = K_s(K_e(K_s(F::disj_all(known))));

  return F::conj_all({one_col, tile_gamma, match});
}

Formula gen_local() {
  std::vector<std::string> labels = kDirs;
  labels.insert(labels.end(), kSuits.begin(), kSuits.end());
  F one_label = K_s(K_e(K_s(one_of(labels))));
  F one_suit = K_s(K_e(F::disj_all({sq("heart"), sq("club"), sq("diamond"), sq("spade")})));
  return F::conj_all({one_label, one_suit, edge_formula(), adj_formula()});
}

Formula gen_cb(CbKind kind) {
  F body = F::conj_all({gen_local(), cyc_formula(kind), ck_formula(kind)});
  if (kind == CbKind::apal) return K_e(K_s(std::move(body)));
  return K_s(K_e(K_s(std::move(body))));
}

PointedModel gen_grid_model(const TileSet& ts, const TileGrid& g) {
  check_palette(ts);
  if (!valid_tiling(ts, g)) fail(Errc::invalid_tiling, "grid violates the edge-matching rules");

  std::vector<std::string> states;
  std::map<std::string, std::vector<std::string>> val;
  std::map<std::string, std::vector<std::vector<std::string>>> parts;
  auto& s_blocks = parts[kS];
  auto& e_blocks = parts[kE];
  std::vector<std::string> mids;

  const std::vector<std::string> kinds = {"u", "d", "l", "r", "mid"};
  for (int j = 0; j < g.height; ++j) {
    for (int i = 0; i < g.width; ++i) {
      const Tile& t = ts.tiles()[g.at(i, j)];
      std::vector<std::string> square;
      for (const auto& k : kinds) {
        std::string name = state_name(i, j, k);
        states.push_back(name);
        square.push_back(name);
      }
      s_blocks.push_back(square);

      for (const auto& k : kDirs) val[k].push_back(state_name(i, j, k));
      val[t.up].push_back(state_name(i, j, "u"));
      val[t.down].push_back(state_name(i, j, "d"));
      val[t.left].push_back(state_name(i, j, "l"));
      val[t.right].push_back(state_name(i, j, "r"));

      std::string mid = state_name(i, j, "mid");
      mids.push_back(mid);
      val[kWhite].push_back(mid);
      const std::string& suit =
          i % 2 == 0 ? (j % 2 == 0 ? "heart" : "spade") : (j % 2 == 0 ? "club" : "diamond");
      val[suit].push_back(mid);

      // Edge agent: horizontally/vertically touching sides pair up; sides on
      // the rectangle boundary have no partner and stay singletons.
      if (i + 1 < g.width)
        e_blocks.push_back({state_name(i, j, "r"), state_name(i + 1, j, "l")});
      else
        e_blocks.push_back({state_name(i, j, "r")});
      if (j + 1 < g.height)
        e_blocks.push_back({state_name(i, j, "u"), state_name(i, j + 1, "d")});
      else
        e_blocks.push_back({state_name(i, j, "u")});
      if (i == 0) e_blocks.push_back({state_name(i, j, "l")});
      if (j == 0) e_blocks.push_back({state_name(i, j, "d")});
    }
  }
  e_blocks.push_back(mids);

  Model m(states, {kE, kS}, val, parts);
  return PointedModel{std::move(m), state_name(0, 0, "mid")};
}

namespace {

// The set reached by `prog` from `from` must sit inside one s-class; returns
// a representative.
int step_square(const Model& m, int from, const Program& prog, const std::string& what) {
  StateSet hit = run_program(m, prog, from);
  if (hit.empty())
    fail(Errc::chain_broken, "no " + what + " world reachable from " + m.states()[from]);
  int rep = hit.first();
  const StateSet& cls = m.block(m.agent_index(kS), rep);
  if (!hit.is_subset_of(cls))
    fail(Errc::chain_broken,
         "ambiguous " + what + " step from " + m.states()[from] + ": worlds from several squares");
  return rep;
}

// The unique colour of the unique `dir` world in `state`'s square.
std::string side_colour(const Model& m, const TileSet& ts, int state, const std::string& dir) {
  int dp = m.prop_index(dir);
  if (dp < 0) fail(Errc::chain_broken, "model lacks the side label \"" + dir + "\"");
  StateSet worlds = m.block(m.agent_index(kS), state) & m.prop_extension(dp);
  if (worlds.empty())
    fail(Errc::chain_broken,
         "square of " + m.states()[state] + " has no \"" + dir + "\" world");
  std::string colour;
  bool ok = true;
  worlds.for_each([&](int w) {
    std::string found;
    for (const auto& c : ts.colours()) {
      int cp = m.prop_index(c);
      if (cp >= 0 && m.holds(w, cp)) {
        if (!found.empty()) ok = false;
        found = c;
      }
    }
    if (found.empty()) ok = false;
    if (colour.empty())
      colour = found;
    else if (colour != found)
      ok = false;
  });
  if (!ok || colour.empty())
    fail(Errc::chain_broken, "square of " + m.states()[state] + " has no unique \"" + dir +
                                 "\" colour");
  return colour;
}

int read_tile(const Model& m, const TileSet& ts, int state) {
  Tile t{side_colour(m, ts, state, "u"), side_colour(m, ts, state, "r"),
         side_colour(m, ts, state, "d"), side_colour(m, ts, state, "l")};
  for (int ix = 0; ix < ts.size(); ++ix)
    if (ts.tiles()[ix] == t) return ix;
  fail(Errc::invalid_tiling, "square of " + m.states()[state] +
                                 " spells (" + t.up + "," + t.right + "," + t.down + "," +
                                 t.left + "), not a tile of the set");
}

}  // namespace

TileGrid extract_tiling(const PointedModel& pm, const TileSet& ts, int width, int height) {
  if (width < 1 || height < 1) fail(Errc::bad_input, "grid dimensions must be positive");
  const Model& m = pm.model;
  Program right = parse_program("s;r?;e;l?");
  Program up = parse_program("s;u?;e;d?");

  TileGrid g;
  g.width = width;
  g.height = height;
  g.cells.assign(height, std::vector<int>(width, -1));

  int col0 = pm.point_index();
  for (int j = 0; j < height; ++j) {
    if (j > 0) col0 = step_square(m, col0, up, "upper neighbour");
    int cur = col0;
    for (int i = 0; i < width; ++i) {
      if (i > 0) cur = step_square(m, cur, right, "right neighbour");
      g.cells[j][i] = read_tile(m, ts, cur);
    }
  }
  return g;
}

}  // namespace announce
