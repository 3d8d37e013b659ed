#include "announce/suite.hpp"

#include <chrono>
#include <ostream>
#include <sstream>

#include "announce/bisim.hpp"
#include "announce/check.hpp"
#include "announce/json_io.hpp"
#include "announce/parser.hpp"
#include "announce/random.hpp"
#include "announce/tiling.hpp"

namespace announce {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Ctx {
  const SuiteOptions& opt;
  CriterionResult* r = nullptr;
  int fails = 0;

  Rng rng_for(int criterion) const {
    return Rng(opt.seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(criterion));
  }

  int pool_size(size_t index, int canonical) const {
    if (opt.sizes.empty()) return canonical;
    return opt.sizes[index % opt.sizes.size()];
  }

  void note(const std::string& line) { r->notes.push_back(line); }

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++fails;
    if (fails <= 10) r->notes.push_back("FAIL: " + what);
  }
};

Model figure1_model() {
  return Model({"w00", "w01", "w10", "w11"}, {"a", "b"},
               {{"p", {"w10", "w11"}}, {"q", {"w01", "w11"}}},
               {{"a", {{"w00", "w01"}, {"w10", "w11"}}},
                {"b", {{"w00", "w10"}, {"w01", "w11"}}}});
}

TileSet uniform_tiles() {
  return TileSet({"red", "blue"}, {Tile{"red", "blue", "red", "blue"}});
}

TileSet mismatch_tiles() {
  return TileSet({"red", "blue", "green"}, {Tile{"red", "blue", "green", "blue"}});
}

TileGrid constant_grid(int w, int h) {
  TileGrid g;
  g.width = w;
  g.height = h;
  g.cells.assign(h, std::vector<int>(w, 0));
  return g;
}

// ---- Criterion 1: the worked-example battery -------------------------------

void c1_battery(Ctx& c) {
  Model m = figure1_model();
  if (!c.opt.asset_dir.empty()) {
    ModelFile mf = load_model_file(c.opt.asset_dir + "/figure1.json");
    c.expect(mf.point && *mf.point == "w11", "shipped model's point is w11");
    c.expect(model_to_json(mf.model, mf.point) == model_to_json(m, std::string("w11")),
             "shipped figure1.json equals the constructed 4-state model");
    m = mf.model;
  } else {
    c.note("no asset directory given; battery runs on the constructed model");
  }

  CheckContext ctx(m);
  auto valid = [&](const std::string& f) { return ctx.check_validity(parse_formula(f)); };
  auto at = [&](const std::string& s, const std::string& f) {
    return ctx.check(s, parse_formula(f));
  };

  c.expect(at("w01", "~K a q & <!> K a q"), "(a) w01: ignorant of q, some announcement teaches q");
  c.expect(at("w11", "<G{a}> K b p"), "(b) w11: a can inform b of p");
  c.expect(valid("<G{a}> (K b p | K b ~p)"), "(c) a can always reveal the value of p");
  c.expect(valid("<G{b}> (K a q | K a ~q)"), "(c) b can always reveal the value of q");
  c.expect(at("w11", "<G{a,b}> (K a (p & q) & K b (p & q))"),
           "(d) w11: together they can reach shared knowledge");
  c.expect(valid("<C{a}> (K b p | K b ~p)"), "(e) a can reveal p whatever b says");
  c.expect(!valid("<C{a}> ~(K a q | K a ~q)"), "(e) a cannot enforce her own ignorance of q");
  c.expect(valid("<G{a}> ~(K a q | K a ~q)"), "(e) without b speaking, a's ignorance persists");

  Rng rng = c.rng_for(1);
  const std::vector<std::string> atoms = {"p", "q"}, agents = {"a", "b"};
  int mismatches = 0;
  for (int k = 0; k < 50; ++k) {
    Formula f = random_pal_formula(rng, atoms, agents, 2);
    for (int s = 0; s < m.num_states(); ++s)
      if (ctx.check(s, Formula::gal_dual({"a", "b"}, f)) !=
          ctx.check(s, Formula::cal_dual({"a", "b"}, f)))
        ++mismatches;
  }
  c.expect(mismatches == 0, "(f) full-group and full-coalition diamonds agree on 50 random bodies");
  c.note("checked 50 random bodies at 4 states for (f)");
}

// ---- Criterion 2: distinguishing formulas hit exactly their class ----------

void c2_distinguishing(Ctx& c) {
  Rng rng = c.rng_for(2);
  int models = 200, checked = 0;
  for (int i = 0; i < models; ++i) {
    Model m = random_model(rng, c.pool_size(i, 8), 3, 3);
    CheckContext ctx(m);
    for (int n = 0; n <= 4; ++n) {
      Partition part = nbisim(m, m.props(), n);
      std::vector<Formula> fs = class_formulas(m, m.props(), n);
      for (int s = 0; s < m.num_states(); ++s) {
        StateSet truth = ctx.extension(fs[part.class_of[s]]);
        StateSet block(m.num_states());
        for (int t = 0; t < m.num_states(); ++t)
          if (part.class_of[t] == part.class_of[s]) block.set(t);
        c.expect(truth == block, "truth set of the class formula of " + m.states()[s] +
                                     " at level " + std::to_string(n) + " equals its block (model " +
                                     std::to_string(i) + ")");
        ++checked;
      }
    }
  }
  c.note(std::to_string(models) + " models, levels 0..4, " + std::to_string(checked) +
         " state/level pairs");
}

// ---- Criterion 3: n-bisimilar states agree on depth-<=n formulas -----------

void c3_agreement(Ctx& c) {
  Rng rng = c.rng_for(3);
  int models = 200, formulas_per_model = 5, agreements = 0;
  for (int i = 0; i < models; ++i) {
    Model m = random_model(rng, c.pool_size(i, 8), 3, 3);
    CheckContext ctx(m);
    int n = rng.below(5);
    Partition part = nbisim(m, m.props(), n);
    for (int k = 0; k < formulas_per_model; ++k) {
      int depth = n == 0 ? 0 : rng.below(n + 1);
      Formula f = random_el_formula(rng, m.props(), m.agents(), depth);
      StateSet truth = ctx.extension(f);
      for (int s = 0; s < m.num_states(); ++s)
        for (int t = s + 1; t < m.num_states(); ++t)
          if (part.class_of[s] == part.class_of[t]) {
            c.expect(truth.test(s) == truth.test(t),
                     "level-" + std::to_string(n) + " bisimilar states " + m.states()[s] + "," +
                         m.states()[t] + " agree on a depth-" + std::to_string(depth) +
                         " formula (model " + std::to_string(i) + ")");
            ++agreements;
          }
    }
  }
  c.note(std::to_string(models * formulas_per_model) + " random formulas, " +
         std::to_string(agreements) + " bisimilar-pair agreements checked");
}

// ---- Criterion 4: the quantifier against a formula-level oracle ------------

void c4_oracle(Ctx& c) {
  Rng rng = c.rng_for(4);
  int models = 100, per_model = 20;
  for (int i = 0; i < models; ++i) {
    Model m = random_model(rng, c.pool_size(i, 5), 3, 3);
    CheckContext ctx(m);
    std::vector<Formula> cls = stable_class_formulas(m, m.props());
    int k = static_cast<int>(cls.size());
    if (k > 12) continue;  // only reachable with an oversized --sizes override
    for (int j = 0; j < per_model; ++j) {
      Formula body = random_pal_formula(rng, m.props(), m.agents(), 2);
      Formula boxed = Formula::apal(body);
      for (int s = 0; s < m.num_states(); ++s) {
        bool primary = ctx.check(s, boxed);
        bool oracle = true;
        for (std::uint64_t mask = 1; mask < (1ull << k); ++mask) {
          std::vector<Formula> parts;
          for (int b = 0; b < k; ++b)
            if ((mask >> b) & 1) parts.push_back(cls[b]);
          if (!ctx.check(s, Formula::ann(Formula::disj_all(parts), body))) {
            oracle = false;
            break;
          }
        }
        c.expect(primary == oracle, "closed-set quantifier agrees with announcing class-formula "
                                    "disjunctions at " +
                                        m.states()[s] + " (model " + std::to_string(i) +
                                        ", formula " + std::to_string(j) + ")");
      }
    }
  }
  c.note(std::to_string(models) + " models x " + std::to_string(per_model) + " bodies, every state");
}

// ---- Criterion 5: validities of the announcement logics --------------------

void c5_validities(Ctx& c) {
  Rng rng = c.rng_for(5);
  int models = 100;
  for (int i = 0; i < models; ++i) {
    Model m = random_model(rng, c.pool_size(i, 6), 3, 3);
    CheckContext ctx(m);
    const auto& agents = m.agents();
    Formula psi = random_pal_formula(rng, m.props(), agents, 2);
    Formula phi = random_pal_formula(rng, m.props(), agents, 2);
    Formula p = Formula::atom(rng.pick(m.props()));
    std::string a = rng.pick(agents);
    std::vector<std::string> g;
    for (const auto& ag : agents)
      if (rng.flip()) g.push_back(ag);
    if (g.empty()) g.push_back(a);

    auto iff = [](Formula x, Formula y) {
      return Formula::conj(Formula::impl(x, y), Formula::impl(y, x));
    };
    auto check_valid = [&](Formula f, const std::string& what) {
      c.expect(ctx.check_validity(f), what + " (model " + std::to_string(i) + ")");
    };

    check_valid(iff(Formula::ann(psi, p), Formula::impl(psi, p)),
                "announcement reduction on atoms");
    check_valid(iff(Formula::ann(psi, Formula::neg(phi)),
                    Formula::impl(psi, Formula::neg(Formula::ann(psi, phi)))),
                "announcement reduction on negation");
    check_valid(iff(Formula::ann(psi, Formula::know(a, phi)),
                    Formula::impl(psi, Formula::know(a, Formula::impl(psi, Formula::ann(psi, phi))))),
                "announcement reduction on knowledge");
    check_valid(Formula::impl(Formula::gal_dual(g, Formula::gal_dual(g, phi)),
                              Formula::gal_dual(g, phi)),
                "consecutive group announcements merge");
    check_valid(Formula::impl(Formula::gal_dual(g, phi), Formula::apal_dual(phi)),
                "a group announcement is an announcement");
    check_valid(Formula::impl(Formula::neg(Formula::cal_dual({}, Formula::neg(phi))),
                              Formula::cal_dual(agents, phi)),
                "the empty coalition cannot block what the full one achieves");

    Formula ga = Formula::gal(agents, phi);
    Formula ca = Formula::cal(agents, phi);
    c.expect(ctx.extension(ga) == ctx.extension(ca),
             "full-group box equals full-coalition box (model " + std::to_string(i) + ")");
  }
  c.note(std::to_string(models) + " models, 7 validity families each");
}

// ---- Criterion 6: grid models satisfy the quantifier-free gadgets ----------

void c6_grid_el(Ctx& c) {
  TileSet ts = uniform_tiles();
  if (!c.opt.asset_dir.empty()) {
    TileSet shipped = load_tiles_file(c.opt.asset_dir + "/tiles_uniform.json");
    c.expect(tiles_to_json(shipped) == tiles_to_json(ts),
             "shipped tiles_uniform.json equals the uniform singleton set");
  }
  Formula sat = gen_sat(ts);
  Formula local_known = Formula::know("e", Formula::know("s", gen_local()));
  for (int w = 1; w <= 4; ++w) {
    for (int h = 1; h <= 4; ++h) {
      TileGrid g = constant_grid(w, h);
      PointedModel pm = gen_grid_model(ts, g);
      CheckContext ctx(pm.model);
      c.expect(ctx.check(pm.point, Formula::conj(sat, local_known)),
               "grid " + std::to_string(w) + "x" + std::to_string(h) +
                   " satisfies the tile encoding and the local grid laws at the origin mid");
      int heart = pm.model.prop_index("heart");
      c.expect(heart >= 0 && pm.model.holds(pm.point_index(), heart),
               "origin mid of " + std::to_string(w) + "x" + std::to_string(h) + " is a heart");
      c.expect(extract_tiling(pm, ts, w, h) == g,
               "extraction round-trips the " + std::to_string(w) + "x" + std::to_string(h) +
                   " grid");
    }
  }
  c.note("16 grids from 1x1 to 4x4");
}

// ---- Criterion 7: the quantified gadgets on the 2x2 grid (recorded) --------

void c7_grid_quantified(Ctx& c) {
  TileSet ts = uniform_tiles();
  PointedModel pm = gen_grid_model(ts, constant_grid(2, 2));
  CheckOptions copt;
  copt.budget = c.opt.budget ? c.opt.budget : (1ull << 22);
  const std::vector<std::pair<std::string, CbKind>> kinds = {
      {"apal", CbKind::apal}, {"gal", CbKind::gal}, {"cal", CbKind::cal}};
  for (const auto& [name, kind] : kinds) {
    CheckContext ctx(pm.model, copt);
    Clock::time_point t0 = Clock::now();
    std::ostringstream line;
    line << "checkerboard/" << name << " at " << pm.point << ": ";
    try {
      bool value = ctx.check(pm.point, gen_cb(kind));
      line << (value ? "true" : "false") << " (candidates="
           << ctx.stats().candidates_enumerated << ", "
           << static_cast<std::uint64_t>(ms_since(t0)) << " ms)";
      if (!value && ctx.failing_candidate()) {
        const FailingCandidate& f = *ctx.failing_candidate();
        std::ostringstream ann;
        for (size_t i = 0; i < f.announcement.size(); ++i)
          ann << (i ? "," : "") << f.announcement[i];
        line << "; falsified at " << f.state << " by announcement {" << ann.str() << "} of "
             << f.box;
      }
    } catch (const std::exception& ex) {
      line << "did not complete: " << ex.what();
      c.expect(false, "checkerboard/" + name + " completes within the candidate budget");
    }
    c.note(line.str());
  }
}

// ---- Criterion 8: the brute-force tiling oracle -----------------------------

void c8_tiling_oracle(Ctx& c) {
  TileSet bad = mismatch_tiles();
  if (!c.opt.asset_dir.empty()) {
    TileSet shipped = load_tiles_file(c.opt.asset_dir + "/tiles_mismatch.json");
    c.expect(tiles_to_json(shipped) == tiles_to_json(bad),
             "shipped tiles_mismatch.json equals the vertically mismatched singleton");
  }
  c.expect(!search_tiling(bad, 2, 2).has_value(),
           "the vertically mismatched singleton admits no 2x2 tiling");

  TileSet uni = uniform_tiles();
  std::optional<TileGrid> found = search_tiling(uni, 4, 4);
  c.expect(found.has_value() && *found == constant_grid(4, 4),
           "the self-matching singleton yields the constant 4x4 grid");

  // Two-tile set whose rows and columns must alternate; tiles any rectangle
  // as a checkerboard but never uniformly.
  TileSet dominos({"red", "blue"},
                  {Tile{"red", "blue", "blue", "red"}, Tile{"blue", "red", "red", "blue"}});
  int found_count = 0;
  for (int w = 1; w <= 4; ++w) {
    for (int h = 1; h <= 4; ++h) {
      for (const TileSet* set : {&uni, &bad, &dominos}) {
        std::optional<TileGrid> g = search_tiling(*set, w, h);
        if (g) {
          ++found_count;
          c.expect(valid_tiling(*set, *g), "every grid found by the search is a valid tiling");
        }
      }
    }
  }
  c.expect(search_tiling(dominos, 3, 3).has_value(), "the alternating pair tiles a 3x3 square");
  c.note("searched 3 tile sets over all grids up to 4x4; " + std::to_string(found_count) +
         " tilings found and re-verified");
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt, std::ostream& progress) {
  struct Entry {
    int id;
    const char* name;
    double limit_ms;  // 0 = no pin
    bool recorded_only;
    void (*run)(Ctx&);
  };
  const std::vector<Entry> entries = {
      {1, "worked-example battery on the 4-state model", 1000, false, c1_battery},
      {2, "class formulas distinguish exactly their class", 60000, false, c2_distinguishing},
      {3, "n-bisimilar states agree on depth-n formulas", 0, false, c3_agreement},
      {4, "quantifier vs formula-level announcement oracle", 0, false, c4_oracle},
      {5, "validities of the announcement logics", 0, false, c5_validities},
      {6, "grid models satisfy the tile encoding", 0, false, c6_grid_el},
      {7, "quantified checkerboard formulas on the 2x2 grid (recorded)", 900000, true,
       c7_grid_quantified},
      {8, "brute-force tiling search", 0, false, c8_tiling_oracle},
  };

  std::vector<CriterionResult> results;
  for (const Entry& e : entries) {
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    r.recorded_only = e.recorded_only;
    if (e.id == 7 && !opt.include_slow) {
      r.pass = true;
      r.notes.push_back("skipped (--fast)");
      results.push_back(std::move(r));
      progress << "[" << e.id << "/8] " << e.name << ": SKIPPED\n" << std::flush;
      continue;
    }
    progress << "[" << e.id << "/8] " << e.name << "..." << std::flush;
    Ctx c{opt, &r, 0};
    Clock::time_point t0 = Clock::now();
    try {
      e.run(c);
      r.pass = c.fails == 0;
      if (c.fails > 10)
        r.notes.push_back("(" + std::to_string(c.fails - 10) + " further failures suppressed)");
    } catch (const std::exception& ex) {
      r.pass = false;
      r.notes.push_back(std::string("error: ") + ex.what());
    }
    r.elapsed_ms = ms_since(t0);
    if (e.limit_ms > 0 && r.elapsed_ms > e.limit_ms) {
      r.pass = false;
      r.notes.push_back("exceeded the time pin of " + std::to_string(e.limit_ms) + " ms");
    }
    progress << " " << (r.pass ? "ok" : "FAILED") << " ("
             << static_cast<std::uint64_t>(r.elapsed_ms) << " ms)\n"
             << std::flush;
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

nlohmann::json results_to_json(const std::vector<CriterionResult>& results) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : results) {
    out.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"recorded_only", r.recorded_only},
                   {"notes", r.notes},
                   {"elapsed_ms", r.elapsed_ms}});
  }
  return out;
}

}  // namespace announce
