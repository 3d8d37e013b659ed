#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "announce/bisim.hpp"
#include "announce/errors.hpp"
#include "announce/check.hpp"
#include "announce/json_io.hpp"
#include "announce/parser.hpp"
#include "announce/suite.hpp"
#include "announce/tiling.hpp"

#ifndef ANNOUNCE_ASSET_DIR
#define ANNOUNCE_ASSET_DIR ""
#endif

namespace {

using announce::CheckContext;
using announce::CheckOptions;
using announce::CheckReport;
using nlohmann::json;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int run_check(const std::string& model_file, std::string point, const std::string& formula_text,
              std::uint64_t budget, bool cal_literal, bool pretty) {
  announce::ModelFile mf = announce::load_model_file(model_file);
  if (point.empty()) {
    if (!mf.point) announce::fail(announce::Errc::bad_input,
                                  "model file has no point; pass --point");
    point = *mf.point;
  }
  announce::Formula f = announce::parse_formula(formula_text);
  CheckOptions opt;
  opt.budget = budget;
  opt.cal_literal = cal_literal;
  CheckContext ctx(mf.model, opt);
  auto t0 = std::chrono::steady_clock::now();
  bool value = ctx.check(point, f);
  CheckReport report;
  report.formula = f.str();
  report.point = point;
  report.value = value;
  report.candidates_enumerated = ctx.stats().candidates_enumerated;
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (pretty) {
    std::cout << report.formula << " at " << report.point << ": "
              << (value ? "true" : "false") << " (" << report.candidates_enumerated
              << " candidates)\n";
    if (!value && ctx.failing_candidate()) {
      const announce::FailingCandidate& fc = *ctx.failing_candidate();
      std::cout << "falsified at " << fc.state << " by announcing {";
      for (size_t i = 0; i < fc.announcement.size(); ++i)
        std::cout << (i ? "," : "") << fc.announcement[i];
      std::cout << "} in " << fc.box << "\n";
    }
  } else {
    emit(announce::report_to_json(report));
  }
  return value ? 0 : 1;
}

int run_bisim(const std::string& model_file, int n, bool stable,
              const std::string& distinguish, const std::string& atoms_csv, bool pretty) {
  announce::ModelFile mf = announce::load_model_file(model_file);
  std::vector<std::string> atoms;
  if (atoms_csv.empty()) {
    atoms = mf.model.props();
  } else {
    std::string cur;
    for (char ch : atoms_csv + ",") {
      if (ch == ',') {
        if (!cur.empty()) atoms.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
  }
  announce::Partition p = stable ? announce::stable_bisim(mf.model, atoms)
                                 : announce::nbisim(mf.model, atoms, n);
  json out;
  out["level"] = p.level ? json(*p.level) : json("stable");
  json blocks = json::array();
  for (const auto& b : p.blocks) {
    std::vector<std::string> names;
    for (int s : b) names.push_back(mf.model.states()[s]);
    blocks.push_back(names);
  }
  out["blocks"] = std::move(blocks);
  if (!distinguish.empty()) {
    if (stable)
      announce::fail(announce::Errc::bad_input, "--distinguish needs an explicit level (-n)");
    out["formula"] = announce::distinguishing_formula(mf.model, atoms, n, distinguish).str();
  }
  if (pretty) {
    std::cout << (stable ? "stable" : "level " + std::to_string(n)) << ": "
              << out["blocks"].size() << " blocks\n";
    for (const auto& b : out["blocks"]) std::cout << "  " << b.dump() << "\n";
    if (out.contains("formula")) std::cout << "formula: " << out["formula"].get<std::string>()
                                           << "\n";
  } else {
    emit(out);
  }
  return 0;
}

int run_gen(const std::string& kind, const std::string& tiles_file, int width, int height,
            const std::string& out_file) {
  auto need_tiles = [&]() {
    if (tiles_file.empty())
      announce::fail(announce::Errc::bad_input, "--tiles is required for kind " + kind);
    return announce::load_tiles_file(tiles_file);
  };
  auto write_text = [&](const std::string& text) {
    std::ofstream out(out_file);
    if (!out) announce::fail(announce::Errc::bad_input, "cannot write \"" + out_file + "\"");
    out << text << "\n";
  };
  if (kind == "sat") {
    write_text(announce::gen_sat(need_tiles()).str());
  } else if (kind == "local") {
    write_text(announce::gen_local().str());
  } else if (kind == "cb-apal" || kind == "cb-gal" || kind == "cb-cal") {
    announce::CbKind k = kind == "cb-apal" ? announce::CbKind::apal
                         : kind == "cb-gal" ? announce::CbKind::gal
                                            : announce::CbKind::cal;
    write_text(announce::gen_cb(k).str());
  } else if (kind == "grid") {
    announce::TileSet ts = need_tiles();
    std::optional<announce::TileGrid> g = announce::search_tiling(ts, width, height);
    if (!g)
      announce::fail(announce::Errc::invalid_tiling,
                     "the tile set admits no " + std::to_string(width) + "x" +
                         std::to_string(height) + " tiling");
    announce::PointedModel pm = announce::gen_grid_model(ts, *g);
    announce::save_json(out_file, announce::model_to_json(pm.model, pm.point));
  } else {
    announce::fail(announce::Errc::bad_input, "unknown --kind \"" + kind + "\"");
  }
  return 0;
}

int run_tile_search(const std::string& tiles_file, int width, int height, bool pretty) {
  announce::TileSet ts = announce::load_tiles_file(tiles_file);
  std::optional<announce::TileGrid> g = announce::search_tiling(ts, width, height);
  if (pretty) {
    if (!g) {
      std::cout << "no " << width << "x" << height << " tiling\n";
      return 1;
    }
    for (int j = g->height - 1; j >= 0; --j) {
      for (int i = 0; i < g->width; ++i) std::cout << (i ? " " : "") << g->at(i, j);
      std::cout << "\n";
    }
    return 0;
  }
  json out;
  out["found"] = g.has_value();
  if (g) out["grid"] = announce::grid_to_json(*g);
  emit(out);
  return g ? 0 : 1;
}

int run_suite(std::uint64_t seed, const std::string& sizes_csv, bool fast,
              const std::string& assets, std::uint64_t budget) {
  announce::SuiteOptions opt;
  opt.seed = seed;
  opt.include_slow = !fast;
  opt.asset_dir = assets;
  opt.budget = budget;
  if (!sizes_csv.empty()) {
    std::string cur;
    for (char ch : sizes_csv + ",") {
      if (ch == ',') {
        if (!cur.empty()) opt.sizes.push_back(std::stoi(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
  }
  std::vector<announce::CriterionResult> results = announce::run_acceptance(opt, std::cerr);
  emit(announce::results_to_json(results));
  return announce::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-model workbench for epistemic logics with quantified announcements"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "human-readable output instead of JSON");

  auto* check = app.add_subcommand("check", "evaluate a formula at a state");
  check->fallthrough();
  std::string model_file, point, formula_text;
  std::uint64_t budget = 0;
  bool cal_literal = false;
  check->add_option("--model", model_file, "model JSON file")->required();
  check->add_option("--point", point, "state to evaluate at (default: the file's point)");
  check->add_option("--formula", formula_text, "formula text")->required();
  check->add_option("--budget", budget, "per-quantifier candidate budget");
  check->add_flag("--cal-literal", cal_literal, "verbatim coalition clause");

  auto* bisim = app.add_subcommand("bisim", "bisimulation partition and class formulas");
  bisim->fallthrough();
  std::string b_model, b_distinguish, b_atoms;
  int b_n = 0;
  bool b_stable = false;
  bisim->add_option("--model", b_model, "model JSON file")->required();
  bisim->add_option("-n", b_n, "refinement level");
  bisim->add_flag("--stable", b_stable, "refine to the fixpoint instead");
  bisim->add_option("--distinguish", b_distinguish, "also print this state's class formula");
  bisim->add_option("--atoms", b_atoms, "comma-separated atoms (default: all model atoms)");

  auto* gen = app.add_subcommand("gen", "write generated formulas and grid models");
  gen->fallthrough();
  std::string g_kind, g_tiles, g_out;
  int g_width = 2, g_height = 2;
  gen->add_option("--kind", g_kind, "sat|local|cb-apal|cb-gal|cb-cal|grid")->required();
  gen->add_option("--tiles", g_tiles, "tile set JSON file");
  gen->add_option("--width", g_width, "grid width");
  gen->add_option("--height", g_height, "grid height");
  gen->add_option("--out", g_out, "output file")->required();

  auto* ts = app.add_subcommand("tile-search", "brute-force a rectangle tiling");
  ts->fallthrough();
  std::string t_tiles;
  int t_width = 0, t_height = 0;
  ts->add_option("--tiles", t_tiles, "tile set JSON file")->required();
  ts->add_option("--width", t_width, "grid width")->required();
  ts->add_option("--height", t_height, "grid height")->required();

  auto* suite = app.add_subcommand("suite", "run the acceptance suites");
  suite->fallthrough();
  std::uint64_t s_seed = announce::SuiteOptions{}.seed;
  std::string s_sizes, s_assets = ANNOUNCE_ASSET_DIR;
  bool s_fast = false;
  std::uint64_t s_budget = 0;
  suite->add_option("--seed", s_seed, "random seed");
  suite->add_option("--sizes", s_sizes, "comma-separated model-size caps for the random pools");
  suite->add_flag("--fast", s_fast, "skip the long grid experiment");
  suite->add_option("--assets", s_assets, "directory with figure1.json and the tile assets");
  suite->add_option("--budget", s_budget, "per-quantifier candidate budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Bad invocations share the diagnostic exit code; --help stays 0.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*check) return run_check(model_file, point, formula_text, budget, cal_literal, pretty);
    if (*bisim) return run_bisim(b_model, b_n, b_stable, b_distinguish, b_atoms, pretty);
    if (*gen) return run_gen(g_kind, g_tiles, g_width, g_height, g_out);
    if (*ts) return run_tile_search(t_tiles, t_width, t_height, pretty);
    if (*suite) return run_suite(s_seed, s_sizes, s_fast, s_assets, s_budget);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
