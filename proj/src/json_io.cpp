#include "announce/json_io.hpp"

#include <fstream>
#include <set>

namespace announce {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& what) {
  if (!j.is_object()) fail(Errc::bad_input, what + " must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) fail(Errc::bad_input, what + " has unknown key \"" + key + "\"");
}

std::vector<std::string> string_list(const json& j, const std::string& what) {
  if (!j.is_array()) fail(Errc::bad_input, what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) fail(Errc::bad_input, what + " must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::string string_field(const json& j, const std::string& key, const std::string& what) {
  if (!j.contains(key)) fail(Errc::bad_input, what + " is missing \"" + key + "\"");
  if (!j[key].is_string()) fail(Errc::bad_input, what + "." + key + " must be a string");
  return j[key].get<std::string>();
}

int int_field(const json& j, const std::string& key, const std::string& what) {
  if (!j.contains(key)) fail(Errc::bad_input, what + " is missing \"" + key + "\"");
  if (!j[key].is_number_integer())
    fail(Errc::bad_input, what + "." + key + " must be an integer");
  return j[key].get<int>();
}

}  // namespace

ModelFile model_from_json(const json& j) {
  reject_unknown_keys(j, {"states", "agents", "valuation", "point"}, "model");
  if (!j.contains("states")) fail(Errc::bad_input, "model is missing \"states\"");
  std::vector<std::string> states = string_list(j["states"], "model.states");

  if (!j.contains("agents") || !j["agents"].is_object())
    fail(Errc::bad_input, "model.agents must be an object of agent -> blocks");
  std::vector<std::string> agents;
  std::map<std::string, std::vector<std::vector<std::string>>> parts;
  for (const auto& [agent, blocks] : j["agents"].items()) {
    agents.push_back(agent);
    if (!blocks.is_array())
      fail(Errc::bad_input, "model.agents." + agent + " must be an array of blocks");
    std::vector<std::vector<std::string>> bs;
    for (const auto& b : blocks) bs.push_back(string_list(b, "model.agents." + agent + " block"));
    parts[agent] = std::move(bs);
  }

  std::map<std::string, std::vector<std::string>> by_prop;
  if (j.contains("valuation")) {
    if (!j["valuation"].is_object())
      fail(Errc::bad_input, "model.valuation must be an object of state -> atoms");
    for (const auto& [state, atoms] : j["valuation"].items())
      for (const auto& p : string_list(atoms, "model.valuation." + state))
        by_prop[p].push_back(state);
  }

  ModelFile out{Model(std::move(states), std::move(agents), by_prop, parts), std::nullopt};
  if (j.contains("point")) {
    std::string p = string_field(j, "point", "model");
    out.model.state_index(p);  // validates
    out.point = p;
  }
  return out;
}

json model_to_json(const Model& m, const std::optional<std::string>& point) {
  json j;
  j["states"] = m.states();
  json agents = json::object();
  for (int a = 0; a < m.num_agents(); ++a) {
    json blocks = json::array();
    for (const auto& b : m.partition(a).blocks) blocks.push_back(m.names_of(b));
    agents[m.agents()[a]] = std::move(blocks);
  }
  j["agents"] = std::move(agents);
  json val = json::object();
  for (int s = 0; s < m.num_states(); ++s) {
    std::vector<std::string> atoms;
    for (int p = 0; p < m.num_props(); ++p)
      if (m.holds(s, p)) atoms.push_back(m.props()[p]);
    if (!atoms.empty()) val[m.states()[s]] = std::move(atoms);
  }
  j["valuation"] = std::move(val);
  if (point) j["point"] = *point;
  return j;
}

TileSet tiles_from_json(const json& j) {
  reject_unknown_keys(j, {"colours", "tiles"}, "tile set");
  if (!j.contains("colours")) fail(Errc::bad_input, "tile set is missing \"colours\"");
  std::vector<std::string> colours = string_list(j["colours"], "tile set colours");
  if (!j.contains("tiles") || !j["tiles"].is_array())
    fail(Errc::bad_input, "tile set is missing \"tiles\"");
  std::vector<Tile> tiles;
  for (const auto& t : j["tiles"]) {
    reject_unknown_keys(t, {"up", "right", "down", "left"}, "tile");
    tiles.push_back(Tile{string_field(t, "up", "tile"), string_field(t, "right", "tile"),
                         string_field(t, "down", "tile"), string_field(t, "left", "tile")});
  }
  return TileSet(std::move(colours), std::move(tiles));
}

json tiles_to_json(const TileSet& ts) {
  json j;
  j["colours"] = ts.colours();
  json tiles = json::array();
  for (const Tile& t : ts.tiles())
    tiles.push_back({{"up", t.up}, {"right", t.right}, {"down", t.down}, {"left", t.left}});
  j["tiles"] = std::move(tiles);
  return j;
}

TileGrid grid_from_json(const json& j) {
  reject_unknown_keys(j, {"width", "height", "cells"}, "grid");
  TileGrid g;
  g.width = int_field(j, "width", "grid");
  g.height = int_field(j, "height", "grid");
  if (!j.contains("cells") || !j["cells"].is_array())
    fail(Errc::bad_input, "grid is missing \"cells\"");
  for (const auto& row : j["cells"]) {
    if (!row.is_array()) fail(Errc::bad_input, "grid.cells must be an array of rows");
    std::vector<int> r;
    for (const auto& c : row) {
      if (!c.is_number_integer()) fail(Errc::bad_input, "grid cells must be tile indices");
      r.push_back(c.get<int>());
    }
    g.cells.push_back(std::move(r));
  }
  if (static_cast<int>(g.cells.size()) != g.height)
    fail(Errc::bad_input, "grid.cells must have exactly \"height\" rows");
  for (const auto& row : g.cells)
    if (static_cast<int>(row.size()) != g.width)
      fail(Errc::bad_input, "every grid row must have exactly \"width\" cells");
  return g;
}

json grid_to_json(const TileGrid& g) {
  return json{{"width", g.width}, {"height", g.height}, {"cells", g.cells}};
}

json report_to_json(const CheckReport& r) {
  return json{{"formula", r.formula},
              {"point", r.point},
              {"value", r.value},
              {"candidates_enumerated", r.candidates_enumerated},
              {"elapsed_ms", r.elapsed_ms}};
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::bad_input, "cannot open \"" + path + "\"");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) fail(Errc::bad_input, "\"" + path + "\" is not valid JSON");
  return j;
}

ModelFile load_model_file(const std::string& path) { return model_from_json(load_json(path)); }
TileSet load_tiles_file(const std::string& path) { return tiles_from_json(load_json(path)); }
TileGrid load_grid_file(const std::string& path) { return grid_from_json(load_json(path)); }

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(Errc::bad_input, "cannot write \"" + path + "\"");
  out << j.dump(2) << "\n";
}

}  // namespace announce
