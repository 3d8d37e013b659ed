#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "announce/check.hpp"
#include "announce/model.hpp"
#include "announce/tiling.hpp"

namespace announce {

// JSON formats (unknown keys are rejected everywhere):
//   model: { "states": [...], "agents": {"a": [["w0","w1"], ...], ...},
//            "valuation": {"w0": ["p"], ...}, "point": "w0" }
//          valuation and point are optional; block order is non-semantic.
//   tiles: { "colours": [...], "tiles": [{"up":..,"right":..,"down":..,"left":..}, ...] }
//   grid:  { "width": W, "height": H, "cells": [[...], ...] }  // cells[j][i]

struct ModelFile {
  Model model;
  std::optional<std::string> point;
};

ModelFile model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const Model& m, const std::optional<std::string>& point = {});

TileSet tiles_from_json(const nlohmann::json& j);
nlohmann::json tiles_to_json(const TileSet& ts);

TileGrid grid_from_json(const nlohmann::json& j);
nlohmann::json grid_to_json(const TileGrid& g);

nlohmann::json report_to_json(const CheckReport& r);

// File helpers; all errors (missing file, malformed JSON) surface as BadInput.
nlohmann::json load_json(const std::string& path);
ModelFile load_model_file(const std::string& path);
TileSet load_tiles_file(const std::string& path);
TileGrid load_grid_file(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

}  // namespace announce
