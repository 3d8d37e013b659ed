#pragma once

#include <optional>
#include <string>
#include <vector>

#include "announce/formula.hpp"
#include "announce/model.hpp"

namespace announce {

// A Wang tile: one colour per side.
struct Tile {
  std::string up, right, down, left;

  bool operator==(const Tile& o) const {
    return up == o.up && right == o.right && down == o.down && left == o.left;
  }
};

// An ordered list of tiles over a colour palette. Duplicate tiles are legal
// and keep their positions; colours must be unique and every side colour must
// come from the palette.
class TileSet {
public:
  TileSet(std::vector<std::string> colours, std::vector<Tile> tiles);

  const std::vector<std::string>& colours() const { return colours_; }
  const std::vector<Tile>& tiles() const { return tiles_; }
  int size() const { return static_cast<int>(tiles_.size()); }

private:
  std::vector<std::string> colours_;
  std::vector<Tile> tiles_;
};

// A W x H assignment of tile indices. cells[j][i] is the tile at column i of
// row j, with row 0 at the bottom (j counts upward).
struct TileGrid {
  int width = 0;
  int height = 0;
  std::vector<std::vector<int>> cells;

  int at(int i, int j) const { return cells[j][i]; }

  bool operator==(const TileGrid& o) const {
    return width == o.width && height == o.height && cells == o.cells;
  }
};

// True iff every horizontally adjacent pair matches right-to-left and every
// vertically adjacent pair matches up-to-down. Throws IndexOutOfRange when a
// cell index falls outside the tile set and BadInput when the cell array does
// not have shape H x W.
bool valid_tiling(const TileSet& ts, const TileGrid& g);

// First valid W x H tiling in lexicographic cell/tile order (cells scanned
// row 0 upward, left to right), or nullopt if none exists.
std::optional<TileGrid> search_tiling(const TileSet& ts, int width, int height);

// The atoms reserved by the generated formulas and grid models: the four side
// labels, the four square parities, and the centre colour. User palettes may
// not use them.
const std::vector<std::string>& reserved_atoms();

// Formula families over agents s (square) and e (edge). The colour set C of
// the generated formulas is the user palette plus the reserved centre colour
// "white".
//
// gen_sat: "every world has exactly one colour, every square's sides spell a
// tile, and e always knows the colour" — quantifier-free.
Formula gen_sat(const TileSet& ts);

// gen_local: grid-local structure — exactly one side/parity label per world,
// every square shows all four sides and one parity, squares missing a
// neighbour sit on the boundary, and parities rotate correctly right and up.
Formula gen_local();

enum class CbKind { apal, gal, cal };

// gen_cb: gen_local plus the quantified cycle and common-knowledge
// approximations, in the flavour of one quantifier family.
Formula gen_cb(CbKind kind);

// A bounded checkerboard model for a valid tiling: five worlds per square
// (sides u,d,l,r and a white mid), agent s lumps each square together, agent
// e links touching sides of adjacent squares and all mids; boundary sides
// that lack a neighbour are e-singletons. Parity atoms heart/club/diamond/
// spade mark mids by (i,j) parity; point is the mid of square (0,0).
PointedModel gen_grid_model(const TileSet& ts, const TileGrid& g);

// Reads a W x H tiling back out of a grid-shaped model by walking squares
// rightward (s;r?;e;l?) and upward (s;u?;e;d?) from the point's square and
// reading each square's side colours. Throws ChainBroken when a required
// world is missing or ambiguous and InvalidTiling when a square's colours
// match no tile.
TileGrid extract_tiling(const PointedModel& pm, const TileSet& ts, int width, int height);

}  // namespace announce
