#pragma once

#include <vector>

#include "schubcell/weyl.hpp"

namespace schubcell {

// 1-based position of a nonzero entry of the pattern.
struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Rectilinear path through nonzero entries, origin first; consecutive cells
// are nearest nonzero neighbors and every step moves up or left.
struct Path {
  std::vector<Cell> cells;
  int length() const { return static_cast<int>(cells.size()) - 1; }
};

// Pairwise disjoint family of paths together with the product of the free
// variables it traverses.
struct PathSet {
  std::vector<Path> paths;
  Monomial weight;
};

struct RowData {
  Cell gamma;     // rightmost nonzero entry of the row of One(j)
  MultiPoly rho;  // product of the nonzero entries of that row
};

RowData row_data(const MatrixPattern& p, int j);

// Endpoint data attached to a free variable: the ones of its corner block are
// the destinations, the rightmost nonzero entries of the block's bottom row
// and of each other destination row are the origins.
struct OriginDestination {
  std::vector<Cell> destinations;       // D, sorted by row
  std::vector<Cell> origins;            // O, sorted by row
  std::vector<Cell> last_column_origins;       // O_1
  std::vector<Cell> last_column_destinations;  // D_1, ones in the rows of O_1
  Cell bottom_origin;
  int t = 0;  // |D| - 1

  std::vector<Cell> origins_at_or_above(int k) const;
  std::vector<Cell> origins_at_or_below(int k) const;
  std::vector<Cell> destinations_at_or_above(int k) const;
  std::vector<Cell> destinations_at_or_below(int k) const;
};

OriginDestination origins_destinations(const MatrixPattern& p, const VarIndex& alpha);

// Complete collection of disjoint path systems from A onto B; a cell lying in
// both A and B contributes a length-0 path that still occupies its cell.
std::vector<PathSet> enumerate_path_sets(const MatrixPattern& p, std::vector<Cell> A,
                                         std::vector<Cell> B);

enum class PathVariant {
  all,          // P
  left_start,   // every length>=1 path from a last-column origin starts left
  bottom_left,  // remainder whose bottom-origin path starts left
  bottom_up,    // remainder whose bottom-origin path starts up
};

MultiPoly path_sum(const MatrixPattern& p, const VarIndex& alpha, PathVariant variant);

// Classification of one system for the split above.
PathVariant classify_path_set(const MatrixPattern& p, const OriginDestination& od,
                              const PathSet& ps);

}  // namespace schubcell
