#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "schubcell/poly.hpp"

namespace schubcell {

// Sweeps target small rank; the hard cap keeps bitmask determinants and
// factorial enumerations sane.
constexpr int kMaxRank = 12;

// Permutation in one-line notation: row i of the Weyl element has its 1 in
// column pi(i).
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int r);
  // Comma-separated one-line notation, e.g. "2,5,4,1,3".
  static Permutation parse(const std::string& text);

  int r() const { return static_cast<int>(img_.size()); }
  int pi(int i) const { return img_[i - 1]; }
  int pi_inv(int j) const { return inv_[j - 1]; }
  int det() const;  // parity sign of the permutation matrix

  std::string to_string() const;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> img_, inv_;
};

struct CellEntry {
  enum class Kind { zero, one, var };
  Kind kind = Kind::zero;
  int one_index = 0;  // j for One(j)
  VarIndex var;       // (a,b) for Var

  bool is_zero() const { return kind == Kind::zero; }
  bool is_one() const { return kind == Kind::one; }
  bool is_var() const { return kind == Kind::var; }
};

// The r x r grid realizing the coordinates of the cell attached to w: row k
// holds One(pi(k)) in column pi(k), Var(a,b) sits at (pi_inv(a), b) for every
// inversion (a,b), all other entries are zero.
class MatrixPattern {
 public:
  static MatrixPattern build(const Permutation& w);

  const Permutation& w() const { return w_; }
  int r() const { return w_.r(); }
  // 1-based row/column access.
  const CellEntry& at(int row, int col) const { return grid_[(row - 1) * r() + (col - 1)]; }
  int var_row(const VarIndex& v) const { return w_.pi_inv(v.a); }
  int one_row(int j) const { return w_.pi_inv(j); }

 private:
  explicit MatrixPattern(const Permutation& w) : w_(w) {}
  Permutation w_;
  std::vector<CellEntry> grid_;
};

// Strict total orders on the free variables: succ places a variable before
// everything to its right, then above within a column; square places it
// before everything to its right, then below within a column.
bool succ_greater(const Permutation& w, const VarIndex& x, const VarIndex& y);
bool square_greater(const Permutation& w, const VarIndex& x, const VarIndex& y);

struct FreeVariables {
  std::vector<VarIndex> canonical;  // ascending (b,a)
  std::vector<VarIndex> succ;       // greatest first
  std::vector<VarIndex> square;     // greatest first
};

FreeVariables free_variables(const Permutation& w);

// Number of ones strictly below row `row` and strictly right of column `col`.
int ones_below_right(const Permutation& w, int row, int col);

// level = row(alpha) + b + ones_below_right - r; levels partition the free
// variables into bands 2..r indexed by closeness to the bottom-right corner.
int level_of(const Permutation& w, const VarIndex& v);

struct LevelPartition {
  std::map<int, std::vector<VarIndex>> bands;  // level -> variables (canonical order)
};

LevelPartition level_partition(const Permutation& w);

struct Reduction {
  enum class Mode { drop_bottom_row, drop_last_column };
  Mode mode;
  Permutation child;
  // Defined exactly on the surviving variables: everything above the bottom
  // row for drop_bottom_row, everything left of the last column for
  // drop_last_column (where it is the identity).
  std::map<VarIndex, VarIndex> var_map;
  // Column-label relabeling for drop_bottom_row (old label -> new label).
  std::map<int, int> label_map;
};

Reduction reduce_hat(const Permutation& w);    // drops bottom row + column of pi(r)
Reduction reduce_tilde(const Permutation& w);  // drops last column + row of 1_r

std::vector<Permutation> all_permutations(int r);

}  // namespace schubcell
