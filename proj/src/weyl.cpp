#include "schubcell/weyl.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace schubcell {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  int r = static_cast<int>(img_.size());
  if (r < 1) throw MalformedPermutationError("empty permutation");
  if (r > kMaxRank)
    throw MalformedPermutationError("rank " + std::to_string(r) + " exceeds limit " +
                                    std::to_string(kMaxRank));
  inv_.assign(r, 0);
  for (int i = 1; i <= r; ++i) {
    int v = img_[i - 1];
    if (v < 1 || v > r)
      throw MalformedPermutationError("image " + std::to_string(v) + " out of range");
    if (inv_[v - 1] != 0)
      throw MalformedPermutationError("duplicate image " + std::to_string(v));
    inv_[v - 1] = i;
  }
}

Permutation Permutation::identity(int r) {
  std::vector<int> img(r);
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::parse(const std::string& text) {
  std::vector<int> img;
  std::string tok;
  std::istringstream is(text);
  while (std::getline(is, tok, ',')) {
    size_t pos = 0;
    int v;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw MalformedPermutationError("bad token '" + tok + "'");
    }
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size()) throw MalformedPermutationError("bad token '" + tok + "'");
    img.push_back(v);
  }
  if (img.empty()) throw MalformedPermutationError("empty permutation");
  return Permutation(std::move(img));
}

int Permutation::det() const {
  int sign = 1;
  std::vector<bool> seen(img_.size(), false);
  for (size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    size_t len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = static_cast<size_t>(img_[j] - 1);
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < img_.size(); ++i) {
    if (i) os << ',';
    os << img_[i];
  }
  return os.str();
}

MatrixPattern MatrixPattern::build(const Permutation& w) {
  MatrixPattern p(w);
  int r = w.r();
  p.grid_.assign(static_cast<size_t>(r) * r, CellEntry{});
  auto set = [&](int row, int col, CellEntry e) { p.grid_[(row - 1) * r + (col - 1)] = e; };
  for (int j = 1; j <= r; ++j) set(w.pi_inv(j), j, CellEntry{CellEntry::Kind::one, j, {}});
  for (int a = 1; a <= r; ++a)
    for (int b = a + 1; b <= r; ++b)
      if (w.pi_inv(a) > w.pi_inv(b))
        set(w.pi_inv(a), b, CellEntry{CellEntry::Kind::var, 0, VarIndex{a, b}});
  return p;
}

bool succ_greater(const Permutation& w, const VarIndex& x, const VarIndex& y) {
  if (x.b != y.b) return x.b < y.b;
  return w.pi_inv(x.a) < w.pi_inv(y.a);
}

bool square_greater(const Permutation& w, const VarIndex& x, const VarIndex& y) {
  if (x.b != y.b) return x.b < y.b;
  return w.pi_inv(x.a) > w.pi_inv(y.a);
}

FreeVariables free_variables(const Permutation& w) {
  FreeVariables fv;
  for (int a = 1; a <= w.r(); ++a)
    for (int b = a + 1; b <= w.r(); ++b)
      if (w.pi_inv(a) > w.pi_inv(b)) fv.canonical.push_back({a, b});
  std::sort(fv.canonical.begin(), fv.canonical.end());
  fv.succ = fv.canonical;
  std::sort(fv.succ.begin(), fv.succ.end(),
            [&](const VarIndex& x, const VarIndex& y) { return succ_greater(w, x, y); });
  fv.square = fv.canonical;
  std::sort(fv.square.begin(), fv.square.end(),
            [&](const VarIndex& x, const VarIndex& y) { return square_greater(w, x, y); });
  return fv;
}

int ones_below_right(const Permutation& w, int row, int col) {
  int c = 0;
  for (int j = col + 1; j <= w.r(); ++j)
    if (w.pi_inv(j) > row) ++c;
  return c;
}

int level_of(const Permutation& w, const VarIndex& v) {
  int row = w.pi_inv(v.a);
  return row + v.b + ones_below_right(w, row, v.b) - w.r();
}

LevelPartition level_partition(const Permutation& w) {
  LevelPartition lp;
  for (const VarIndex& v : free_variables(w).canonical) lp.bands[level_of(w, v)].push_back(v);
  return lp;
}

Reduction reduce_hat(const Permutation& w) {
  int r = w.r();
  if (r < 2) throw NoReductionError("rank 1 has no reduction");
  int drop = w.pi(r);
  auto relabel = [&](int i) { return i < drop ? i : i - 1; };
  std::vector<int> img;
  img.reserve(r - 1);
  for (int i = 1; i <= r - 1; ++i) img.push_back(relabel(w.pi(i)));
  Reduction red{Reduction::Mode::drop_bottom_row, Permutation(std::move(img)), {}, {}};
  for (int i = 1; i <= r; ++i)
    if (i != drop) red.label_map[i] = relabel(i);
  for (const VarIndex& v : free_variables(w).canonical)
    if (w.pi_inv(v.a) < r) red.var_map[v] = VarIndex{relabel(v.a), relabel(v.b)};
  return red;
}

Reduction reduce_tilde(const Permutation& w) {
  int r = w.r();
  if (r < 2) throw NoReductionError("rank 1 has no reduction");
  int drop_row = w.pi_inv(r);
  std::vector<int> img;
  img.reserve(r - 1);
  for (int i = 1; i <= r; ++i)
    if (i != drop_row) img.push_back(w.pi(i));
  Reduction red{Reduction::Mode::drop_last_column, Permutation(std::move(img)), {}, {}};
  for (const VarIndex& v : free_variables(w).canonical)
    if (v.b < r) red.var_map[v] = v;
  return red;
}

std::vector<Permutation> all_permutations(int r) {
  if (r < 1 || r > kMaxRank) throw RangeError("rank out of range");
  std::vector<int> img(r);
  std::iota(img.begin(), img.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace schubcell
