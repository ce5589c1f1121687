#include "schubcell/paths.hpp"

#include <algorithm>
#include <bitset>
#include <cassert>

namespace schubcell {

RowData row_data(const MatrixPattern& p, int j) {
  if (j < 1 || j > p.r()) throw RangeError("one-index out of range");
  int row = p.one_row(j);
  RowData rd;
  rd.rho = MultiPoly::constant(1);
  for (int col = 1; col <= p.r(); ++col) {
    const CellEntry& e = p.at(row, col);
    if (e.is_zero()) continue;
    rd.gamma = Cell{row, col};
    if (e.is_var()) rd.rho = rd.rho * MultiPoly::variable(e.var);
  }
  return rd;
}

OriginDestination origins_destinations(const MatrixPattern& p, const VarIndex& alpha) {
  const Permutation& w = p.w();
  int r = p.r();
  if (alpha.a < 1 || alpha.b > r || alpha.a >= alpha.b || w.pi_inv(alpha.a) <= w.pi_inv(alpha.b))
    throw RangeError("not a free variable: " + var_name(alpha));
  int top = w.pi_inv(alpha.b), bottom = w.pi_inv(alpha.a);

  OriginDestination od;
  auto rightmost_in_block = [&](int row) {
    Cell c{0, 0};
    for (int col = alpha.b; col <= r; ++col)
      if (!p.at(row, col).is_zero()) c = Cell{row, col};
    return c;
  };

  for (int row = top; row <= bottom; ++row)
    for (int col = alpha.b; col <= r; ++col)
      if (p.at(row, col).is_one()) od.destinations.push_back(Cell{row, col});

  od.bottom_origin = rightmost_in_block(bottom);
  assert(od.bottom_origin.row == bottom);
  for (const Cell& d : od.destinations)
    if (d.row != top) od.origins.push_back(rightmost_in_block(d.row));
  od.origins.push_back(od.bottom_origin);
  std::sort(od.origins.begin(), od.origins.end());
  od.t = static_cast<int>(od.destinations.size()) - 1;

  for (const Cell& o : od.origins) {
    if (o.col != r || o.row >= bottom || o.row < 2) continue;
    const CellEntry& above = p.at(o.row - 1, r);
    if (!above.is_var()) continue;
    if (std::find(od.origins.begin(), od.origins.end(), Cell{o.row - 1, r}) !=
        od.origins.end())
      continue;
    od.last_column_origins.push_back(o);
    for (const Cell& d : od.destinations)
      if (d.row == o.row) od.last_column_destinations.push_back(d);
  }
  return od;
}

std::vector<Cell> OriginDestination::origins_at_or_above(int k) const {
  std::vector<Cell> out;
  for (const Cell& c : origins)
    if (c.row <= k) out.push_back(c);
  return out;
}

std::vector<Cell> OriginDestination::origins_at_or_below(int k) const {
  std::vector<Cell> out;
  for (const Cell& c : origins)
    if (c.row >= k) out.push_back(c);
  return out;
}

std::vector<Cell> OriginDestination::destinations_at_or_above(int k) const {
  std::vector<Cell> out;
  for (const Cell& c : destinations)
    if (c.row <= k) out.push_back(c);
  return out;
}

std::vector<Cell> OriginDestination::destinations_at_or_below(int k) const {
  std::vector<Cell> out;
  for (const Cell& c : destinations)
    if (c.row >= k) out.push_back(c);
  return out;
}

namespace {

constexpr size_t kMaxCells = kMaxRank * kMaxRank;

class Enumerator {
 public:
  Enumerator(const MatrixPattern& p, std::vector<Cell> A, std::vector<Cell> B)
      : p_(p), r_(p.r()), origins_(std::move(A)), dests_(std::move(B)) {
    if (origins_.size() != dests_.size() || origins_.empty())
      throw InvalidEndpointError("endpoint sets must be nonempty and equally sized");
    for (const Cell& c : origins_) check_nonzero(c);
    for (const Cell& c : dests_) check_nonzero(c);
    // Origins are processed bottom-to-top, right-to-left.
    std::sort(origins_.begin(), origins_.end(), [](const Cell& x, const Cell& y) {
      return std::pair(-x.row, -x.col) < std::pair(-y.row, -y.col);
    });
    for (const Cell& c : dests_) dest_mask_.set(id(c));
    // A pending origin may not be traversed by an earlier path: its own path
    // has to start there.
    for (const Cell& c : origins_) reserved_.set(id(c));
    build_neighbors();
  }

  std::vector<PathSet> run() {
    current_.paths.reserve(origins_.size());
    descend(0);
    return std::move(results_);
  }

 private:
  void check_nonzero(const Cell& c) {
    if (c.row < 1 || c.row > r_ || c.col < 1 || c.col > r_ || p_.at(c.row, c.col).is_zero())
      throw InvalidEndpointError("endpoint is not a nonzero entry");
  }

  size_t id(const Cell& c) const { return static_cast<size_t>(c.row - 1) * r_ + (c.col - 1); }

  void build_neighbors() {
    up_.assign(kMaxCells, Cell{0, 0});
    left_.assign(kMaxCells, Cell{0, 0});
    for (int row = 1; row <= r_; ++row) {
      Cell prev{0, 0};
      for (int col = 1; col <= r_; ++col) {
        if (p_.at(row, col).is_zero()) continue;
        left_[id(Cell{row, col})] = prev;
        prev = Cell{row, col};
      }
    }
    for (int col = 1; col <= r_; ++col) {
      Cell prev{0, 0};
      for (int row = 1; row <= r_; ++row) {
        if (p_.at(row, col).is_zero()) continue;
        up_[id(Cell{row, col})] = prev;
        prev = Cell{row, col};
      }
    }
  }

  void descend(size_t origin_idx) {
    if (origin_idx == origins_.size()) {
      assert(matched_ == dests_.size());
      PathSet ps = current_;
      std::vector<Monomial::Factor> fs;
      for (const Path& path : ps.paths)
        for (const Cell& c : path.cells)
          if (p_.at(c.row, c.col).is_var()) fs.push_back({p_.at(c.row, c.col).var, 1});
      ps.weight = Monomial(std::move(fs));
      results_.push_back(std::move(ps));
      return;
    }
    const Cell& o = origins_[origin_idx];
    reserved_.reset(id(o));
    current_.paths.push_back(Path{{o}});
    used_.set(id(o));
    extend(origin_idx);
    used_.reset(id(o));
    current_.paths.pop_back();
    reserved_.set(id(o));
  }

  void extend(size_t origin_idx) {
    Path& path = current_.paths.back();
    const Cell tip = path.cells.back();
    // A destination must terminate the path that reaches it: traversing it
    // without stopping leaves it unmatchable.
    if (dest_mask_.test(id(tip))) {
      ++matched_;
      descend(origin_idx + 1);
      --matched_;
      return;
    }
    for (const Cell& next : {left_[id(tip)], up_[id(tip)]}) {
      if (next.row == 0) continue;
      size_t nid = id(next);
      if (used_.test(nid) || reserved_.test(nid)) continue;
      path.cells.push_back(next);
      used_.set(nid);
      extend(origin_idx);
      used_.reset(nid);
      path.cells.pop_back();
    }
  }

  const MatrixPattern& p_;
  int r_;
  std::vector<Cell> origins_, dests_;
  std::bitset<kMaxCells> dest_mask_, used_, reserved_;
  std::vector<Cell> up_, left_;
  size_t matched_ = 0;
  PathSet current_;
  std::vector<PathSet> results_;
};

}  // namespace

std::vector<PathSet> enumerate_path_sets(const MatrixPattern& p, std::vector<Cell> A,
                                         std::vector<Cell> B) {
  return Enumerator(p, std::move(A), std::move(B)).run();
}

PathVariant classify_path_set(const MatrixPattern& p, const OriginDestination& od,
                              const PathSet& ps) {
  int r = p.r();
  bool left_start = true;
  for (const Path& path : ps.paths) {
    if (path.length() < 1 || path.cells.front().col != r) continue;
    if (path.cells[1].row != path.cells[0].row) left_start = false;
  }
  if (left_start) return PathVariant::left_start;
  for (const Path& path : ps.paths) {
    if (path.cells.front() != od.bottom_origin) continue;
    assert(path.length() >= 1);
    return path.cells[1].row == path.cells[0].row ? PathVariant::bottom_left
                                                  : PathVariant::bottom_up;
  }
  throw RangeError("bottom origin path missing");
}

MultiPoly path_sum(const MatrixPattern& p, const VarIndex& alpha, PathVariant variant) {
  OriginDestination od = origins_destinations(p, alpha);
  MultiPoly sum;
  for (const PathSet& ps : enumerate_path_sets(p, od.origins, od.destinations)) {
    if (variant != PathVariant::all && classify_path_set(p, od, ps) != variant) continue;
    sum.add_term(ps.weight, 1);
  }
  return sum;
}

}  // namespace schubcell
