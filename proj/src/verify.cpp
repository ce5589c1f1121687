#include "schubcell/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

namespace schubcell {

std::set<Part> parse_parts(const std::string& csv) {
  std::set<Part> parts;
  std::istringstream is(csv);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok == "i")
      parts.insert(Part::inverse);
    else if (tok == "ii")
      parts.insert(Part::superdiagonal);
    else if (tok == "iii")
      parts.insert(Part::diagonal);
    else if (tok == "iv")
      parts.insert(Part::jacobian);
    else if (tok == "v-consequences" || tok == "v")
      parts.insert(Part::v_consequences);
    else if (tok == "identities")
      parts.insert(Part::identities);
    else if (tok == "bounds")
      parts.insert(Part::bounds);
    else
      throw ParseError("unknown part '" + tok + "'");
  }
  if (parts.empty()) throw ParseError("empty part list");
  return parts;
}

std::string part_name(Part p) {
  switch (p) {
    case Part::inverse: return "i";
    case Part::superdiagonal: return "ii";
    case Part::diagonal: return "iii";
    case Part::jacobian: return "iv";
    case Part::v_consequences: return "v-consequences";
    case Part::identities: return "identities";
    case Part::bounds: return "bounds";
  }
  return "?";
}

bool CheckReport::all_pass() const {
  for (const auto& c : checks)
    if (c.status == CheckResult::Status::fail) return false;
  return true;
}

void CheckReport::add_pass(const std::string& name) {
  checks.push_back({name, CheckResult::Status::pass, ""});
}

void CheckReport::add_fail(const std::string& name, const std::string& witness) {
  checks.push_back({name, CheckResult::Status::fail, witness});
}

void CheckReport::add_skip(const std::string& name) {
  checks.push_back({name, CheckResult::Status::skipped, ""});
}

namespace {

uint64_t mix_seed(uint64_t seed, const std::string& s) {
  uint64_t h = 1469598103934665603ull ^ seed;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

long rand_range(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

mpq_class rand_nonzero_rational(std::mt19937_64& rng, long max_num, long max_den) {
  long num = 0;
  while (num == 0) num = rand_range(rng, -max_num, max_num);
  mpq_class q(num, rand_range(rng, 1, max_den));
  q.canonicalize();
  return q;
}

// Corner and one-row-up minors of a numeric image matrix.
struct NumericCorners {
  std::vector<mpq_class> t;  // t[i] = det of lower-right i x i block, i = 0..r
  std::vector<mpq_class> f;  // f[i] = det of the block with the next row swapped in
};

NumericCorners numeric_corners(const std::vector<std::vector<mpq_class>>& wu) {
  int r = static_cast<int>(wu.size());
  NumericCorners nc;
  nc.t.resize(r + 1);
  nc.f.assign(r, 0);
  nc.t[0] = 1;
  for (int i = 1; i <= r; ++i) {
    std::vector<std::vector<mpq_class>> sub(i, std::vector<mpq_class>(i));
    for (int a = 0; a < i; ++a)
      for (int b = 0; b < i; ++b) sub[a][b] = wu[r - i + a][r - i + b];
    nc.t[i] = mpq_matrix_det(sub);
  }
  for (int i = 1; i <= r - 1; ++i) {
    std::vector<int> rows;
    rows.push_back(r - i - 1);
    for (int k = r - i + 1; k <= r; ++k) rows.push_back(k - 1);
    std::vector<std::vector<mpq_class>> sub(i, std::vector<mpq_class>(i));
    for (int a = 0; a < i; ++a)
      for (int b = 0; b < i; ++b) sub[a][b] = wu[rows[a]][r - i + b];
    nc.f[i] = mpq_matrix_det(sub);
  }
  return nc;
}

std::string render_side_by_side(const RatFunc& lhs, const RatFunc& rhs) {
  return "lhs = " + render(lhs) + " ; rhs = " + render(rhs);
}

// Closed form for the derivative of an image in its own variable: a signed
// ratio of the L-shaped corner path by the top destination's row product.
RatFunc diagonal_derivative_closed_form(const Permutation& w, const VarIndex& v, int t) {
  int x = v.a, y = v.b;
  MultiPoly num = MultiPoly::constant(1);
  for (int d = y + 1; d <= w.r(); ++d)
    if (x < d && w.pi_inv(x) > w.pi_inv(d)) num = num * MultiPoly::variable({x, d});
  for (int l = w.pi_inv(y) + 1; l < w.pi_inv(x); ++l) {
    int a = w.pi(l);
    if (a < y && w.pi_inv(a) > w.pi_inv(y)) num = num * MultiPoly::variable({a, y});
  }
  MultiPoly den = MultiPoly::constant(1);
  for (int f = y + 1; f <= w.r(); ++f)
    if (y < f && w.pi_inv(y) > w.pi_inv(f)) den = den * MultiPoly::variable({y, f});
  RatFunc out(num, den);
  return (t % 2) ? -out : out;
}

class ElementVerifier {
 public:
  ElementVerifier(const Permutation& w, const ElementOptions& opt)
      : w_(w), opt_(opt), fm_(forward_map(w, opt.mutation)), fv_(free_variables(w)) {}

  CheckReport run(const std::set<Part>& parts) {
    auto t0 = std::chrono::steady_clock::now();
    rep_.element = w_.to_string();
    for (Part p : parts) {
      switch (p) {
        case Part::superdiagonal:
          opt_.symbolic ? check_superdiagonal() : check_corners_sampled();
          break;
        case Part::diagonal:
          if (opt_.symbolic)
            check_diagonal();
          else if (!corners_sampled_done_)
            check_corners_sampled();
          break;
        case Part::jacobian: check_jacobian(); break;
        case Part::inverse: check_inverse(); break;
        case Part::v_consequences: check_v_consequences(); break;
        case Part::identities: check_identities(); break;
        case Part::bounds: check_bounds(); break;
      }
    }
    rep_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return std::move(rep_);
  }

 private:
  const RatFunc& corner_det(int k) {
    if (corners_.empty()) {
      int r = w_.r();
      corners_.resize(r + 1);
      corners_[0] = RatFunc::constant(1);
      const RatMatrix& wu = fm_.image_matrix();
      for (int i = 1; i <= r; ++i) {
        RatMatrix sub(i);
        for (int a = 0; a < i; ++a)
          for (int b = 0; b < i; ++b) sub.at(a, b) = wu.at(r - i + a, r - i + b);
        corners_[i] = determinant(sub);
      }
    }
    return corners_[k];
  }

  RatFunc f_det(int i) {
    UDLBlocks b = udl_blocks(fm_, i);
    return determinant(b.F);
  }

  RatFunc level_sum(int level) {
    RatFunc s;
    for (const VarIndex& v : fv_.canonical)
      if (level_of(w_, v) == level) s = s + RatFunc::constant(1) / RatFunc::variable(v);
    return s;
  }

  void check_superdiagonal() {
    int r = w_.r();
    for (int i = 1; i <= r - 1; ++i) {
      RatFunc lhs = f_det(r - i);
      RatFunc rhs = level_sum(i + 1) * corner_det(r - i);
      if (!lhs.equals(rhs)) {
        rep_.add_fail("superdiagonal_formula",
                      "i=" + std::to_string(i) + " " + render_side_by_side(lhs, rhs));
        return;
      }
    }
    rep_.add_pass("superdiagonal_formula");
  }

  void check_diagonal() {
    int r = w_.r();
    for (int i = 1; i <= r - 1; ++i) {
      RatFunc lhs = corner_det(i);
      RatFunc rhs(l_matrix_det(w_, r - i) * delta_product(w_, i));
      if (!lhs.equals(rhs)) {
        rep_.add_fail("corner_minor_product",
                      "i=" + std::to_string(i) + " " + render_side_by_side(lhs, rhs));
        return;
      }
    }
    RatFunc prod = RatFunc::constant(1);
    for (int i = 1; i <= r; ++i) {
      RatFunc lhs = corner_det(r - i + 1) / corner_det(r - i);
      RatFunc rhs = diagonal_closed_form(w_, i);
      if (!lhs.equals(rhs)) {
        rep_.add_fail("diagonal_formula",
                      "i=" + std::to_string(i) + " " + render_side_by_side(lhs, rhs));
        return;
      }
      prod = prod * lhs;
    }
    if (!prod.equals(RatFunc::constant(w_.det()))) {
      rep_.add_fail("diagonal_product_sign", "product of diagonal entries != det w");
      return;
    }
    rep_.add_pass("diagonal_formula");
  }

  // Seeded-point version of the two corner-minor batteries, for ranks where
  // the symbolic route is too expensive.
  void check_corners_sampled() {
    corners_sampled_done_ = true;
    int r = w_.r();
    std::mt19937_64 rng(mix_seed(opt_.seed, rep_.element.empty() ? w_.to_string() : rep_.element));
    for (int pt = 0; pt < opt_.sample_points; ++pt) {
      Assignment a;
      std::map<VarIndex, mpq_class> uvals;
      for (int attempt = 0;; ++attempt) {
        if (attempt > 200) {
          rep_.add_fail("corner_minors_sampled", "could not find a pole-free sample point");
          return;
        }
        a.clear();
        for (const VarIndex& v : fv_.canonical) a[v] = rand_nonzero_rational(rng, 99, 9);
        try {
          uvals = fm_.evaluate(a);
          break;
        } catch (const PoleError&) {
        }
      }
      std::vector<std::vector<mpq_class>> wu(r, std::vector<mpq_class>(r, 0));
      for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) {
          const CellEntry& e = fm_.pattern().at(i, j);
          if (e.is_one())
            wu[i - 1][j - 1] = 1;
          else if (e.is_var())
            wu[i - 1][j - 1] = uvals.at(e.var);
        }
      NumericCorners nc = numeric_corners(wu);
      for (int i = 1; i <= r - 1; ++i) {
        mpq_class sum = 0;
        for (const VarIndex& v : fv_.canonical)
          if (level_of(w_, v) == i + 1) sum += 1 / a.at(v);
        if (nc.f[r - i] != sum * nc.t[r - i]) {
          rep_.add_fail("superdiagonal_formula_sampled",
                        "i=" + std::to_string(i) + " at point " + std::to_string(pt));
          return;
        }
        mpq_class delta = delta_product(w_, i).evaluate(a);
        if (nc.t[i] != l_matrix_det(w_, r - i) * delta) {
          rep_.add_fail("corner_minor_product_sampled",
                        "i=" + std::to_string(i) + " at point " + std::to_string(pt));
          return;
        }
      }
      mpq_class prod = 1;
      for (int i = 1; i <= r; ++i) {
        if (nc.t[r - i] == 0) {
          rep_.add_fail("corner_minors_sampled", "vanishing corner minor at sample");
          return;
        }
        mpq_class b = nc.t[r - i + 1] / nc.t[r - i];
        if (b != diagonal_closed_form(w_, i).evaluate(a)) {
          rep_.add_fail("diagonal_formula_sampled",
                        "i=" + std::to_string(i) + " at point " + std::to_string(pt));
          return;
        }
        prod *= b;
      }
      if (prod != w_.det()) {
        rep_.add_fail("diagonal_product_sign_sampled", "at point " + std::to_string(pt));
        return;
      }
    }
    rep_.add_pass("corner_minors_sampled");
  }

  void check_jacobian() {
    JacobianData jd = jacobian(fm_);
    size_t d = jd.order.size();
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < i; ++j)
        if (!jd.matrix.at(i, j).is_zero()) {
          rep_.add_fail("jacobian_triangular",
                        "nonzero below diagonal at (" + var_name(jd.order[i]) + "," +
                            var_name(jd.order[j]) + "): " + render(jd.matrix.at(i, j)));
          return;
        }
    if (!jd.det.equals(jd.predicted)) {
      rep_.add_fail("jacobian_determinant", render_side_by_side(jd.det, jd.predicted));
      return;
    }
    if (!jd.diagonal_product.equals(jd.det)) {
      rep_.add_fail("jacobian_diagonal_product",
                    render_side_by_side(jd.diagonal_product, jd.det));
      return;
    }
    rep_.add_pass("jacobian_triangular");
    rep_.add_pass("jacobian_determinant");
  }

  void check_inverse() {
    std::map<VarIndex, RatFunc> inv = inverse_map(w_);
    if (w_.r() <= opt_.symbolic_inverse_max_rank) {
      for (const VarIndex& v : fv_.canonical) {
        RatFunc composed =
            inv.at(v).substitute([&](const VarIndex& u) { return fm_.image(u); });
        if (!composed.equals(RatFunc::variable(v))) {
          rep_.add_fail("inverse_roundtrip_symbolic",
                        var_name(v) + ": " + render(composed));
          return;
        }
      }
      rep_.add_pass("inverse_roundtrip_symbolic");
      return;
    }
    std::mt19937_64 rng(mix_seed(opt_.seed, w_.to_string() + "#roundtrip"));
    for (int pt = 0; pt < opt_.round_trip_points; ++pt) {
      for (int attempt = 0;; ++attempt) {
        if (attempt > 200) {
          rep_.add_fail("inverse_roundtrip", "could not find a pole-free sample point");
          return;
        }
        Assignment a;
        for (const VarIndex& v : fv_.canonical) a[v] = rand_nonzero_rational(rng, 99, 9);
        try {
          std::map<VarIndex, mpq_class> u = fm_.evaluate(a);
          Assignment ua(u.begin(), u.end());
          bool ok = true;
          for (const VarIndex& v : fv_.canonical)
            if (inv.at(v).evaluate(ua) != a.at(v)) {
              ok = false;
              break;
            }
          if (!ok) {
            rep_.add_fail("inverse_roundtrip", "mismatch at point " + std::to_string(pt));
            return;
          }
          break;
        } catch (const PoleError&) {
        }
      }
    }
    rep_.add_pass("inverse_roundtrip");
  }

  void check_v_consequences() {
    JacobianData jd = jacobian(fm_);
    for (size_t i = 0; i < jd.order.size(); ++i)
      for (size_t j = 0; j < i; ++j)
        if (!jd.matrix.at(i, j).is_zero()) {
          rep_.add_fail("dependency_triangular", "nonzero below diagonal");
          return;
        }
    rep_.add_pass("dependency_triangular");
    check_partition();
    check_diagonal_derivative();
  }

  void check_partition() {
    for (const VarIndex& v : fv_.canonical) {
      SplitImages s = forward_split(fm_, v);
      RatFunc sum = s.left + s.bottom_left + s.bottom_up;
      if (!sum.equals(fm_.image(v))) {
        rep_.add_fail("path_sum_partition", var_name(v) + ": " +
                                                render_side_by_side(sum, fm_.image(v)));
        return;
      }
      const OriginDestination& od = fm_.endpoints(v);
      bool has_last_col_origin = false;
      for (const Cell& o : od.origins)
        if (o.col == w_.r()) has_last_col_origin = true;
      if (!has_last_col_origin && !(s.bottom_left.is_zero() && s.bottom_up.is_zero())) {
        rep_.add_fail("path_sum_partition",
                      var_name(v) + ": remainder terms without last-column origins");
        return;
      }
      // Exactly one system passes through the variable's own cell.
      Cell self{fm_.pattern().var_row(v), v.b};
      int through = 0;
      for (const PathSet& ps :
           enumerate_path_sets(fm_.pattern(), od.origins, od.destinations))
        for (const Path& path : ps.paths)
          if (std::find(path.cells.begin(), path.cells.end(), self) != path.cells.end()) {
            ++through;
            break;
          }
      if (through != 1) {
        rep_.add_fail("unique_self_path",
                      var_name(v) + ": " + std::to_string(through) + " systems");
        return;
      }
    }
    rep_.add_pass("path_sum_partition");
    rep_.add_pass("unique_self_path");
  }

  void check_diagonal_derivative() {
    for (const VarIndex& v : fv_.canonical) {
      RatFunc lhs = fm_.image(v).derivative(v);
      RatFunc rhs = diagonal_derivative_closed_form(w_, v, fm_.endpoints(v).t);
      if (!lhs.equals(rhs)) {
        rep_.add_fail("diagonal_derivative_formula",
                      var_name(v) + ": " + render_side_by_side(lhs, rhs));
        return;
      }
    }
    rep_.add_pass("diagonal_derivative_formula");
  }

  void check_last_column_product() {
    int r = w_.r();
    for (const VarIndex& v : fv_.canonical) {
      if (v.b != r) continue;
      MultiPoly expected = MultiPoly::constant(1);
      for (int j = w_.pi_inv(r) + 1; j <= w_.pi_inv(v.a); ++j)
        expected = expected * MultiPoly::variable({w_.pi(j), r});
      if (!fm_.image(v).equals(RatFunc(expected))) {
        rep_.add_fail("last_column_product", var_name(v));
        return;
      }
    }
    rep_.add_pass("last_column_product");
  }

  void check_corner_minor_factorization() {
    const RatMatrix& wu = fm_.image_matrix();
    for (const VarIndex& v : fv_.canonical) {
      KSystem ks = k_system(w_, v);
      int t = static_cast<int>(ks.columns.size());
      RatMatrix m(t);
      for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j)
          m.at(i, j) = wu.at(w_.pi_inv(v.a) - t + i, ks.columns[j] - 1);
      RatFunc lhs = determinant(m);
      MultiPoly prod = MultiPoly::constant(1);
      for (const VarIndex& u : ks.det_set) prod = prod * MultiPoly::variable(u);
      RatFunc rhs(ks.kappa_det * prod);
      if (!lhs.equals(rhs)) {
        rep_.add_fail("corner_minor_factorization",
                      var_name(v) + ": " + render_side_by_side(lhs, rhs));
        return;
      }
    }
    rep_.add_pass("corner_minor_factorization");
  }

  void check_row_reduction() {
    if (w_.r() < 2) {
      rep_.add_skip("row_reduction_compatibility");
      return;
    }
    Reduction red = reduce_hat(w_);
    ForwardMap child = forward_map(red.child);
    auto relabel = [&](const VarIndex& v) { return red.var_map.at(v); };
    for (const auto& [v, target] : red.var_map) {
      RatFunc lhs(fm_.image(v).num().rename(relabel), fm_.image(v).den().rename(relabel));
      if (!lhs.equals(child.image(target))) {
        rep_.add_fail("row_reduction_compatibility", var_name(v));
        return;
      }
      if (level_of(w_, v) != level_of(red.child, target)) {
        rep_.add_fail("level_row_reduction", var_name(v));
        return;
      }
    }
    for (const VarIndex& v : fv_.canonical)
      if (!red.var_map.count(v) && level_of(w_, v) != v.b) {
        rep_.add_fail("level_row_reduction", var_name(v) + ": bottom-row level != column");
        return;
      }
    rep_.add_pass("row_reduction_compatibility");
    rep_.add_pass("level_row_reduction");
  }

  void check_column_reduction() {
    if (w_.r() < 2) {
      rep_.add_skip("column_reduction_scaling");
      return;
    }
    int r = w_.r();
    Reduction red = reduce_tilde(w_);
    ForwardMap child = forward_map(red.child);
    for (const VarIndex& v : fv_.canonical) {
      if (v.b == r) {
        if (level_of(w_, v) != w_.pi_inv(v.a)) {
          rep_.add_fail("level_column_reduction", var_name(v));
          return;
        }
        continue;
      }
      if (level_of(w_, v) != level_of(red.child, v)) {
        rep_.add_fail("level_column_reduction", var_name(v));
        return;
      }
      RatFunc factor;
      int pa = w_.pi_inv(v.a), pb = w_.pi_inv(v.b), pr = w_.pi_inv(r);
      if (pb < pa && pa < pr)
        factor = RatFunc::constant(1);
      else if (pb < pr && pr < pa)
        factor = -RatFunc::variable({v.a, r});
      else
        factor = RatFunc::variable({v.a, r}) / RatFunc::variable({v.b, r});
      RatFunc lhs = forward_split(fm_, v).left;
      RatFunc rhs = factor * child.image(v);
      if (!lhs.equals(rhs)) {
        rep_.add_fail("column_reduction_scaling",
                      var_name(v) + ": " + render_side_by_side(lhs, rhs));
        return;
      }
    }
    rep_.add_pass("column_reduction_scaling");
    rep_.add_pass("level_column_reduction");
  }

  void check_identities() {
    check_diagonal_derivative();
    check_last_column_product();
    check_corner_minor_factorization();
    check_partition();
    check_row_reduction();
    check_column_reduction();
  }

  void check_bounds() {
    DomainBounds db = domain_bounds(fm_, opt_.M);
    size_t d = db.order.size();
    if (d > 0) {
      if (!db.h[d - 1].equals(RatFunc::constant(opt_.M))) {
        rep_.add_fail("bound_shape", "innermost bound != M: " + render(db.h[d - 1]));
        return;
      }
    }
    for (size_t j = 0; j < d; ++j) {
      for (size_t k = 0; k <= j; ++k)
        if (!db.h[j].derivative(db.order[k]).is_zero()) {
          rep_.add_fail("bound_shape", "h_" + std::to_string(j + 1) + " depends on " +
                                           var_name(db.order[k]));
          return;
        }
      if (db.h[j].den().term_count() != 1 || !db.h[j].den().monomial_gcd().is_multilinear()) {
        rep_.add_fail("bound_shape",
                      "h_" + std::to_string(j + 1) + " denominator: " + render(db.h[j].den()));
        return;
      }
      for (const auto& [m, c] : db.h[j].num().terms())
        if (!m.is_multilinear()) {
          rep_.add_fail("bound_shape", "h_" + std::to_string(j + 1) +
                                           " numerator not multilinear: " + render(db.h[j]));
          return;
        }
      for (const VarIndex& v : db.h[j].variables()) {
        bool in_suffix = false;
        for (size_t k = j + 1; k < d; ++k)
          if (db.order[k] == v) in_suffix = true;
        if (!in_suffix && db.h[j].depends_on(v)) {
          rep_.add_fail("bound_shape",
                        "h_" + std::to_string(j + 1) + " uses " + var_name(v));
          return;
        }
      }
    }
    rep_.add_pass("bound_shape");

    if (w_.r() > 4) {
      rep_.add_skip("bound_containment");
      return;
    }
    if (d == 0) {
      rep_.add_pass("bound_containment");
      return;
    }
    std::map<VarIndex, RatFunc> inv = inverse_map(w_);
    std::mt19937_64 rng(mix_seed(opt_.seed, w_.to_string() + "#bounds"));
    const long grid = 1 << 16;
    int accepted = 0;
    long attempts = 0, max_attempts = 40L * opt_.containment_samples + 1000;
    while (accepted < opt_.containment_samples) {
      if (++attempts > max_attempts) {
        rep_.add_fail("bound_containment", "sampler starved; too many singular points");
        return;
      }
      Assignment ua;
      for (const VarIndex& v : fv_.canonical) {
        mpq_class q(rand_range(rng, -grid, grid), grid);
        q.canonicalize();
        ua[v] = q * opt_.M;
      }
      Assignment n;
      try {
        for (const VarIndex& v : fv_.canonical) {
          n[v] = inv.at(v).evaluate(ua);
          if (n[v] == 0) throw PoleError("coordinate vanishes");
        }
        std::map<VarIndex, mpq_class> round = fm_.evaluate(n);
        for (const VarIndex& v : fv_.canonical)
          if (round.at(v) != ua.at(v)) {
            rep_.add_fail("bound_containment", "inverse/forward mismatch at sample");
            return;
          }
      } catch (const PoleError&) {
        continue;
      }
      ++accepted;
      Assignment absn;
      for (const auto& [v, q] : n) absn[v] = abs(q);
      for (size_t j = 0; j < d; ++j) {
        mpq_class bound = db.h[j].evaluate(absn);
        if (abs(n.at(db.order[j])) > bound) {
          std::ostringstream os;
          os << "sample " << accepted << ": |" << var_name(db.order[j])
             << "| = " << render_rational(abs(n.at(db.order[j])))
             << " > " << render_rational(bound);
          rep_.add_fail("bound_containment", os.str());
          return;
        }
      }
    }
    rep_.add_pass("bound_containment");
  }

  Permutation w_;
  ElementOptions opt_;
  ForwardMap fm_;
  FreeVariables fv_;
  CheckReport rep_;
  std::vector<RatFunc> corners_;
  bool corners_sampled_done_ = false;
};

}  // namespace

CheckReport verify_element(const Permutation& w, const std::set<Part>& parts,
                           const ElementOptions& opt) {
  return ElementVerifier(w, opt).run(parts);
}

CheckReport cross_checks(const Permutation& w) {
  if (w.r() < 2) throw RangeError("cross checks need rank >= 2");
  return verify_element(w, {Part::identities, Part::bounds}, {});
}

namespace {

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SCHUBCELL_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

SweepReport verify_sweep(const SweepConfig& config) {
  auto t0 = std::chrono::steady_clock::now();
  if (config.parts.empty()) throw RangeError("sweep needs a nonempty part set");
  if (!config.exhaustive && config.sample_count < 1)
    throw RangeError("sample mode needs a positive count");

  std::vector<Permutation> elements;
  if (config.exhaustive) {
    elements = all_permutations(config.r);
  } else {
    std::mt19937_64 rng(config.seed);
    std::set<std::string> seen;
    while (static_cast<int>(elements.size()) < config.sample_count) {
      std::vector<int> img(config.r);
      for (int i = 0; i < config.r; ++i) img[i] = i + 1;
      for (int i = config.r - 1; i > 0; --i)
        std::swap(img[i], img[rand_range(rng, 0, i)]);
      Permutation p(img);
      if (seen.insert(p.to_string()).second) elements.push_back(p);
    }
    std::sort(elements.begin(), elements.end(),
              [](const Permutation& a, const Permutation& b) {
                return a.to_string() < b.to_string();
              });
  }

  ElementOptions eopt = config.element;
  eopt.seed = config.seed;

  std::vector<CheckReport> reports(elements.size());
  int threads = std::min<int>(thread_count(config.threads), static_cast<int>(elements.size()));
  if (threads <= 1) {
    for (size_t i = 0; i < elements.size(); ++i)
      reports[i] = verify_element(elements[i], config.parts, eopt);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&]() {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= elements.size()) return;
          reports[i] = verify_element(elements[i], config.parts, eopt);
        }
      });
    for (auto& th : pool) th.join();
  }

  SweepReport sr;
  sr.r = config.r;
  sr.exhaustive = config.exhaustive;
  sr.seed = config.seed;
  sr.examined = elements.size();
  for (auto& rep : reports) {
    if (rep.all_pass())
      ++sr.passed;
    else
      sr.failures.push_back(rep);
  }
  sr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sr;
}

}  // namespace schubcell
