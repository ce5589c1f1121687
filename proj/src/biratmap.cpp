#include "schubcell/biratmap.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace schubcell {

namespace {

// Denominator of the image: product of the row products over all
// destinations.
MultiPoly destination_row_product(const MatrixPattern& p, const OriginDestination& od) {
  MultiPoly den = MultiPoly::constant(1);
  for (const Cell& d : od.destinations) {
    const CellEntry& e = p.at(d.row, d.col);
    assert(e.is_one());
    den = den * row_data(p, e.one_index).rho;
  }
  return den;
}

MultiPoly apply_mutation(MultiPoly p, const PathSumMutation& m) {
  if (m.term_index >= p.term_count()) throw RangeError("mutation term index out of range");
  auto it = p.terms().begin();
  std::advance(it, m.term_index);
  MultiPoly out = p;
  out.add_term(it->first, mpz_class(m.delta));
  return out;
}

RatFunc signed_ratio(const MultiPoly& num, const MultiPoly& den, int t) {
  RatFunc f(num, den);
  return (t % 2) ? -f : f;
}

}  // namespace

ForwardMap::ForwardMap(Permutation w, const PathSumMutation* mutation)
    : w_(std::move(w)), pattern_(MatrixPattern::build(w_)) {
  vars_ = free_variables(w_).canonical;
  for (const VarIndex& v : vars_) {
    OriginDestination od = origins_destinations(pattern_, v);
    MultiPoly num = path_sum(pattern_, v, PathVariant::all);
    if (mutation && mutation->alpha == v) num = apply_mutation(num, *mutation);
    MultiPoly den = destination_row_product(pattern_, od);
    images_.emplace(v, signed_ratio(num, den, od.t));
    endpoints_.emplace(v, std::move(od));
  }
  int r = w_.r();
  wu_ = RatMatrix(r);
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j) {
      const CellEntry& e = pattern_.at(i, j);
      if (e.is_one())
        wu_.at(i - 1, j - 1) = RatFunc::constant(1);
      else if (e.is_var())
        wu_.at(i - 1, j - 1) = images_.at(e.var);
    }
}

const RatFunc& ForwardMap::image(const VarIndex& v) const {
  auto it = images_.find(v);
  if (it == images_.end()) throw RangeError("not a free variable: " + var_name(v));
  return it->second;
}

const OriginDestination& ForwardMap::endpoints(const VarIndex& v) const {
  auto it = endpoints_.find(v);
  if (it == endpoints_.end()) throw RangeError("not a free variable: " + var_name(v));
  return it->second;
}

std::map<VarIndex, mpq_class> ForwardMap::evaluate(const Assignment& a) const {
  for (const VarIndex& v : vars_) {
    auto it = a.find(v);
    if (it == a.end()) throw RangeError("assignment missing " + var_name(v));
    if (it->second == 0) throw PoleError("map evaluated off the torus: " + var_name(v) + " = 0");
  }
  std::map<VarIndex, mpq_class> out;
  for (const VarIndex& v : vars_) out.emplace(v, images_.at(v).evaluate(a));
  return out;
}

ForwardMap forward_map(const Permutation& w, const PathSumMutation* mutation) {
  return ForwardMap(w, mutation);
}

SplitImages forward_split(const ForwardMap& fm, const VarIndex& alpha) {
  const MatrixPattern& p = fm.pattern();
  const OriginDestination& od = fm.endpoints(alpha);
  MultiPoly den = destination_row_product(p, od);
  SplitImages s;
  s.left = signed_ratio(path_sum(p, alpha, PathVariant::left_start), den, od.t);
  s.bottom_left = signed_ratio(path_sum(p, alpha, PathVariant::bottom_left), den, od.t);
  s.bottom_up = signed_ratio(path_sum(p, alpha, PathVariant::bottom_up), den, od.t);
  return s;
}

namespace {

RatFunc pattern_entry_symbol(const CellEntry& e) {
  if (e.is_one()) return RatFunc::constant(1);
  if (e.is_var()) return RatFunc::variable(e.var);
  return RatFunc();
}

RatMatrix submatrix(const MatrixPattern& p, const std::vector<int>& rows,
                    const std::vector<int>& cols, bool formal) {
  RatMatrix m(rows.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      m.at(i, j) = pattern_entry_symbol(p.at(rows[i], cols[j]));
  (void)formal;
  return m;
}

RatMatrix submatrix_of(const RatMatrix& wu, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  RatMatrix m(rows.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) m.at(i, j) = wu.at(rows[i] - 1, cols[j] - 1);
  return m;
}

}  // namespace

UDLBlocks udl_blocks(const ForwardMap& fm, int i) {
  int r = fm.w().r();
  if (i < 1 || i > r - 1) throw RangeError("block index out of range");
  UDLBlocks b;
  b.i = i;
  std::vector<int> cols, srows, erows;
  for (int c = r - i + 1; c <= r; ++c) cols.push_back(c);
  for (int k = r - i + 1; k <= r; ++k) srows.push_back(k);
  erows.push_back(r - i);
  for (int k = r - i + 2; k <= r; ++k) erows.push_back(k);
  b.S = submatrix(fm.pattern(), srows, cols, true);
  b.E = submatrix(fm.pattern(), erows, cols, true);
  b.T = submatrix_of(fm.image_matrix(), srows, cols);
  b.F = submatrix_of(fm.image_matrix(), erows, cols);
  b.delta = delta_product(fm.w(), i);
  b.l_det = l_matrix_det(fm.w(), r - i);
  return b;
}

UDLDecomposition udl_decompose(const ForwardMap& fm) {
  int r = fm.w().r();
  const RatMatrix& wu = fm.image_matrix();
  // det of the lower-right k x k corner, k = 0..r.
  std::vector<RatFunc> corner(r + 1);
  corner[0] = RatFunc::constant(1);
  for (int k = 1; k <= r; ++k) {
    std::vector<int> idx;
    for (int c = r - k + 1; c <= r; ++c) idx.push_back(c);
    corner[k] = determinant(submatrix_of(wu, idx, idx));
  }
  UDLDecomposition d;
  for (int i = 1; i <= r; ++i) {
    if (corner[r - i].is_zero())
      throw DegenerateDecompositionError("vanishing corner minor");
    d.diag.push_back(corner[r - i + 1] / corner[r - i]);
  }
  for (int i = 1; i <= r - 1; ++i) {
    UDLBlocks b = udl_blocks(fm, r - i);
    d.superdiag.push_back(determinant(b.F) / corner[r - i]);
  }
  return d;
}

MultiPoly delta_product(const Permutation& w, int i) {
  MultiPoly p = MultiPoly::constant(1);
  for (const VarIndex& v : free_variables(w).canonical)
    if (v.a < w.r() - i + 1 && w.r() - i + 1 <= v.b) p = p * MultiPoly::variable(v);
  return p;
}

int l_matrix_det(const Permutation& w, int i) {
  // Keep the rows whose one sits right of column i; their ones, shifted left
  // by i columns, again form a permutation matrix.
  std::vector<int> one_cols;
  for (int row = 1; row <= w.r(); ++row)
    if (w.pi(row) > i) one_cols.push_back(w.pi(row) - i - 1);
  return permutation_submatrix_det(one_cols);
}

RatFunc diagonal_closed_form(const Permutation& w, int i) {
  MultiPoly num = MultiPoly::constant(1);
  MultiPoly den = MultiPoly::constant(1);
  int sign = (i + w.pi_inv(i)) % 2;
  for (const VarIndex& v : free_variables(w).canonical) {
    if (v.b == i) {
      num = num * MultiPoly::variable(v);
      sign ^= 1;  // each factor enters negated
    }
    if (v.a == i) den = den * MultiPoly::variable(v);
  }
  return signed_ratio(num, den, sign);
}

KSystem k_system(const Permutation& w, const VarIndex& alpha) {
  int r = w.r();
  if (alpha.a < 1 || alpha.b > r || alpha.a >= alpha.b ||
      w.pi_inv(alpha.a) <= w.pi_inv(alpha.b))
    throw RangeError("not a free variable: " + var_name(alpha));
  KSystem ks;
  ks.alpha = alpha;
  for (int j = alpha.b; j <= r; ++j)
    if (w.pi_inv(j) <= w.pi_inv(alpha.a)) ks.columns.push_back(j);
  int t = static_cast<int>(ks.columns.size());
  MatrixPattern p = MatrixPattern::build(w);

  std::vector<int> rows;
  for (int k = w.pi_inv(alpha.a) - t + 1; k <= w.pi_inv(alpha.a); ++k) rows.push_back(k);
  ks.K = RatMatrix(t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      const CellEntry& e = p.at(rows[i], ks.columns[j]);
      if (e.is_one())
        ks.K.at(i, j) = RatFunc::constant(1);
      else if (e.is_var())
        ks.K.at(i, j) = RatFunc::variable(e.var);
    }

  std::vector<int> one_rows;
  for (int j : ks.columns) one_rows.push_back(w.pi_inv(j));
  std::sort(one_rows.begin(), one_rows.end());
  ks.kappa.assign(t, std::vector<int>(t, 0));
  std::vector<int> kappa_perm(t, -1);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      if (w.pi(one_rows[i]) == ks.columns[j]) {
        ks.kappa[i][j] = 1;
        kappa_perm[i] = j;
      }
  ks.kappa_det = permutation_submatrix_det(kappa_perm);

  for (const VarIndex& v : free_variables(w).canonical)
    if (v.a < alpha.b && alpha.b <= v.b && w.pi_inv(v.a) <= w.pi_inv(alpha.a))
      ks.det_set.push_back(v);
  return ks;
}

std::map<VarIndex, RatFunc> inverse_map(const Permutation& w) {
  int r = w.r();
  std::map<VarIndex, RatFunc> inv;

  // Last column: successive quotients down the column.
  for (int k = w.pi_inv(r) + 1; k <= r; ++k) {
    VarIndex v{w.pi(k), r};
    RatFunc above = (k - 1 == w.pi_inv(r)) ? RatFunc::constant(1)
                                           : RatFunc::variable(VarIndex{w.pi(k - 1), r});
    inv[v] = RatFunc::variable(v) / above;
  }

  FreeVariables fv = free_variables(w);
  for (int y = r - 1; y >= 2; --y) {
    for (const VarIndex& v : fv.canonical) {
      if (v.b != y) continue;
      KSystem ks = k_system(w, v);
      RatFunc expr = determinant(ks.K);
      if (ks.kappa_det < 0) expr = -expr;

      // Lowest free variable above v in the same column, if any.
      std::optional<VarIndex> pivot;
      for (const VarIndex& u : fv.canonical)
        if (u.b == y && !(u == v) && w.pi_inv(u.a) < w.pi_inv(v.a) &&
            (!pivot || w.pi_inv(u.a) > w.pi_inv(pivot->a)))
          pivot = u;

      std::vector<VarIndex> cancel;
      if (!pivot) {
        cancel = ks.det_set;
      } else {
        KSystem ks1 = k_system(w, *pivot);
        expr = expr / determinant(ks1.K);
        if (ks1.kappa_det < 0) expr = -expr;
        for (const VarIndex& u : ks.det_set)
          if (std::find(ks1.det_set.begin(), ks1.det_set.end(), u) == ks1.det_set.end())
            cancel.push_back(u);
      }
      for (const VarIndex& u : cancel) {
        if (u == v) continue;
        auto it = inv.find(u);
        assert(it != inv.end() && "inverse recursion out of order");
        expr = expr / it->second;
      }
      inv[v] = expr;
    }
  }
  return inv;
}

std::map<VarIndex, mpq_class> evaluate_inverse(const Permutation& w, const Assignment& u_point) {
  int r = w.r();
  MatrixPattern p = MatrixPattern::build(w);
  auto uval = [&](const VarIndex& v) {
    auto it = u_point.find(v);
    if (it == u_point.end()) throw RangeError("assignment missing " + var_name(v));
    return it->second;
  };
  auto numeric_det = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
    std::vector<std::vector<mpq_class>> m(rows.size(), std::vector<mpq_class>(cols.size(), 0));
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) {
        const CellEntry& e = p.at(rows[i], cols[j]);
        if (e.is_one())
          m[i][j] = 1;
        else if (e.is_var())
          m[i][j] = uval(e.var);
      }
    return determinant(std::move(m));
  };

  std::map<VarIndex, mpq_class> n;
  for (int k = w.pi_inv(r) + 1; k <= r; ++k) {
    VarIndex v{w.pi(k), r};
    mpq_class above = (k - 1 == w.pi_inv(r)) ? mpq_class(1) : uval(VarIndex{w.pi(k - 1), r});
    if (above == 0) throw PoleError("inverse undefined: vanishing column quotient");
    n[v] = uval(v) / above;
  }

  FreeVariables fv = free_variables(w);
  for (int y = r - 1; y >= 2; --y) {
    for (const VarIndex& v : fv.canonical) {
      if (v.b != y) continue;
      KSystem ks = k_system(w, v);
      int t = static_cast<int>(ks.columns.size());
      std::vector<int> rows;
      for (int k = w.pi_inv(v.a) - t + 1; k <= w.pi_inv(v.a); ++k) rows.push_back(k);
      mpq_class value = numeric_det(rows, ks.columns) * ks.kappa_det;

      std::optional<VarIndex> pivot;
      for (const VarIndex& u : fv.canonical)
        if (u.b == y && !(u == v) && w.pi_inv(u.a) < w.pi_inv(v.a) &&
            (!pivot || w.pi_inv(u.a) > w.pi_inv(pivot->a)))
          pivot = u;

      std::vector<VarIndex> cancel;
      if (!pivot) {
        cancel = ks.det_set;
      } else {
        KSystem ks1 = k_system(w, *pivot);
        int t1 = static_cast<int>(ks1.columns.size());
        std::vector<int> rows1;
        for (int k = w.pi_inv(pivot->a) - t1 + 1; k <= w.pi_inv(pivot->a); ++k)
          rows1.push_back(k);
        mpq_class d1 = numeric_det(rows1, ks1.columns);
        if (d1 == 0) throw PoleError("inverse undefined: vanishing corner minor");
        value = value * ks1.kappa_det / d1;
        for (const VarIndex& u : ks.det_set)
          if (std::find(ks1.det_set.begin(), ks1.det_set.end(), u) == ks1.det_set.end())
            cancel.push_back(u);
      }
      for (const VarIndex& u : cancel) {
        if (u == v) continue;
        mpq_class nu = n.at(u);
        if (nu == 0) throw PoleError("inverse undefined: vanishing coordinate");
        value /= nu;
      }
      n[v] = value;
    }
  }
  return n;
}

JacobianData jacobian(const ForwardMap& fm) {
  JacobianData jd;
  jd.order = free_variables(fm.w()).square;
  size_t d = jd.order.size();
  jd.matrix = RatMatrix(d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      jd.matrix.at(i, j) = fm.image(jd.order[i]).derivative(jd.order[j]);
  jd.det = determinant(jd.matrix);
  jd.diagonal_product = RatFunc::constant(1);
  for (size_t i = 0; i < d; ++i) jd.diagonal_product = jd.diagonal_product * jd.matrix.at(i, i);
  jd.t_w = 0;
  MultiPoly pred = MultiPoly::constant(1);
  for (const VarIndex& v : jd.order) {
    jd.t_w += fm.endpoints(v).t;
    pred = pred * MultiPoly::variable(v).pow(static_cast<unsigned>(v.b - v.a - 1));
  }
  jd.predicted = (jd.t_w % 2) ? -RatFunc(pred) : RatFunc(pred);
  return jd;
}

LinearForm& LinearForm::add_var(int i, const mpq_class& c) {
  auto [it, inserted] = coeff.emplace(i, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeff.erase(it);
  }
  return *this;
}

LinearForm LinearForm::operator+(const LinearForm& o) const {
  LinearForm out = *this;
  out.constant += o.constant;
  for (const auto& [i, c] : o.coeff) out.add_var(i, c);
  return out;
}

mpq_class LinearForm::evaluate(const std::vector<mpq_class>& lambda) const {
  mpq_class acc = constant;
  for (const auto& [i, c] : coeff) {
    if (i < 1 || static_cast<size_t>(i) > lambda.size()) throw RangeError("lambda too short");
    acc += c * lambda[i - 1];
  }
  return acc;
}

std::complex<double> LinearForm::evaluate(
    const std::vector<std::complex<double>>& lambda) const {
  std::complex<double> acc = constant.get_d();
  for (const auto& [i, c] : coeff) {
    if (i < 1 || static_cast<size_t>(i) > lambda.size()) throw RangeError("lambda too short");
    acc += c.get_d() * lambda[i - 1];
  }
  return acc;
}

std::string LinearForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : coeff) {
    if (c > 0 && !first) os << '+';
    if (c == -1)
      os << '-';
    else if (c != 1)
      os << render_rational(c) << '*';
    os << "λ" << i;
    first = false;
  }
  if (constant != 0 || first) {
    if (constant >= 0 && !first) os << '+';
    os << render_rational(constant);
  }
  return os.str();
}

ExponentData exponents(const Permutation& w) {
  int r = w.r();
  ExponentData ed;
  FreeVariables fv = free_variables(w);
  for (const VarIndex& v : fv.succ) {
    ExponentEntry e;
    e.alpha = v;
    e.measure_exp = v.b - v.a - 1;
    // (λ_a - ρ_a) - (λ_b - ρ_b) with ρ the half sum: ρ_a - ρ_b = b - a.
    e.char_exp.add_var(v.a, 1).add_var(v.b, -1);
    e.char_exp.constant = -(v.b - v.a);
    e.total_exp = e.char_exp;
    e.total_exp.constant += e.measure_exp;
    e.parity_a = v.a;
    e.parity_b = v.b;
    ed.entries.push_back(std::move(e));
  }
  ed.sign_parity.assign(r, 0);
  for (int j = 1; j <= r; ++j) {
    int cj = 0;
    for (const VarIndex& v : fv.canonical)
      if (v.b == j) ++cj;
    ed.sign_parity[j - 1] = (j + w.pi_inv(j) + cj) % 2;
  }
  return ed;
}

int ExponentData::eta(const ExponentEntry& e, const std::vector<int>& delta) const {
  if (static_cast<size_t>(e.parity_b) > delta.size()) throw RangeError("delta too short");
  return (delta[e.parity_a - 1] + delta[e.parity_b - 1]) % 2;
}

int ExponentData::global_sign(const std::vector<int>& delta) const {
  if (delta.size() != sign_parity.size()) throw RangeError("delta length mismatch");
  int s = 0;
  for (size_t j = 0; j < delta.size(); ++j) s += (delta[j] % 2) * sign_parity[j];
  return (s % 2) ? -1 : 1;
}

DomainBounds domain_bounds(const ForwardMap& fm, const mpq_class& M) {
  if (M <= 0) throw RangeError("truncation constant must be positive");
  DomainBounds db;
  db.M = M;
  db.order = free_variables(fm.w()).square;
  RatFunc Mconst = RatFunc::constant(M);
  for (const VarIndex& v : db.order) {
    int t = fm.endpoints(v).t;
    const RatFunc& u = fm.image(v);
    RatFunc du = u.derivative(v);
    RatFunc f = u - du * RatFunc::variable(v);
    if (t % 2) f = -f;
    RatFunc h = (Mconst + f) / du;
    if (t % 2) h = -h;
    db.sign_exp.push_back(t);
    db.f.push_back(std::move(f));
    db.h.push_back(std::move(h));
  }
  return db;
}

}  // namespace schubcell
