#include "schubcell/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>

namespace schubcell {

RatMatrix RatMatrix::identity(size_t n) {
  RatMatrix m(n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = RatFunc::constant(1);
  return m;
}

RatMatrix RatMatrix::transposed() const {
  RatMatrix t(n_);
  for (size_t i = 0; i < n_; ++i)
    for (size_t j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
  return t;
}

namespace {

// Cofactor expansion along rows in a precomputed order, memoized on the set
// of remaining columns.  Sparse rows are consumed first so zero entries prune
// whole subtrees; the matrices seen here are never larger than 12 x 12.
class LaplaceDet {
 public:
  explicit LaplaceDet(const RatMatrix& m) : m_(m), n_(m.size()) {}

  RatFunc run() {
    if (n_ == 0) return RatFunc::constant(1);
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](size_t a, size_t b) { return nonzeros(a) < nonzeros(b); });
    int sign = permutation_parity(order_);
    RatFunc d = det(full_mask());
    return sign < 0 ? -d : d;
  }

 private:
  uint32_t full_mask() const { return n_ >= 32 ? ~0u : ((1u << n_) - 1); }

  size_t nonzeros(size_t row) const {
    size_t c = 0;
    for (size_t j = 0; j < n_; ++j)
      if (!m_.at(row, j).is_zero()) ++c;
    return c;
  }

  static int permutation_parity(const std::vector<size_t>& p) {
    int sign = 1;
    std::vector<bool> seen(p.size(), false);
    for (size_t i = 0; i < p.size(); ++i) {
      if (seen[i]) continue;
      size_t len = 0, j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = p[j];
        ++len;
      }
      if (len % 2 == 0) sign = -sign;
    }
    return sign;
  }

  const RatFunc& det(uint32_t colmask) {
    static const RatFunc one = RatFunc::constant(1);
    if (colmask == 0) return one;
    auto it = memo_.find(colmask);
    if (it != memo_.end()) return it->second;
    size_t depth = n_ - static_cast<size_t>(__builtin_popcount(colmask));
    size_t row = order_[depth];
    RatFunc acc;
    int sign = 1;
    for (size_t j = 0; j < n_; ++j) {
      if (!(colmask & (1u << j))) continue;
      const RatFunc& e = m_.at(row, j);
      if (!e.is_zero()) {
        RatFunc sub = det(colmask & ~(1u << j));
        if (!sub.is_zero()) {
          RatFunc contrib = e * sub;
          acc = sign > 0 ? acc + contrib : acc - contrib;
        }
      }
      sign = -sign;
    }
    return memo_.emplace(colmask, std::move(acc)).first->second;
  }

  const RatMatrix& m_;
  size_t n_;
  std::vector<size_t> order_;
  std::unordered_map<uint32_t, RatFunc> memo_;
};

RatFunc elimination_det(RatMatrix m) {
  size_t n = m.size();
  if (n == 0) return RatFunc::constant(1);
  RatFunc det = RatFunc::constant(1);
  for (size_t k = 0; k < n; ++k) {
    size_t pivot = k;
    while (pivot < n && m.at(pivot, k).is_zero()) ++pivot;
    if (pivot == n) return RatFunc();
    if (pivot != k) {
      for (size_t j = k; j < n; ++j) std::swap(m.at(pivot, j), m.at(k, j));
      det = -det;
    }
    det = det * m.at(k, k);
    for (size_t i = k + 1; i < n; ++i) {
      if (m.at(i, k).is_zero()) continue;
      RatFunc factor = m.at(i, k) / m.at(k, k);
      for (size_t j = k; j < n; ++j) m.at(i, j) = m.at(i, j) - factor * m.at(k, j);
    }
  }
  return det;
}

}  // namespace

RatFunc determinant(const RatMatrix& m, DetMethod method) {
  if (m.size() > 31) throw RangeError("determinant size limit exceeded");
  if (method == DetMethod::elimination) return elimination_det(m);
  // Expand along whichever orientation has the sparser leading rows.
  auto nnz_profile = [](const RatMatrix& x) {
    std::vector<size_t> prof(x.size());
    for (size_t i = 0; i < x.size(); ++i)
      for (size_t j = 0; j < x.size(); ++j)
        if (!x.at(i, j).is_zero()) ++prof[i];
    std::sort(prof.begin(), prof.end());
    return prof;
  };
  RatMatrix t = m.transposed();
  if (nnz_profile(t) < nnz_profile(m)) return LaplaceDet(t).run();
  return LaplaceDet(m).run();
}

mpq_class determinant(std::vector<std::vector<mpq_class>> m) {
  size_t n = m.size();
  mpq_class det = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      mpq_class f = m[i][k] / m[k][k];
      for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

int permutation_submatrix_det(const std::vector<int>& one_col_per_row) {
  size_t n = one_col_per_row.size();
  std::vector<bool> used(n, false);
  std::vector<size_t> p(n);
  for (size_t i = 0; i < n; ++i) {
    int c = one_col_per_row[i];
    if (c < 0 || static_cast<size_t>(c) >= n || used[c]) return 0;
    used[c] = true;
    p[i] = static_cast<size_t>(c);
  }
  int sign = 1;
  std::vector<bool> seen(n, false);
  for (size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    size_t len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = p[j];
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

}  // namespace schubcell
