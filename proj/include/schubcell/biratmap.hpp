#pragma once

#include <complex>
#include <map>
#include <optional>

#include "schubcell/matrix.hpp"
#include "schubcell/paths.hpp"

namespace schubcell {

// Test hook: adds `delta` to the coefficient of the term_index-th canonical
// term of the path-sum attached to `alpha`.
struct PathSumMutation {
  VarIndex alpha;
  size_t term_index = 0;
  long delta = 1;
};

// The birational map attached to w: every free variable goes to a signed
// ratio of a disjoint-path-system sum by the row products of its
// destinations.
class ForwardMap {
 public:
  ForwardMap(Permutation w, const PathSumMutation* mutation);

  const Permutation& w() const { return w_; }
  const MatrixPattern& pattern() const { return pattern_; }
  const std::vector<VarIndex>& variables() const { return vars_; }
  const RatFunc& image(const VarIndex& v) const;
  const OriginDestination& endpoints(const VarIndex& v) const;
  // The pattern with every variable replaced by its image.
  const RatMatrix& image_matrix() const { return wu_; }

  // Exact evaluation on the torus: throws PoleError if any coordinate is
  // zero or any image denominator vanishes.
  std::map<VarIndex, mpq_class> evaluate(const Assignment& a) const;

 private:
  Permutation w_;
  MatrixPattern pattern_;
  std::vector<VarIndex> vars_;
  std::map<VarIndex, RatFunc> images_;
  std::map<VarIndex, OriginDestination> endpoints_;
  RatMatrix wu_;
};

ForwardMap forward_map(const Permutation& w, const PathSumMutation* mutation = nullptr);

// Components of the image split by how the path systems leave the last
// column: their sum is always the full image.
struct SplitImages {
  RatFunc left;         // systems whose last-column starts all go left
  RatFunc bottom_left;  // remainder, bottom origin starts left
  RatFunc bottom_up;    // remainder, bottom origin starts up
};

SplitImages forward_split(const ForwardMap& fm, const VarIndex& alpha);

// Lower-right corner blocks driving the unipotent x lower-triangular
// factorization of the image matrix.
struct UDLBlocks {
  int i = 0;
  RatMatrix S, E;       // pattern blocks (formal n-variables)
  RatMatrix T, F;       // the same blocks of the image matrix
  MultiPoly delta;      // product of variables left of and above the block
  int l_det = 0;        // determinant of the trimmed permutation matrix
};

UDLBlocks udl_blocks(const ForwardMap& fm, int i);

struct UDLDecomposition {
  std::vector<RatFunc> superdiag;  // x_{i,i+1}, i = 1..r-1
  std::vector<RatFunc> diag;       // b_{i,i},  i = 1..r
};

UDLDecomposition udl_decompose(const ForwardMap& fm);

// det T_i as predicted: l_matrix_det(w, r-i) * delta_product(w, i).
MultiPoly delta_product(const Permutation& w, int i);
int l_matrix_det(const Permutation& w, int i);
// Signed monomial ratio for the i-th diagonal entry of the lower-triangular
// factor.
RatFunc diagonal_closed_form(const Permutation& w, int i);

// Largest invertible corner minor system attached to a free variable; its
// determinant factors over the variable set `det_set`.
struct KSystem {
  VarIndex alpha;
  std::vector<int> columns;             // ascending
  RatMatrix K;                          // formal u-variable entries
  std::vector<std::vector<int>> kappa;  // 0/1 submatrix of w
  int kappa_det = 0;
  std::vector<VarIndex> det_set;        // canonical order
};

KSystem k_system(const Permutation& w, const VarIndex& alpha);

// Expressions in the image coordinates recovering every free variable;
// substituting the forward images gives the identity.
std::map<VarIndex, RatFunc> inverse_map(const Permutation& w);

// The same descending-column recursion evaluated at a point, avoiding the
// composed symbolic expressions; throws PoleError off the domain.
std::map<VarIndex, mpq_class> evaluate_inverse(const Permutation& w, const Assignment& u_point);

struct JacobianData {
  std::vector<VarIndex> order;  // square order, greatest first
  RatMatrix matrix;             // (i,j) = d image(order[i]) / d order[j]
  RatFunc det;
  RatFunc diagonal_product;
  RatFunc predicted;  // (-1)^{t_w} prod n^{b-a-1}
  int t_w = 0;        // sum of (|D| - 1) over all variables
};

JacobianData jacobian(const ForwardMap& fm);

// c0 + sum_i c_i * lambda_i with exact rational coefficients.
struct LinearForm {
  mpq_class constant;
  std::map<int, mpq_class> coeff;

  LinearForm& add_var(int i, const mpq_class& c);
  LinearForm operator+(const LinearForm& o) const;
  mpq_class evaluate(const std::vector<mpq_class>& lambda) const;
  std::complex<double> evaluate(const std::vector<std::complex<double>>& lambda) const;
  std::string to_string() const;  // e.g. "λ1-λ2-1"
};

struct ExponentEntry {
  VarIndex alpha;
  int measure_exp = 0;    // b-a-1
  LinearForm char_exp;    // (λ_a-ρ_a)-(λ_b-ρ_b)
  LinearForm total_exp;   // char_exp + measure_exp
  int parity_a = 0, parity_b = 0;  // η_α = δ_a + δ_b (mod 2)
};

struct ExponentData {
  std::vector<ExponentEntry> entries;  // succ order
  std::vector<int> sign_parity;        // per j: exponent parity of the global sign

  int eta(const ExponentEntry& e, const std::vector<int>& delta) const;
  int global_sign(const std::vector<int>& delta) const;
};

ExponentData exponents(const Permutation& w);

// Nested truncation bounds: coordinate j of any preimage of the box
// [-M, M]^d is confined to |n_{order[j]}| <= h[j](|later coordinates|).
struct DomainBounds {
  std::vector<VarIndex> order;  // square order, greatest first
  std::vector<int> sign_exp;    // |D| - 1 per coordinate
  std::vector<RatFunc> f, h;
  mpq_class M;
};

DomainBounds domain_bounds(const ForwardMap& fm, const mpq_class& M);

}  // namespace schubcell
