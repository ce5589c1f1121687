#pragma once

#include <gmpxx.h>

#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schubcell/errors.hpp"

namespace schubcell {

// Index of a free entry of the matrix pattern.  The canonical variable order
// used everywhere (serialization, monomial order, determinant pivots) is
// ascending (b, a).
struct VarIndex {
  int a = 0;
  int b = 0;

  friend bool operator==(const VarIndex&, const VarIndex&) = default;
  friend std::strong_ordering operator<=>(const VarIndex& x, const VarIndex& y) {
    if (auto c = x.b <=> y.b; c != 0) return c;
    return x.a <=> y.a;
  }
};

std::string var_name(const VarIndex& v, char letter = 'n');

// Product of variable powers, factors sorted by VarIndex, exponents >= 1.
class Monomial {
 public:
  using Factor = std::pair<VarIndex, int>;

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors);
  static Monomial variable(const VarIndex& v, int exp = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  int total_degree() const;
  int degree_of(const VarIndex& v) const;
  bool is_multilinear() const;

  Monomial times(const Monomial& o) const;
  // Divides exactly or returns nullopt.
  std::optional<Monomial> divided_by(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

// Canonical term order: graded, ties broken lexicographically on the exponent
// vector over ascending (b, a); "greater" terms are serialized first.
bool canonical_term_greater(const Monomial& x, const Monomial& y);

struct TermOrder {
  bool operator()(const Monomial& x, const Monomial& y) const {
    return canonical_term_greater(x, y);
  }
};

using Assignment = std::map<VarIndex, mpq_class>;

// Sparse multivariate polynomial with arbitrary-precision integer
// coefficients.  Terms are kept in canonical order; zero coefficients are
// never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, mpz_class, TermOrder>;

  MultiPoly() = default;
  static MultiPoly constant(mpz_class c);
  static MultiPoly constant(long c) { return constant(mpz_class(c)); }
  static MultiPoly variable(const VarIndex& v);
  static MultiPoly term(const Monomial& m, mpz_class c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  std::optional<mpz_class> constant_value() const;
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  void add_term(const Monomial& m, const mpz_class& c);

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly pow(unsigned e) const;
  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  MultiPoly derivative(const VarIndex& v) const;
  mpq_class evaluate(const Assignment& a) const;
  std::complex<double> evaluate_complex(
      const std::map<VarIndex, std::complex<double>>& a) const;

  MultiPoly rename(const std::function<VarIndex(const VarIndex&)>& f) const;

  std::vector<VarIndex> variables() const;
  int total_degree() const;
  int degree_in(const VarIndex& v) const;
  bool depends_on(const VarIndex& v) const;

  // gcd of all coefficients (positive), 0 for the zero polynomial.
  mpz_class content() const;
  Monomial monomial_gcd() const;
  MultiPoly divide_content(const mpz_class& c) const;
  MultiPoly divide_monomial(const Monomial& m) const;
  // Exact polynomial division; throws ZeroDivisorError on zero divisor and
  // RangeError if the division leaves a remainder.
  MultiPoly divide_exact(const MultiPoly& d) const;

  // Sign of the canonical leading coefficient (0 for the zero polynomial).
  int leading_sign() const;

 private:
  TermMap terms_;
};

MultiPoly operator*(const mpz_class& c, const MultiPoly& p);

// Quotient of two MultiPoly.  Kept reduced by integer content and by the
// common monomial factor only; equality is decided by cross-multiplication,
// so full multivariate gcd normalization is never required.
class RatFunc {
 public:
  RatFunc() : num_(), den_(MultiPoly::constant(1)) {}
  RatFunc(MultiPoly num, MultiPoly den);
  /* implicit */ RatFunc(MultiPoly p) : num_(std::move(p)), den_(MultiPoly::constant(1)) {}
  static RatFunc constant(long c) { return RatFunc(MultiPoly::constant(c)); }
  static RatFunc constant(const mpq_class& q);
  static RatFunc variable(const VarIndex& v) { return RatFunc(MultiPoly::variable(v)); }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;

  // Identity of rational functions: num*o.den == o.num*den.
  bool equals(const RatFunc& o) const;

  RatFunc derivative(const VarIndex& v) const;
  mpq_class evaluate(const Assignment& a) const;
  std::complex<double> evaluate_complex(
      const std::map<VarIndex, std::complex<double>>& a) const;
  RatFunc substitute(const std::function<RatFunc(const VarIndex&)>& f) const;

  std::vector<VarIndex> variables() const;
  bool depends_on(const VarIndex& v) const;

 private:
  void reduce();
  MultiPoly num_, den_;
};

RatFunc substitute(const MultiPoly& p, const std::function<RatFunc(const VarIndex&)>& f);

// Canonical text rendering ("n[1,2]" variables, decimal integers, canonical
// term order); this exact format is the golden-file contract and is accepted
// back by parse_ratfunc.
std::string render(const MultiPoly& p, char letter = 'n');
std::string render(const RatFunc& f, char letter = 'n');
std::string render_tex(const MultiPoly& p, char letter = 'n');
std::string render_tex(const RatFunc& f, char letter = 'n');

// Parses +,-,*,/,^, parentheses, decimal integers and variables "x[a,b]"
// where x is a single letter.
RatFunc parse_ratfunc(const std::string& text);

std::string render_rational(const mpq_class& q);
mpq_class parse_rational(const std::string& text);

}  // namespace schubcell
