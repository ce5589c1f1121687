#include "schubcell/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace schubcell {

std::string var_name(const VarIndex& v, char letter) {
  std::ostringstream os;
  os << letter << '[' << v.a << ',' << v.b << ']';
  return os.str();
}

Monomial::Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end(),
            [](const Factor& x, const Factor& y) { return x.first < y.first; });
  std::vector<Factor> merged;
  for (const auto& f : factors_) {
    if (f.second == 0) continue;
    if (f.second < 0) throw RangeError("negative exponent in monomial");
    if (!merged.empty() && merged.back().first == f.first)
      merged.back().second += f.second;
    else
      merged.push_back(f);
  }
  factors_ = std::move(merged);
}

Monomial Monomial::variable(const VarIndex& v, int exp) {
  return Monomial({{v, exp}});
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

int Monomial::degree_of(const VarIndex& v) const {
  for (const auto& f : factors_)
    if (f.first == v) return f.second;
  return 0;
}

bool Monomial::is_multilinear() const {
  for (const auto& f : factors_)
    if (f.second > 1) return false;
  return true;
}

Monomial Monomial::times(const Monomial& o) const {
  std::vector<Factor> out;
  out.reserve(factors_.size() + o.factors_.size());
  auto i = factors_.begin();
  auto j = o.factors_.begin();
  while (i != factors_.end() || j != o.factors_.end()) {
    if (j == o.factors_.end() || (i != factors_.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == factors_.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.push_back({i->first, i->second + j->second});
      ++i;
      ++j;
    }
  }
  Monomial m;
  m.factors_ = std::move(out);
  return m;
}

std::optional<Monomial> Monomial::divided_by(const Monomial& o) const {
  std::vector<Factor> out;
  auto i = factors_.begin();
  for (const auto& f : o.factors_) {
    while (i != factors_.end() && i->first < f.first) out.push_back(*i++);
    if (i == factors_.end() || !(i->first == f.first) || i->second < f.second)
      return std::nullopt;
    if (i->second > f.second) out.push_back({i->first, i->second - f.second});
    ++i;
  }
  while (i != factors_.end()) out.push_back(*i++);
  Monomial m;
  m.factors_ = std::move(out);
  return m;
}

Monomial Monomial::gcd(const Monomial& o) const {
  std::vector<Factor> out;
  auto i = factors_.begin();
  auto j = o.factors_.begin();
  while (i != factors_.end() && j != o.factors_.end()) {
    if (i->first < j->first)
      ++i;
    else if (j->first < i->first)
      ++j;
    else {
      out.push_back({i->first, std::min(i->second, j->second)});
      ++i;
      ++j;
    }
  }
  Monomial m;
  m.factors_ = std::move(out);
  return m;
}

bool canonical_term_greater(const Monomial& x, const Monomial& y) {
  int dx = x.total_degree(), dy = y.total_degree();
  if (dx != dy) return dx > dy;
  // Lexicographic on the exponent vector over ascending variables: a term
  // with a higher power of an earlier variable comes first.
  auto i = x.factors().begin();
  auto j = y.factors().begin();
  while (i != x.factors().end() && j != y.factors().end()) {
    if (i->first == j->first) {
      if (i->second != j->second) return i->second > j->second;
      ++i;
      ++j;
    } else {
      // The side owning the earlier variable has a positive exponent there.
      return i->first < j->first;
    }
  }
  return i != x.factors().end();
}

MultiPoly MultiPoly::constant(mpz_class c) {
  MultiPoly p;
  if (c != 0) p.terms_.emplace(Monomial(), std::move(c));
  return p;
}

MultiPoly MultiPoly::variable(const VarIndex& v) {
  MultiPoly p;
  p.terms_.emplace(Monomial::variable(v), 1);
  return p;
}

MultiPoly MultiPoly::term(const Monomial& m, mpz_class c) {
  MultiPoly p;
  if (c != 0) p.terms_.emplace(m, std::move(c));
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

bool MultiPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.is_unit() &&
         terms_.begin()->second == 1;
}

std::optional<mpz_class> MultiPoly::constant_value() const {
  if (is_zero()) return mpz_class(0);
  if (!is_constant()) return std::nullopt;
  return terms_.begin()->second;
}

void MultiPoly::add_term(const Monomial& m, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p;
  for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
  return p;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly p = *this;
  for (const auto& [m, c] : o.terms_) p.add_term(m, c);
  return p;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly p = *this;
  for (const auto& [m, c] : o.terms_) p.add_term(m, -c);
  return p;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly p;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) p.add_term(m1.times(m2), c1 * c2);
  return p;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly acc = MultiPoly::constant(1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

MultiPoly MultiPoly::derivative(const VarIndex& v) const {
  MultiPoly p;
  for (const auto& [m, c] : terms_) {
    int e = m.degree_of(v);
    if (e == 0) continue;
    auto reduced = m.divided_by(Monomial::variable(v));
    p.add_term(*reduced, c * e);
  }
  return p;
}

mpq_class MultiPoly::evaluate(const Assignment& a) const {
  mpq_class acc = 0;
  for (const auto& [m, c] : terms_) {
    mpq_class t(c);
    for (const auto& [v, e] : m.factors()) {
      auto it = a.find(v);
      if (it == a.end()) throw RangeError("assignment missing " + var_name(v));
      for (int i = 0; i < e; ++i) t *= it->second;
    }
    acc += t;
  }
  return acc;
}

std::complex<double> MultiPoly::evaluate_complex(
    const std::map<VarIndex, std::complex<double>>& a) const {
  std::complex<double> acc = 0.0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> t = mpq_class(c).get_d();
    for (const auto& [v, e] : m.factors()) {
      auto it = a.find(v);
      if (it == a.end()) throw RangeError("assignment missing " + var_name(v));
      for (int i = 0; i < e; ++i) t *= it->second;
    }
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::rename(const std::function<VarIndex(const VarIndex&)>& f) const {
  MultiPoly p;
  for (const auto& [m, c] : terms_) {
    std::vector<Monomial::Factor> fs;
    fs.reserve(m.factors().size());
    for (const auto& [v, e] : m.factors()) fs.push_back({f(v), e});
    p.add_term(Monomial(std::move(fs)), c);
  }
  return p;
}

std::vector<VarIndex> MultiPoly::variables() const {
  std::vector<VarIndex> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors()) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

int MultiPoly::degree_in(const VarIndex& v) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_of(v));
  return d;
}

bool MultiPoly::depends_on(const VarIndex& v) const { return degree_in(v) > 0; }

mpz_class MultiPoly::content() const {
  mpz_class g = 0;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Monomial MultiPoly::monomial_gcd() const {
  if (terms_.empty()) return Monomial();
  auto it = terms_.begin();
  Monomial g = it->first;
  for (++it; it != terms_.end(); ++it) {
    g = g.gcd(it->first);
    if (g.is_unit()) break;
  }
  return g;
}

MultiPoly MultiPoly::divide_content(const mpz_class& c) const {
  if (c == 0) throw ZeroDivisorError("content division by zero");
  MultiPoly p;
  for (const auto& [m, coeff] : terms_) {
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), coeff.get_mpz_t(), c.get_mpz_t());
    if (r != 0) throw RangeError("inexact content division");
    p.terms_.emplace(m, std::move(q));
  }
  return p;
}

MultiPoly MultiPoly::divide_monomial(const Monomial& m) const {
  MultiPoly p;
  for (const auto& [mm, c] : terms_) {
    auto d = mm.divided_by(m);
    if (!d) throw RangeError("inexact monomial division");
    p.terms_.emplace(*d, c);
  }
  return p;
}

MultiPoly MultiPoly::divide_exact(const MultiPoly& d) const {
  if (d.is_zero()) throw ZeroDivisorError("exact division by zero polynomial");
  MultiPoly rem = *this;
  MultiPoly quot;
  const auto& [dm, dc] = *d.terms_.begin();
  while (!rem.is_zero()) {
    const auto& [rm, rc] = *rem.terms_.begin();
    auto qm = rm.divided_by(dm);
    if (!qm) throw RangeError("inexact polynomial division");
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rc.get_mpz_t(), dc.get_mpz_t());
    if (r != 0) throw RangeError("inexact polynomial division");
    MultiPoly t = MultiPoly::term(*qm, q);
    quot = quot + t;
    rem = rem - t * d;
  }
  return quot;
}

int MultiPoly::leading_sign() const {
  if (terms_.empty()) return 0;
  return sgn(terms_.begin()->second);
}

MultiPoly operator*(const mpz_class& c, const MultiPoly& p) {
  return MultiPoly::constant(c) * p;
}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ZeroDivisorError("zero denominator");
  reduce();
}

RatFunc RatFunc::constant(const mpq_class& q) {
  return RatFunc(MultiPoly::constant(mpz_class(q.get_num())),
                 MultiPoly::constant(mpz_class(q.get_den())));
}

bool RatFunc::is_one() const { return num_ == den_; }

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(1);
    return;
  }
  Monomial mg = num_.monomial_gcd().gcd(den_.monomial_gcd());
  if (!mg.is_unit()) {
    num_ = num_.divide_monomial(mg);
    den_ = den_.divide_monomial(mg);
  }
  mpz_class c1 = num_.content(), c2 = den_.content(), g;
  mpz_gcd(g.get_mpz_t(), c1.get_mpz_t(), c2.get_mpz_t());
  if (g > 1) {
    num_ = num_.divide_content(g);
    den_ = den_.divide_content(g);
  }
  if (den_.leading_sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc f;
  f.num_ = -num_;
  f.den_ = den_;
  return f;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
  if (den_ == o.den_) return RatFunc(num_ - o.num_, den_);
  return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw ZeroDivisorError("division by the zero function");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

bool RatFunc::equals(const RatFunc& o) const {
  return num_ * o.den_ == o.num_ * den_;
}

RatFunc RatFunc::derivative(const VarIndex& v) const {
  if (!den_.depends_on(v)) return RatFunc(num_.derivative(v), den_);
  return RatFunc(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

mpq_class RatFunc::evaluate(const Assignment& a) const {
  mpq_class d = den_.evaluate(a);
  if (d == 0) throw PoleError("denominator vanishes at evaluation point");
  return num_.evaluate(a) / d;
}

std::complex<double> RatFunc::evaluate_complex(
    const std::map<VarIndex, std::complex<double>>& a) const {
  std::complex<double> d = den_.evaluate_complex(a);
  if (d == 0.0) throw PoleError("denominator vanishes at evaluation point");
  return num_.evaluate_complex(a) / d;
}

RatFunc substitute(const MultiPoly& p, const std::function<RatFunc(const VarIndex&)>& f) {
  RatFunc acc;
  for (const auto& [m, c] : p.terms()) {
    RatFunc t = RatFunc(MultiPoly::constant(c));
    for (const auto& [v, e] : m.factors()) {
      RatFunc pv = f(v);
      for (int i = 0; i < e; ++i) t = t * pv;
    }
    acc = acc + t;
  }
  return acc;
}

RatFunc RatFunc::substitute(const std::function<RatFunc(const VarIndex&)>& f) const {
  RatFunc n = schubcell::substitute(num_, f);
  RatFunc d = schubcell::substitute(den_, f);
  if (d.is_zero()) throw PoleError("denominator vanishes under substitution");
  return n / d;
}

std::vector<VarIndex> RatFunc::variables() const {
  std::vector<VarIndex> vs = num_.variables(), ds = den_.variables();
  vs.insert(vs.end(), ds.begin(), ds.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool RatFunc::depends_on(const VarIndex& v) const {
  return num_.depends_on(v) || den_.depends_on(v);
}

namespace {

void render_monomial(std::ostream& os, const Monomial& m, const mpz_class& coeff_abs,
                     char letter, bool tex) {
  bool need_coeff = coeff_abs != 1 || m.is_unit();
  if (need_coeff) os << coeff_abs.get_str();
  bool first = !need_coeff;
  for (const auto& [v, e] : m.factors()) {
    if (!first || need_coeff) os << (tex ? " " : "*");
    first = false;
    if (tex)
      os << letter << "_{" << v.a << "," << v.b << "}";
    else
      os << var_name(v, letter);
    if (e != 1) {
      if (tex)
        os << "^{" << e << "}";
      else
        os << '^' << e;
    }
  }
}

void render_poly(std::ostream& os, const MultiPoly& p, char letter, bool tex) {
  if (p.is_zero()) {
    os << '0';
    return;
  }
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    render_monomial(os, m, abs(c), letter, tex);
    first = false;
  }
}

}  // namespace

std::string render(const MultiPoly& p, char letter) {
  std::ostringstream os;
  render_poly(os, p, letter, false);
  return os.str();
}

std::string render(const RatFunc& f, char letter) {
  if (f.is_polynomial()) return render(f.num(), letter);
  std::ostringstream os;
  os << '(';
  render_poly(os, f.num(), letter, false);
  os << ")/(";
  render_poly(os, f.den(), letter, false);
  os << ')';
  return os.str();
}

std::string render_tex(const MultiPoly& p, char letter) {
  std::ostringstream os;
  render_poly(os, p, letter, true);
  return os.str();
}

std::string render_tex(const RatFunc& f, char letter) {
  if (f.is_polynomial()) return render_tex(f.num(), letter);
  std::ostringstream os;
  os << "\\frac{";
  render_poly(os, f.num(), letter, true);
  os << "}{";
  render_poly(os, f.den(), letter, true);
  os << '}';
  return os.str();
}

namespace {

// Recursive-descent parser for the canonical expression grammar.
class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  RatFunc parse() {
    RatFunc f = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("expression parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  RatFunc expr() {
    RatFunc acc = eat('-') ? -term() : term();
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  RatFunc term() {
    RatFunc acc = factor();
    for (;;) {
      if (eat('*'))
        acc = acc * factor();
      else if (eat('/'))
        acc = acc / factor();
      else
        return acc;
    }
  }

  RatFunc factor() {
    RatFunc base = atom();
    if (eat('^')) {
      bool neg = eat('-');
      long e = integer();
      RatFunc acc = RatFunc::constant(1);
      for (long i = 0; i < e; ++i) acc = acc * base;
      if (neg) acc = RatFunc::constant(1) / acc;
      return acc;
    }
    return base;
  }

  long integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(s_.substr(start, pos_ - start));
  }

  RatFunc atom() {
    skip_ws();
    if (eat('(')) {
      RatFunc f = expr();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(MultiPoly::constant(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
      if (!eat('[')) fail("expected '[' after variable letter");
      long a = integer();
      if (!eat(',')) fail("expected ',' in variable");
      long b = integer();
      if (!eat(']')) fail("expected ']' in variable");
      return RatFunc::variable({static_cast<int>(a), static_cast<int>(b)});
    }
    fail("expected atom");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(const std::string& text) { return Parser(text).parse(); }

std::string render_rational(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(const std::string& text) {
  try {
    mpq_class q(text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational: " + text);
  }
}

}  // namespace schubcell
