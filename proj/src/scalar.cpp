#include "superjordan/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cmath>
#include <mutex>
#include <sstream>

namespace sj {

// ---------------------------------------------------------------- GRat

static std::optional<mpq_class> mpq_sqrt_exact(const mpq_class& q) {
  if (q < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return mpq_class(rn, rd);
}

std::optional<GRat> GRat::sqrt_exact() const {
  if (is_zero()) return GRat();
  if (im_ == 0) {
    if (re_ > 0) {
      auto r = mpq_sqrt_exact(re_);
      if (!r) return std::nullopt;
      return GRat(*r, mpq_class(0));
    }
    auto r = mpq_sqrt_exact(-re_);
    if (!r) return std::nullopt;
    return GRat(mpq_class(0), *r);
  }
  // (x+yi)^2 = re + im*i  =>  x^2 - y^2 = re, 2xy = im.
  mpq_class n2 = re_ * re_ + im_ * im_;
  auto n = mpq_sqrt_exact(n2);
  if (!n) return std::nullopt;
  mpq_class x2 = (re_ + *n) / 2;
  auto x = mpq_sqrt_exact(x2);
  if (!x || *x == 0) return std::nullopt;
  mpq_class y = im_ / (2 * *x);
  return GRat(*x, y);
}

std::string GRat::str() const {
  std::ostringstream os;
  if (im_ == 0) {
    os << re_;
  } else if (re_ == 0) {
    if (im_ == 1)
      os << "i";
    else if (im_ == -1)
      os << "-i";
    else
      os << im_ << "*i";
  } else {
    os << "(" << re_;
    if (im_ > 0) os << "+";
    if (im_ == 1)
      os << "i";
    else if (im_ == -1)
      os << "-i";
    else
      os << im_ << "*i";
    os << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------- VarRegistry

VarRegistry& VarRegistry::instance() {
  static VarRegistry reg;
  return reg;
}

int VarRegistry::intern(const std::string& name) {
  {
    std::shared_lock lk(mu_);
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
  }
  std::unique_lock lk(mu_);
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  int id = (int)names_.size();
  names_.push_back(name);
  index_[name] = id;
  return id;
}

std::optional<int> VarRegistry::lookup(const std::string& name) const {
  std::shared_lock lk(mu_);
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string VarRegistry::name(int id) const {
  std::shared_lock lk(mu_);
  return names_.at(id);
}

int VarRegistry::size() const {
  std::shared_lock lk(mu_);
  return (int)names_.size();
}

// ---------------------------------------------------------------- Mono

Mono Mono::operator*(const Mono& o) const {
  Mono r;
  r.e.resize(std::max(e.size(), o.e.size()), 0);
  for (size_t k = 0; k < e.size(); ++k) r.e[k] += e[k];
  for (size_t k = 0; k < o.e.size(); ++k) r.e[k] += o.e[k];
  r.trim();
  return r;
}

std::optional<Mono> Mono::operator/(const Mono& o) const {
  Mono r = *this;
  if (o.e.size() > e.size()) {
    for (size_t k = e.size(); k < o.e.size(); ++k)
      if (o.e[k] != 0) return std::nullopt;
  }
  for (size_t k = 0; k < o.e.size() && k < r.e.size(); ++k) {
    r.e[k] -= o.e[k];
    if (r.e[k] < 0) return std::nullopt;
  }
  r.trim();
  return r;
}

bool MonoLess::operator()(const Mono& a, const Mono& b) const {
  int da = a.deg(), db = b.deg();
  if (da != db) return da < db;
  size_t n = std::max(a.e.size(), b.e.size());
  for (size_t k = 0; k < n; ++k) {
    int xa = k < a.e.size() ? a.e[k] : 0;
    int xb = k < b.e.size() ? b.e[k] : 0;
    if (xa != xb) return xa < xb;
  }
  return false;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const GRat& c) {
  if (!c.is_zero()) terms_[Mono{}] = c;
}

Poly Poly::variable(int var, int exp) {
  Poly p;
  if (exp == 0) return Poly(GRat(1));
  Mono m;
  m.e.resize(var + 1, 0);
  m.e[var] = exp;
  p.terms_[m] = GRat(1);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.e.empty());
}

GRat Poly::constant_value() const {
  if (terms_.empty()) return GRat();
  assert(is_constant());
  return terms_.begin()->second;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.deg();
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (auto& [m, c] : terms_) d = std::max(d, m.exp(var));
  return d;
}

int Poly::min_degree_in(int var) const {
  if (terms_.empty()) return 0;
  int d = INT32_MAX;
  for (auto& [m, c] : terms_) d = std::min(d, m.exp(var));
  return d;
}

std::vector<int> Poly::variables() const {
  std::vector<int> out;
  for (auto& [m, c] : terms_)
    for (size_t k = 0; k < m.e.size(); ++k)
      if (m.e[k] > 0 && std::find(out.begin(), out.end(), (int)k) == out.end())
        out.push_back((int)k);
  std::sort(out.begin(), out.end());
  return out;
}

const Mono& Poly::leading_mono() const {
  assert(!terms_.empty());
  return terms_.rbegin()->first;
}

const GRat& Poly::leading_coeff() const {
  assert(!terms_.empty());
  return terms_.rbegin()->second;
}

void Poly::add_term(const Mono& m, const GRat& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_[m] = c;
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

Poly Poly::operator-() const {
  Poly r;
  for (auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (auto& [ma, ca] : terms_)
    for (auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::operator*(const GRat& c) const {
  Poly r;
  if (c.is_zero()) return r;
  for (auto& [m, cc] : terms_) r.terms_[m] = cc * c;
  return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero();
  Poly rem = a, quo;
  while (!rem.is_zero()) {
    auto m = rem.leading_mono() / b.leading_mono();
    if (!m) return std::nullopt;
    GRat c = rem.leading_coeff() / b.leading_coeff();
    Poly t;
    t.terms_[*m] = c;
    quo = quo + t;
    rem = rem - t * b;
  }
  return quo;
}

// --- gcd machinery: primitive PRS on the highest-index variable -----------

namespace {

// View p as a univariate polynomial in `var` with Poly coefficients.
std::vector<Poly> univ_coeffs(const Poly& p, int var) {
  std::vector<Poly> cs(p.degree_in(var) + 1);
  for (auto& [m, c] : p.terms()) {
    int e = m.exp(var);
    Mono rest = m;
    if (var < (int)rest.e.size()) rest.e[var] = 0;
    rest.trim();
    cs[e].add_term(rest, c);
  }
  return cs;
}

Poly from_univ(const std::vector<Poly>& cs, int var) {
  Poly r;
  for (size_t e = 0; e < cs.size(); ++e) {
    if (cs[e].is_zero()) continue;
    r = r + cs[e] * Poly::variable(var, (int)e);
  }
  return r;
}

int univ_deg(const std::vector<Poly>& cs) {
  for (int d = (int)cs.size() - 1; d >= 0; --d)
    if (!cs[d].is_zero()) return d;
  return -1;
}

// Pseudo-remainder of A by B in the main variable.
std::vector<Poly> pseudo_rem(std::vector<Poly> A, const std::vector<Poly>& B, int var) {
  int db = univ_deg(B);
  assert(db >= 0);
  const Poly& lb = B[db];
  int da = univ_deg(A);
  while (da >= db && da >= 0) {
    Poly la = A[da];
    // A := lb*A - la * x^(da-db) * B
    std::vector<Poly> next(std::max<size_t>(A.size(), da + 1));
    for (int k = 0; k <= da; ++k) {
      Poly v = A[k] * lb;
      int j = k - (da - db);
      if (j >= 0 && j <= db) v = v - la * B[j];
      next[k] = v;
    }
    A = std::move(next);
    int nd = univ_deg(A);
    assert(nd < da);
    da = nd;
  }
  A.resize(std::max(0, da + 1));
  return A;
}

Poly normalize_monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p * p.leading_coeff().inv();
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalize_monic(b);
  if (b.is_zero()) return normalize_monic(a);
  if (a.is_constant() || b.is_constant()) return Poly(GRat(1));

  int var = std::max(a.variables().back(), b.variables().back());
  auto A = univ_coeffs(a, var), B = univ_coeffs(b, var);

  auto content = [&](const std::vector<Poly>& cs) {
    Poly g;
    for (auto& c : cs) {
      if (c.is_zero()) continue;
      g = gcd(g, c);
      if (g.is_constant() && !g.is_zero()) break;
    }
    return g.is_zero() ? Poly(GRat(1)) : g;
  };
  auto divide_all = [&](std::vector<Poly> cs, const Poly& g) {
    for (auto& c : cs) {
      if (c.is_zero()) continue;
      auto q = divide_exact(c, g);
      assert(q);
      c = *q;
    }
    return cs;
  };

  Poly contA = content(A), contB = content(B);
  Poly gc = gcd(contA, contB);
  A = divide_all(A, contA);
  B = divide_all(B, contB);

  if (univ_deg(A) < univ_deg(B)) std::swap(A, B);
  while (true) {
    int db = univ_deg(B);
    if (db < 0) {
      return normalize_monic(gc * from_univ(A, var));
    }
    if (db == 0) {
      // Primitive parts coprime in the main variable.
      return normalize_monic(gc);
    }
    auto R = pseudo_rem(A, B, var);
    if (univ_deg(R) < 0) {
      return normalize_monic(gc * from_univ(B, var));
    }
    Poly cr = content(R);
    R = divide_all(R, cr);
    A = std::move(B);
    B = std::move(R);
  }
}

std::optional<Poly> Poly::sqrt_exact(const Poly& p) {
  if (p.is_zero()) return Poly();
  // Leading monomial must be a square.
  Mono lm = p.leading_mono();
  for (int e : lm.e)
    if (e % 2 != 0) return std::nullopt;
  auto lc = p.leading_coeff().sqrt_exact();
  if (!lc) return std::nullopt;
  Mono half = lm;
  for (auto& e : half.e) e /= 2;
  Poly s;
  s.add_term(half, *lc);
  Poly rem = p - s * s;
  GRat two_lc = *lc * GRat(2);
  // Descend monomial by monomial: next term t satisfies 2*lt(s)*t = lt(rem).
  int guard = 0;
  while (!rem.is_zero()) {
    if (++guard > 10000) return std::nullopt;
    Mono rm = rem.leading_mono();
    auto q = rm / half;
    if (!q || !MonoLess()(*q, half)) return std::nullopt;
    GRat c = rem.leading_coeff() / two_lc;
    Poly t;
    t.add_term(*q, c);
    rem = rem - s * t * GRat(2) - t * t;
    s = s + t;
  }
  return s;
}

Poly Poly::eval_var_zero(int var) const {
  Poly r;
  for (auto& [m, c] : terms_) {
    if (m.exp(var) != 0) continue;
    r.add_term(m, c);
  }
  return r;
}

Poly Poly::shift_down(int var, int k) const {
  if (k == 0) return *this;
  Poly r;
  for (auto& [m, c] : terms_) {
    Mono mm = m;
    assert(mm.exp(var) >= k);
    mm.e[var] -= k;
    mm.trim();
    r.add_term(mm, c);
  }
  return r;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Print in descending graded-lex order for readability.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string cs = c.str();
    if (!first) {
      if (!cs.empty() && cs[0] == '-') {
        os << " - ";
        cs = cs.substr(1);
      } else {
        os << " + ";
      }
    }
    first = false;
    bool unit = (cs == "1");
    bool neg_unit = (cs == "-1");
    std::string mono;
    bool any = false;
    for (size_t k = 0; k < m.e.size(); ++k) {
      if (m.e[k] == 0) continue;
      if (any) mono += "*";
      mono += VarRegistry::instance().name((int)k);
      if (m.e[k] > 1) mono += "^" + std::to_string(m.e[k]);
      any = true;
    }
    if (!any) {
      os << cs;
    } else if (unit) {
      os << mono;
    } else if (neg_unit) {
      os << "-" << mono;
    } else {
      os << cs << "*" << mono;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero();
  normalize();
}

RatFunc RatFunc::variable(const std::string& name) {
  return variable(VarRegistry::instance().intern(name));
}

RatFunc RatFunc::variable(int var) {
  RatFunc r;
  r.num_ = Poly::variable(var);
  r.den_ = Poly(1);
  return r;
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = *Poly::divide_exact(num_, g);
    den_ = *Poly::divide_exact(den_, g);
  }
  GRat lc = den_.leading_coeff();
  if (!lc.is_one()) {
    GRat inv = lc.inv();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

bool RatFunc::is_one() const { return den_.is_constant() && num_ == den_; }

GRat RatFunc::constant_value() const {
  assert(is_constant());
  if (num_.is_zero()) return GRat();
  return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
  RatFunc r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw DivisionByZero();
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::inv() const {
  if (is_zero()) throw DivisionByZero();
  return RatFunc(den_, num_);
}

bool RatFunc::operator==(const RatFunc& o) const {
  return num_ * o.den_ == o.num_ * den_;
}

long RatFunc::weight() const {
  return (long)num_.term_count() + (long)den_.term_count() + num_.total_degree() +
         den_.total_degree();
}

std::vector<int> RatFunc::variables() const {
  auto a = num_.variables(), b = den_.variables();
  for (int v : b)
    if (std::find(a.begin(), a.end(), v) == a.end()) a.push_back(v);
  std::sort(a.begin(), a.end());
  return a;
}

bool RatFunc::contains_var(int var) const {
  return num_.contains_var(var) || den_.contains_var(var);
}

static RatFunc eval_poly_at(const Poly& p, const std::map<int, RatFunc>& bindings) {
  RatFunc acc;
  for (auto& [m, c] : p.terms()) {
    RatFunc term{GRat(c)};
    for (size_t k = 0; k < m.e.size(); ++k) {
      if (m.e[k] == 0) continue;
      RatFunc base;
      auto it = bindings.find((int)k);
      if (it != bindings.end())
        base = it->second;
      else
        base = RatFunc::variable((int)k);
      for (int j = 0; j < m.e[k]; ++j) term = term * base;
    }
    acc = acc + term;
  }
  return acc;
}

RatFunc RatFunc::substitute(const std::map<int, RatFunc>& bindings) const {
  RatFunc n = eval_poly_at(num_, bindings);
  RatFunc d = eval_poly_at(den_, bindings);
  if (d.is_zero()) throw DenominatorVanishes();
  return n / d;
}

RatFunc::Limit RatFunc::limit_at_zero(int var) const {
  Limit out;
  if (num_.is_zero()) {
    out.value = RatFunc();
    return out;
  }
  int a = num_.min_degree_in(var);
  int b = den_.min_degree_in(var);
  int k = a - b;
  if (k > 0) {
    out.value = RatFunc();
    return out;
  }
  Poly n0 = num_.shift_down(var, a).eval_var_zero(var);
  Poly d0 = den_.shift_down(var, b).eval_var_zero(var);
  if (k < 0) {
    out.is_pole = true;
    out.pole_order = k;
    return out;
  }
  out.value = RatFunc(n0, d0);
  return out;
}

std::string RatFunc::str() const {
  if (den_.is_constant() && den_.constant_value().is_one()) return num_.str();
  std::ostringstream os;
  bool np = num_.term_count() > 1;
  bool dp = den_.term_count() > 1;
  os << (np ? "(" : "") << num_.str() << (np ? ")" : "") << "/" << (dp ? "(" : "")
     << den_.str() << (dp ? ")" : "");
  return os.str();
}

// ---------------------------------------------------------------- parser

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  RatFunc parse_expr() {
    RatFunc v = parse_term();
    while (true) {
      if (eat('+'))
        v = v + parse_term();
      else if (eat('-'))
        v = v - parse_term();
      else
        return v;
    }
  }

  RatFunc parse_term() {
    RatFunc v = parse_factor();
    while (true) {
      if (eat('*')) {
        v = v * parse_factor();
      } else if (eat('/')) {
        RatFunc d = parse_factor();
        if (d.is_zero()) throw ParseError("division by zero in scalar literal");
        v = v / d;
      } else {
        return v;
      }
    }
  }

  RatFunc parse_factor() {
    if (eat('-')) return -parse_factor();
    if (eat('+')) return parse_factor();
    RatFunc v = parse_atom();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      if (start == pos) throw ParseError("expected integer exponent");
      int e = std::stoi(s.substr(start, pos - start));
      RatFunc r{GRat(1)};
      for (int k = 0; k < e; ++k) r = r * v;
      return r;
    }
    return v;
  }

  RatFunc parse_atom() {
    skip_ws();
    if (pos >= s.size()) throw ParseError("unexpected end of scalar expression");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      RatFunc v = parse_expr();
      if (!eat(')')) throw ParseError("missing ')'");
      return v;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      mpz_class z(s.substr(start, pos - start));
      return RatFunc{GRat(mpq_class(z))};
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      if (name == "i") return RatFunc::i();
      return RatFunc::variable(name);
    }
    throw ParseError(std::string("unexpected character '") + c + "' in scalar");
  }
};

}  // namespace

RatFunc parse_scalar(const std::string& text) {
  Parser p(text);
  RatFunc v = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input in scalar: " + text);
  return v;
}

// ---------------------------------------------------------------- BigComplex

BigComplex::BigComplex(int prec) : prec_(prec) {
  mpfr_init2(re_, prec);
  mpfr_init2(im_, prec);
  mpfr_set_zero(re_, 1);
  mpfr_set_zero(im_, 1);
}

BigComplex::BigComplex(const BigComplex& o) : prec_(o.prec_) {
  mpfr_init2(re_, prec_);
  mpfr_init2(im_, prec_);
  mpfr_set(re_, o.re_, MPFR_RNDN);
  mpfr_set(im_, o.im_, MPFR_RNDN);
}

BigComplex::BigComplex(BigComplex&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(re_, prec_);
  mpfr_init2(im_, prec_);
  mpfr_swap(re_, o.re_);
  mpfr_swap(im_, o.im_);
}

BigComplex& BigComplex::operator=(const BigComplex& o) {
  if (this != &o) {
    mpfr_set_prec(re_, o.prec_);
    mpfr_set_prec(im_, o.prec_);
    prec_ = o.prec_;
    mpfr_set(re_, o.re_, MPFR_RNDN);
    mpfr_set(im_, o.im_, MPFR_RNDN);
  }
  return *this;
}

BigComplex& BigComplex::operator=(BigComplex&& o) noexcept {
  if (this != &o) {
    prec_ = o.prec_;
    mpfr_swap(re_, o.re_);
    mpfr_swap(im_, o.im_);
  }
  return *this;
}

BigComplex::~BigComplex() {
  mpfr_clear(re_);
  mpfr_clear(im_);
}

BigComplex BigComplex::from_grat(const GRat& q, int prec) {
  BigComplex z(prec);
  mpfr_set_q(z.re_, q.re().get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(z.im_, q.im().get_mpq_t(), MPFR_RNDN);
  return z;
}

BigComplex BigComplex::from_double(double re, double im, int prec) {
  BigComplex z(prec);
  mpfr_set_d(z.re_, re, MPFR_RNDN);
  mpfr_set_d(z.im_, im, MPFR_RNDN);
  return z;
}

BigComplex BigComplex::operator+(const BigComplex& o) const {
  BigComplex z(prec_);
  mpfr_add(z.re_, re_, o.re_, MPFR_RNDN);
  mpfr_add(z.im_, im_, o.im_, MPFR_RNDN);
  return z;
}

BigComplex BigComplex::operator-(const BigComplex& o) const {
  BigComplex z(prec_);
  mpfr_sub(z.re_, re_, o.re_, MPFR_RNDN);
  mpfr_sub(z.im_, im_, o.im_, MPFR_RNDN);
  return z;
}

BigComplex BigComplex::operator*(const BigComplex& o) const {
  BigComplex z(prec_);
  mpfr_t t1, t2;
  mpfr_init2(t1, prec_);
  mpfr_init2(t2, prec_);
  mpfr_mul(t1, re_, o.re_, MPFR_RNDN);
  mpfr_mul(t2, im_, o.im_, MPFR_RNDN);
  mpfr_sub(z.re_, t1, t2, MPFR_RNDN);
  mpfr_mul(t1, re_, o.im_, MPFR_RNDN);
  mpfr_mul(t2, im_, o.re_, MPFR_RNDN);
  mpfr_add(z.im_, t1, t2, MPFR_RNDN);
  mpfr_clear(t1);
  mpfr_clear(t2);
  return z;
}

BigComplex BigComplex::operator/(const BigComplex& o) const {
  BigComplex z(prec_);
  mpfr_t n, t1, t2;
  mpfr_init2(n, prec_);
  mpfr_init2(t1, prec_);
  mpfr_init2(t2, prec_);
  mpfr_mul(t1, o.re_, o.re_, MPFR_RNDN);
  mpfr_mul(t2, o.im_, o.im_, MPFR_RNDN);
  mpfr_add(n, t1, t2, MPFR_RNDN);
  if (mpfr_zero_p(n)) {
    mpfr_clear(n);
    mpfr_clear(t1);
    mpfr_clear(t2);
    throw DivisionByZero();
  }
  // (a+bi)/(c+di) = ((ac+bd) + (bc-ad)i) / (c^2+d^2)
  mpfr_mul(t1, re_, o.re_, MPFR_RNDN);
  mpfr_mul(t2, im_, o.im_, MPFR_RNDN);
  mpfr_add(t1, t1, t2, MPFR_RNDN);
  mpfr_div(z.re_, t1, n, MPFR_RNDN);
  mpfr_mul(t1, im_, o.re_, MPFR_RNDN);
  mpfr_mul(t2, re_, o.im_, MPFR_RNDN);
  mpfr_sub(t1, t1, t2, MPFR_RNDN);
  mpfr_div(z.im_, t1, n, MPFR_RNDN);
  mpfr_clear(n);
  mpfr_clear(t1);
  mpfr_clear(t2);
  return z;
}

BigComplex BigComplex::neg() const {
  BigComplex z(prec_);
  mpfr_neg(z.re_, re_, MPFR_RNDN);
  mpfr_neg(z.im_, im_, MPFR_RNDN);
  return z;
}

BigComplex BigComplex::sqrt() const {
  // Principal branch: Re >= 0, and Im >= 0 when Re == 0.
  BigComplex z(prec_);
  mpfr_t r, t, half;
  mpfr_init2(r, prec_);
  mpfr_init2(t, prec_);
  mpfr_init2(half, prec_);
  mpfr_set_d(half, 0.5, MPFR_RNDN);
  // r = hypot(re, im)
  mpfr_hypot(r, re_, im_, MPFR_RNDN);
  if (mpfr_zero_p(r)) {
    mpfr_clear(r);
    mpfr_clear(t);
    mpfr_clear(half);
    return z;
  }
  if (mpfr_zero_p(im_)) {
    if (mpfr_sgn(re_) >= 0) {
      mpfr_sqrt(z.re_, re_, MPFR_RNDN);
    } else {
      mpfr_neg(t, re_, MPFR_RNDN);
      mpfr_sqrt(z.im_, t, MPFR_RNDN);
    }
  } else {
    // x = sqrt((r+re)/2), y = im/(2x)
    mpfr_add(t, r, re_, MPFR_RNDN);
    mpfr_mul(t, t, half, MPFR_RNDN);
    mpfr_sqrt(z.re_, t, MPFR_RNDN);
    mpfr_mul_ui(t, z.re_, 2, MPFR_RNDN);
    mpfr_div(z.im_, im_, t, MPFR_RNDN);
  }
  mpfr_clear(r);
  mpfr_clear(t);
  mpfr_clear(half);
  return z;
}

double BigComplex::abs_log2() const {
  if (mpfr_zero_p(re_) && mpfr_zero_p(im_)) return -1e300;
  mpfr_t r;
  mpfr_init2(r, prec_);
  mpfr_hypot(r, re_, im_, MPFR_RNDN);
  long exp;
  double m = mpfr_get_d_2exp(&exp, r, MPFR_RNDN);
  mpfr_clear(r);
  return std::log2(std::abs(m)) + (double)exp;
}

bool BigComplex::is_zero() const { return mpfr_zero_p(re_) && mpfr_zero_p(im_); }

std::string BigComplex::str(int digits) const {
  char* rs = nullptr;
  char* is = nullptr;
  mpfr_asprintf(&rs, "%.*Rg", digits, re_);
  mpfr_asprintf(&is, "%.*Rg", digits, im_);
  std::string out = std::string(rs) + (is[0] == '-' ? "" : "+") + is + "i";
  mpfr_free_str(rs);
  mpfr_free_str(is);
  return out;
}

// ---------------------------------------------------------------- numeric_eval

namespace {

BigComplex eval_poly_numeric(const Poly& p, const std::map<int, BigComplex>& vals,
                             int prec) {
  BigComplex acc(prec);
  for (auto& [m, c] : p.terms()) {
    BigComplex term = BigComplex::from_grat(c, prec);
    for (size_t k = 0; k < m.e.size(); ++k) {
      if (m.e[k] == 0) continue;
      auto it = vals.find((int)k);
      if (it == vals.end())
        throw ScalarError("numeric_eval: unbound variable " +
                          VarRegistry::instance().name((int)k));
      for (int j = 0; j < m.e[k]; ++j) term = term * it->second;
    }
    acc = acc + term;
  }
  return acc;
}

BigComplex eval_once(const RatFunc& f, const std::map<int, BigComplex>& vals, int prec) {
  BigComplex n = eval_poly_numeric(f.num(), vals, prec);
  BigComplex d = eval_poly_numeric(f.den(), vals, prec);
  if (d.is_zero()) throw DivisionByZero();
  return n / d;
}

}  // namespace

BigComplex numeric_eval(const RatFunc& f, const std::map<int, BigComplex>& assignment,
                        const std::vector<RootSpec>& roots, int prec) {
  auto build = [&](int p) {
    std::map<int, BigComplex> vals;
    for (auto& [k, v] : assignment) {
      BigComplex z(p);
      z = z + v;  // re-round into precision p
      vals.emplace(k, z);
    }
    for (auto& r : roots) {
      BigComplex rad = eval_once(r.radicand, vals, p);
      vals.insert_or_assign(r.symbol, rad.sqrt());
    }
    return vals;
  };
  BigComplex lo = eval_once(f, build(prec), prec);
  BigComplex hi = eval_once(f, build(2 * prec), 2 * prec);
  BigComplex diff = hi - lo;
  if (!diff.is_zero()) {
    double dl = diff.abs_log2();
    double hl = hi.abs_log2();
    double scale = std::max(hl, 0.0);
    if (dl - scale > -(double)prec / 2.0) throw PrecisionLoss();
  }
  BigComplex out(prec);
  out = out + hi;
  return out;
}

}  // namespace sj
