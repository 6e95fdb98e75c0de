// Exact scalar arithmetic: Gaussian rationals, multivariate polynomials over
// Q(i), normalized rational functions, and an arbitrary-precision complex
// value type for the numeric track.
#ifndef SUPERJORDAN_SCALAR_HPP
#define SUPERJORDAN_SCALAR_HPP

#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

namespace sj {

struct ScalarError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivisionByZero : ScalarError {
  DivisionByZero() : ScalarError("division by zero") {}
};
struct DenominatorVanishes : ScalarError {
  DenominatorVanishes() : ScalarError("substitution makes denominator vanish") {}
};
struct ParseError : ScalarError {
  using ScalarError::ScalarError;
};

// ---------------------------------------------------------------------------
// Gaussian rationals a + b*i with exact rational components.
class GRat {
 public:
  GRat() : re_(0), im_(0) {}
  GRat(long v) : re_(v), im_(0) {}
  GRat(const mpq_class& re) : re_(re), im_(0) { canon(); }
  GRat(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) { canon(); }

  static GRat i() { return GRat(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_rational() const { return im_ == 0; }

  GRat operator-() const { return GRat(-re_, -im_); }
  GRat operator+(const GRat& o) const { return GRat(re_ + o.re_, im_ + o.im_); }
  GRat operator-(const GRat& o) const { return GRat(re_ - o.re_, im_ - o.im_); }
  GRat operator*(const GRat& o) const {
    return GRat(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
  }
  GRat inv() const {
    mpq_class n = re_ * re_ + im_ * im_;
    if (n == 0) throw DivisionByZero();
    return GRat(re_ / n, -im_ / n);
  }
  GRat operator/(const GRat& o) const { return *this * o.inv(); }
  bool operator==(const GRat& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const GRat& o) const { return !(*this == o); }
  bool operator<(const GRat& o) const {
    int c = cmp(re_, o.re_);
    if (c != 0) return c < 0;
    return im_ < o.im_;
  }

  // One square root if it exists in Q(i); callers pick the sign they need.
  std::optional<GRat> sqrt_exact() const;

  std::string str() const;

 private:
  void canon() {
    re_.canonicalize();
    im_.canonicalize();
  }
  mpq_class re_, im_;
};

// ---------------------------------------------------------------------------
// Session-global, append-only variable registry.
class VarRegistry {
 public:
  static VarRegistry& instance();
  int intern(const std::string& name);
  std::optional<int> lookup(const std::string& name) const;
  std::string name(int id) const;
  int size() const;

 private:
  VarRegistry() = default;
  mutable std::shared_mutex mu_;
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

// ---------------------------------------------------------------------------
// Monomial: exponent vector indexed by registry id, trailing zeros trimmed.
struct Mono {
  std::vector<int> e;

  int deg() const {
    int d = 0;
    for (int x : e) d += x;
    return d;
  }
  int exp(int var) const { return var < (int)e.size() ? e[var] : 0; }
  void trim() {
    while (!e.empty() && e.back() == 0) e.pop_back();
  }
  Mono operator*(const Mono& o) const;
  // Exact division; nullopt if any exponent would go negative.
  std::optional<Mono> operator/(const Mono& o) const;
  bool operator==(const Mono& o) const { return e == o.e; }
};

// Graded lexicographic order (total degree, then lex on registry order).
struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const;
};

// ---------------------------------------------------------------------------
// Multivariate polynomial over Q(i). Zero coefficients are never stored.
class Poly {
 public:
  using TermMap = std::map<Mono, GRat, MonoLess>;

  Poly() = default;
  explicit Poly(const GRat& c);
  explicit Poly(long c) : Poly(GRat(c)) {}
  static Poly variable(int var, int exp = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GRat constant_value() const;  // requires is_constant()
  int total_degree() const;
  int degree_in(int var) const;
  int min_degree_in(int var) const;
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  bool contains_var(int var) const { return degree_in(var) > 0; }
  std::vector<int> variables() const;

  const Mono& leading_mono() const;  // graded-lex largest
  const GRat& leading_coeff() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const GRat& c) const;
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  void add_term(const Mono& m, const GRat& c);

  // Exact multivariate division; nullopt when not divisible.
  static std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
  static Poly gcd(const Poly& a, const Poly& b);
  // Exact square root when the polynomial is a perfect square.
  static std::optional<Poly> sqrt_exact(const Poly& p);

  Poly eval_var_zero(int var) const;      // substitute var := 0
  Poly shift_down(int var, int k) const;  // divide by var^k (must be exact)

  std::string str() const;

 private:
  TermMap terms_;
};

// ---------------------------------------------------------------------------
// Normalized rational function: gcd(num, den) = 1, den monic in graded-lex.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Poly(1)) {}
  RatFunc(long v) : num_(Poly(v)), den_(Poly(1)) {}
  explicit RatFunc(const GRat& c) : num_(Poly(c)), den_(Poly(1)) {}
  explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly(1)) {}
  RatFunc(Poly num, Poly den);

  static RatFunc variable(const std::string& name);
  static RatFunc variable(int var);
  static RatFunc i() { return RatFunc(GRat::i()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  GRat constant_value() const;

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc inv() const;

  // Equality by cross-multiplication of canonical forms.
  bool operator==(const RatFunc& o) const;
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  // Rough size measure used for pivot selection.
  long weight() const;
  std::vector<int> variables() const;
  bool contains_var(int var) const;

  RatFunc substitute(const std::map<int, RatFunc>& bindings) const;

  struct Limit {
    bool is_pole = false;
    int pole_order = 0;  // negative k when num/den ~ var^k, k < 0
    RatFunc value;       // valid when !is_pole
  };
  Limit limit_at_zero(int var) const;

  std::string str() const;

 private:
  void normalize();
  Poly num_, den_;
};

RatFunc parse_scalar(const std::string& text);

// ---------------------------------------------------------------------------
// Arbitrary-precision complex floating value (MPFR backed).
class BigComplex {
 public:
  explicit BigComplex(int prec = 256);
  BigComplex(const BigComplex& o);
  BigComplex(BigComplex&& o) noexcept;
  BigComplex& operator=(const BigComplex& o);
  BigComplex& operator=(BigComplex&& o) noexcept;
  ~BigComplex();

  static BigComplex from_grat(const GRat& q, int prec);
  static BigComplex from_double(double re, double im, int prec);

  int prec() const { return prec_; }
  double re_d() const { return mpfr_get_d(re_, MPFR_RNDN); }
  double im_d() const { return mpfr_get_d(im_, MPFR_RNDN); }

  BigComplex operator+(const BigComplex& o) const;
  BigComplex operator-(const BigComplex& o) const;
  BigComplex operator*(const BigComplex& o) const;
  BigComplex operator/(const BigComplex& o) const;
  BigComplex neg() const;
  BigComplex sqrt() const;  // principal branch
  // |z| as double exponent-safe magnitude, and exact-ish abs via mpfr.
  double abs_log2() const;  // log2 |z|, -inf for 0
  bool is_zero() const;

  std::string str(int digits = 20) const;

 private:
  mpfr_t re_, im_;
  int prec_;
  friend BigComplex bc_sub(const BigComplex&, const BigComplex&);
};

struct PrecisionLoss : ScalarError {
  PrecisionLoss() : ScalarError("numeric evaluation lost too much precision") {}
};

struct RootSpec {
  int symbol = -1;   // registry var id the root symbol uses
  RatFunc radicand;  // evaluated, then principal sqrt substituted
};

// Evaluate f at the assignment; root symbols resolve to principal square
// roots of their evaluated radicands. Cross-checked at double precision to
// detect catastrophic cancellation.
BigComplex numeric_eval(const RatFunc& f, const std::map<int, BigComplex>& assignment,
                        const std::vector<RootSpec>& roots, int prec);

}  // namespace sj

#endif
