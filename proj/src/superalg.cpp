#include "superjordan/superalg.hpp"

#include <cassert>
#include <random>
#include <set>
#include <sstream>

namespace sj {

SuperAlgebra::SuperAlgebra(int even_dim, int odd_dim)
    : m_(even_dim), n_(odd_dim), c_((even_dim + odd_dim) * (even_dim + odd_dim) *
                                    (even_dim + odd_dim)) {}

std::string SuperAlgebra::basis_label(int idx) const {
  if (idx < m_) return "e" + std::to_string(idx + 1);
  return "f" + std::to_string(idx - m_ + 1);
}

std::vector<RatFunc> SuperAlgebra::product_basis(int i, int j) const {
  std::vector<RatFunc> v(dim());
  for (int k = 0; k < dim(); ++k) v[k] = c(i, j, k);
  return v;
}

bool SuperAlgebra::parity_consistent() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k)
        if (!c(i, j, k).is_zero() && ((parity(i) + parity(j)) % 2) != parity(k))
          return false;
  return true;
}

void SuperAlgebra::assert_parity() const {
  if (!parity_consistent())
    throw ParityViolation("structure constants break the grading in " + id);
}

std::vector<RatFunc> SuperAlgebra::multiply(const std::vector<RatFunc>& x,
                                            const std::vector<RatFunc>& y) const {
  assert((int)x.size() == dim() && (int)y.size() == dim());
  std::vector<RatFunc> out(dim());
  for (int i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim(); ++j) {
      if (y[j].is_zero()) continue;
      RatFunc f = x[i] * y[j];
      for (int k = 0; k < dim(); ++k) {
        if (c(i, j, k).is_zero()) continue;
        out[k] = out[k] + f * c(i, j, k);
      }
    }
  }
  return out;
}

SuperAlgebra SuperAlgebra::plus_part() const {
  SuperAlgebra r(m_, n_);
  r.id = id + "+";
  r.params = params;
  RatFunc half(Poly(GRat(mpq_class(1, 2))), Poly(1));
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      int sign = (parity(i) * parity(j)) % 2;
      for (int k = 0; k < dim(); ++k) {
        RatFunc v = c(i, j, k) + (sign ? -c(j, i, k) : c(j, i, k));
        r.c(i, j, k) = v * half;
      }
    }
  return r;
}

SuperAlgebra SuperAlgebra::minus_part() const {
  SuperAlgebra r(m_, n_);
  r.id = id + "-";
  r.params = params;
  RatFunc half(Poly(GRat(mpq_class(1, 2))), Poly(1));
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      int sign = (parity(i) * parity(j)) % 2;
      for (int k = 0; k < dim(); ++k) {
        RatFunc v = c(i, j, k) - (sign ? -c(j, i, k) : c(j, i, k));
        r.c(i, j, k) = v * half;
      }
    }
  return r;
}

SuperAlgebra SuperAlgebra::change_basis(const Mat& g) const {
  assert(g.rows() == dim() && g.cols() == dim());
  // Graded maps only: no parity-mixing entries.
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (parity(i) != parity(j) && !g.at(i, j).is_zero())
        throw ParityViolation("basis change mixes parities");
  Mat ginv = invert(g);
  SuperAlgebra r(m_, n_);
  r.id = id;
  r.params = params;
  // (g*mu)(x,y) = g mu(g^-1 x, g^-1 y): columns of g^-1 are images of basis.
  for (int i = 0; i < dim(); ++i) {
    std::vector<RatFunc> xi(dim()), xj(dim());
    for (int a = 0; a < dim(); ++a) xi[a] = ginv.at(a, i);
    for (int j = 0; j < dim(); ++j) {
      for (int a = 0; a < dim(); ++a) xj[a] = ginv.at(a, j);
      std::vector<RatFunc> prod = multiply(xi, xj);
      std::vector<RatFunc> out = g.apply(prod);
      for (int k = 0; k < dim(); ++k) r.c(i, j, k) = out[k];
    }
  }
  return r;
}

SuperAlgebra SuperAlgebra::substitute_params(
    const std::map<std::string, RatFunc>& bindings) const {
  std::map<int, RatFunc> by_var;
  for (auto& p : params) {
    auto it = bindings.find(p.name);
    if (it == bindings.end()) continue;
    by_var[p.var] = it->second;
    for (auto& cons : p.nonvanish) {
      RatFunc v = cons.substitute({{p.var, it->second}});
      if (v.is_zero())
        throw ConstraintViolated(id + ": binding of " + p.name +
                                 " violates constraint " + cons.str() + " != 0");
    }
  }
  SuperAlgebra r(m_, n_);
  r.id = id;
  for (auto& p : params)
    if (!bindings.count(p.name)) r.params.push_back(p);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k) r.c(i, j, k) = c(i, j, k).substitute(by_var);
  return r;
}

bool SuperAlgebra::is_zero_algebra() const {
  for (auto& v : c_)
    if (!v.is_zero()) return false;
  return true;
}

bool SuperAlgebra::operator==(const SuperAlgebra& o) const {
  if (m_ != o.m_ || n_ != o.n_) return false;
  for (size_t k = 0; k < c_.size(); ++k)
    if (!(c_[k] == o.c_[k])) return false;
  return true;
}

bool SuperAlgebra::is_supercommutative() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      int sign = parity(i) * parity(j) % 2;
      for (int k = 0; k < dim(); ++k) {
        RatFunc rhs = sign ? -c(j, i, k) : c(j, i, k);
        if (!(c(i, j, k) == rhs)) return false;
      }
    }
  return true;
}

bool SuperAlgebra::is_superanticommutative() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      int sign = parity(i) * parity(j) % 2;
      for (int k = 0; k < dim(); ++k) {
        RatFunc rhs = sign ? c(j, i, k) : -c(j, i, k);
        if (!(c(i, j, k) == rhs)) return false;
      }
    }
  return true;
}

bool SuperAlgebra::is_plain_commutative() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k)
        if (!(c(i, j, k) == c(j, i, k))) return false;
  return true;
}

bool SuperAlgebra::is_plain_anticommutative() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k)
        if (!(c(i, j, k) == -c(j, i, k))) return false;
  return true;
}

// ------------------------------------------------------------ invariants

namespace {

int span_dim(const std::vector<std::vector<RatFunc>>& vecs, int dim) {
  if (vecs.empty()) return 0;
  Mat m((int)vecs.size(), dim);
  for (size_t r = 0; r < vecs.size(); ++r)
    for (int c = 0; c < dim; ++c) m.at((int)r, c) = vecs[r][c];
  return rank(m);
}

// Span of U.V under the product, as vectors.
std::vector<std::vector<RatFunc>> product_span(const SuperAlgebra& a,
                                               const std::vector<std::vector<RatFunc>>& u,
                                               const std::vector<std::vector<RatFunc>>& v) {
  std::vector<std::vector<RatFunc>> out;
  for (auto& x : u)
    for (auto& y : v) {
      auto p = a.multiply(x, y);
      bool zero = true;
      for (auto& e : p)
        if (!e.is_zero()) zero = false;
      if (!zero) out.push_back(p);
    }
  return out;
}

std::vector<std::vector<RatFunc>> basis_vectors(int dim, int from, int to) {
  std::vector<std::vector<RatFunc>> out;
  for (int k = from; k < to; ++k) {
    std::vector<RatFunc> v(dim);
    v[k] = RatFunc(1);
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::map<std::string, RatFunc> generic_point(const SuperAlgebra& a, uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::map<std::string, RatFunc> out;
  for (auto& p : a.params) {
    for (int tries = 0; tries < 64; ++tries) {
      long num = (long)(rng() % 19) - 9;
      long den = (long)(rng() % 4) + 1;
      RatFunc v{GRat(mpq_class(num, den))};
      bool ok = true;
      for (auto& cons : p.nonvanish)
        if (cons.substitute({{p.var, v}}).is_zero()) ok = false;
      if (num == 0) ok = false;  // stay away from degenerate origins
      if (ok) {
        out[p.name] = v;
        break;
      }
    }
    if (!out.count(p.name)) out[p.name] = RatFunc{GRat(mpq_class(17, 5))};
  }
  return out;
}

InvariantReport invariants_report(const SuperAlgebra& a) {
  InvariantReport rep;
  int d = a.dim();

  auto full = basis_vectors(d, 0, d);
  auto evens = basis_vectors(d, 0, a.even_dim());
  auto odds = basis_vectors(d, a.even_dim(), d);

  auto square = product_span(a, full, full);
  rep.dim_square = span_dim(square, d);
  rep.dim_even_square = span_dim(product_span(a, evens, evens), d);
  rep.dim_odd_square = span_dim(product_span(a, odds, odds), d);
  auto a0a1 = product_span(a, evens, odds);
  auto a1a0 = product_span(a, odds, evens);
  for (auto& v : a1a0) a0a1.push_back(v);
  rep.dim_a0a1 = span_dim(a0a1, d);

  rep.supercommutative = a.is_supercommutative();
  rep.superanticommutative = a.is_superanticommutative();
  rep.plain_commutative = a.is_plain_commutative();
  rep.plain_anticommutative = a.is_plain_anticommutative();

  // Nilpotency: A^<k> = sum_{i+j=k} A^<i> A^<j>, stop when zero or stable.
  {
    std::vector<std::vector<std::vector<RatFunc>>> powers;  // powers[k-1] = basis of A^<k>
    powers.push_back(full);
    int index = 0;
    bool nil = false;
    for (int k = 2; k <= d + 2; ++k) {
      std::vector<std::vector<RatFunc>> acc;
      for (int i = 1; i < k; ++i) {
        int j = k - i;
        auto prods = product_span(a, powers[i - 1], powers[j - 1]);
        for (auto& v : prods) acc.push_back(v);
      }
      int dk = span_dim(acc, d);
      if (dk == 0) {
        nil = true;
        index = k - 1;
        break;
      }
      // Reduce to an echelon basis to keep products small.
      Mat m((int)acc.size(), d);
      for (size_t r = 0; r < acc.size(); ++r)
        for (int c = 0; c < d; ++c) m.at((int)r, c) = acc[r][c];
      // Rows of rref span the same space.
      std::vector<std::vector<RatFunc>> small;
      {
        Mat mm = m;
        // take first rank rows of an rref
        std::vector<std::vector<RatFunc>> rows;
        int rk = 0;
        {
          // reuse kernel-style elimination via rank of leading minors is
          // overkill; simple forward elimination:
          Mat w = mm;
          int r = 0;
          for (int c = 0; c < w.cols() && r < w.rows(); ++c) {
            int piv = -1;
            for (int i = r; i < w.rows(); ++i)
              if (!w.at(i, c).is_zero()) {
                piv = i;
                break;
              }
            if (piv < 0) continue;
            if (piv != r)
              for (int j = 0; j < w.cols(); ++j) std::swap(w.at(r, j), w.at(piv, j));
            RatFunc inv = w.at(r, c).inv();
            for (int j = c; j < w.cols(); ++j)
              if (!w.at(r, j).is_zero()) w.at(r, j) = w.at(r, j) * inv;
            for (int i = r + 1; i < w.rows(); ++i) {
              if (w.at(i, c).is_zero()) continue;
              RatFunc f = w.at(i, c);
              for (int j = c; j < w.cols(); ++j)
                if (!w.at(r, j).is_zero()) w.at(i, j) = w.at(i, j) - f * w.at(r, j);
            }
            std::vector<RatFunc> row(d);
            for (int j = 0; j < d; ++j) row[j] = w.at(r, j);
            rows.push_back(row);
            ++r;
          }
          rk = (int)rows.size();
        }
        (void)rk;
        small = rows;
      }
      powers.push_back(small);
    }
    rep.nilpotent = nil;
    rep.nilpotency_index = nil ? index : 0;
  }

  // Unit: solve u with u*x = x*u = x for all basis x.
  {
    int rows = 2 * d * d, cols = d;
    Mat m(rows, cols);
    std::vector<RatFunc> rhs(rows);
    int r = 0;
    for (int x = 0; x < d; ++x) {
      for (int k = 0; k < d; ++k) {
        for (int u = 0; u < d; ++u) m.at(r, u) = a.c(u, x, k);
        rhs[r] = (x == k) ? RatFunc(1) : RatFunc();
        ++r;
        for (int u = 0; u < d; ++u) m.at(r, u) = a.c(x, u, k);
        rhs[r] = (x == k) ? RatFunc(1) : RatFunc();
        ++r;
      }
    }
    rep.has_unit = solve(m, rhs).has_value();
  }

  return rep;
}

// ------------------------------------------------------------ c-expressions

namespace {

struct CParser {
  const std::string& s;
  size_t pos = 0;
  explicit CParser(const std::string& t) : s(t) {}
  void ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  CExprPtr expr() {
    CExprPtr v = term();
    while (true) {
      if (eat('+')) {
        auto r = std::make_shared<CExpr>();
        r->kind = CExpr::Kind::Add;
        r->a = v;
        r->b = term();
        v = r;
      } else if (eat('-')) {
        auto r = std::make_shared<CExpr>();
        r->kind = CExpr::Kind::Sub;
        r->a = v;
        r->b = term();
        v = r;
      } else {
        return v;
      }
    }
  }
  CExprPtr term() {
    CExprPtr v = factor();
    while (eat('*')) {
      auto r = std::make_shared<CExpr>();
      r->kind = CExpr::Kind::Mul;
      r->a = v;
      r->b = factor();
      v = r;
    }
    return v;
  }
  CExprPtr factor() {
    ws();
    if (eat('-')) {
      auto r = std::make_shared<CExpr>();
      r->kind = CExpr::Kind::Neg;
      r->a = factor();
      return r;
    }
    if (eat('(')) {
      CExprPtr v = expr();
      if (!eat(')')) throw ParseError("missing ')' in relation");
      return v;
    }
    if (pos < s.size() && (std::isdigit((unsigned char)s[pos]))) {
      size_t st = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      mpz_class z(s.substr(st, pos - st));
      mpq_class q(z);
      if (eat('/')) {
        size_t st2 = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        mpz_class z2(s.substr(st2, pos - st2));
        q = mpq_class(z, z2);
        q.canonicalize();
      }
      auto r = std::make_shared<CExpr>();
      r->kind = CExpr::Kind::Const;
      r->value = GRat(q);
      return r;
    }
    if (pos < s.size() && (std::isalpha((unsigned char)s[pos]) || s[pos] == '_')) {
      size_t st = pos;
      while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(st, pos - st);
      if (name == "c") {
        if (!eat('(')) throw ParseError("expected c(i,j,k)");
        auto num = [&]() {
          ws();
          size_t st2 = pos;
          while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
          return std::stoi(s.substr(st2, pos - st2));
        };
        int i = num();
        if (!eat(',')) throw ParseError("expected ','");
        int j = num();
        if (!eat(',')) throw ParseError("expected ','");
        int k = num();
        if (!eat(')')) throw ParseError("expected ')'");
        auto r = std::make_shared<CExpr>();
        r->kind = CExpr::Kind::Sym;
        r->i = i;
        r->j = j;
        r->k = k;
        return r;
      }
      auto r = std::make_shared<CExpr>();
      r->kind = CExpr::Kind::Param;
      r->param = name;
      return r;
    }
    throw ParseError("unexpected character in relation: " + s.substr(pos));
  }
};

}  // namespace

CExprPtr parse_cexpr(const std::string& text) {
  CParser p(text);
  auto e = p.expr();
  p.ws();
  if (p.pos != text.size()) throw ParseError("trailing input in relation: " + text);
  return e;
}

RatFunc eval_cexpr(const CExprPtr& e, const SuperAlgebra& a) {
  switch (e->kind) {
    case CExpr::Kind::Const:
      return RatFunc(e->value);
    case CExpr::Kind::Sym:
      return a.c(e->i - 1, e->j - 1, e->k - 1);
    case CExpr::Kind::Param:
      return RatFunc::variable(e->param);
    case CExpr::Kind::Add:
      return eval_cexpr(e->a, a) + eval_cexpr(e->b, a);
    case CExpr::Kind::Sub:
      return eval_cexpr(e->a, a) - eval_cexpr(e->b, a);
    case CExpr::Kind::Mul:
      return eval_cexpr(e->a, a) * eval_cexpr(e->b, a);
    case CExpr::Kind::Neg:
      return -eval_cexpr(e->a, a);
  }
  throw ScalarError("bad relation node");
}

bool check_equations(const SuperAlgebra& a, const std::vector<CExprPtr>& eqs) {
  for (auto& e : eqs)
    if (!eval_cexpr(e, a).is_zero()) return false;
  return true;
}

// ------------------------------------------------------------ ideals

std::optional<std::vector<std::vector<RatFunc>>> ideal_closure(
    const SuperAlgebra& a, const std::vector<std::vector<RatFunc>>& generators) {
  int d = a.dim();
  // Graded closure: split generators into homogeneous components.
  std::vector<std::vector<RatFunc>> work;
  for (auto& g : generators) {
    std::vector<RatFunc> even(d), odd(d);
    bool has_even = false, has_odd = false;
    for (int k = 0; k < d; ++k) {
      if (g[k].is_zero()) continue;
      if (a.parity(k) == 0) {
        even[k] = g[k];
        has_even = true;
      } else {
        odd[k] = g[k];
        has_odd = true;
      }
    }
    if (has_even) work.push_back(even);
    if (has_odd) work.push_back(odd);
  }
  if (work.empty()) return std::nullopt;

  auto basis = basis_vectors(d, 0, d);
  int dim_prev = 0;
  while (true) {
    std::vector<std::vector<RatFunc>> all = work;
    for (auto& v : work) {
      for (auto& b : basis) {
        auto l = a.multiply(b, v);
        auto r = a.multiply(v, b);
        all.push_back(l);
        all.push_back(r);
      }
    }
    int dnew = span_dim(all, d);
    if (dnew == dim_prev) break;
    dim_prev = dnew;
    // Echelonize to keep the working set small.
    Mat m((int)all.size(), d);
    for (size_t r = 0; r < all.size(); ++r)
      for (int c = 0; c < d; ++c) m.at((int)r, c) = all[r][c];
    std::vector<std::vector<RatFunc>> rows;
    {
      Mat w = m;
      int r = 0;
      for (int c = 0; c < w.cols() && r < w.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < w.rows(); ++i)
          if (!w.at(i, c).is_zero()) {
            piv = i;
            break;
          }
        if (piv < 0) continue;
        if (piv != r)
          for (int j = 0; j < w.cols(); ++j) std::swap(w.at(r, j), w.at(piv, j));
        RatFunc inv = w.at(r, c).inv();
        for (int j = c; j < w.cols(); ++j)
          if (!w.at(r, j).is_zero()) w.at(r, j) = w.at(r, j) * inv;
        for (int i = r + 1; i < w.rows(); ++i) {
          if (w.at(i, c).is_zero()) continue;
          RatFunc f = w.at(i, c);
          for (int j = c; j < w.cols(); ++j)
            if (!w.at(r, j).is_zero()) w.at(i, j) = w.at(i, j) - f * w.at(r, j);
        }
        std::vector<RatFunc> row(d);
        for (int j = 0; j < d; ++j) row[j] = w.at(r, j);
        rows.push_back(row);
        ++r;
      }
    }
    work = rows;
  }
  if (dim_prev == 0 || dim_prev >= d) return std::nullopt;
  return work;
}

std::optional<std::vector<std::vector<RatFunc>>> find_ideal_witness(
    const SuperAlgebra& a) {
  int d = a.dim();
  std::vector<std::vector<RatFunc>> candidates;
  for (int k = 0; k < d; ++k) {
    std::vector<RatFunc> v(d);
    v[k] = RatFunc(1);
    candidates.push_back(v);
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      std::vector<RatFunc> v(d);
      v[i] = RatFunc(1);
      v[j] = RatFunc(1);
      candidates.push_back(v);
    }
  for (auto& g : candidates) {
    auto r = ideal_closure(a, {g});
    if (r) return r;
  }
  return std::nullopt;
}

}  // namespace sj
