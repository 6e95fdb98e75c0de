#include "superjordan/extension.hpp"

#include <cassert>
#include <sstream>

namespace sj {

GRat DeltaForm::value(int l, int k, int m) const {
  auto parity = [m](int idx) { return idx >= m ? 1 : 0; };
  if (i != j) {
    if (l == i && k == j) return GRat(1);
    if (l == j && k == i) {
      GRat v(-1);
      if (parity(l) * parity(k) == 1) v = GRat(1);
      return v;  // -(-1)^{|l||k|}
    }
    return GRat();
  }
  if (l == i && k == i) return GRat(1);
  return GRat();
}

std::string DeltaForm::label(int m) const {
  (void)m;
  return "D" + std::to_string(i + 1) + std::to_string(j + 1);
}

std::vector<DeltaForm> delta_basis(int m, int n) {
  std::vector<DeltaForm> out;
  int d = m + n;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) out.push_back({i, j});
  for (int i = m; i < d; ++i) out.push_back({i, i});
  return out;
}

Cocycle::Cocycle(int m, int n) : m_(m), n_(n) {
  auto parity = [m](int idx) { return idx >= m ? 1 : 0; };
  for (auto& f : delta_basis(m, n)) {
    int fp = (parity(f.i) + parity(f.j)) % 2;
    for (int k = 0; k < m + n; ++k)
      if (parity(k) == fp) slots_.push_back({f, k});
  }
  coeffs_.assign(slots_.size(), RatFunc());
}

RatFunc& Cocycle::coeff(int i, int j, int target) {
  for (size_t s = 0; s < slots_.size(); ++s)
    if (slots_[s].first.i == i && slots_[s].first.j == j && slots_[s].second == target)
      return coeffs_[s];
  throw ScalarError("inadmissible cocycle slot");
}

bool Cocycle::is_zero() const {
  for (auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

std::vector<RatFunc> Cocycle::value(int l, int k) const {
  std::vector<RatFunc> out(dim());
  for (size_t s = 0; s < slots_.size(); ++s) {
    if (coeffs_[s].is_zero()) continue;
    GRat v = slots_[s].first.value(l, k, m_);
    if (v.is_zero()) continue;
    out[slots_[s].second] = out[slots_[s].second] + coeffs_[s] * RatFunc(v);
  }
  return out;
}

std::string Cocycle::str() const {
  std::ostringstream os;
  os << "(";
  for (int k = 0; k < dim(); ++k) {
    if (k) os << ", ";
    bool any = false;
    std::ostringstream part;
    for (size_t s = 0; s < slots_.size(); ++s) {
      if (slots_[s].second != k || coeffs_[s].is_zero()) continue;
      std::string c = coeffs_[s].str();
      if (any) part << " + ";
      if (c == "1")
        part << slots_[s].first.label(m_);
      else if (c == "-1")
        part << "-" << slots_[s].first.label(m_);
      else
        part << c << "*" << slots_[s].first.label(m_);
      any = true;
    }
    os << (any ? part.str() : "0");
  }
  os << ")";
  return os.str();
}

Cocycle Cocycle::from_map(int m, int n,
                          const std::vector<std::vector<std::vector<RatFunc>>>& theta) {
  Cocycle c(m, n);
  int d = m + n;
  auto parity = [m](int idx) { return idx >= m ? 1 : 0; };
  // Check super-skew symmetry and evenness, then read off coefficients.
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k) {
      for (int tgt = 0; tgt < d; ++tgt) {
        RatFunc lhs = theta[l][k][tgt];
        RatFunc rhs = theta[k][l][tgt];
        RatFunc want = (parity(l) * parity(k)) % 2 ? rhs : -rhs;
        if (!(lhs == want)) throw NotCocycle();
        if (!lhs.is_zero() && (parity(l) + parity(k)) % 2 != parity(tgt))
          throw NotCocycle();
      }
    }
  for (size_t s = 0; s < c.slots_.size(); ++s) {
    auto& f = c.slots_[s].first;
    int tgt = c.slots_[s].second;
    c.coeffs_[s] = theta[f.i][f.j][tgt];
  }
  // Round-trip: confirm the Delta expansion reproduces the map.
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k) {
      auto got = c.value(l, k);
      for (int tgt = 0; tgt < d; ++tgt)
        if (!(got[tgt] == theta[l][k][tgt])) throw NotCocycle();
    }
  return c;
}

// ------------------------------------------------------------------- Z^2

namespace {

// Residual of the cocycle condition for unknown theta at basis triple
// (x,y,z), as a linear map over the cocycle slots.
std::vector<std::vector<RatFunc>> cocycle_rows(const SuperAlgebra& j, const Cocycle& shape,
                                               int x, int y, int z) {
  int d = j.dim();
  // row[t][slot]: coefficient of slot in component t of the residual.
  std::vector<std::vector<RatFunc>> rows(d, std::vector<RatFunc>(shape.slot_count()));
  int sgn_yz = (j.parity(y) * j.parity(z)) % 2;
  for (size_t s = 0; s < shape.slot_count(); ++s) {
    const DeltaForm& f = shape.slots()[s].first;
    int tgt = shape.slots()[s].second;
    // term 1: theta(x o y, z): (x o y) = sum_a c(x,y,a) e_a
    for (int a = 0; a < d; ++a) {
      const RatFunc& cf = j.c(x, y, a);
      if (cf.is_zero()) continue;
      GRat dv = f.value(a, z, j.even_dim());
      if (!dv.is_zero()) rows[tgt][s] = rows[tgt][s] + cf * RatFunc(dv);
    }
    // term 2: -(-1)^{|y||z|} theta(x,z) o y
    {
      GRat dv = f.value(x, z, j.even_dim());
      if (!dv.is_zero()) {
        for (int t = 0; t < d; ++t) {
          const RatFunc& cf = j.c(tgt, y, t);
          if (cf.is_zero()) continue;
          RatFunc v = RatFunc(dv) * cf;
          rows[t][s] = rows[t][s] + (sgn_yz ? v : -v);
        }
      }
    }
    // term 3: - x o theta(y,z)
    {
      GRat dv = f.value(y, z, j.even_dim());
      if (!dv.is_zero()) {
        for (int t = 0; t < d; ++t) {
          const RatFunc& cf = j.c(x, tgt, t);
          if (cf.is_zero()) continue;
          rows[t][s] = rows[t][s] - RatFunc(dv) * cf;
        }
      }
    }
  }
  return rows;
}

}  // namespace

std::vector<Cocycle> z2_space(const SuperAlgebra& j) {
  if (!j.is_supercommutative()) throw NotSupercommutative(j.id);
  int d = j.dim();
  Cocycle shape(j.even_dim(), j.odd_dim());
  std::vector<std::vector<RatFunc>> rows;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        auto r = cocycle_rows(j, shape, x, y, z);
        for (auto& row : r) {
          bool any = false;
          for (auto& e : row)
            if (!e.is_zero()) any = true;
          if (any) rows.push_back(row);
        }
      }
  Mat m((int)rows.size(), (int)shape.slot_count());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c) m.at((int)r, (int)c) = rows[r][c];
  auto basis = kernel_basis(m);
  std::vector<Cocycle> out;
  for (auto& v : basis) {
    Cocycle c(j.even_dim(), j.odd_dim());
    for (size_t s = 0; s < v.size(); ++s) c.coeff(s) = v[s];
    out.push_back(std::move(c));
  }
  return out;
}

bool is_cocycle(const SuperAlgebra& j, const Cocycle& theta) {
  if (!j.is_supercommutative()) throw NotSupercommutative(j.id);
  int d = j.dim();
  Cocycle shape(j.even_dim(), j.odd_dim());
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        auto r = cocycle_rows(j, shape, x, y, z);
        for (int t = 0; t < d; ++t) {
          RatFunc acc;
          for (size_t s = 0; s < shape.slot_count(); ++s) {
            if (r[t][s].is_zero() || theta.coeff(s).is_zero()) continue;
            acc = acc + r[t][s] * theta.coeff(s);
          }
          if (!acc.is_zero()) return false;
        }
      }
  return true;
}

SuperAlgebra attach(const SuperAlgebra& j, const Cocycle& theta) {
  if (!is_cocycle(j, theta)) throw NotCocycle();
  int d = j.dim();
  SuperAlgebra r(j.even_dim(), j.odd_dim());
  r.id = j.id + "*theta";
  r.params = j.params;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      auto add = theta.value(x, y);
      for (int k = 0; k < d; ++k) r.c(x, y, k) = j.c(x, y, k) + add[k];
    }
  r.assert_parity();
  const auto& lib = builtin_identities();
  if (!satisfies(r, lib.at("ncj3")) || !satisfies(r, lib.at("ncj4")))
    throw NotCocycle();
  return r;
}

Cocycle act(const Cocycle& theta, const Mat& phi) {
  int d = theta.dim();
  int m = theta.even_dim();
  auto parity = [m](int idx) { return idx >= m ? 1 : 0; };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (parity(i) != parity(j) && !phi.at(i, j).is_zero())
        throw ParityViolation("cocycle action by a parity-mixing map");
  Mat inv = invert(phi);
  // theta'(x_l, x_k) = phi^-1 theta(phi x_l, phi x_k)
  std::vector<std::vector<std::vector<RatFunc>>> vals(
      d, std::vector<std::vector<RatFunc>>(d, std::vector<RatFunc>(d)));
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k) {
      std::vector<RatFunc> acc(d);
      for (int a = 0; a < d; ++a) {
        if (phi.at(a, l).is_zero()) continue;
        for (int b = 0; b < d; ++b) {
          if (phi.at(b, k).is_zero()) continue;
          auto v = theta.value(a, b);
          RatFunc f = phi.at(a, l) * phi.at(b, k);
          for (int t = 0; t < d; ++t)
            if (!v[t].is_zero()) acc[t] = acc[t] + f * v[t];
        }
      }
      vals[l][k] = inv.apply(acc);
    }
  return Cocycle::from_map(theta.even_dim(), theta.odd_dim(), vals);
}

bool is_automorphism(const SuperAlgebra& a, const Mat& phi) {
  SuperAlgebra moved = a.change_basis(phi);
  return moved == a;
}

std::vector<Mat> even_derivations(const SuperAlgebra& a) {
  int d = a.dim();
  // Unknown graded-even matrix entries D(r,c) with parity(r) == parity(c).
  std::vector<std::pair<int, int>> slots;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      if (a.parity(r) == a.parity(c)) slots.push_back({r, c});
  std::vector<std::vector<RatFunc>> rows;
  // D(x_i x_j) = D(x_i) x_j + x_i D(x_j) componentwise.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        std::vector<RatFunc> row(slots.size());
        bool any = false;
        for (size_t s = 0; s < slots.size(); ++s) {
          auto [r, c] = slots[s];
          RatFunc v;
          // D(x_i x_j)_k = sum_t c(i,j,t) D(k,t): slot contributes if r==k
          if (r == k) v = v + a.c(i, j, c);
          // D(x_i) x_j: D = sum D(r,c) E_{rc}: D(x_i) = sum_r D(r,i) x_r
          if (c == i) v = v - a.c(r, j, k);
          if (c == j) v = v - a.c(i, r, k);
          if (!v.is_zero()) {
            row[s] = v;
            any = true;
          }
        }
        if (any) rows.push_back(std::move(row));
      }
  Mat m((int)rows.size(), (int)slots.size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c) m.at((int)r, (int)c) = rows[r][c];
  auto ker = kernel_basis(m);
  std::vector<Mat> out;
  for (auto& v : ker) {
    Mat dm(d, d);
    for (size_t s = 0; s < slots.size(); ++s) dm.at(slots[s].first, slots[s].second) = v[s];
    out.push_back(std::move(dm));
  }
  return out;
}

int orbit_dim(const SuperAlgebra& a) {
  int group_dim = a.even_dim() * a.even_dim() + a.odd_dim() * a.odd_dim();
  int der = (int)even_derivations(a).size();
  if (!a.params.empty()) {
    // Cross-check the symbolic rank at a random constraint-respecting point.
    auto pt = generic_point(a, 0xBEEF);
    SuperAlgebra sp = a.substitute_params(pt);
    int der_sp = (int)even_derivations(sp).size();
    // A special point can only enlarge the derivation algebra.
    if (der_sp < der)
      throw ScalarError("derivation dimension dropped at a specialization of " + a.id);
  }
  return group_dim - der;
}

}  // namespace sj
