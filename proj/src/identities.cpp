#include "superjordan/identities.hpp"

#include <array>
#include <cassert>
#include <functional>
#include <sstream>

namespace sj {

TermPtr tv(int slot) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::Var;
  n->slot = slot;
  return n;
}
static TermPtr prod(TermPtr a, TermPtr b, int tag) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::Prod;
  n->product = tag;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
TermPtr tp(TermPtr a, TermPtr b) { return prod(std::move(a), std::move(b), 0); }
TermPtr tc(TermPtr a, TermPtr b) { return prod(std::move(a), std::move(b), 1); }
TermPtr tb(TermPtr a, TermPtr b) { return prod(std::move(a), std::move(b), 2); }
TermPtr ts(TermPtr a, TermPtr b) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::Star;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
TermPtr tphi(TermPtr a, TermPtr b, TermPtr w) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::Phi;
  n->a = std::move(a);
  n->b = std::move(b);
  n->w = std::move(w);
  return n;
}

// --------------------------------------------------------------- library

namespace {

SignExpr sg(std::initializer_list<std::pair<int, int>> ps) {
  SignExpr s;
  for (auto& p : ps) s.pairs.push_back(p);
  return s;
}

GRat q(long num, long den = 1) { return GRat(mpq_class(num, den)); }

void add(Identity& id, GRat coeff, SignExpr sign, TermPtr term) {
  id.terms.push_back({coeff, sign, std::move(term)});
}

// Scans a term for Star/Phi markers.
void scan_markers(const TermPtr& t, bool& star, bool& phi) {
  if (!t) return;
  if (t->kind == TermNode::Kind::Star) star = true;
  if (t->kind == TermNode::Kind::Phi) phi = true;
  scan_markers(t->a, star, phi);
  scan_markers(t->b, star, phi);
  scan_markers(t->w, star, phi);
}

void finish(Identity& id) {
  for (auto& te : id.terms) scan_markers(te.term, id.has_star, id.has_phi);
}

std::map<std::string, Identity> build_library() {
  std::map<std::string, Identity> lib;
  const int x = 0, y = 1, z = 2, t = 3;
  auto X = [&] { return tv(x); };
  auto Y = [&] { return tv(y); };
  auto Z = [&] { return tv(z); };
  auto T = [&] { return tv(t); };

  {  // super-flexibility: the degree-3 defining identity
    Identity id;
    id.name = "ncj3";
    id.arity = 3;
    add(id, q(1), sg({}), tp(tp(X(), Y()), Z()));
    add(id, q(-1), sg({}), tp(X(), tp(Y(), Z())));
    add(id, q(1), sg({{x, y}, {y, z}, {z, x}}), tp(tp(Z(), Y()), X()));
    add(id, q(-1), sg({{x, y}, {y, z}, {z, x}}), tp(Z(), tp(Y(), X())));
    finish(id);
    lib[id.name] = id;
  }
  {  // the degree-4 defining identity
    Identity id;
    id.name = "ncj4";
    id.arity = 4;
    auto grp = [&](SignExpr s, TermPtr ab, TermPtr cd, TermPtr a2, TermPtr b2, TermPtr c2) {
      // +((ab)(cd)) - (((ab)c) d) with shared sign
      add(id, q(1), s, tp(ab, cd));
      add(id, q(-1), s, tp(tp(a2, b2), c2));
    };
    // ((xt)(yz) - ((xt)y)z)
    add(id, q(1), sg({}), tp(tp(X(), T()), tp(Y(), Z())));
    add(id, q(-1), sg({}), tp(tp(tp(X(), T()), Y()), Z()));
    // (-1)^{|x||t|} ((tx)(yz) - ((tx)y)z)
    add(id, q(1), sg({{x, t}}), tp(tp(T(), X()), tp(Y(), Z())));
    add(id, q(-1), sg({{x, t}}), tp(tp(tp(T(), X()), Y()), Z()));
    // (-1)^{|x|(|y|+|z|+|t|)+|z||y|} ((tz)(yx) - ((tz)y)x)
    add(id, q(1), sg({{x, y}, {x, z}, {x, t}, {z, y}}), tp(tp(T(), Z()), tp(Y(), X())));
    add(id, q(-1), sg({{x, y}, {x, z}, {x, t}, {z, y}}), tp(tp(tp(T(), Z()), Y()), X()));
    // (-1)^{|y||z|+|z||t|+|t||y|} ((xz)(yt) - ((xz)y)t)
    add(id, q(1), sg({{y, z}, {z, t}, {t, y}}), tp(tp(X(), Z()), tp(Y(), T())));
    add(id, q(-1), sg({{y, z}, {z, t}, {t, y}}), tp(tp(tp(X(), Z()), Y()), T()));
    // (-1)^{|x|(|y|+|z|+|t|)+|z|(|t|+|y|)} ((zt)(yx) - ((zt)y)x)
    add(id, q(1), sg({{x, y}, {x, z}, {x, t}, {z, t}, {z, y}}), tp(tp(Z(), T()), tp(Y(), X())));
    add(id, q(-1), sg({{x, y}, {x, z}, {x, t}, {z, t}, {z, y}}),
        tp(tp(tp(Z(), T()), Y()), X()));
    // (-1)^{|z|(|x|+|y|+|t|)+|t||y|} ((zx)(yt) - ((zx)y)t)
    add(id, q(1), sg({{z, x}, {z, y}, {z, t}, {t, y}}), tp(tp(Z(), X()), tp(Y(), T())));
    add(id, q(-1), sg({{z, x}, {z, y}, {z, t}, {t, y}}), tp(tp(tp(Z(), X()), Y()), T()));
    (void)grp;
    finish(id);
    lib[id.name] = id;
  }
  {
    Identity id;
    id.name = "associative";
    id.arity = 3;
    add(id, q(1), sg({}), tp(tp(X(), Y()), Z()));
    add(id, q(-1), sg({}), tp(X(), tp(Y(), Z())));
    finish(id);
    lib[id.name] = id;
  }
  {
    Identity id;
    id.name = "supercommutative";
    id.arity = 2;
    add(id, q(1), sg({}), tp(X(), Y()));
    add(id, q(-1), sg({{x, y}}), tp(Y(), X()));
    finish(id);
    lib[id.name] = id;
  }
  {
    Identity id;
    id.name = "superanticommutative";
    id.arity = 2;
    add(id, q(1), sg({}), tp(X(), Y()));
    add(id, q(1), sg({{x, y}}), tp(Y(), X()));
    finish(id);
    lib[id.name] = id;
  }
  {  // super Jacobi
    Identity id;
    id.name = "lie";
    id.arity = 3;
    add(id, q(1), sg({}), tp(tp(X(), Y()), Z()));
    add(id, q(-1), sg({}), tp(X(), tp(Y(), Z())));
    add(id, q(-1), sg({{y, z}}), tp(tp(X(), Z()), Y()));
    finish(id);
    lib[id.name] = id;
  }
  {
    Identity id;
    id.name = "malcev";
    id.arity = 4;
    add(id, q(1), sg({}), tp(tp(tp(X(), Y()), Z()), T()));
    add(id, q(-1), sg({}), tp(X(), tp(tp(Y(), Z()), T())));
    add(id, q(1), sg({{x, y}}), tp(Y(), tp(X(), tp(Z(), T()))));
    add(id, q(-1), sg({{t, y}, {t, z}}), tp(tp(tp(X(), T()), Y()), Z()));
    add(id, q(-1), sg({{y, z}}), tp(tp(X(), Z()), tp(Y(), T())));
    finish(id);
    lib[id.name] = id;
  }
  {
    Identity id;
    id.name = "binary_lie";
    id.arity = 4;
    add(id, q(1), sg({}), tp(tp(tp(X(), Y()), Z()), T()));
    add(id, q(1), sg({{x, y}}), tp(Y(), tp(tp(X(), Z()), T())));
    add(id, q(1), sg({{x, y}}), tp(Y(), tp(X(), tp(Z(), T()))));
    add(id, q(-1), sg({{x, y}}), tp(tp(Y(), tp(X(), Z())), T()));
    add(id, q(1), sg({{z, t}}), tp(X(), tp(tp(Y(), T()), Z())));
    add(id, q(-1), sg({{z, t}}), tp(tp(tp(X(), Y()), T()), Z()));
    add(id, q(-1), sg({{z, t}}), tp(tp(X(), tp(Y(), T())), Z()));
    add(id, q(-1), sg({}), tp(X(), tp(Y(), tp(Z(), T()))));
    finish(id);
    lib[id.name] = id;
  }
  {
    Identity id;
    id.name = "tortkara";
    id.arity = 4;
    add(id, q(1), sg({}), tp(tp(tp(X(), Y()), Z()), T()));
    add(id, q(-1), sg({}), tp(tp(X(), tp(Y(), Z())), T()));
    add(id, q(-1), sg({{y, z}}), tp(tp(tp(X(), Z()), Y()), T()));
    add(id, q(-1), sg({}), tp(tp(X(), Y()), tp(Z(), T())));
    add(id, q(-1), sg({{x, y}}), tp(Y(), tp(X(), tp(Z(), T()))));
    add(id, q(1), sg({{x, y}}), tp(Y(), tp(tp(X(), Z()), T())));
    add(id, q(1), sg({{x, y}, {x, z}}), tp(Y(), tp(Z(), tp(X(), T()))));
    add(id, q(-1), sg({{x, y}, {x, z}}), tp(tp(Y(), Z()), tp(X(), T())));
    finish(id);
    lib[id.name] = id;
  }
  {
    Identity id;
    id.name = "acd";
    id.arity = 4;
    add(id, q(1), sg({}), tp(tp(tp(X(), Y()), Z()), T()));
    add(id, q(1), sg({{x, y}}), tp(Y(), tp(tp(X(), Z()), T())));
    add(id, q(-1), sg({}), tp(X(), tp(tp(Y(), Z()), T())));
    add(id, q(-1), sg({{z, t}}), tp(tp(tp(X(), Y()), T()), Z()));
    add(id, q(-1), sg({{z, t}, {x, y}}), tp(Y(), tp(tp(X(), T()), Z())));
    add(id, q(1), sg({{z, t}}), tp(X(), tp(tp(Y(), T()), Z())));
    finish(id);
    lib[id.name] = id;
  }
  auto build_s4 = [&](const std::string& name, bool last_group_carries_zt) {
    Identity id;
    id.name = name;
    id.arity = 4;
    // [ [[x,y],z] - [x,[y,z]] - (-1)^{|y||z|}[[x,z],y] , t ]
    add(id, q(1), sg({}), tp(tp(tp(X(), Y()), Z()), T()));
    add(id, q(-1), sg({}), tp(tp(X(), tp(Y(), Z())), T()));
    add(id, q(-1), sg({{y, z}}), tp(tp(tp(X(), Z()), Y()), T()));
    // [ x , [[y,z],t] - [y,[z,t]] - (-1)^{|z||t|}[[y,t],z] ]
    add(id, q(1), sg({}), tp(X(), tp(tp(Y(), Z()), T())));
    add(id, q(-1), sg({}), tp(X(), tp(Y(), tp(Z(), T()))));
    add(id, q(-1), sg({{z, t}}), tp(X(), tp(tp(Y(), T()), Z())));
    // (-1)^{|x||y|} [ y , [x,[z,t]] - [[x,z],t] + (-1)^{|z||t|}[[x,t],z] ]
    add(id, q(1), sg({{x, y}}), tp(Y(), tp(X(), tp(Z(), T()))));
    add(id, q(-1), sg({{x, y}}), tp(Y(), tp(tp(X(), Z()), T())));
    add(id, q(1), sg({{x, y}, {z, t}}), tp(Y(), tp(tp(X(), T()), Z())));
    // (-1)^{|z||t|} [ [x,[y,t]] - [[x,y],t] + (-1)^{|y||t|}[[x,t],y] , z ]
    add(id, q(1), sg({{z, t}}), tp(tp(X(), tp(Y(), T())), Z()));
    add(id, q(-1), sg({{z, t}}), tp(tp(tp(X(), Y()), T()), Z()));
    if (last_group_carries_zt)
      add(id, q(1), sg({{z, t}, {y, t}}), tp(tp(tp(X(), T()), Y()), Z()));
    else
      add(id, q(1), sg({{y, t}}), tp(tp(tp(X(), T()), Y()), Z()));
    finish(id);
    lib[id.name] = id;
  };
  build_s4("s4", true);
  build_s4("s4_alt", false);
  {  // linear-existential relation behind rigidity/conservativity
    Identity id;
    id.name = "quasiconservative";
    id.arity = 4;
    const int zz = 2, tt = 3;  // slots: x=0, y=1, z=2, t=3
    (void)zz;
    (void)tt;
    add(id, q(1), sg({}), tp(T(), tp(Z(), tp(X(), Y()))));
    add(id, q(-1), sg({}), tp(T(), tp(tp(Z(), X()), Y())));
    add(id, q(1), sg({{z, x}}), tp(tp(T(), X()), tp(Z(), Y())));
    add(id, q(-1), sg({{z, x}}), tp(T(), tp(X(), tp(Z(), Y()))));
    add(id, q(1), sg({{z, t}}), tp(tp(Z(), tp(T(), X())), Y()));
    add(id, q(-1), sg({{z, t}}), tp(Z(), tp(tp(T(), X()), Y())));
    add(id, q(-1), sg({{z, t}, {x, y}}), tp(tp(Z(), tp(T(), Y())), X()));
    add(id, q(1), sg({{t, z}, {t, x}}), tp(tp(Z(), X()), tp(T(), Y())));
    add(id, q(-1), sg({{t, z}, {t, x}}), tp(Z(), tp(X(), tp(T(), Y()))));
    // minus the right-hand side
    add(id, q(-1), sg({{z, t}}), tp(tp(ts(Z(), T()), X()), Y()));
    add(id, q(1), sg({{z, t}, {x, y}}), tp(tp(ts(Z(), T()), Y()), X()));
    add(id, q(1), sg({{z, t}}), tp(ts(Z(), T()), tp(X(), Y())));
    add(id, q(-1), sg({{z, t}}), tphi(Z(), T(), tp(X(), Y())));
    finish(id);
    lib[id.name] = id;
  }
  {  // conservative: same relation with phi pinned to zero
    Identity id = lib["quasiconservative"];
    id.name = "conservative";
    id.terms.pop_back();  // drop the phi term
    id.has_phi = false;
    lib[id.name] = id;
  }
  {  // a-terminal: star pinned to (1/3)[z,t], phi pinned to zero
    Identity id;
    id.name = "aterminal";
    id.arity = 4;
    const Identity& qc = lib["quasiconservative"];
    for (auto& te : qc.terms) {
      bool star = false, phi = false;
      scan_markers(te.term, star, phi);
      if (phi) continue;
      if (!star) {
        id.terms.push_back(te);
        continue;
      }
      // replace z*t by (1/3)[z,t]
      std::function<TermPtr(const TermPtr&)> repl = [&](const TermPtr& n) -> TermPtr {
        if (n->kind == TermNode::Kind::Star) return tp(repl(n->a), repl(n->b));
        if (n->kind == TermNode::Kind::Var) return n;
        return prod(repl(n->a), repl(n->b), n->product);
      };
      id.terms.push_back({te.coeff * q(1, 3), te.sign, repl(te.term)});
    }
    finish(id);
    lib[id.name] = id;
  }
  {
    Identity id;
    id.name = "standard3";
    id.arity = 3;
    add(id, q(1), sg({}), tp(tp(X(), Y()), Z()));
    add(id, q(-1), sg({}), tp(X(), tp(Y(), Z())));
    add(id, q(1), sg({{z, x}, {z, y}}), tp(tp(Z(), X()), Y()));
    add(id, q(-1), sg({{z, x}, {z, y}}), tp(Z(), tp(X(), Y())));
    add(id, q(-1), sg({{z, y}}), tp(tp(X(), Z()), Y()));
    add(id, q(1), sg({{z, y}}), tp(X(), tp(Z(), Y())));
    finish(id);
    lib[id.name] = id;
  }
  {
    Identity id;
    id.name = "standard4";
    id.arity = 4;
    const int w = 2, z4 = 3;
    auto W = [&] { return tv(w); };
    auto Z4 = [&] { return tv(z4); };
    // (x,y,wz)
    add(id, q(1), sg({}), tp(tp(X(), Y()), tp(W(), Z4())));
    add(id, q(-1), sg({}), tp(X(), tp(Y(), tp(W(), Z4()))));
    // (-1)^{|w|(|x|+|y|)+|x||y|} (w,y,xz)
    add(id, q(1), sg({{w, x}, {w, y}, {x, y}}), tp(tp(W(), Y()), tp(X(), Z4())));
    add(id, q(-1), sg({{w, x}, {w, y}, {x, y}}), tp(W(), tp(Y(), tp(X(), Z4()))));
    // (-1)^{|x|(|y|+|z|+|w|)+|z|(|y|+|w|)} (z,y,wx)
    add(id, q(1), sg({{x, y}, {x, z4}, {x, w}, {z4, y}, {z4, w}}),
        tp(tp(Z4(), Y()), tp(W(), X())));
    add(id, q(-1), sg({{x, y}, {x, z4}, {x, w}, {z4, y}, {z4, w}}),
        tp(Z4(), tp(Y(), tp(W(), X()))));
    finish(id);
    lib[id.name] = id;
  }
  {  // compatibility of the pair (circ, bracket)
    Identity id;
    id.name = "poisson_compat";
    id.arity = 3;
    add(id, q(1), sg({}), tb(tc(X(), Y()), Z()));
    add(id, q(-1), sg({{y, z}}), tc(tb(X(), Z()), Y()));
    add(id, q(-1), sg({}), tc(X(), tb(Y(), Z())));
    finish(id);
    lib[id.name] = id;
  }
  {  // Leibniz form of flexibility for the pair (circ, bracket)
    Identity id;
    id.name = "leibniz_flex";
    id.arity = 3;
    add(id, q(1), sg({}), tb(tc(X(), Y()), Z()));
    add(id, q(-1), sg({}), tc(X(), tb(Y(), Z())));
    add(id, q(-1), sg({{x, y}}), tc(Y(), tb(X(), Z())));
    finish(id);
    lib[id.name] = id;
  }
  return lib;
}

}  // namespace

const std::map<std::string, Identity>& builtin_identities() {
  static const std::map<std::string, Identity> lib = build_library();
  return lib;
}

// --------------------------------------------------------------- printing

namespace {

std::string term_str(const TermPtr& t) {
  switch (t->kind) {
    case TermNode::Kind::Var:
      return std::string(1, "xyzt"[t->slot]);
    case TermNode::Kind::Prod: {
      const char* l = t->product == 0 ? "(" : (t->product == 1 ? "o(" : "[");
      const char* r = t->product == 0 ? ")" : (t->product == 1 ? ")" : "]");
      return std::string(l) + term_str(t->a) + (t->product == 1 ? "," : t->product == 2 ? "," : " ") +
             term_str(t->b) + r;
    }
    case TermNode::Kind::Star:
      return "star(" + term_str(t->a) + "," + term_str(t->b) + ")";
    case TermNode::Kind::Phi:
      return "phi(" + term_str(t->a) + "," + term_str(t->b) + ")·" + term_str(t->w);
  }
  return "?";
}

}  // namespace

std::string identity_library_text() {
  std::ostringstream os;
  for (auto& [name, id] : builtin_identities()) {
    os << "# " << name << " arity " << id.arity << "\n";
    for (auto& te : id.terms) {
      os << name << "\t" << te.coeff.str() << "\t";
      if (te.sign.pairs.empty()) {
        os << "1";
      } else {
        bool first = true;
        for (auto& [a, b] : te.sign.pairs) {
          if (!first) os << "+";
          os << "|" << "xyzt"[a] << "||" << "xyzt"[b] << "|";
          first = false;
        }
      }
      os << "\t" << term_str(te.term) << "\n";
    }
  }
  return os.str();
}

// --------------------------------------------------------------- evaluation

namespace {

std::vector<RatFunc> unit_vec(int dim, int k) {
  std::vector<RatFunc> v(dim);
  v[k] = RatFunc(1);
  return v;
}

std::vector<RatFunc> eval_term(const EvalProducts& ctx, const TermPtr& t,
                               const std::vector<int>& tuple, int dim) {
  switch (t->kind) {
    case TermNode::Kind::Var:
      return unit_vec(dim, tuple[t->slot]);
    case TermNode::Kind::Prod: {
      auto a = eval_term(ctx, t->a, tuple, dim);
      auto b = eval_term(ctx, t->b, tuple, dim);
      const SuperAlgebra* alg =
          t->product == 0 ? ctx.main : (t->product == 1 ? ctx.circ : ctx.brack);
      assert(alg);
      return alg->multiply(a, b);
    }
    default:
      throw ScalarError("existential marker in a plain identity evaluation");
  }
}

}  // namespace

bool satisfies(const EvalProducts& ctx, int dim, const std::vector<int>& parities_of,
               const Identity& id) {
  assert(!id.has_star && !id.has_phi);
  std::vector<int> tuple(id.arity, 0);
  while (true) {
    std::vector<int> parities(id.arity);
    for (int s = 0; s < id.arity; ++s) parities[s] = parities_of[tuple[s]];
    std::vector<RatFunc> acc(dim);
    for (auto& te : id.terms) {
      auto v = eval_term(ctx, te.term, tuple, dim);
      GRat c = te.coeff;
      if (te.sign.eval(parities)) c = -c;
      RatFunc cf{c};
      for (int k = 0; k < dim; ++k)
        if (!v[k].is_zero()) acc[k] = acc[k] + cf * v[k];
    }
    for (int k = 0; k < dim; ++k)
      if (!acc[k].is_zero()) return false;
    int s = 0;
    for (; s < id.arity; ++s) {
      if (++tuple[s] < dim) break;
      tuple[s] = 0;
    }
    if (s == id.arity) break;
  }
  return true;
}

bool satisfies(const SuperAlgebra& a, const Identity& id) {
  SuperAlgebra plus, minus;
  EvalProducts ctx;
  ctx.main = &a;
  bool needs_parts = false;
  for (auto& te : id.terms) {
    std::function<void(const TermPtr&)> scan = [&](const TermPtr& n) {
      if (!n) return;
      if (n->kind == TermNode::Kind::Prod && n->product != 0) needs_parts = true;
      scan(n->a);
      scan(n->b);
      scan(n->w);
    };
    scan(te.term);
  }
  if (needs_parts) {
    plus = a.plus_part();
    minus = a.minus_part();
    ctx.circ = &plus;
    ctx.brack = &minus;
  }
  std::vector<int> parities(a.dim());
  for (int k = 0; k < a.dim(); ++k) parities[k] = a.parity(k);
  return satisfies(ctx, a.dim(), parities, id);
}

std::vector<std::pair<std::vector<int>, std::vector<RatFunc>>> residuals(
    const SuperAlgebra& a, const Identity& id) {
  EvalProducts ctx;
  ctx.main = &a;
  SuperAlgebra plus = a.plus_part(), minus = a.minus_part();
  ctx.circ = &plus;
  ctx.brack = &minus;
  std::vector<std::pair<std::vector<int>, std::vector<RatFunc>>> out;
  int dim = a.dim();
  std::vector<int> tuple(id.arity, 0);
  while (true) {
    std::vector<int> parities(id.arity);
    for (int s = 0; s < id.arity; ++s) parities[s] = a.parity(tuple[s]);
    std::vector<RatFunc> acc(dim);
    for (auto& te : id.terms) {
      auto v = eval_term(ctx, te.term, tuple, dim);
      GRat c = te.coeff;
      if (te.sign.eval(parities)) c = -c;
      RatFunc cf{c};
      for (int k = 0; k < dim; ++k)
        if (!v[k].is_zero()) acc[k] = acc[k] + cf * v[k];
    }
    bool zero = true;
    for (auto& e : acc)
      if (!e.is_zero()) zero = false;
    if (!zero) out.push_back({tuple, acc});
    int s = 0;
    for (; s < id.arity; ++s) {
      if (++tuple[s] < dim) break;
      tuple[s] = 0;
    }
    if (s == id.arity) break;
  }
  return out;
}

// --------------------------------------------------- existential evaluation

namespace {

// Value affine in the unknowns: constant vector plus unknown-indexed vectors.
struct LinVec {
  std::vector<RatFunc> cst;
  std::map<int, std::vector<RatFunc>> lin;

  explicit LinVec(int dim) : cst(dim) {}
};

struct UnknownSpace {
  int dim;
  // star unknowns: parity-admissible triples (i,j,k); phi unknowns: pairs.
  std::vector<std::array<int, 3>> star_idx;
  std::vector<std::array<int, 2>> phi_idx;
  std::map<int, int> star_flat_to_u;  // (i*d+j)*d+k -> unknown id
  std::map<int, int> phi_flat_to_u;   // i*d+j -> unknown id

  UnknownSpace(const SuperAlgebra& a, bool with_phi) : dim(a.dim()) {
    int d = a.dim();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          if ((a.parity(i) + a.parity(j)) % 2 == a.parity(k)) {
            star_flat_to_u[(i * d + j) * d + k] = (int)star_idx.size();
            star_idx.push_back({i, j, k});
          }
    if (with_phi) {
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if ((a.parity(i) + a.parity(j)) % 2 == 0) {
            phi_flat_to_u[i * d + j] = (int)star_idx.size() + (int)phi_idx.size();
            phi_idx.push_back({i, j});
          }
    }
  }
  int total() const { return (int)star_idx.size() + (int)phi_idx.size(); }
};

LinVec eval_term_lin(const SuperAlgebra& a, const UnknownSpace& us, const TermPtr& t,
                     const std::vector<int>& tuple) {
  int d = a.dim();
  switch (t->kind) {
    case TermNode::Kind::Var: {
      LinVec v(d);
      v.cst[tuple[t->slot]] = RatFunc(1);
      return v;
    }
    case TermNode::Kind::Prod: {
      LinVec va = eval_term_lin(a, us, t->a, tuple);
      LinVec vb = eval_term_lin(a, us, t->b, tuple);
      if (!va.lin.empty() && !vb.lin.empty())
        throw ScalarError("identity is not linear in its unknowns");
      LinVec out(d);
      out.cst = a.multiply(va.cst, vb.cst);
      for (auto& [u, vec] : va.lin) {
        auto p = a.multiply(vec, vb.cst);
        out.lin[u] = p;
      }
      for (auto& [u, vec] : vb.lin) {
        auto p = a.multiply(va.cst, vec);
        auto it = out.lin.find(u);
        if (it == out.lin.end())
          out.lin[u] = p;
        else
          for (int k = 0; k < d; ++k) it->second[k] = it->second[k] + p[k];
      }
      return out;
    }
    case TermNode::Kind::Star: {
      LinVec va = eval_term_lin(a, us, t->a, tuple);
      LinVec vb = eval_term_lin(a, us, t->b, tuple);
      if (!va.lin.empty() || !vb.lin.empty())
        throw ScalarError("nested unknowns in auxiliary product");
      LinVec out(d);
      for (int i = 0; i < d; ++i) {
        if (va.cst[i].is_zero()) continue;
        for (int j = 0; j < d; ++j) {
          if (vb.cst[j].is_zero()) continue;
          RatFunc f = va.cst[i] * vb.cst[j];
          for (int k = 0; k < d; ++k) {
            auto it = us.star_flat_to_u.find((i * d + j) * d + k);
            if (it == us.star_flat_to_u.end()) continue;
            auto& vec = out.lin.try_emplace(it->second, std::vector<RatFunc>(d)).first->second;
            vec[k] = vec[k] + f;
          }
        }
      }
      return out;
    }
    case TermNode::Kind::Phi: {
      LinVec va = eval_term_lin(a, us, t->a, tuple);
      LinVec vb = eval_term_lin(a, us, t->b, tuple);
      LinVec vw = eval_term_lin(a, us, t->w, tuple);
      if (!va.lin.empty() || !vb.lin.empty() || !vw.lin.empty())
        throw ScalarError("nested unknowns in form term");
      LinVec out(d);
      for (int i = 0; i < d; ++i) {
        if (va.cst[i].is_zero()) continue;
        for (int j = 0; j < d; ++j) {
          if (vb.cst[j].is_zero()) continue;
          auto it = us.phi_flat_to_u.find(i * d + j);
          if (it == us.phi_flat_to_u.end()) continue;
          RatFunc f = va.cst[i] * vb.cst[j];
          auto& vec = out.lin.try_emplace(it->second, std::vector<RatFunc>(d)).first->second;
          for (int k = 0; k < d; ++k)
            if (!vw.cst[k].is_zero()) vec[k] = vec[k] + f * vw.cst[k];
        }
      }
      return out;
    }
  }
  throw ScalarError("bad term node");
}

}  // namespace

std::optional<ExistentialWitness> satisfies_existential(const SuperAlgebra& a,
                                                        const Identity& id) {
  assert(id.has_star || id.has_phi);
  UnknownSpace us(a, id.has_phi);
  int d = a.dim();
  std::vector<std::vector<RatFunc>> rows;
  std::vector<RatFunc> rhs;
  std::vector<int> tuple(id.arity, 0);
  while (true) {
    std::vector<int> parities(id.arity);
    for (int s = 0; s < id.arity; ++s) parities[s] = a.parity(tuple[s]);
    LinVec acc(d);
    for (auto& te : id.terms) {
      LinVec v = eval_term_lin(a, us, te.term, tuple);
      GRat c = te.coeff;
      if (te.sign.eval(parities)) c = -c;
      RatFunc cf{c};
      for (int k = 0; k < d; ++k)
        if (!v.cst[k].is_zero()) acc.cst[k] = acc.cst[k] + cf * v.cst[k];
      for (auto& [u, vec] : v.lin) {
        auto& dst = acc.lin.try_emplace(u, std::vector<RatFunc>(d)).first->second;
        for (int k = 0; k < d; ++k)
          if (!vec[k].is_zero()) dst[k] = dst[k] + cf * vec[k];
      }
    }
    for (int k = 0; k < d; ++k) {
      bool any = !acc.cst[k].is_zero();
      std::vector<RatFunc> row(us.total());
      for (auto& [u, vec] : acc.lin) {
        if (vec[k].is_zero()) continue;
        row[u] = vec[k];
        any = true;
      }
      if (any) {
        rows.push_back(std::move(row));
        rhs.push_back(-acc.cst[k]);
      }
    }
    int s = 0;
    for (; s < id.arity; ++s) {
      if (++tuple[s] < a.dim()) break;
      tuple[s] = 0;
    }
    if (s == id.arity) break;
  }
  Mat m((int)rows.size(), us.total());
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < us.total(); ++c) m.at((int)r, c) = rows[r][c];
  std::vector<RatFunc> b = rhs;
  auto sol = solve(m, b);
  if (!sol) return std::nullopt;
  ExistentialWitness w;
  w.star.assign(d * d * d, RatFunc());
  w.phi.assign(d * d, RatFunc());
  for (size_t u = 0; u < us.star_idx.size(); ++u) {
    auto [i, j, k] = us.star_idx[u];
    w.star[(i * d + j) * d + k] = (*sol)[u];
  }
  for (size_t u = 0; u < us.phi_idx.size(); ++u) {
    auto [i, j] = us.phi_idx[u];
    w.phi[i * d + j] = (*sol)[us.star_idx.size() + u];
  }
  return w;
}

namespace {

std::vector<RatFunc> eval_term_witness(const SuperAlgebra& a, const Identity& id,
                                       const ExistentialWitness& w, const TermPtr& t,
                                       const std::vector<int>& tuple) {
  int d = a.dim();
  switch (t->kind) {
    case TermNode::Kind::Var:
      return unit_vec(d, tuple[t->slot]);
    case TermNode::Kind::Prod: {
      auto va = eval_term_witness(a, id, w, t->a, tuple);
      auto vb = eval_term_witness(a, id, w, t->b, tuple);
      return a.multiply(va, vb);
    }
    case TermNode::Kind::Star: {
      auto va = eval_term_witness(a, id, w, t->a, tuple);
      auto vb = eval_term_witness(a, id, w, t->b, tuple);
      std::vector<RatFunc> out(d);
      for (int i = 0; i < d; ++i) {
        if (va[i].is_zero()) continue;
        for (int j = 0; j < d; ++j) {
          if (vb[j].is_zero()) continue;
          RatFunc f = va[i] * vb[j];
          for (int k = 0; k < d; ++k) {
            const RatFunc& s = w.star[(i * d + j) * d + k];
            if (!s.is_zero()) out[k] = out[k] + f * s;
          }
        }
      }
      return out;
    }
    case TermNode::Kind::Phi: {
      auto va = eval_term_witness(a, id, w, t->a, tuple);
      auto vb = eval_term_witness(a, id, w, t->b, tuple);
      auto vw = eval_term_witness(a, id, w, t->w, tuple);
      RatFunc f;
      for (int i = 0; i < d; ++i) {
        if (va[i].is_zero()) continue;
        for (int j = 0; j < d; ++j) {
          if (vb[j].is_zero()) continue;
          const RatFunc& s = w.phi[i * d + j];
          if (!s.is_zero()) f = f + va[i] * vb[j] * s;
        }
      }
      std::vector<RatFunc> out(d);
      for (int k = 0; k < d; ++k)
        if (!vw[k].is_zero()) out[k] = f * vw[k];
      return out;
    }
  }
  throw ScalarError("bad term node");
}

}  // namespace

bool witness_satisfies(const SuperAlgebra& a, const Identity& id,
                       const ExistentialWitness& w) {
  int d = a.dim();
  std::vector<int> tuple(id.arity, 0);
  while (true) {
    std::vector<int> parities(id.arity);
    for (int s = 0; s < id.arity; ++s) parities[s] = a.parity(tuple[s]);
    std::vector<RatFunc> acc(d);
    for (auto& te : id.terms) {
      auto v = eval_term_witness(a, id, w, te.term, tuple);
      GRat c = te.coeff;
      if (te.sign.eval(parities)) c = -c;
      RatFunc cf{c};
      for (int k = 0; k < d; ++k)
        if (!v[k].is_zero()) acc[k] = acc[k] + cf * v[k];
    }
    for (auto& e : acc)
      if (!e.is_zero()) return false;
    int s = 0;
    for (; s < id.arity; ++s) {
      if (++tuple[s] < d) break;
      tuple[s] = 0;
    }
    if (s == id.arity) break;
  }
  return true;
}

// --------------------------------------------------------------- flags

const std::vector<std::string>& flag_names() {
  static const std::vector<std::string> names = {
      "supercommutative", "superanticommutative", "associative", "flexible",
      "ncj",              "jordan",               "kokoris",     "standard",
      "asscom",           "lie",                  "malcev",      "binary_lie",
      "tortkara",         "acd",                  "s4",          "aterminal",
      "conservative",     "quasiconservative"};
  return names;
}

FlagSet classify_varieties(const SuperAlgebra& a) {
  const auto& lib = builtin_identities();
  FlagSet f;
  bool scomm = a.is_supercommutative();
  bool santi = a.is_superanticommutative();
  bool assoc = satisfies(a, lib.at("associative"));
  bool flex = satisfies(a, lib.at("ncj3"));
  bool ncj4 = satisfies(a, lib.at("ncj4"));
  SuperAlgebra plus = a.plus_part();
  bool plus_assoc = satisfies(plus, lib.at("associative"));
  f["supercommutative"] = scomm;
  f["superanticommutative"] = santi;
  f["associative"] = assoc;
  f["flexible"] = flex;
  f["ncj"] = flex && ncj4;
  f["jordan"] = scomm && flex && ncj4;
  f["kokoris"] = flex && plus_assoc;
  f["standard"] = satisfies(a, lib.at("standard3")) && satisfies(a, lib.at("standard4"));
  f["asscom"] = assoc && scomm;
  f["lie"] = santi && satisfies(a, lib.at("lie"));
  f["malcev"] = santi && satisfies(a, lib.at("malcev"));
  f["binary_lie"] = santi && satisfies(a, lib.at("binary_lie"));
  f["tortkara"] = santi && satisfies(a, lib.at("tortkara"));
  f["acd"] = santi && satisfies(a, lib.at("acd"));
  f["s4"] = santi && satisfies(a, lib.at("s4"));
  f["aterminal"] = santi && satisfies(a, lib.at("aterminal"));
  f["conservative"] = santi && satisfies_existential(a, lib.at("conservative")).has_value();
  f["quasiconservative"] =
      santi && satisfies_existential(a, lib.at("quasiconservative")).has_value();
  return f;
}

}  // namespace sj
