// Graded structure constants of an (m,n)-type superalgebra over exact scalars,
// with the operations used throughout: bilinear multiplication, (anti)symmetric
// parts, graded basis change, parameter specialization and structural
// invariants.
#ifndef SUPERJORDAN_SUPERALG_HPP
#define SUPERJORDAN_SUPERALG_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "superjordan/exactlin.hpp"
#include "superjordan/scalar.hpp"

namespace sj {

struct ConstraintViolated : ScalarError {
  explicit ConstraintViolated(const std::string& what) : ScalarError(what) {}
};
struct ParityViolation : ScalarError {
  explicit ParityViolation(const std::string& what) : ScalarError(what) {}
};

struct Param {
  std::string name;
  int var = -1;                     // registry id
  std::vector<RatFunc> nonvanish;   // constraint polynomials that must stay nonzero
};

class SuperAlgebra {
 public:
  SuperAlgebra() = default;
  SuperAlgebra(int even_dim, int odd_dim);

  int even_dim() const { return m_; }
  int odd_dim() const { return n_; }
  int dim() const { return m_ + n_; }
  int parity(int idx) const { return idx >= m_ ? 1 : 0; }
  std::string basis_label(int idx) const;

  const RatFunc& c(int i, int j, int k) const { return c_[(i * dim() + j) * dim() + k]; }
  RatFunc& c(int i, int j, int k) { return c_[(i * dim() + j) * dim() + k]; }
  std::vector<RatFunc> product_basis(int i, int j) const;

  std::string id;
  std::vector<Param> params;

  bool parity_consistent() const;
  void assert_parity() const;

  std::vector<RatFunc> multiply(const std::vector<RatFunc>& x,
                                const std::vector<RatFunc>& y) const;

  SuperAlgebra plus_part() const;   // x o y = (xy + (-1)^{|x||y|} yx)/2
  SuperAlgebra minus_part() const;  // [x,y] = (xy - (-1)^{|x||y|} yx)/2

  // Group-action convention: constants of (g * mu)(x,y) = g mu(g^-1 x, g^-1 y).
  SuperAlgebra change_basis(const Mat& g) const;
  // New structure constants on the basis given by the columns of p.
  SuperAlgebra on_new_basis(const Mat& p) const { return change_basis(invert(p)); }

  SuperAlgebra substitute_params(const std::map<std::string, RatFunc>& bindings) const;

  bool is_zero_algebra() const;
  bool operator==(const SuperAlgebra& o) const;

  bool is_supercommutative() const;
  bool is_superanticommutative() const;
  bool is_plain_commutative() const;
  bool is_plain_anticommutative() const;

 private:
  int m_ = 0, n_ = 0;
  std::vector<RatFunc> c_;
};

struct InvariantReport {
  int dim_square = 0;
  int dim_even_square = 0;
  int dim_odd_square = 0;
  int dim_a0a1 = 0;
  bool nilpotent = false;
  int nilpotency_index = 0;  // meaningful when nilpotent; 1 means A^2 = 0
  bool supercommutative = false;
  bool superanticommutative = false;
  bool plain_commutative = false;
  bool plain_anticommutative = false;
  bool has_unit = false;
};

// Dimensions are certified symbolically over the function field; a random
// constraint-respecting rational specialization is used first as a guess and
// cross-check.
InvariantReport invariants_report(const SuperAlgebra& a);

// A polynomial relation in the formal structure-constant symbols c(i,j,k)
// (1-based indices) and the algebra's parameters, asserted to vanish.
struct CExpr;
using CExprPtr = std::shared_ptr<const CExpr>;
struct CExpr {
  enum class Kind { Const, Sym, Param, Add, Sub, Mul, Neg } kind;
  GRat value;       // Const
  int i = 0, j = 0, k = 0;  // Sym (1-based)
  std::string param;        // Param
  CExprPtr a, b;
};

CExprPtr parse_cexpr(const std::string& text);
// Evaluate with the algebra's actual constants (params stay symbolic).
RatFunc eval_cexpr(const CExprPtr& e, const SuperAlgebra& a);

// True iff every relation vanishes identically in the parameters.
bool check_equations(const SuperAlgebra& a, const std::vector<CExprPtr>& eqs);

// Smallest graded subspace containing the generators and closed under left and
// right multiplication; returns a basis when proper and nonzero.
std::optional<std::vector<std::vector<RatFunc>>> ideal_closure(
    const SuperAlgebra& a, const std::vector<std::vector<RatFunc>>& generators);

// Scan of the default generator set (basis vectors and pairwise sums) for a
// proper nonzero graded ideal.
std::optional<std::vector<std::vector<RatFunc>>> find_ideal_witness(const SuperAlgebra& a);

// Deterministic small rational point avoiding the constraint zeros.
std::map<std::string, RatFunc> generic_point(const SuperAlgebra& a, uint64_t seed);

}  // namespace sj

#endif
