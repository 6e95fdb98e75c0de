// Bilinear cocycle machinery over a fixed Jordan superalgebra: the Delta form
// basis, the cocycle space Z^2(J,J), attachment of a cocycle as a new
// multiplication, the automorphism action on cocycles, even derivations and
// orbit dimension.
#ifndef SUPERJORDAN_EXTENSION_HPP
#define SUPERJORDAN_EXTENSION_HPP

#include <optional>
#include <string>
#include <vector>

#include "superjordan/identities.hpp"
#include "superjordan/superalg.hpp"

namespace sj {

struct NotSupercommutative : ScalarError {
  explicit NotSupercommutative(const std::string& id)
      : ScalarError(id + " is not supercommutative") {}
};
struct NotCocycle : ScalarError {
  NotCocycle() : ScalarError("bilinear map is not a cocycle") {}
};

// Super-skew form Delta_{i,j} over a fixed (m,n) basis; 0-based indices i<=j,
// with i==j only on odd indices.
struct DeltaForm {
  int i = 0, j = 0;
  // Value on the (l,k) basis pair.
  GRat value(int l, int k, int m) const;
  std::string label(int m) const;
};

std::vector<DeltaForm> delta_basis(int m, int n);

// Even super-skew bilinear map with values in the algebra, stored as a
// coefficient per (admissible Delta form, target basis vector) pair.
class Cocycle {
 public:
  Cocycle() = default;
  Cocycle(int m, int n);

  int even_dim() const { return m_; }
  int odd_dim() const { return n_; }
  int dim() const { return m_ + n_; }

  // Admissible slots: parity(form) == parity(target).
  const std::vector<std::pair<DeltaForm, int>>& slots() const { return slots_; }
  RatFunc& coeff(size_t slot) { return coeffs_[slot]; }
  const RatFunc& coeff(size_t slot) const { return coeffs_[slot]; }
  size_t slot_count() const { return slots_.size(); }
  // Lookup by (i, j, target); throws on inadmissible combination.
  RatFunc& coeff(int i, int j, int target);

  bool is_zero() const;
  // theta(x_l, x_k) as a coefficient vector.
  std::vector<RatFunc> value(int l, int k) const;

  // Presentation as the tuple (B_1, ..., B_{m+n}) of super-skew forms.
  std::string str() const;

  static Cocycle from_map(int m, int n,
                          const std::vector<std::vector<std::vector<RatFunc>>>& theta);

 private:
  int m_ = 0, n_ = 0;
  std::vector<std::pair<DeltaForm, int>> slots_;
  std::vector<RatFunc> coeffs_;
};

// Basis of Z^2(J,J): solutions of
//   theta(x o y, z) = (-1)^{|y||z|} theta(x,z) o y + x o theta(y,z)
// over the Delta-coefficient unknowns. J must be supercommutative.
std::vector<Cocycle> z2_space(const SuperAlgebra& j);

bool is_cocycle(const SuperAlgebra& j, const Cocycle& theta);

// x *_theta y = x o y + theta(x,y); verified to satisfy the defining pair.
SuperAlgebra attach(const SuperAlgebra& j, const Cocycle& theta);

// (theta * phi)(x,y) = phi^-1(theta(phi x, phi y)); phi graded invertible.
Cocycle act(const Cocycle& theta, const Mat& phi);

bool is_automorphism(const SuperAlgebra& a, const Mat& phi);

// Graded-even derivations D with D(xy) = D(x)y + x D(y).
std::vector<Mat> even_derivations(const SuperAlgebra& a);

// dim G - dim Der with dim G = m^2 + n^2; parameters are treated
// generically (random-specialization guess, symbolic certificate).
int orbit_dim(const SuperAlgebra& a);

}  // namespace sj

#endif
