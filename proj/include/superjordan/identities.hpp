// Multilinear superidentities with Koszul signs: representation, exact
// evaluation on basis tuples, and linear-existential satisfaction (auxiliary
// product * and bilinear form phi).
#ifndef SUPERJORDAN_IDENTITIES_HPP
#define SUPERJORDAN_IDENTITIES_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "superjordan/superalg.hpp"

namespace sj {

struct TermNode;
using TermPtr = std::shared_ptr<const TermNode>;

struct TermNode {
  enum class Kind { Var, Prod, Star, Phi };
  Kind kind = Kind::Var;
  int slot = -1;     // Var
  int product = 0;   // Prod: 0 = main, 1 = circ, 2 = bracket
  TermPtr a, b;      // children (Phi: the two form arguments)
  TermPtr w;         // Phi: vector factor
};

TermPtr tv(int slot);
TermPtr tp(TermPtr a, TermPtr b);               // main product
TermPtr tc(TermPtr a, TermPtr b);               // Jordan superproduct slot
TermPtr tb(TermPtr a, TermPtr b);               // supercommutator slot
TermPtr ts(TermPtr a, TermPtr b);               // auxiliary product *
TermPtr tphi(TermPtr a, TermPtr b, TermPtr w);  // phi(a,b) * w

// Sum of parity products |x_a||x_b|, evaluated mod 2.
struct SignExpr {
  std::vector<std::pair<int, int>> pairs;
  int eval(const std::vector<int>& parities) const {
    int s = 0;
    for (auto& [a, b] : pairs) s += parities[a] * parities[b];
    return s % 2;
  }
};

struct Identity {
  std::string name;
  int arity = 0;
  struct TermEntry {
    GRat coeff;
    SignExpr sign;
    TermPtr term;
  };
  std::vector<TermEntry> terms;
  bool has_star = false;
  bool has_phi = false;
};

// Products used during evaluation: main is the algebra itself; circ/bracket
// default to its symmetric and antisymmetric parts.
struct EvalProducts {
  const SuperAlgebra* main = nullptr;
  const SuperAlgebra* circ = nullptr;
  const SuperAlgebra* brack = nullptr;
};

// All displayed identities, transcribed term for term.
const std::map<std::string, Identity>& builtin_identities();
std::string identity_library_text();  // reviewable serialization

// Exact satisfaction, identically in the algebra's parameters.
bool satisfies(const SuperAlgebra& a, const Identity& id);
bool satisfies(const EvalProducts& ctx, int dim, const std::vector<int>& parities_of,
               const Identity& id);

// Residual vectors per homogeneous basis tuple (empty if satisfied).
std::vector<std::pair<std::vector<int>, std::vector<RatFunc>>> residuals(
    const SuperAlgebra& a, const Identity& id);

struct ExistentialWitness {
  std::vector<RatFunc> star;  // dense d^3 layout
  std::vector<RatFunc> phi;   // dense d^2 layout
};

// Linear-existential satisfaction: solve for even * (and even phi when the
// identity carries one). Infeasible is reported as nullopt.
std::optional<ExistentialWitness> satisfies_existential(const SuperAlgebra& a,
                                                        const Identity& id);

// Check a concrete (star, phi) witness against the identity.
bool witness_satisfies(const SuperAlgebra& a, const Identity& id,
                       const ExistentialWitness& w);

// Variety flags computed from the full library.
using FlagSet = std::map<std::string, bool>;
FlagSet classify_varieties(const SuperAlgebra& a);

// Names of flags whose claims the catalog records.
const std::vector<std::string>& flag_names();

}  // namespace sj

#endif
