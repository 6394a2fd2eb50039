#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropweil/linalg.hpp"
#include "tropweil/multilinear.hpp"

namespace tropweil {

// Formal expansion of identities that are polynomial in quantified vector
// variables. A monomial is a sorted list of variable components.
using VarCode = std::uint8_t;  // variable * 8 + component
using Monomial = std::vector<VarCode>;

struct VarSpec {
  std::string name;
  int dim;
};

struct SlotEntry {
  Rat coef;
  Monomial mono;
  int index;  // basis index in the slot's space
};
using Slot = std::vector<SlotEntry>;

Slot variable_slot(int var, int dim);
Slot constant_slot(const RatVector& v);
Slot scale(const Slot& a, const Rat& k);
Slot sum(const Slot& a, const Slot& b);
Slot difference(const Slot& a, const Slot& b);
// p (x) k with index p * kdim + k.
Slot tensor_slot(const Slot& p, const Slot& k, int kdim);
// u ^ v in wedge^2 of a rank-4 space.
Slot wedge_slot(const Slot& u, const Slot& v);

class DegreeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Coefficient equation of one monomial: lhs . unknowns = rhs (a T-vector).
struct CoefficientEquation {
  Monomial mono;
  std::map<std::uint32_t, Rat> lhs;
  std::map<int, Rat> rhs;
  bool trivial() const { return lhs.empty() && rhs.empty(); }
};

// sum_i coef_i * unknown(slots_i) = sum_j known_j, where the unknown is
// multilinear in its slots (mixed-radix index over slot_dims) and each known
// term is coef * (p.q) (x) (w1.w2) in T.
class Schema {
 public:
  Schema(std::vector<VarSpec> vars, std::vector<int> slot_dims);

  void add_unknown(const Rat& coef, std::vector<Slot> slots);
  void add_known(const Rat& coef, Slot p, Slot q, Slot w1, Slot w2);

  const std::vector<VarSpec>& vars() const { return vars_; }
  std::size_t unknown_count() const;

  // One equation per monomial that occurs on either side (cancelled monomials
  // are kept and flagged trivial). Throws DegreeMismatch if a term is not of
  // one of the declared multidegrees.
  std::vector<CoefficientEquation> expand(const std::vector<std::vector<int>>& multidegrees) const;

  // Direct evaluation at a point (one vector per variable) for given unknown
  // values, as lhs - rhs in T.
  ClassT evaluate(const std::vector<RatVector>& point,
                  const std::map<std::uint32_t, ClassT>& unknowns) const;

  std::string monomial_name(const Monomial& m) const;

 private:
  struct UnknownTerm {
    Rat coef;
    std::vector<Slot> slots;
  };
  struct KnownTerm {
    Rat coef;
    Slot p, q, w1, w2;
  };
  std::vector<VarSpec> vars_;
  std::vector<int> slot_dims_;
  std::vector<UnknownTerm> unknown_;
  std::vector<KnownTerm> known_;
};

// Number of monomials of the given degrees in variables of the given dims.
std::size_t graded_dimension(const std::vector<VarSpec>& vars, const std::vector<int>& degrees);

// Value of a monomial at a point.
Rat evaluate_monomial(const Monomial& m, const std::vector<RatVector>& point);

// lhs(unknowns) - rhs summed against monomial values; equals Schema::evaluate.
ClassT evaluate_equations(const std::vector<CoefficientEquation>& eqs, const std::vector<RatVector>& point,
                          const std::map<std::uint32_t, ClassT>& unknowns);

}  // namespace tropweil
