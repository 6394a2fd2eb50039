#pragma once

#include <array>
#include <vector>

#include "tropweil/linalg.hpp"
#include "tropweil/multilinear.hpp"
#include "tropweil/param_poly.hpp"
#include "tropweil/weil.hpp"

namespace tropweil {

// Gamma1 (x) wedge^3 V: [gamma index][triple index].
struct EigenwaveImage {
  std::array<std::array<ParamPoly, 4>, 4> entry;
  bool is_zero() const;
  friend bool operator==(const EigenwaveImage& a, const EigenwaveImage& b) { return a.entry == b.entry; }
};

// phi(g_ij (x) w) = g_i (x) (gbar_j ^ w) - g_j (x) (gbar_i ^ w), gbar_k the k-th column of Q.
EigenwaveImage eigenwave_apply(const ClassH22& c, int d);
// Same map with the parameters substituted.
std::array<std::array<Rat, 4>, 4> eigenwave_apply(const ClassH22& c, int d, const ParamPoint& point);

// Coefficient-wise linear conditions on the 36 class coordinates (one row per
// gamma index, triple and parameter monomial with a nonzero column).
RatMatrix eigenwave_conditions(int d);

// Saturated lattice of integral classes killed identically in a, b, c, e.
LatticeSpec hodge_kernel(int d);
bool is_hodge(const ClassH22& c, int d);

// Rational kernel dimension of phi at a numeric parameter point (diagnostic).
std::size_t numeric_kernel_rank(int d, const ParamPoint& point);

}  // namespace tropweil
