#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tropweil/linalg.hpp"
#include "tropweil/multilinear.hpp"
#include "tropweil/param_poly.hpp"

namespace tropweil {

using ParamMatrix = std::array<std::array<ParamPoly, 4>, 4>;
using ParamPoint = std::array<Rat, 4>;  // numeric (a, b, c, e)

struct WeilParams {
  int d = 1;
  std::optional<ParamPoint> point;  // unset: symbolic mode
};

ParamMatrix build_polarization(int d);
RatMatrix build_polarization(int d, const ParamPoint& point);
ParamPoly determinant(const ParamMatrix& q);
// Leading principal minors of size 1..4.
std::array<ParamPoly, 4> leading_minors(const ParamMatrix& q);
ParamMatrix transpose(const ParamMatrix& q);
ParamMatrix operator*(const IntMatrix& m, const ParamMatrix& q);
ParamMatrix operator*(const ParamMatrix& q, const IntMatrix& m);

// D = d(ac - b^2) - e^2 as an element of Sym^2 Gamma_p.
Sym2p D_element(int d);
ParamPoly D_poly(int d);

// The two inequalities a > 0 and D > 0. Throws std::logic_error if they
// disagree with the leading-minor test of Q (which would be a bug).
bool positivity_check(int d, const ParamPoint& point);
// Independent test: all leading principal minors of the numeric Q positive.
bool minor_test(int d, const ParamPoint& point);

// 16 x 4 integer matrix; column i is gamma_{i+1} in Gamma2 (x) Gamma_p.
IntMatrix gamma_embedding(int d);
XVector gamma_column(int d, int i);
LatticeSpec gamma_lattice(int d);

// (sqrt(-d))_*: M acts on Gamma2 coordinates, N on gamma indices.
struct CMAction {
  IntMatrix M;
  IntMatrix N;
};
CMAction cm_action(int d);
// Induced action on wedge^2 Gamma1 (x) wedge^2 Gamma2.
ClassH22 cm_apply(const ClassH22& c, int d);
// Applies M to the Gamma2 index of x.
XVector cm_apply(const XVector& x, int d);

// One displayed term coef * gamma_{gi gj} (x) e_{ek el}, 1-based indices in any order.
struct ClassTerm {
  int gi, gj, ek, el;
  Rat coef;
};
ClassH22 class_from_terms(const std::vector<ClassTerm>& terms);
std::vector<ClassTerm> w1_terms(int d);
std::vector<ClassTerm> w2_terms(int d);

struct StandardClasses {
  ClassH22 theta, w1, w2;
};
StandardClasses standard_classes(int d);

ClassT expand_class_to_T(const ClassH22& c, int d);

// Closed forms printed alongside the classes, reproduced literally.
ClassT displayed_theta_T(int d);
ClassT corrected_theta_T(int d);  // with the two suspected typos fixed
ClassT displayed_w1_T(int d);
ClassT displayed_w2_T(int d);

// Coefficient of a Sym^2(wedge^2) monomial in a ClassT, as a quadratic form
// in a, b, c, e.
ParamPoly t_coefficient(const ClassT& t, int sym2w_index);

// Independent minor-oracle coefficients of expand(theta).
struct ThetaOracleEntry {
  int sym2w_index;
  ParamPoly expected;
};
std::vector<ThetaOracleEntry> theta_oracle(int d);

struct CoordinateDiff {
  int index;  // T index
  Rat displayed, computed;
};
std::vector<CoordinateDiff> diff_T(const ClassT& displayed, const ClassT& computed);

struct TypoReport {
  std::vector<CoordinateDiff> differences;  // printed theta display vs computation
  bool corrected_matches = false;
  std::vector<std::string> notes;
};
TypoReport theta_typo_report(int d);

std::string format_T(const ClassT& t);
std::string format_H22(const ClassH22& c);

}  // namespace tropweil
