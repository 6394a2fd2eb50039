#include "tropweil/weil.hpp"

#include <sstream>
#include <stdexcept>

namespace tropweil {
namespace {

// Q[k][j] as a linear form in (a, b, c, e).
std::array<std::array<GpVector, 4>, 4> q_linear(int d) {
  const long D = d;
  std::array<std::array<GpVector, 4>, 4> q;
  q[0] = {gp({1, 0, 0, 0}), gp({0, 1, 0, 0}), gp({0, 0, 0, 0}), gp({0, 0, 0, 1})};
  q[1] = {gp({0, 1, 0, 0}), gp({0, 0, 1, 0}), gp({0, 0, 0, -1}), gp({0, 0, 0, 0})};
  q[2] = {gp({0, 0, 0, 0}), gp({0, 0, 0, -1}), gp({D, 0, 0, 0}), gp({0, D, 0, 0})};
  q[3] = {gp({0, 0, 0, 1}), gp({0, 0, 0, 0}), gp({0, D, 0, 0}), gp({0, 0, D, 0})};
  return q;
}

// Image of the basis pair (i, j) of wedge^2 under the linear map with matrix a.
std::array<Rat, 6> wedge_image(const IntMatrix& a, int i, int j) {
  std::array<Rat, 6> out;
  for (int w = 0; w < idx::kWedge2; ++w) {
    auto [m, n] = idx::wedge_pair(w);
    out[w] = Rat(a.get(m, i) * a.get(n, j) - a.get(n, i) * a.get(m, j));
  }
  return out;
}

// Sign and sorted pair for 1-based (i, j); sign 0 when i == j.
std::pair<int, int> sorted_pair(int i, int j) {
  if (i == j) return {0, -1};
  if (i < j) return {1, idx::wedge(i - 1, j - 1)};
  return {-1, idx::wedge(j - 1, i - 1)};
}

Wedge2 wedge_unit(int k, int l) {  // 1-based, any order
  auto [sign, w] = sorted_pair(k, l);
  Wedge2 out;
  if (sign != 0) out[w] = sign;
  return out;
}

Sym2W sq(const Wedge2& p) { return sym_square_embed(p, p); }

// (sum_p x_p W_p)^2 with x_p the parameters.
ClassT mixed_square(const std::array<Wedge2, 4>& coeffs) {
  ClassT out;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      out += tensor(sym_product(GpVector::unit(p), GpVector::unit(q)), sym_square_embed(coeffs[p], coeffs[q]));
  return out;
}

ClassT theta_display(int d, bool corrected) {
  const Rat dd(d);
  Wedge2 e12 = wedge_unit(1, 2), e13 = wedge_unit(1, 3), e14 = wedge_unit(1, 4);
  Wedge2 e23 = wedge_unit(2, 3), e24 = wedge_unit(2, 4), e34 = wedge_unit(3, 4);
  // -(e/d) e12 + a e13 + b (e14 + e23) + c e24 - e e34
  std::array<Wedge2, 4> lin{e13, e14 + e23, e24, Rat(-1) / dd * e12 - e34};
  ClassT out = dd * mixed_square(lin);
  Sym2W bracket = (corrected ? Rat(1) : Rat(-1)) / dd * sq(e12) + sq(e14) + sq(e23) + dd * sq(e34);
  bracket -= Rat(2) * sym_square_embed(e13, corrected ? e24 : e14);
  return out + tensor(D_element(d), bracket);
}

}  // namespace

ParamMatrix build_polarization(int d) {
  auto q = q_linear(d);
  ParamMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = ParamPoly::linear(q[i][j]);
  return out;
}

RatMatrix build_polarization(int d, const ParamPoint& point) {
  auto q = build_polarization(d);
  RatMatrix out(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.set(i, j, q[i][j].evaluate(point));
  return out;
}

namespace {

ParamPoly det_rec(const ParamMatrix& q, std::vector<int> rows, std::vector<int> cols) {
  if (rows.size() == 1) return q[rows[0]][cols[0]];
  ParamPoly total;
  int r = rows.front();
  std::vector<int> rest(rows.begin() + 1, rows.end());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (q[r][cols[k]].is_zero()) continue;
    std::vector<int> sub = cols;
    sub.erase(sub.begin() + k);
    ParamPoly term = q[r][cols[k]] * det_rec(q, rest, sub);
    if (k % 2) total -= term;
    else total += term;
  }
  return total;
}

}  // namespace

ParamPoly determinant(const ParamMatrix& q) { return det_rec(q, {0, 1, 2, 3}, {0, 1, 2, 3}); }

std::array<ParamPoly, 4> leading_minors(const ParamMatrix& q) {
  std::array<ParamPoly, 4> out;
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> ix;
    for (int i = 0; i < n; ++i) ix.push_back(i);
    out[n - 1] = det_rec(q, ix, ix);
  }
  return out;
}

ParamMatrix transpose(const ParamMatrix& q) {
  ParamMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = q[j][i];
  return out;
}

ParamMatrix operator*(const IntMatrix& m, const ParamMatrix& q) {
  ParamMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) out[i][j] += Rat(m.get(i, k)) * q[k][j];
  return out;
}

ParamMatrix operator*(const ParamMatrix& q, const IntMatrix& m) {
  ParamMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) out[i][j] += q[i][k] * Rat(m.get(k, j));
  return out;
}

Sym2p D_element(int d) {
  Sym2p out;
  out[idx::sym2p(0, 2)] = d;
  out[idx::sym2p(1, 1)] = -d;
  out[idx::sym2p(3, 3)] = -1;
  return out;
}

ParamPoly D_poly(int d) { return ParamPoly::from_sym2p(D_element(d)); }

bool minor_test(int d, const ParamPoint& point) {
  auto minors = leading_minors(build_polarization(d));
  for (const auto& m : minors)
    if (sgn(m.evaluate(point)) <= 0) return false;
  return true;
}

bool positivity_check(int d, const ParamPoint& point) {
  bool claim = sgn(point[0]) > 0 && sgn(D_poly(d).evaluate(point)) > 0;
  if (claim != minor_test(d, point))
    throw std::logic_error("positivity inequalities disagree with the minor test of Q");
  return claim;
}

IntMatrix gamma_embedding(int d) {
  auto q = q_linear(d);
  IntMatrix g(16, 4);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int p = 0; p < 4; ++p) g.set(idx::x(p, k), i, q[k][i][p].get_num());
  return g;
}

XVector gamma_column(int d, int i) {
  IntMatrix g = gamma_embedding(d);
  XVector out;
  for (int r = 0; r < idx::kX; ++r) out[r] = g.get(r, i);
  return out;
}

LatticeSpec gamma_lattice(int d) { return LatticeSpec(idx::kX, to_rational(gamma_embedding(d))); }

CMAction cm_action(int d) {
  // Both actions have the same shape: 1 -> d*3, 2 -> d*4, 3 -> -1, 4 -> -2.
  IntMatrix m(4, 4);
  m.set(2, 0, d);
  m.set(3, 1, d);
  m.set(0, 2, -1);
  m.set(1, 3, -1);
  IntMatrix n(4, 4);
  n.set(2, 0, 1);
  n.set(3, 1, 1);
  n.set(0, 2, -d);
  n.set(1, 3, -d);
  return {m, n};
}

ClassH22 cm_apply(const ClassH22& c, int d) {
  CMAction cm = cm_action(d);
  ClassH22 out;
  for (int g = 0; g < idx::kWedge2; ++g) {
    auto [i, j] = idx::wedge_pair(g);
    auto gi = wedge_image(cm.N, i, j);
    for (int e = 0; e < idx::kWedge2; ++e) {
      const Rat& coef = c[idx::h22(g, e)];
      if (sgn(coef) == 0) continue;
      auto [k, l] = idx::wedge_pair(e);
      auto ei = wedge_image(cm.M, k, l);
      for (int g2i = 0; g2i < idx::kWedge2; ++g2i)
        for (int e2 = 0; e2 < idx::kWedge2; ++e2) out[idx::h22(g2i, e2)] += coef * gi[g2i] * ei[e2];
    }
  }
  return out;
}

XVector cm_apply(const XVector& x, int d) {
  CMAction cm = cm_action(d);
  XVector out;
  for (int p = 0; p < 4; ++p)
    for (int k = 0; k < 4; ++k)
      for (int m = 0; m < 4; ++m) out[idx::x(p, m)] += Rat(cm.M.get(m, k)) * x[idx::x(p, k)];
  return out;
}

ClassH22 class_from_terms(const std::vector<ClassTerm>& terms) {
  ClassH22 out;
  for (const auto& t : terms) {
    auto [sg, g] = sorted_pair(t.gi, t.gj);
    auto [se, e] = sorted_pair(t.ek, t.el);
    if (sg == 0 || se == 0) continue;
    out[idx::h22(g, e)] += Rat(sg * se) * t.coef;
  }
  return out;
}

std::vector<ClassTerm> w1_terms(int d) {
  const Rat dd(d);
  return {{1, 2, 1, 2, 1},  {3, 4, 1, 2, Rat(-1) / dd}, {1, 4, 1, 4, -1}, {1, 4, 3, 2, -1},
          {3, 2, 1, 4, -1}, {3, 2, 3, 2, -1},            {1, 2, 3, 4, -dd}, {3, 4, 3, 4, 1}};
}

std::vector<ClassTerm> w2_terms(int d) {
  const Rat dd(d);
  return {{1, 4, 1, 2, 1},  {1, 4, 3, 4, -dd}, {1, 2, 3, 2, dd}, {3, 4, 3, 2, -1},
          {1, 2, 1, 4, dd}, {3, 4, 1, 4, -1},  {3, 2, 1, 2, 1},  {3, 2, 3, 4, -dd}};
}

StandardClasses standard_classes(int d) {
  StandardClasses s;
  for (int i = 0; i < idx::kWedge2; ++i) s.theta[idx::h22(i, i)] = 1;
  s.w1 = class_from_terms(w1_terms(d));
  s.w2 = class_from_terms(w2_terms(d));
  return s;
}

ClassT expand_class_to_T(const ClassH22& c, int d) {
  std::array<XVector, 4> gam;
  for (int i = 0; i < 4; ++i) gam[i] = gamma_column(d, i);
  ClassT out;
  for (int g = 0; g < idx::kWedge2; ++g) {
    bool any = false;
    for (int e = 0; e < idx::kWedge2; ++e) any = any || sgn(c[idx::h22(g, e)]) != 0;
    if (!any) continue;
    auto [i, j] = idx::wedge_pair(g);
    Sym2pWedge2 part = gamma_wedge_sym_part(gam[i], gam[j]);
    Wedge2 coeffs;
    for (int e = 0; e < idx::kWedge2; ++e) coeffs[e] = c[idx::h22(g, e)];
    out += sym_times_wedge(part, coeffs);
  }
  return out;
}

ClassT displayed_theta_T(int d) { return theta_display(d, false); }
ClassT corrected_theta_T(int d) { return theta_display(d, true); }

ClassT displayed_w1_T(int d) {
  const Rat dd(d);
  Wedge2 e12 = wedge_unit(1, 2), e34 = wedge_unit(3, 4);
  Wedge2 f = wedge_unit(1, 4) + wedge_unit(3, 2);
  // (e12/sqrt(d) + sqrt(d) e34)^2 expanded over Q.
  Sym2W first = Rat(1) / dd * sq(e12) + Rat(2) * sym_square_embed(e12, e34) + dd * sq(e34);
  return tensor(D_element(d), first - sq(f));
}

ClassT displayed_w2_T(int d) {
  Wedge2 left = wedge_unit(1, 2) - Rat(d) * wedge_unit(3, 4);
  Wedge2 right = wedge_unit(1, 4) + wedge_unit(3, 2);
  return tensor(Rat(2) * D_element(d), sym_square_embed(left, right));
}

ParamPoly t_coefficient(const ClassT& t, int sym2w_index) {
  Sym2p s;
  for (int p = 0; p < idx::kSym2p; ++p) s[p] = t[idx::t(p, sym2w_index)];
  return ParamPoly::from_sym2p(s);
}

std::vector<ThetaOracleEntry> theta_oracle(int d) {
  const Rat dd(d);
  ParamPoly a = ParamPoly::var(0), b = ParamPoly::var(1), c = ParamPoly::var(2), e = ParamPoly::var(3);
  auto w = [](int k, int l) { return idx::wedge(k - 1, l - 1); };
  auto m = [&](int k1, int l1, int k2, int l2) { return idx::sym2w(w(k1, l1), w(k2, l2)); };
  ParamPoly ac_b2 = a * c - b * b;
  return {
      {m(1, 3, 1, 3), ParamPoly(dd) * a * a},
      {m(2, 4, 2, 4), ParamPoly(dd) * c * c},
      {m(3, 4, 3, 4), ParamPoly(dd * dd) * ac_b2},
      {m(1, 2, 3, 4), ParamPoly(Rat(2)) * e * e},
      {m(1, 4, 1, 4), ParamPoly(dd) * a * c - e * e},
      {m(2, 3, 2, 3), ParamPoly(dd) * a * c - e * e},
      {m(1, 4, 2, 3), ParamPoly(2 * dd) * b * b},
      {m(1, 3, 2, 4), ParamPoly(Rat(2)) * (ParamPoly(dd) * b * b + e * e)},
      {m(1, 2, 1, 2), ac_b2},
  };
}

std::vector<CoordinateDiff> diff_T(const ClassT& displayed, const ClassT& computed) {
  std::vector<CoordinateDiff> out;
  for (int i = 0; i < idx::kT; ++i)
    if (displayed[i] != computed[i]) out.push_back({i, displayed[i], computed[i]});
  return out;
}

TypoReport theta_typo_report(int d) {
  TypoReport r;
  ClassT computed = expand_class_to_T(standard_classes(d).theta, d);
  r.differences = diff_T(displayed_theta_T(d), computed);
  r.corrected_matches = corrected_theta_T(d) == computed;
  if (!r.differences.empty()) {
    r.notes.push_back("printed theta closed form differs from the minor expansion in " +
                      std::to_string(r.differences.size()) + " coordinates");
    r.notes.push_back(r.corrected_matches
                          ? "reading -2 e13 e14 as -2 e13 e24 and -(1/d) e12^2 as +(1/d) e12^2 restores agreement"
                          : "the two suspected corrections do not restore agreement");
  }
  return r;
}

std::string format_T(const ClassT& t) {
  std::ostringstream out;
  bool first = true;
  for (int w = 0; w < idx::kSym2W; ++w) {
    ParamPoly c = t_coefficient(t, w);
    if (c.is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << c.to_string() << ")*" << idx::sym2w_name(w);
  }
  return first ? "0" : out.str();
}

std::string format_H22(const ClassH22& c) {
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < idx::kH22; ++i) {
    if (sgn(c[i]) == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << c[i].get_str() << ")*" << idx::h22_name(i);
  }
  return first ? "0" : out.str();
}

}  // namespace tropweil
