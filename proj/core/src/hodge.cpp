#include "tropweil/hodge.hpp"

#include <map>
#include <tuple>

namespace tropweil {
namespace {

// gbar ^ e_kl for a column gbar = sum_m gbar_m e_m, as coefficients on the triples.
std::array<ParamPoly, 4> wedge_column(const ParamMatrix& q, int col, int k, int l) {
  std::array<ParamPoly, 4> out;
  for (int m = 0; m < 4; ++m) {
    if (m == k || m == l || q[m][col].is_zero()) continue;
    // Sort (m, k, l) with k < l.
    int sign = 1;
    std::array<int, 3> t{m, k, l};
    if (m > k) {
      std::swap(t[0], t[1]);
      sign = -sign;
      if (m > l) {
        std::swap(t[1], t[2]);
        sign = -sign;
      }
    }
    ParamPoly term = q[m][col];
    if (sign < 0) term = -term;
    out[idx::wedge3(t[0], t[1], t[2])] += term;
  }
  return out;
}

}  // namespace

bool EigenwaveImage::is_zero() const {
  for (const auto& row : entry)
    for (const auto& p : row)
      if (!p.is_zero()) return false;
  return true;
}

EigenwaveImage eigenwave_apply(const ClassH22& c, int d) {
  ParamMatrix q = build_polarization(d);
  EigenwaveImage out;
  for (int g = 0; g < idx::kWedge2; ++g) {
    auto [i, j] = idx::wedge_pair(g);
    for (int e = 0; e < idx::kWedge2; ++e) {
      const Rat& coef = c[idx::h22(g, e)];
      if (sgn(coef) == 0) continue;
      auto [k, l] = idx::wedge_pair(e);
      auto wj = wedge_column(q, j, k, l);
      auto wi = wedge_column(q, i, k, l);
      for (int t = 0; t < idx::kWedge3; ++t) {
        ParamPoly a = wj[t], b = wi[t];
        a *= coef;
        b *= coef;
        out.entry[i][t] += a;
        out.entry[j][t] -= b;
      }
    }
  }
  return out;
}

std::array<std::array<Rat, 4>, 4> eigenwave_apply(const ClassH22& c, int d, const ParamPoint& point) {
  EigenwaveImage img = eigenwave_apply(c, d);
  std::array<std::array<Rat, 4>, 4> out;
  for (int i = 0; i < 4; ++i)
    for (int t = 0; t < 4; ++t) out[i][t] = img.entry[i][t].evaluate(point);
  return out;
}

RatMatrix eigenwave_conditions(int d) {
  using Key = std::tuple<int, int, ParamPoly::Exponent>;
  std::map<Key, std::map<int, Rat>> rows;
  for (int b = 0; b < idx::kH22; ++b) {
    EigenwaveImage img = eigenwave_apply(ClassH22::unit(b), d);
    for (int i = 0; i < 4; ++i)
      for (int t = 0; t < 4; ++t)
        for (const auto& [e, coef] : img.entry[i][t].terms()) rows[{i, t, e}][b] += coef;
  }
  RatMatrix m(rows.size(), idx::kH22);
  std::size_t r = 0;
  for (const auto& [key, row] : rows) {
    for (const auto& [col, v] : row) m.set(r, col, v);
    ++r;
  }
  return m;
}

LatticeSpec hodge_kernel(int d) {
  RatMatrix ker = kernel_basis(eigenwave_conditions(d));
  return LatticeSpec(idx::kH22, ker).saturation();
}

bool is_hodge(const ClassH22& c, int d) { return eigenwave_apply(c, d).is_zero(); }

std::size_t numeric_kernel_rank(int d, const ParamPoint& point) {
  RatMatrix m(16, idx::kH22);
  for (int b = 0; b < idx::kH22; ++b) {
    auto img = eigenwave_apply(ClassH22::unit(b), d, point);
    for (int i = 0; i < 4; ++i)
      for (int t = 0; t < 4; ++t) m.set(i * 4 + t, b, img[i][t]);
  }
  return idx::kH22 - rank(m);
}

}  // namespace tropweil
