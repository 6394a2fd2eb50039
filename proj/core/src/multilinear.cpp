#include "tropweil/multilinear.hpp"

#include <numeric>

namespace tropweil {
namespace idx {
namespace {

constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
constexpr std::array<std::array<int, 3>, 4> kTriples{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};

// Index of the unordered pair {i, j} in the lex list of pairs i <= j over n.
int sym_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n) return -1;
  return i * n - i * (i - 1) / 2 + (j - i);
}

std::pair<int, int> sym_pair(int k, int n) {
  for (int i = 0; i < n; ++i) {
    int row = n - i;
    if (k < row) return {i, i + k};
    k -= row;
  }
  throw std::out_of_range("sym index");
}

}  // namespace

int wedge(int k, int l) {
  for (int i = 0; i < kWedge2; ++i)
    if (kPairs[i].first == k && kPairs[i].second == l) return i;
  return -1;
}

std::pair<int, int> wedge_pair(int i) {
  if (i < 0 || i >= kWedge2) throw std::out_of_range("wedge index");
  return kPairs[i];
}

int sym2p(int p, int q) { return sym_index(p, q, kRank); }
std::pair<int, int> sym2p_pair(int i) { return sym_pair(i, kRank); }
int sym2w(int i, int j) { return sym_index(i, j, kWedge2); }
std::pair<int, int> sym2w_pair(int i) { return sym_pair(i, kWedge2); }

int wedge3(int k, int l, int m) {
  for (int i = 0; i < kWedge3; ++i)
    if (kTriples[i] == std::array<int, 3>{k, l, m}) return i;
  return -1;
}

std::array<int, 3> wedge3_triple(int i) {
  if (i < 0 || i >= kWedge3) throw std::out_of_range("wedge3 index");
  return kTriples[i];
}

std::string g2_name(int k) { return "e" + std::to_string(k + 1); }

std::string gp_name(int p) {
  static const char* names[] = {"a", "b", "c", "e"};
  return names[p];
}

std::string wedge_name(int i) {
  auto [k, l] = wedge_pair(i);
  return "e" + std::to_string(k + 1) + std::to_string(l + 1);
}

std::string gamma_pair_name(int i) {
  auto [k, l] = wedge_pair(i);
  return "g" + std::to_string(k + 1) + std::to_string(l + 1);
}

std::string sym2p_name(int i) {
  auto [p, q] = sym2p_pair(i);
  return p == q ? gp_name(p) + "^2" : gp_name(p) + gp_name(q);
}

std::string sym2w_name(int i) {
  auto [p, q] = sym2w_pair(i);
  return p == q ? wedge_name(p) + "^2" : wedge_name(p) + "*" + wedge_name(q);
}

std::string t_name(int i) { return sym2p_name(i / kSym2W) + "*" + sym2w_name(i % kSym2W); }

std::string h22_name(int i) { return gamma_pair_name(i / kWedge2) + "(x)" + wedge_name(i % kWedge2); }

}  // namespace idx

G2Vector g2(std::initializer_list<long> c) {
  if (c.size() != 4) throw DimensionMismatch("G2Vector needs 4 coordinates");
  G2Vector v;
  std::size_t i = 0;
  for (long x : c) v[i++] = x;
  return v;
}

GpVector gp(std::initializer_list<long> c) {
  if (c.size() != 4) throw DimensionMismatch("GpVector needs 4 coordinates");
  GpVector v;
  std::size_t i = 0;
  for (long x : c) v[i++] = x;
  return v;
}

Wedge2 wedge2(const G2Vector& u, const G2Vector& v) {
  Wedge2 w;
  for (int i = 0; i < idx::kWedge2; ++i) {
    auto [k, l] = idx::wedge_pair(i);
    w[i] = u[k] * v[l] - u[l] * v[k];
  }
  return w;
}

Sym2W sym_square_embed(const Wedge2& p, const Wedge2& q) {
  Sym2W out;
  for (int i = 0; i < idx::kWedge2; ++i)
    for (int j = i; j < idx::kWedge2; ++j)
      out[idx::sym2w(i, j)] = i == j ? Rat(p[i] * q[i]) : Rat(p[i] * q[j] + p[j] * q[i]);
  return out;
}

Sym2p sym_product(const GpVector& s, const GpVector& t) {
  Sym2p out;
  for (int i = 0; i < idx::kRank; ++i)
    for (int j = i; j < idx::kRank; ++j)
      out[idx::sym2p(i, j)] = i == j ? Rat(s[i] * t[i]) : Rat(s[i] * t[j] + s[j] * t[i]);
  return out;
}

ClassT tensor(const Sym2p& s, const Sym2W& w) {
  ClassT out;
  for (int i = 0; i < idx::kSym2p; ++i) {
    if (sgn(s[i]) == 0) continue;
    for (int j = 0; j < idx::kSym2W; ++j) out[idx::t(i, j)] = s[i] * w[j];
  }
  return out;
}

XVector tensor(const GpVector& s, const G2Vector& u) {
  XVector out;
  for (int p = 0; p < idx::kRank; ++p)
    for (int k = 0; k < idx::kRank; ++k) out[idx::x(p, k)] = s[p] * u[k];
  return out;
}

GpVector x_entry(const XVector& x, int k) {
  GpVector out;
  for (int p = 0; p < idx::kRank; ++p) out[p] = x[idx::x(p, k)];
  return out;
}

Sym2pWedge2 gamma_wedge_sym_part(const XVector& g1, const XVector& g2v) {
  Sym2pWedge2 out;
  for (int w = 0; w < idx::kWedge2; ++w) {
    auto [k, l] = idx::wedge_pair(w);
    Sym2p minor = sym_product(x_entry(g1, k), x_entry(g2v, l)) -
                  sym_product(x_entry(g1, l), x_entry(g2v, k));
    for (int s = 0; s < idx::kSym2p; ++s) out[s * idx::kWedge2 + w] = minor[s];
  }
  return out;
}

ClassT sym_times_wedge(const Sym2pWedge2& a, const Wedge2& e) {
  ClassT out;
  for (int s = 0; s < idx::kSym2p; ++s)
    for (int w = 0; w < idx::kWedge2; ++w) {
      const Rat& c = a[s * idx::kWedge2 + w];
      if (sgn(c) == 0) continue;
      for (int f = 0; f < idx::kWedge2; ++f)
        if (sgn(e[f]) != 0) out[idx::t(s, idx::sym2w(w, f))] += c * e[f];
    }
  return out;
}

namespace {

template <class V>
V primitive(const V& u) {
  Int den = 1;
  for (std::size_t i = 0; i < V::size(); ++i) den = lcm(den, Int(u[i].get_den()));
  Int g = 0;
  for (std::size_t i = 0; i < V::size(); ++i) {
    Int n = u[i].get_num() * (den / u[i].get_den());
    g = gcd(g, n);
  }
  if (g == 0) throw std::invalid_argument("zero vector has no direction");
  V out;
  int sign = 0;
  for (std::size_t i = 0; i < V::size(); ++i) {
    Rat q = u[i] * den / g;
    if (sign == 0 && sgn(q) != 0) sign = sgn(q);
    out[i] = q;
  }
  if (sign < 0) out *= Rat(-1);
  return out;
}

}  // namespace

G2Vector primitive_direction(const G2Vector& u) { return primitive(u); }

bool parallel(const G2Vector& u, const G2Vector& v) {
  for (int i = 0; i < idx::kWedge2; ++i) {
    auto [k, l] = idx::wedge_pair(i);
    if (u[k] * v[l] != u[l] * v[k]) return false;
  }
  return true;
}

std::optional<RankOne> rank_one_factor(const XVector& x) {
  int p0 = -1, k0 = -1;
  for (int p = 0; p < idx::kRank && p0 < 0; ++p)
    for (int k = 0; k < idx::kRank; ++k)
      if (sgn(x[idx::x(p, k)]) != 0) {
        p0 = p;
        k0 = k;
        break;
      }
  if (p0 < 0) return std::nullopt;
  // All 2x2 minors of the 4x4 array must vanish.
  for (int p = 0; p < idx::kRank; ++p)
    for (int q = p + 1; q < idx::kRank; ++q)
      for (int k = 0; k < idx::kRank; ++k)
        for (int l = k + 1; l < idx::kRank; ++l)
          if (x[idx::x(p, k)] * x[idx::x(q, l)] != x[idx::x(p, l)] * x[idx::x(q, k)])
            return std::nullopt;
  RankOne r;
  r.s = primitive(x_entry(x, k0));
  for (int k = 0; k < idx::kRank; ++k) r.u[k] = x[idx::x(p0, k)] / r.s[p0];
  return r;
}

}  // namespace tropweil
