#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "tropweil/linalg.hpp"

namespace tropweil {

// Coordinate conventions shared by every module.
//   Gamma2 basis e1..e4          -> 0..3
//   Gamma_p basis a, b, c, e     -> 0..3
//   Gamma2 (x) Gamma_p           -> p*4 + k            (16)
//   wedge^2 Gamma2, pairs k<l    -> 12,13,14,23,24,34  (6)
//   Sym^2 Gamma_p, pairs p<=q    -> lex                (10)
//   Sym^2(wedge^2), pairs i<=j   -> lex                (21)
//   T = Sym^2 Gamma_p (x) Sym^2(wedge^2) -> s*21 + w   (210)
//   wedge^2 Gamma1 (x) wedge^2 Gamma2    -> g*6 + E    (36)
//   wedge^3 Gamma2, triples      -> 123,124,134,234    (4)
namespace idx {
inline constexpr int kRank = 4;
inline constexpr int kX = 16;
inline constexpr int kWedge2 = 6;
inline constexpr int kSym2p = 10;
inline constexpr int kSym2W = 21;
inline constexpr int kT = 210;
inline constexpr int kH22 = 36;
inline constexpr int kWedge3 = 4;
inline constexpr int kSym2pWedge2 = 60;

int wedge(int k, int l);  // k < l required; -1 otherwise
std::pair<int, int> wedge_pair(int i);
int sym2p(int p, int q);  // unordered
std::pair<int, int> sym2p_pair(int i);
int sym2w(int i, int j);  // unordered
std::pair<int, int> sym2w_pair(int i);
inline int t(int s, int w) { return s * kSym2W + w; }
inline int h22(int g, int e) { return g * kWedge2 + e; }
inline int x(int p, int k) { return p * kRank + k; }
int wedge3(int k, int l, int m);  // k < l < m required
std::array<int, 3> wedge3_triple(int i);

std::string g2_name(int k);     // "e1"
std::string gp_name(int p);     // "a"
std::string wedge_name(int i);  // "e12"
std::string gamma_pair_name(int i);  // "g12"
std::string sym2p_name(int i);  // "a^2", "ab"
std::string sym2w_name(int i);  // "e12^2", "e12*e34"
std::string t_name(int i);      // "ab*e12*e34"
std::string h22_name(int i);    // "g12(x)e34"
}  // namespace idx

template <std::size_t N, class Tag>
struct Coords {
  std::array<Rat, N> v{};

  static constexpr std::size_t size() { return N; }
  Rat& operator[](std::size_t i) { return v[i]; }
  const Rat& operator[](std::size_t i) const { return v[i]; }

  Coords& operator+=(const Coords& o) {
    for (std::size_t i = 0; i < N; ++i) v[i] += o.v[i];
    return *this;
  }
  Coords& operator-=(const Coords& o) {
    for (std::size_t i = 0; i < N; ++i) v[i] -= o.v[i];
    return *this;
  }
  Coords& operator*=(const Rat& k) {
    for (auto& x : v) x *= k;
    return *this;
  }
  friend Coords operator+(Coords a, const Coords& b) { return a += b; }
  friend Coords operator-(Coords a, const Coords& b) { return a -= b; }
  friend Coords operator-(Coords a) { return a *= Rat(-1); }
  friend Coords operator*(const Rat& k, Coords a) { return a *= k; }
  friend bool operator==(const Coords& a, const Coords& b) {
    for (std::size_t i = 0; i < N; ++i)
      if (a.v[i] != b.v[i]) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& x : v)
      if (sgn(x) != 0) return false;
    return true;
  }
  RatVector to_vector() const { return RatVector(v.begin(), v.end()); }
  static Coords from_vector(const RatVector& r) {
    if (r.size() != N) throw DimensionMismatch("coordinate vector length");
    Coords c;
    for (std::size_t i = 0; i < N; ++i) c.v[i] = r[i];
    return c;
  }
  static Coords unit(std::size_t i) {
    Coords c;
    c.v[i] = 1;
    return c;
  }
};

struct G2Tag {};
struct GpTag {};
struct XTag {};
struct Wedge2Tag {};
struct Sym2pTag {};
struct Sym2WTag {};
struct TTag {};
struct H22Tag {};
struct Sym2pWedge2Tag {};

using G2Vector = Coords<4, G2Tag>;
using GpVector = Coords<4, GpTag>;
using XVector = Coords<16, XTag>;  // element of Gamma2 (x) Gamma_p
using Wedge2 = Coords<6, Wedge2Tag>;
using Sym2p = Coords<10, Sym2pTag>;
using Sym2W = Coords<21, Sym2WTag>;
using ClassT = Coords<210, TTag>;
using ClassH22 = Coords<36, H22Tag>;
using Sym2pWedge2 = Coords<60, Sym2pWedge2Tag>;

G2Vector g2(std::initializer_list<long> c);
GpVector gp(std::initializer_list<long> c);

Wedge2 wedge2(const G2Vector& u, const G2Vector& v);
Sym2W sym_square_embed(const Wedge2& p, const Wedge2& q);
Sym2p sym_product(const GpVector& s, const GpVector& t);
ClassT tensor(const Sym2p& s, const Sym2W& w);
XVector tensor(const GpVector& s, const G2Vector& u);  // s (x) u

// Gamma_p-entry of x at Gamma2 index k.
GpVector x_entry(const XVector& x, int k);
Sym2pWedge2 gamma_wedge_sym_part(const XVector& g1, const XVector& g2);
// Product of a Sym^2 Gamma_p (x) wedge^2 element with a wedge^2 element.
ClassT sym_times_wedge(const Sym2pWedge2& a, const Wedge2& e);

// Content-free integer direction, first nonzero coordinate positive.
G2Vector primitive_direction(const G2Vector& u);
bool parallel(const G2Vector& u, const G2Vector& v);

// Rank-1 factorization x = s (x) u with s primitive integral and first nonzero
// coordinate positive; nullopt if x is not rank 1 (or zero).
struct RankOne {
  GpVector s;
  G2Vector u;
};
std::optional<RankOne> rank_one_factor(const XVector& x);

}  // namespace tropweil
