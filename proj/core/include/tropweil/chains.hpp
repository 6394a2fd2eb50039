#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tropweil/linalg.hpp"
#include "tropweil/multilinear.hpp"

namespace tropweil {

class DegenerateCell : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class MalformedCell : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotSubdividable : public std::runtime_error {
 public:
  NotSubdividable(const std::string& what, std::size_t edge) : std::runtime_error(what), edge(edge) {}
  std::size_t edge;
};

struct Vertex {
  XVector lift;
  RatVector canonical;  // HNF-reduced representative modulo Gamma1, 16 coordinates
  RatVector quotient;   // 12 coordinates in (Gamma2 (x) Gamma_p)/Gamma1
  bool operator==(const Vertex& o) const { return canonical == o.canonical; }
};

// The torus (Gamma2 (x) Gamma_p)/Gamma1 for a fixed d.
class Torus {
 public:
  explicit Torus(int d);
  int d() const { return d_; }
  const LatticeSpec& gamma() const { return gamma_; }
  Vertex vertex(const XVector& lift) const;
  RatVector canonical(const XVector& lift) const;
  RatVector quotient_coordinates(const XVector& lift) const;

 private:
  int d_;
  LatticeSpec gamma_;
  IntMatrix left_;  // SNF left transform of the embedding
};

struct TriangleCell {
  XVector x;
  GpVector s;
  G2Vector u, v;
  Rat weight{1};
};

struct ParallelogramCell {
  XVector x;
  GpVector s, t;
  G2Vector u, v;
  Rat weight{1};
};

using Cell = std::variant<TriangleCell, ParallelogramCell>;

struct Chain {
  int d = 1;
  std::vector<Cell> cells;
  std::set<Int> denominators;  // introduced by weights, lifts or subdivision
  void record_denominators();
};

// (canonical vertex, primitive direction) -> F2 value.
using FlagKey = std::pair<RatVector, std::array<Rat, 4>>;

class FlagSum {
 public:
  void add(const Torus& torus, const XVector& vertex, const G2Vector& direction, const Wedge2& value);
  void add(const FlagKey& key, const Wedge2& value);
  FlagSum& operator+=(const FlagSum& o);
  FlagSum& operator*=(const Rat& k);
  bool empty() const { return flags_.empty(); }
  std::size_t size() const { return flags_.size(); }
  const std::map<FlagKey, Wedge2>& flags() const { return flags_; }
  friend bool operator==(const FlagSum& a, const FlagSum& b) { return a.flags_ == b.flags_; }

 private:
  std::map<FlagKey, Wedge2> flags_;
};

void validate_cell(const Cell& cell);
Rat cell_weight(const Cell& cell);
// Vertices in traversal order.
std::vector<XVector> cell_vertices(const Cell& cell);

ClassT vol_cell(const Cell& cell);
ClassT vol_chain(const Chain& chain);
FlagSum alpha_cell(const Torus& torus, const Cell& cell);
FlagSum alpha_chain(const Chain& chain);
FlagSum alpha_chain(const Torus& torus, const Chain& chain);
bool is_balanced(const Chain& chain);

// Translates the lift by shift (an element of Gamma1 for lift-invariance checks).
Cell translate_lift(const Cell& cell, const XVector& shift);

// Polygon given by its vertex lifts; edges X[i] -> X[i+1 mod n].
struct PolygonFrame {
  enum class Kind { SingleScale, TwoDirection, Mixed };
  Kind kind;
  Wedge2 frame;  // u0 ^ u1 for the first two non-parallel edges; carried by every flag
};
PolygonFrame polygon_frame(const std::vector<XVector>& loop);
Chain subdivide_polygon(const std::vector<XVector>& loop, int d);
// Boundary flags of the polygon: +frame at outgoing, -frame at incoming edges.
FlagSum loop_flags(const Torus& torus, const std::vector<XVector>& loop);
// Area form from the shoelace formula in Gamma_p-valued plane coordinates.
ClassT polygon_area_form(const std::vector<XVector>& loop);

}  // namespace tropweil
