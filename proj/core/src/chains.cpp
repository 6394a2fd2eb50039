#include "tropweil/chains.hpp"

#include <algorithm>
#include <type_traits>
#include <optional>

#include "tropweil/weil.hpp"

namespace tropweil {
namespace {

bool integral(const GpVector& s) {
  for (std::size_t i = 0; i < 4; ++i)
    if (s[i].get_den() != 1) return false;
  return true;
}

// k with a = k*b for parallel nonzero bivectors; nullopt if not parallel.
std::optional<Rat> bivector_ratio(const Wedge2& a, const Wedge2& b) {
  std::optional<Rat> k;
  for (int i = 0; i < idx::kWedge2; ++i) {
    if (sgn(b[i]) == 0) {
      if (sgn(a[i]) != 0) return std::nullopt;
      continue;
    }
    Rat r = a[i] / b[i];
    if (k && *k != r) return std::nullopt;
    k = r;
  }
  return k;
}

std::array<Rat, 4> key_direction(const G2Vector& u) { return primitive_direction(u).v; }

struct Edge {
  XVector start;
  XVector delta;
  GpVector s;
  G2Vector u;
  std::size_t origin;  // index of the input edge it came from
};

Edge make_edge(const XVector& start, const XVector& delta, std::size_t origin) {
  auto f = rank_one_factor(delta);
  if (!f) throw NotSubdividable("edge " + std::to_string(origin) + " is not rank 1", origin);
  return {start, delta, f->s, f->u, origin};
}

std::vector<Edge> loop_edges(const std::vector<XVector>& loop) {
  std::vector<Edge> edges;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    XVector delta = loop[(i + 1) % n] - loop[i];
    if (delta.is_zero()) continue;
    edges.push_back(make_edge(loop[i], delta, i));
  }
  return edges;
}

struct Analysis {
  PolygonFrame frame;
  std::vector<Edge> edges;
  G2Vector base_a, base_b;  // plane basis: first edge and first edge not parallel to it
};

// Coordinates (alpha, beta) of u in the plane basis.
std::pair<Rat, Rat> plane_coords(const Analysis& an, const G2Vector& u) {
  auto alpha = bivector_ratio(wedge2(u, an.base_b), an.frame.frame);
  auto beta = bivector_ratio(wedge2(an.base_a, u), an.frame.frame);
  if (!alpha || !beta) throw std::logic_error("direction outside the polygon plane");
  return {*alpha, *beta};
}

Analysis analyse(const std::vector<XVector>& loop) {
  Analysis an;
  an.edges = loop_edges(loop);
  const auto& edges = an.edges;
  if (edges.size() < 3) throw NotSubdividable("loop has fewer than three edges", 0);

  an.base_a = edges.front().u;
  bool found = false;
  for (const auto& e : edges)
    if (!parallel(an.base_a, e.u)) {
      an.base_b = e.u;
      found = true;
      break;
    }
  if (!found) throw NotSubdividable("all edges are parallel", edges.front().origin);
  Wedge2 frame = wedge2(an.base_a, an.base_b);
  for (const auto& e : edges) {
    Wedge2 w = wedge2(an.base_a, e.u);
    if (!w.is_zero() && !bivector_ratio(w, frame))
      throw NotSubdividable("edge " + std::to_string(e.origin) + " leaves the plane of the loop", e.origin);
    Wedge2 w2 = wedge2(an.base_b, e.u);
    if (!w2.is_zero() && !bivector_ratio(w2, frame))
      throw NotSubdividable("edge " + std::to_string(e.origin) + " leaves the plane of the loop", e.origin);
  }

  bool single = true;
  std::vector<std::array<Rat, 4>> dirs;
  for (const auto& e : edges) {
    single = single && e.s == edges.front().s;
    auto k = key_direction(e.u);
    if (std::find(dirs.begin(), dirs.end(), k) == dirs.end()) dirs.push_back(k);
  }
  PolygonFrame::Kind kind = single ? PolygonFrame::Kind::SingleScale
                            : dirs.size() == 2 ? PolygonFrame::Kind::TwoDirection
                                               : PolygonFrame::Kind::Mixed;
  an.frame = {kind, frame};
  return an;
}

Rat weight_for(const Wedge2& frame, const Wedge2& cell_frame) {
  auto k = bivector_ratio(frame, cell_frame);
  if (!k) throw std::logic_error("cell frame not parallel to polygon frame");
  return *k;
}

bool same_direction(const Edge& a, const Edge& b) { return parallel(a.u, b.u); }

// b.delta = k * a.delta for some rational k.
std::optional<Rat> delta_ratio(const Edge& a, const Edge& b) {
  std::optional<Rat> k;
  for (int i = 0; i < idx::kX; ++i) {
    if (sgn(a.delta[i]) == 0) {
      if (sgn(b.delta[i]) != 0) return std::nullopt;
      continue;
    }
    Rat r = b.delta[i] / a.delta[i];
    if (k && *k != r) return std::nullopt;
    k = r;
  }
  return k;
}

// Repeatedly removes collinear pairs, parallelogram ears and triangle ears.
void clip_ears(const Analysis& an, Chain& out) {
  std::vector<Edge> loop = an.edges;
  const Wedge2& frame = an.frame.frame;
  auto restart = [&](std::size_t from) {
    std::rotate(loop.begin(), loop.begin() + from, loop.end());
    for (std::size_t i = 1; i < loop.size(); ++i) loop[i].start = loop[i - 1].start + loop[i - 1].delta;
  };
  auto merge_pair = [&]() {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = (i + 1) % n;
      if (!same_direction(loop[i], loop[j]) || !delta_ratio(loop[i], loop[j])) continue;
      restart(i);
      XVector sum = loop[0].delta + loop[1].delta;
      Edge merged = loop[0];
      loop.erase(loop.begin(), loop.begin() + 2);
      if (!sum.is_zero()) loop.insert(loop.begin(), make_edge(merged.start, sum, merged.origin));
      if (!loop.empty()) restart(0);
      return true;
    }
    return false;
  };
  auto parallelogram_ear = [&]() {
    const std::size_t n = loop.size();
    if (n < 4) return false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = (i + 1) % n, k = (i + 2) % n;
      if (same_direction(loop[i], loop[j]) || !same_direction(loop[i], loop[k])) continue;
      auto r = delta_ratio(loop[i], loop[k]);
      if (!r || sgn(*r) >= 0) continue;
      restart(i);
      if (*r > -1) {
        // Split the first edge so that its tail is the reverse of the third.
        XVector head = loop[0].delta + loop[2].delta;
        Edge tail = make_edge(loop[0].start + head, -loop[2].delta, loop[0].origin);
        loop[0] = make_edge(loop[0].start, head, loop[0].origin);
        loop.insert(loop.begin() + 1, tail);
        restart(1);
      } else if (*r < -1) {
        XVector rest = loop[2].delta + loop[0].delta;
        Edge first = make_edge(loop[2].start, -loop[0].delta, loop[2].origin);
        Edge second = make_edge(loop[2].start - loop[0].delta, rest, loop[2].origin);
        loop[2] = first;
        loop.insert(loop.begin() + 3, second);
      }
      const Edge& a = loop[0];
      const Edge& b = loop[1];
      out.cells.push_back(ParallelogramCell{a.start, a.s, b.s, a.u, b.u, weight_for(frame, wedge2(a.u, b.u))});
      Edge replacement = make_edge(a.start, b.delta, b.origin);
      loop.erase(loop.begin(), loop.begin() + 3);
      loop.insert(loop.begin(), replacement);
      restart(0);
      return true;
    }
    return false;
  };
  auto triangle_ear = [&]() {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = (i + 1) % n;
      if (same_direction(loop[i], loop[j]) || !(loop[i].s == loop[j].s)) continue;
      restart(i);
      const Edge& a = loop[0];
      const Edge& b = loop[1];
      G2Vector w = a.u + b.u;
      out.cells.push_back(TriangleCell{a.start, a.s, a.u, w, weight_for(frame, wedge2(a.u, w))});
      Edge replacement = make_edge(a.start, a.delta + b.delta, a.origin);
      loop.erase(loop.begin(), loop.begin() + 2);
      loop.insert(loop.begin(), replacement);
      restart(0);
      return true;
    }
    return false;
  };
  while (!loop.empty()) {
    if (merge_pair() || parallelogram_ear() || triangle_ear()) continue;
    throw NotSubdividable("no ear at edge " + std::to_string(loop.front().origin), loop.front().origin);
  }
}

}  // namespace

Torus::Torus(int d) : d_(d), gamma_(gamma_lattice(d)), left_(snf(gamma_embedding(d)).left) {}

RatVector Torus::canonical(const XVector& lift) const { return canonical_coset_rep(lift.to_vector(), gamma_); }

RatVector Torus::quotient_coordinates(const XVector& lift) const {
  RatVector q(idx::kX - 4);
  for (int r = 4; r < idx::kX; ++r) {
    Rat acc = 0;
    for (int c = 0; c < idx::kX; ++c) acc += Rat(left_.get(r, c)) * lift[c];
    q[r - 4] = acc;
  }
  return q;
}

Vertex Torus::vertex(const XVector& lift) const { return {lift, canonical(lift), quotient_coordinates(lift)}; }

void Chain::record_denominators() {
  auto note = [&](const Rat& q) {
    if (q.get_den() != 1) denominators.insert(Int(q.get_den()));
  };
  for (const auto& c : cells)
    std::visit(
        [&](const auto& cell) {
          note(cell.weight);
          for (std::size_t i = 0; i < XVector::size(); ++i) note(cell.x[i]);
          for (std::size_t i = 0; i < 4; ++i) {
            note(cell.u[i]);
            note(cell.v[i]);
          }
        },
        c);
}

void FlagSum::add(const FlagKey& key, const Wedge2& value) {
  if (value.is_zero()) return;
  auto [it, fresh] = flags_.try_emplace(key, value);
  if (!fresh) {
    it->second += value;
    if (it->second.is_zero()) flags_.erase(it);
  }
}

void FlagSum::add(const Torus& torus, const XVector& vertex, const G2Vector& direction, const Wedge2& value) {
  add({torus.canonical(vertex), key_direction(direction)}, value);
}

FlagSum& FlagSum::operator+=(const FlagSum& o) {
  for (const auto& [k, v] : o.flags_) add(k, v);
  return *this;
}

FlagSum& FlagSum::operator*=(const Rat& k) {
  if (sgn(k) == 0) {
    flags_.clear();
    return *this;
  }
  for (auto& [key, v] : flags_) v *= k;
  return *this;
}

void validate_cell(const Cell& cell) {
  std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if (!integral(c.s)) throw MalformedCell("scale s must be integral");
        if constexpr (std::is_same_v<T, ParallelogramCell>) {
          if (!integral(c.t)) throw MalformedCell("scale t must be integral");
          if (GpVector{} == c.t) throw DegenerateCell("scale t is zero");
        }
        if (GpVector{} == c.s) throw DegenerateCell("scale s is zero");
        if (sgn(c.weight) == 0) throw DegenerateCell("weight is zero");
        if (G2Vector{} == c.u || G2Vector{} == c.v) throw DegenerateCell("zero edge direction");
        if (parallel(c.u, c.v)) throw DegenerateCell("u and v are parallel");
      },
      cell);
}

Rat cell_weight(const Cell& cell) {
  return std::visit([](const auto& c) { return c.weight; }, cell);
}

std::vector<XVector> cell_vertices(const Cell& cell) {
  if (const auto* t = std::get_if<TriangleCell>(&cell))
    return {t->x, t->x + tensor(t->s, t->u), t->x + tensor(t->s, t->v)};
  const auto& p = std::get<ParallelogramCell>(cell);
  XVector su = tensor(p.s, p.u), tv = tensor(p.t, p.v);
  return {p.x, p.x + su, p.x + su + tv, p.x + tv};
}

ClassT vol_cell(const Cell& cell) {
  if (const auto* t = std::get_if<TriangleCell>(&cell)) {
    Wedge2 w = wedge2(t->u, t->v);
    return t->weight * tensor(sym_product(t->s, t->s), sym_square_embed(w, w));
  }
  const auto& p = std::get<ParallelogramCell>(cell);
  Wedge2 w = wedge2(p.u, p.v);
  return (Rat(2) * p.weight) * tensor(sym_product(p.s, p.t), sym_square_embed(w, w));
}

ClassT vol_chain(const Chain& chain) {
  ClassT out;
  for (const auto& c : chain.cells) out += vol_cell(c);
  return out;
}

FlagSum alpha_cell(const Torus& torus, const Cell& cell) {
  FlagSum out;
  std::vector<XVector> vs = cell_vertices(cell);
  Wedge2 f2 = std::visit([](const auto& c) { return c.weight * wedge2(c.u, c.v); }, cell);
  const std::size_t n = vs.size();
  std::vector<G2Vector> dirs(n);
  if (const auto* t = std::get_if<TriangleCell>(&cell)) {
    dirs = {t->u, t->v - t->u, -t->v};
  } else {
    const auto& p = std::get<ParallelogramCell>(cell);
    dirs = {p.u, p.v, -p.u, -p.v};
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.add(torus, vs[i], dirs[i], f2);                 // outgoing
    out.add(torus, vs[i], dirs[(i + n - 1) % n], -f2);  // incoming
  }
  return out;
}

FlagSum alpha_chain(const Torus& torus, const Chain& chain) {
  FlagSum out;
  for (const auto& c : chain.cells) out += alpha_cell(torus, c);
  return out;
}

FlagSum alpha_chain(const Chain& chain) { return alpha_chain(Torus(chain.d), chain); }

bool is_balanced(const Chain& chain) { return alpha_chain(chain).empty(); }

Cell translate_lift(const Cell& cell, const XVector& shift) {
  Cell out = cell;
  std::visit([&](auto& c) { c.x += shift; }, out);
  return out;
}

PolygonFrame polygon_frame(const std::vector<XVector>& loop) { return analyse(loop).frame; }

Chain subdivide_polygon(const std::vector<XVector>& loop, int d) {
  Analysis an = analyse(loop);
  Chain out;
  out.d = d;
  clip_ears(an, out);
  out.record_denominators();
  return out;
}

FlagSum loop_flags(const Torus& torus, const std::vector<XVector>& loop) {
  Analysis an = analyse(loop);
  FlagSum out;
  const auto& e = an.edges;
  const std::size_t n = e.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.add(torus, e[i].start, e[i].u, an.frame.frame);
    out.add(torus, e[i].start, e[(i + n - 1) % n].u, -an.frame.frame);
  }
  return out;
}

ClassT polygon_area_form(const std::vector<XVector>& loop) {
  Analysis an = analyse(loop);
  // Shoelace formula with Gamma_p-valued plane coordinates (sigma, tau).
  std::vector<std::pair<GpVector, GpVector>> pts{{GpVector{}, GpVector{}}};
  for (const auto& e : an.edges) {
    auto [alpha, beta] = plane_coords(an, e.u);
    pts.push_back({pts.back().first + alpha * e.s, pts.back().second + beta * e.s});
  }
  pts.pop_back();  // closed loop
  Sym2p total;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& [s0, t0] = pts[k];
    const auto& [s1, t1] = pts[(k + 1) % pts.size()];
    total += sym_product(s0, t1) - sym_product(s1, t0);
  }
  return tensor(total, sym_square_embed(an.frame.frame, an.frame.frame));
}

}  // namespace tropweil
