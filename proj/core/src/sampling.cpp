#include "tropweil/sampling.hpp"

namespace tropweil {

long Sampler::integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

Rat Sampler::rational(long bound, long max_den) {
  return canonical(Rat(integer(-bound, bound), integer(1, max_den)));
}

Rat Sampler::nonzero_rational(long bound, long max_den) {
  for (;;) {
    Rat r = rational(bound, max_den);
    if (sgn(r) != 0) return r;
  }
}

GpVector Sampler::scale(long bound) {
  for (;;) {
    GpVector s;
    for (int i = 0; i < 4; ++i) s[i] = integer(-bound, bound);
    if (!s.is_zero()) return s;
  }
}

G2Vector Sampler::direction(long bound) {
  for (;;) {
    G2Vector u;
    for (int i = 0; i < 4; ++i) u[i] = integer(-bound, bound);
    if (!u.is_zero()) return u;
  }
}

std::pair<G2Vector, G2Vector> Sampler::frame(long bound) {
  for (;;) {
    G2Vector u = direction(bound), v = direction(bound);
    if (!parallel(u, v)) return {u, v};
  }
}

XVector Sampler::lift(long bound, long max_den) {
  XVector x;
  for (int i = 0; i < idx::kX; ++i) x[i] = rational(bound, max_den);
  return x;
}

XVector Sampler::gamma_element(int d, long bound) {
  XVector g;
  for (int i = 0; i < 4; ++i) g += Rat(integer(-bound, bound)) * gamma_column(d, i);
  return g;
}

ParamPoint Sampler::param_point(long bound, long max_den) {
  ParamPoint p;
  for (auto& v : p) v = rational(bound, max_den);
  return p;
}

TriangleCell Sampler::triangle(long bound) {
  auto [u, v] = frame(bound);
  return {lift(bound, 3), scale(bound), u, v, nonzero_rational(bound, 3)};
}

ParallelogramCell Sampler::parallelogram(long bound) {
  auto [u, v] = frame(bound);
  return {lift(bound, 3), scale(bound), scale(bound), u, v, nonzero_rational(bound, 3)};
}

Cell Sampler::cell(long bound) {
  if (integer(0, 1) == 0) return triangle(bound);
  return parallelogram(bound);
}

}  // namespace tropweil
