#pragma once

#include <cstdint>
#include <random>

#include "tropweil/chains.hpp"
#include "tropweil/multilinear.hpp"
#include "tropweil/weil.hpp"

namespace tropweil {

// Seeded generators for property suites, benchmarks and the CLI.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi);
  // p/q with |p| <= bound, 1 <= q <= max_den; zero allowed.
  Rat rational(long bound, long max_den);
  Rat nonzero_rational(long bound, long max_den);

  GpVector scale(long bound);              // nonzero integral
  G2Vector direction(long bound);          // nonzero integral
  std::pair<G2Vector, G2Vector> frame(long bound);  // non-parallel pair
  XVector lift(long bound, long max_den);  // rational vertex lift
  XVector gamma_element(int d, long bound);  // integer combination of the gamma columns
  ParamPoint param_point(long bound, long max_den);

  TriangleCell triangle(long bound = 3);
  ParallelogramCell parallelogram(long bound = 3);
  Cell cell(long bound = 3);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace tropweil
