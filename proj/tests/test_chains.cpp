#include <gtest/gtest.h>

#include "tropweil/chains.hpp"
#include "tropweil/sampling.hpp"
#include "tropweil/weil.hpp"

using namespace tropweil;

namespace {

const GpVector kA = gp({1, 0, 0, 0});
const GpVector kB = gp({0, 1, 0, 0});
const G2Vector kE1 = g2({1, 0, 0, 0});
const G2Vector kE2 = g2({0, 1, 0, 0});

Chain make(int d, std::vector<Cell> cells) {
  Chain c;
  c.d = d;
  c.cells = std::move(cells);
  c.record_denominators();
  return c;
}

ClassT monomial(int p, int q, int w1, int w2, const Rat& k) {
  ClassT t;
  t[idx::t(idx::sym2p(p, q), idx::sym2w(w1, w2))] = k;
  return t;
}

}  // namespace

TEST(Cells, UnitTriangleVolume) {
  Chain c = make(1, {TriangleCell{XVector{}, kA, kE1, kE2}});
  EXPECT_EQ(vol_chain(c), monomial(0, 0, 0, 0, 1));
  EXPECT_FALSE(is_balanced(c));
  EXPECT_EQ(alpha_chain(c).size(), 6u);
}

TEST(Cells, ParallelogramVolumeHasTwoSt) {
  Chain c = make(1, {ParallelogramCell{XVector{}, kA, kB, kE1, kE2}});
  EXPECT_EQ(vol_chain(c), monomial(0, 1, 0, 0, 2));
}

TEST(Cells, Validation) {
  EXPECT_THROW(validate_cell(TriangleCell{XVector{}, GpVector{}, kE1, kE2}), DegenerateCell);
  EXPECT_THROW(validate_cell(TriangleCell{XVector{}, kA, kE1, g2({2, 0, 0, 0})}), DegenerateCell);
  EXPECT_THROW(validate_cell(TriangleCell{XVector{}, kA, kE1, kE2, Rat(0)}), DegenerateCell);
  GpVector half = kA;
  half[0] = Rat(1, 2);
  EXPECT_THROW(validate_cell(TriangleCell{XVector{}, half, kE1, kE2}), MalformedCell);
  EXPECT_NO_THROW(validate_cell(ParallelogramCell{XVector{}, kA, kB, kE1, kE2}));
}

TEST(Cells, EmptyChainIsBalanced) {
  Chain c = make(1, {});
  EXPECT_TRUE(is_balanced(c));
  EXPECT_TRUE(vol_chain(c).is_zero());
}

TEST(Cells, DenominatorsRecorded) {
  XVector x;
  x[3] = Rat(1, 3);
  Chain c = make(1, {TriangleCell{x, kA, kE1, kE2, Rat(1, 2)}});
  EXPECT_EQ(c.denominators, (std::set<Int>{2, 3}));
}

TEST(Torus, Gamma1TranslatesAreTheSameVertex) {
  Sampler rng(21);
  for (int d = 1; d <= 3; ++d) {
    Torus torus(d);
    for (int i = 0; i < 20; ++i) {
      XVector x = rng.lift(4, 3);
      EXPECT_EQ(torus.vertex(x), torus.vertex(x + rng.gamma_element(d, 3)));
      XVector off = x;
      off[0] += 1;
      EXPECT_FALSE(torus.vertex(x) == torus.vertex(off));
      EXPECT_EQ(torus.quotient_coordinates(x).size(), 12u);
    }
  }
}

TEST(Alpha, ReversedWeightCancels) {
  Sampler rng(22);
  for (int i = 0; i < 30; ++i) {
    Cell c = rng.cell();
    Cell neg = c;
    std::visit([](auto& k) { k.weight = -k.weight; }, neg);
    Chain chain = make(1, {c, neg});
    EXPECT_TRUE(is_balanced(chain));
    EXPECT_TRUE(vol_chain(chain).is_zero());
  }
}

TEST(Alpha, ScalesWithWeight) {
  Sampler rng(23);
  Torus torus(2);
  for (int i = 0; i < 20; ++i) {
    TriangleCell t = rng.triangle();
    Rat w = t.weight;
    FlagSum one = alpha_cell(torus, TriangleCell{t.x, t.s, t.u, t.v, 1});
    one *= w;
    EXPECT_EQ(alpha_cell(torus, t), one);
  }
}

TEST(Subdivide, Hexagon) {
  XVector x;
  XVector su = tensor(kA, kE1), tu = tensor(kB, kE1), sv = tensor(kA, kE2);
  std::vector<XVector> hex{x, su, su + tu, su + tu + sv, su + sv, sv};
  Chain c = subdivide_polygon(hex, 1);
  Torus torus(1);
  EXPECT_EQ(alpha_chain(torus, c), loop_flags(torus, hex));
  EXPECT_EQ(vol_chain(c), polygon_area_form(hex));
}

TEST(Subdivide, LShapeAndPentagon) {
  Torus torus(1);
  XVector x;
  XVector su = tensor(kA, kE1), tv = tensor(kB, kE2);
  std::vector<XVector> l{x, Rat(2) * su, Rat(2) * su + tv, su + tv, su + Rat(2) * tv, Rat(2) * tv};
  Chain cl = subdivide_polygon(l, 1);
  EXPECT_EQ(alpha_chain(torus, cl), loop_flags(torus, l));
  EXPECT_EQ(vol_chain(cl), polygon_area_form(l));

  std::vector<XVector> p{x, tensor(kA, g2({2, 0, 0, 0})), tensor(kA, g2({3, 1, 0, 0})), tensor(kA, g2({1, 3, 0, 0})),
                         tensor(kA, g2({-1, 1, 0, 0}))};
  Chain cp = subdivide_polygon(p, 1);
  EXPECT_EQ(alpha_chain(torus, cp), loop_flags(torus, p));
  EXPECT_EQ(vol_chain(cp), polygon_area_form(p));
}

TEST(Subdivide, RandomParallelograms) {
  Sampler rng(24);
  Torus torus(1);
  for (int i = 0; i < 20; ++i) {
    ParallelogramCell c = rng.parallelogram(2);
    c.weight = 1;
    auto vs = cell_vertices(c);
    Chain sub = subdivide_polygon(vs, 1);
    EXPECT_EQ(vol_chain(sub), polygon_area_form(vs));
    EXPECT_EQ(alpha_chain(torus, sub), loop_flags(torus, vs));
  }
}

TEST(Subdivide, RejectsNonPlanarLoops) {
  XVector x;
  std::vector<XVector> loop{x, tensor(kA, kE1), tensor(kA, kE1) + tensor(kA, kE2),
                            tensor(kA, kE1) + tensor(kA, kE2) + tensor(kA, g2({0, 0, 1, 0}))};
  EXPECT_THROW(subdivide_polygon(loop, 1), NotSubdividable);
}

TEST(Lift, TranslationKeepsAlphaAndVol) {
  Sampler rng(25);
  for (int d = 1; d <= 3; ++d) {
    Torus torus(d);
    for (int i = 0; i < 15; ++i) {
      Cell c = rng.cell();
      Cell moved = translate_lift(c, rng.gamma_element(d, 4));
      EXPECT_EQ(alpha_cell(torus, c), alpha_cell(torus, moved));
      EXPECT_EQ(vol_cell(c), vol_cell(moved));
    }
  }
}
