#include <gtest/gtest.h>

#include <set>

#include "tropweil/multilinear.hpp"
#include "tropweil/polarize.hpp"
#include "tropweil/sampling.hpp"

using namespace tropweil;

TEST(Indexing, WedgeAndSymBijections) {
  std::set<int> seen;
  for (int k = 0; k < 4; ++k)
    for (int l = k + 1; l < 4; ++l) {
      int i = idx::wedge(k, l);
      EXPECT_EQ(idx::wedge_pair(i), std::make_pair(k, l));
      seen.insert(i);
    }
  EXPECT_EQ(seen.size(), 6u);
  EXPECT_EQ(idx::wedge(2, 1), -1);
  EXPECT_EQ(idx::wedge_name(idx::wedge(0, 3)), "e14");
  for (int i = 0; i < idx::kSym2p; ++i) {
    auto [p, q] = idx::sym2p_pair(i);
    EXPECT_EQ(idx::sym2p(p, q), i);
    EXPECT_EQ(idx::sym2p(q, p), i);
  }
  for (int i = 0; i < idx::kSym2W; ++i) {
    auto [a, b] = idx::sym2w_pair(i);
    EXPECT_EQ(idx::sym2w(b, a), i);
  }
  for (int i = 0; i < idx::kWedge3; ++i) {
    auto t = idx::wedge3_triple(i);
    EXPECT_EQ(idx::wedge3(t[0], t[1], t[2]), i);
  }
  EXPECT_EQ(idx::t_name(idx::t(idx::sym2p(0, 1), idx::sym2w(0, 5))), "ab*e12*e34");
  EXPECT_EQ(idx::h22_name(idx::h22(5, 0)), "g34(x)e12");
}

TEST(Wedge, AntisymmetricAndBilinear) {
  Sampler rng(1);
  for (int i = 0; i < 50; ++i) {
    G2Vector u = rng.direction(4), v = rng.direction(4), w = rng.direction(4);
    EXPECT_EQ(wedge2(u, v), -wedge2(v, u));
    EXPECT_TRUE(wedge2(u, u).is_zero());
    EXPECT_EQ(wedge2(u + w, v), wedge2(u, v) + wedge2(w, v));
  }
  EXPECT_EQ(wedge2(g2({1, 0, 0, 0}), g2({0, 1, 0, 0})), Wedge2::unit(0));
}

TEST(SymSquare, SymmetricPolynomialConvention) {
  Wedge2 e12 = Wedge2::unit(0), e34 = Wedge2::unit(5);
  EXPECT_EQ(sym_square_embed(e12, e34), sym_square_embed(e34, e12));
  // (e12)^2 has coefficient 1, e12*e34 coefficient 2 when squaring e12 + e34.
  Sym2W sq = sym_square_embed(e12 + e34, e12 + e34);
  EXPECT_EQ(sq[idx::sym2w(0, 0)], 1);
  EXPECT_EQ(sq[idx::sym2w(0, 5)], 2);
  Sym2p ab = sym_product(gp({1, 0, 0, 0}), gp({0, 1, 0, 0}));
  EXPECT_EQ(ab[idx::sym2p(0, 1)], 1);
}

TEST(Directions, PrimitiveAndParallel) {
  EXPECT_EQ(primitive_direction(g2({0, -4, 6, 0})), g2({0, 2, -3, 0}));
  EXPECT_TRUE(parallel(g2({1, 2, 0, 0}), g2({-2, -4, 0, 0})));
  EXPECT_FALSE(parallel(g2({1, 2, 0, 0}), g2({2, 1, 0, 0})));
}

TEST(RankOne, FactorsTensors) {
  Sampler rng(2);
  for (int i = 0; i < 30; ++i) {
    GpVector s = rng.scale(3);
    G2Vector u = rng.direction(3);
    auto f = rank_one_factor(tensor(s, u));
    ASSERT_TRUE(f);
    EXPECT_EQ(tensor(f->s, f->u), tensor(s, u));
  }
  XVector two = tensor(gp({1, 0, 0, 0}), g2({1, 0, 0, 0})) + tensor(gp({0, 1, 0, 0}), g2({0, 1, 0, 0}));
  EXPECT_FALSE(rank_one_factor(two));
}

// ---------------------------------------------------------------------------

TEST(Polarize, GradedDimensionCountsMonomials) {
  std::vector<VarSpec> vars{{"s", 4}, {"u", 4}};
  EXPECT_EQ(graded_dimension(vars, {2, 1}), 40u);
  EXPECT_EQ(graded_dimension(vars, {0, 3}), 20u);
}

TEST(Polarize, ExpandsQuadraticIdentity) {
  // unknown(u; u) = 0 with one slot dim 2: polarization gives f(e_k, e_l) + f(e_l, e_k) = 0.
  Schema schema({{"u", 2}}, {2, 2});
  schema.add_unknown(1, {variable_slot(0, 2), variable_slot(0, 2)});
  auto eqs = schema.expand({{2}});
  ASSERT_EQ(eqs.size(), 3u);
  for (const auto& eq : eqs) {
    if (eq.mono == Monomial{0, 1}) {
      EXPECT_EQ(eq.lhs.size(), 2u);
      EXPECT_EQ(eq.lhs.at(1), 1);
      EXPECT_EQ(eq.lhs.at(2), 1);
    } else {
      EXPECT_EQ(eq.lhs.size(), 1u);
    }
  }
  EXPECT_THROW(schema.expand({{1}}), DegreeMismatch);
}

TEST(Polarize, KeptTrivialRowsAndKnownTerms) {
  // unknown(u) - unknown(u) = s*s (x) (w^w): lhs cancels, rhs survives.
  Schema schema({{"s", 4}, {"w", 6}}, {6});
  schema.add_unknown(1, {variable_slot(1, 6)});
  schema.add_unknown(-1, {variable_slot(1, 6)});
  schema.add_known(1, variable_slot(0, 4), variable_slot(0, 4), variable_slot(1, 6), variable_slot(1, 6));
  auto eqs = schema.expand({{0, 1}, {2, 2}});
  std::size_t empty_lhs = 0;
  for (const auto& eq : eqs) empty_lhs += eq.lhs.empty();
  EXPECT_EQ(empty_lhs, eqs.size());
  EXPECT_EQ(eqs.size(), 6u + graded_dimension(schema.vars(), {2, 2}));
}

TEST(Polarize, EvaluationAgreesWithExpansion) {
  Schema schema({{"s", 4}, {"u", 4}, {"v", 4}}, {4, 4, 6});
  schema.add_unknown(1, {variable_slot(0, 4), variable_slot(1, 4), wedge_slot(variable_slot(1, 4), variable_slot(2, 4))});
  schema.add_unknown(2, {variable_slot(0, 4), variable_slot(2, 4), wedge_slot(variable_slot(1, 4), variable_slot(2, 4))});
  schema.add_known(3, variable_slot(0, 4), variable_slot(0, 4), wedge_slot(variable_slot(1, 4), variable_slot(2, 4)),
                   wedge_slot(variable_slot(1, 4), variable_slot(2, 4)));
  auto eqs = schema.expand({{1, 2, 1}, {1, 1, 2}, {2, 2, 2}});
  Sampler rng(9);
  std::map<std::uint32_t, ClassT> unknowns;
  for (std::uint32_t i = 0; i < schema.unknown_count(); i += 7) unknowns[i][rng.integer(0, idx::kT - 1)] = rng.integer(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<RatVector> point;
    for (int v = 0; v < 3; ++v) {
      RatVector p(4);
      for (auto& x : p) x = rng.rational(4, 3);
      point.push_back(p);
    }
    EXPECT_EQ(schema.evaluate(point, unknowns), evaluate_equations(eqs, point, unknowns));
  }
}
