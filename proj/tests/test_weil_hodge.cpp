#include <gtest/gtest.h>

#include "tropweil/hodge.hpp"
#include "tropweil/sampling.hpp"
#include "tropweil/weil.hpp"

using namespace tropweil;

namespace {

ParamPoint point(long a, long b, long c, long e) { return {Rat(a), Rat(b), Rat(c), Rat(e)}; }

}  // namespace

TEST(Polarization, NumericMatrixAtSamplePoint) {
  RatMatrix q = build_polarization(1, point(2, 0, 2, 1));
  RatMatrix expected = RatMatrix::from_rows({{2, 0, 0, 1}, {0, 2, -1, 0}, {0, -1, 2, 0}, {1, 0, 0, 2}});
  EXPECT_EQ(q, expected);
}

TEST(Polarization, SymbolicEntryScalesWithD) {
  auto q = build_polarization(5);
  ParamPoly five_a = ParamPoly::var(0);
  five_a *= Rat(5);
  EXPECT_EQ(q[2][2], five_a);
}

TEST(Polarization, SymmetricAtRandomPoints) {
  Sampler rng(4);
  for (int i = 0; i < 50; ++i) {
    int d = static_cast<int>(rng.integer(1, 5));
    RatMatrix q = build_polarization(d, rng.param_point(5, 3));
    EXPECT_EQ(q, q.transpose());
  }
}

TEST(Positivity, BoundaryAndInterior) {
  EXPECT_TRUE(positivity_check(1, point(2, 0, 2, 1)));
  EXPECT_FALSE(positivity_check(1, point(1, 0, 1, 1)));
  EXPECT_FALSE(positivity_check(2, point(-1, 0, -1, 0)));
}

TEST(Positivity, DElement) {
  // D = d(ac - b^2) - e^2.
  EXPECT_EQ(D_poly(3).evaluate({Rat(2), Rat(1), Rat(3), Rat(2)}), Rat(3 * (6 - 1) - 4));
  EXPECT_EQ(ParamPoly::from_sym2p(D_element(3)), D_poly(3));
}

TEST(GammaEmbedding, FirstColumnAtDOne) {
  XVector expected = tensor(gp({1, 0, 0, 0}), g2({1, 0, 0, 0})) + tensor(gp({0, 1, 0, 0}), g2({0, 1, 0, 0})) +
                     tensor(gp({0, 0, 0, 1}), g2({0, 0, 0, 1}));
  EXPECT_EQ(gamma_column(1, 0), expected);
}

TEST(ComplexMultiplication, MatrixForDTwo) {
  IntMatrix m = cm_action(2).M;
  IntMatrix expected(4, 4);
  expected.set(2, 0, 2);
  expected.set(3, 1, 2);
  expected.set(0, 2, -1);
  expected.set(1, 3, -1);
  EXPECT_EQ(m, expected);
  IntMatrix n = cm_action(2).N;
  EXPECT_EQ(n * n, m * m);
}

TEST(ComplexMultiplication, ScalesClassesByDSquared) {
  for (int d = 1; d <= 3; ++d) {
    auto c = standard_classes(d);
    Rat k = d * d;
    EXPECT_EQ(cm_apply(c.theta, d), k * c.theta) << d;
    EXPECT_EQ(cm_apply(c.w1, d), k * c.w1) << d;
    EXPECT_EQ(cm_apply(c.w2, d), k * c.w2) << d;
  }
}

TEST(Classes, ThetaAndW1Coordinates) {
  for (int d = 1; d <= 4; ++d) {
    auto c = standard_classes(d);
    for (int g = 0; g < 6; ++g)
      for (int e = 0; e < 6; ++e) EXPECT_EQ(c.theta[idx::h22(g, e)], g == e ? 1 : 0);
    EXPECT_EQ(c.w1[idx::h22(5, 0)], Rat(-1, d));  // g34 (x) e12
    EXPECT_EQ(c.w1[idx::h22(0, 0)], 1);
  }
}

TEST(Expansion, IndependentImages) {
  for (int d = 1; d <= 5; ++d) {
    auto c = standard_classes(d);
    auto l = LatticeSpec::from_columns(idx::kT, {expand_class_to_T(c.theta, d).to_vector(),
                                                 expand_class_to_T(c.w1, d).to_vector(),
                                                 expand_class_to_T(c.w2, d).to_vector()});
    EXPECT_EQ(l.rank(), 3u) << d;
  }
}

TEST(Expansion, W2DisplayMatches) {
  for (int d = 1; d <= 4; ++d) {
    auto c = standard_classes(d);
    EXPECT_TRUE(diff_T(displayed_w2_T(d), expand_class_to_T(c.w2, d)).empty()) << d;
  }
}

TEST(Expansion, W1DisplayDiffersOnlyInTheMixedTerm) {
  // The displayed w1 expansion has +2 e12e34 inside the D bracket; the map gives -2.
  auto c = standard_classes(1);
  auto diffs = diff_T(displayed_w1_T(1), expand_class_to_T(c.w1, 1));
  ASSERT_EQ(diffs.size(), 3u);
  for (const auto& x : diffs) {
    EXPECT_EQ(idx::sym2w_pair(x.index % idx::kSym2W), std::make_pair(0, 5));
    EXPECT_EQ(x.displayed, -x.computed);
  }
}

TEST(Expansion, ThetaOracleAndTypoReport) {
  for (int d = 1; d <= 3; ++d) {
    ClassT theta = expand_class_to_T(standard_classes(d).theta, d);
    for (const auto& e : theta_oracle(d)) EXPECT_EQ(t_coefficient(theta, e.sym2w_index), e.expected);
    auto report = theta_typo_report(d);
    EXPECT_FALSE(report.differences.empty());
    EXPECT_TRUE(report.corrected_matches);
    EXPECT_TRUE(diff_T(corrected_theta_T(d), theta).empty());
  }
}

TEST(Hodge, StandardClassesAreHodge) {
  for (int d = 1; d <= 3; ++d) {
    auto c = standard_classes(d);
    EXPECT_TRUE(is_hodge(c.theta, d));
    EXPECT_TRUE(is_hodge(c.w1, d));
    EXPECT_TRUE(is_hodge(c.w2, d));
    EXPECT_FALSE(is_hodge(ClassH22::unit(idx::h22(0, 1)), d));
  }
}

TEST(Hodge, KernelRankIsThree) {
  for (int d = 1; d <= 5; ++d) EXPECT_EQ(hodge_kernel(d).rank(), 3u) << d;
}

TEST(Hodge, NumericKernelsContainSymbolicKernel) {
  Sampler rng(8);
  for (int i = 0; i < 20; ++i) {
    int d = static_cast<int>(rng.integer(1, 3));
    ParamPoint p = rng.param_point(5, 3);
    EXPECT_GE(numeric_kernel_rank(d, p), 3u);
    auto c = standard_classes(d);
    auto img = eigenwave_apply(c.w2, d, p);
    for (const auto& row : img)
      for (const auto& v : row) EXPECT_EQ(v, 0);
  }
}

TEST(Hodge, EigenwaveLinear) {
  auto c = standard_classes(2);
  ClassH22 x = ClassH22::unit(3) + ClassH22::unit(17);
  EigenwaveImage lhs = eigenwave_apply(x + c.theta, 2), rhs = eigenwave_apply(x, 2);
  EXPECT_EQ(lhs, rhs);
}
