#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "tropweil/linalg.hpp"
#include "tropweil/reducer.hpp"

using namespace tropweil;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a.set(i, j, dist(rng));
  return a;
}

bool unimodular(const IntMatrix& u) {
  Int d = determinant(u);
  return d == 1 || d == -1;
}

IntMatrix mat(const std::vector<std::vector<long>>& rows) {
  std::vector<IntVector> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return IntMatrix::from_rows(r);
}

}  // namespace

TEST(Hermite, ReconstructsAndIsUnimodular) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_matrix(rng, 1 + trial % 5, 1 + (trial / 5) % 5, 6);
    auto h = hnf(a);
    EXPECT_EQ(a * h.U, h.H);
    EXPECT_TRUE(unimodular(h.U));
    for (std::size_t j = 0; j < h.pivot_rows.size(); ++j) {
      EXPECT_GT(h.H.get(h.pivot_rows[j], j), 0);
      if (j) EXPECT_GT(h.pivot_rows[j], h.pivot_rows[j - 1]);
      for (std::size_t k = 0; k < j; ++k) {
        EXPECT_GE(h.H.get(h.pivot_rows[j], k), 0);
        EXPECT_LT(h.H.get(h.pivot_rows[j], k), h.H.get(h.pivot_rows[j], j));
      }
    }
  }
}

TEST(Smith, DiagonalDividesAndTransformsMatch) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_matrix(rng, 2 + trial % 4, 2 + (trial / 4) % 4, 9);
    auto s = snf(a);
    EXPECT_EQ(s.left * a * s.right, s.S);
    EXPECT_EQ(s.U * s.S * s.V, a);
    EXPECT_TRUE(unimodular(s.left));
    EXPECT_TRUE(unimodular(s.right));
    for (std::size_t i = 1; i < s.invariant_factors.size(); ++i)
      EXPECT_EQ(s.invariant_factors[i] % s.invariant_factors[i - 1], 0);
  }
}

TEST(Smith, KnownInvariantFactors) {
  auto s = snf(mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  EXPECT_EQ(s.invariant_factors, (IntVector{2, 6, 12}));
}

TEST(Determinant, BareissMatchesCofactor) {
  EXPECT_EQ(determinant(mat({{1, 2}, {3, 4}})), -2);
  EXPECT_EQ(determinant(mat({{2, 0, 1}, {1, 3, 2}, {1, 1, 2}})), 6);
  EXPECT_EQ(determinant(mat({{1, 2}, {2, 4}})), 0);
}

TEST(SolveInteger, FeasibleWithKernel) {
  auto a = mat({{2, 3, 5}, {1, 1, 1}});
  IntVector b{10, 4};
  auto r = solve_integer(a, b);
  ASSERT_TRUE(std::holds_alternative<IntegerSolution>(r));
  const auto& sol = std::get<IntegerSolution>(r);
  EXPECT_EQ(a.apply(sol.x), b);
  ASSERT_EQ(sol.kernel.cols(), 1u);
  auto k = sol.kernel.column(0);
  EXPECT_EQ(a.apply(k), (IntVector{0, 0}));
}

TEST(SolveInteger, DivisibilityWitness) {
  auto a = mat({{2, 4}});
  IntVector b{3};
  auto r = solve_integer(a, b);
  ASSERT_TRUE(std::holds_alternative<InfeasibilityWitness>(r));
  const auto& w = std::get<InfeasibilityWitness>(r);
  EXPECT_EQ(w.kind, InfeasibilityWitness::Kind::Divisibility);
  EXPECT_TRUE(verify_witness(w, a, b));
}

TEST(SolveInteger, RationalWitness) {
  auto a = mat({{1, 1}, {2, 2}});
  IntVector b{1, 3};
  auto r = solve_integer(a, b);
  ASSERT_TRUE(std::holds_alternative<InfeasibilityWitness>(r));
  const auto& w = std::get<InfeasibilityWitness>(r);
  EXPECT_EQ(w.kind, InfeasibilityWitness::Kind::Rational);
  EXPECT_TRUE(verify_witness(w, a, b));
  EXPECT_FALSE(verify_witness(w, a, IntVector{1, 2}));
}

TEST(SolveInteger, RandomSolvableSystems) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> dist(-4, 4);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_matrix(rng, 3, 5, 5);
    IntVector x(5);
    for (auto& v : x) v = dist(rng);
    IntVector b = a.apply(x);
    auto r = solve_integer(a, b);
    ASSERT_TRUE(std::holds_alternative<IntegerSolution>(r));
    EXPECT_EQ(a.apply(std::get<IntegerSolution>(r).x), b);
  }
}

TEST(LeftFunctional, FarkasAlternative) {
  auto a = mat({{1, 0}, {0, 1}, {1, 1}});
  auto y = left_functional(a, IntVector{1, 1, 3});
  ASSERT_TRUE(y);
  auto ya = to_rational(a).apply_left(*y);
  EXPECT_EQ(ya, (RatVector{0, 0}));
  EXPECT_FALSE(left_functional(a, IntVector{1, 1, 2}));
}

TEST(Lattice, MembershipAndSaturation) {
  auto l = LatticeSpec::from_columns(3, {{2, 0, 0}, {0, 2, 2}});
  EXPECT_EQ(l.rank(), 2u);
  EXPECT_TRUE(l.contains({4, 2, 2}));
  EXPECT_FALSE(l.contains({1, 0, 0}));
  auto sat = l.saturation();
  EXPECT_TRUE(sat.contains({1, 0, 0}));
  EXPECT_TRUE(sat.contains({0, 1, 1}));
  EXPECT_FALSE(sat.contains({0, 1, 0}));
  EXPECT_TRUE(l.is_sublattice_of(sat));
  EXPECT_EQ(l.invariant_factors(), (IntVector{2, 2}));
}

TEST(Lattice, IntersectionAndSum) {
  auto a = LatticeSpec::from_columns(2, {{2, 0}, {0, 1}});
  auto b = LatticeSpec::from_columns(2, {{1, 0}, {0, 3}});
  EXPECT_EQ(a.intersection(b), LatticeSpec::from_columns(2, {{2, 0}, {0, 3}}));
  EXPECT_EQ(a.sum(b), LatticeSpec::standard(2));
  EXPECT_EQ(LatticeSpec::zero(2).sum(a), a);
}

TEST(Lattice, RationalGenerators) {
  auto l = LatticeSpec::from_columns(2, {{Rat(1, 2), 0}, {0, Rat(1, 3)}});
  EXPECT_TRUE(l.contains({Rat(3, 2), Rat(2, 3)}));
  EXPECT_FALSE(l.contains({Rat(1, 4), 0}));
  auto c = l.coordinates({Rat(3, 2), Rat(2, 3)});
  ASSERT_TRUE(c);
}

TEST(Lattice, CosetRepresentativesSeparateCosets) {
  auto l = LatticeSpec::from_columns(3, {{2, 1, 0}, {0, 3, 1}});
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> dist(-6, 6);
  for (int trial = 0; trial < 50; ++trial) {
    IntVector x{dist(rng), dist(rng), dist(rng)};
    IntVector shift = x;
    long p = dist(rng), q = dist(rng);
    shift[0] += 2 * p;
    shift[1] += p + 3 * q;
    shift[2] += q;
    EXPECT_EQ(canonical_coset_rep(x, l), canonical_coset_rep(shift, l));
    IntVector off = x;
    off[0] += 1;
    EXPECT_NE(canonical_coset_rep(x, l), canonical_coset_rep(off, l));
  }
}

TEST(MatrixText, RoundTrip) {
  RatMatrix m = RatMatrix::from_rows({{1, Rat(-1, 2)}, {0, Rat(7, 3)}});
  EXPECT_EQ(matrix_from_string(matrix_to_string(m)), m);
  std::istringstream in("2 2\n1 2\n3 x\n");
  EXPECT_ANY_THROW(read_matrix(in));
}

TEST(MatrixStorage, SparseAboveThreshold) {
  IntMatrix big(200, 100);
  EXPECT_TRUE(big.is_sparse());
  big.add(3, 4, 5);
  big.add(3, 4, -5);
  EXPECT_EQ(big.nonzeros(), 0u);
  EXPECT_THROW(big.get(200, 0), std::out_of_range);
}

TEST(Primes, Factorization) {
  EXPECT_EQ(prime_factors(Int(360)), (std::vector<Int>{2, 3, 5}));
  EXPECT_EQ(content(IntVector{6, -9, 12}), 3);
}

TEST(SparseReducer, KernelMatchesRationalRank) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_matrix(rng, 6, 9, 3);
    SparseReducer red(9, 0);
    for (std::size_t i = 0; i < 6; ++i) {
      SparseRow row;
      a.for_row(i, [&](std::size_t c, const Int& v) { row.push_back({static_cast<std::uint32_t>(c), v}); });
      red.add_row(row);
    }
    red.reduce();
    EXPECT_EQ(red.rank(), rank(to_rational(a)));
    auto k = red.kernel();
    EXPECT_EQ(k.size(), 9 - red.rank());
    for (const auto& col : k) EXPECT_EQ(a.apply(col), IntVector(6, 0));
    // The kernel is saturated: it equals the integer kernel from the Hermite form.
    std::vector<RatVector> cols;
    for (const auto& c : k) cols.emplace_back(c.begin(), c.end());
    auto lat = LatticeSpec::from_columns(9, cols);
    EXPECT_EQ(lat, lat.saturation());
  }
}

TEST(SparseReducer, PassengersTrackRightHandSides) {
  // x0 + x1 = p0, x0 + x1 = p1: the null row carries p1 - p0 (up to sign).
  SparseReducer red(2, 2);
  red.add_row({{0, 1}, {1, 1}}, {{0, 1}});
  red.add_row({{0, 1}, {1, 1}}, {{1, 1}});
  red.reduce();
  ASSERT_EQ(red.null_passengers().size(), 1u);
  const auto& p = red.null_passengers()[0];
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0].second, -p[1].second);
  auto x = red.solve(0);
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0] + (*x)[1], 1);
}
