#include <gtest/gtest.h>

#include <memory>
#include <sstream>

#include "tropweil/obstruction.hpp"
#include "tropweil/sampling.hpp"
#include "tropweil/weil.hpp"

using namespace tropweil;

namespace {

class SystemD1 : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    sys_ = std::make_unique<EquationSystem>(assemble_system(1));
    solver_ = std::make_unique<ObstructionSolver>(*sys_);
  }
  static void TearDownTestSuite() {
    solver_.reset();
    sys_.reset();
  }
  static std::unique_ptr<EquationSystem> sys_;
  static std::unique_ptr<ObstructionSolver> solver_;
};
std::unique_ptr<EquationSystem> SystemD1::sys_;
std::unique_ptr<ObstructionSolver> SystemD1::solver_;

std::vector<RatVector> point(Sampler& rng, bool t_equals_s) {
  std::vector<RatVector> p;
  for (int v = 0; v < 4; ++v) {
    RatVector x(4);
    for (auto& c : x) c = rng.integer(-3, 3);
    p.push_back(x);
  }
  if (t_equals_s) p[1] = p[0];
  p.push_back(RatVector(6, 0));
  return p;
}

// A random element of the kernel of the exact rows, tensored with random T-values.
LambdaUnknowns random_kernel_lambda(const ObstructionSolver& solver, Sampler& rng, int d) {
  LambdaUnknowns l;
  l.d = d;
  for (const auto& col : solver.kernel()) {
    if (rng.integer(0, 3) != 0) continue;
    ClassT value;
    value[rng.integer(0, idx::kT - 1)] = rng.integer(-2, 2);
    for (std::uint32_t i = 0; i < kLambda1Count; ++i)
      if (sgn(col[i]) != 0) l.values[i] += Rat(col[i]) * value;
  }
  return l;
}

std::map<std::uint32_t, ClassT> lambda1_only(const LambdaUnknowns& l) {
  std::map<std::uint32_t, ClassT> out;
  for (const auto& [i, v] : l.values)
    if (i < kLambda1Count) out[i] = v;
  return out;
}

}  // namespace

TEST(LambdaIndex, Layout) {
  EXPECT_EQ(lambda1_index(0, 0, 0, 0), 0u);
  EXPECT_EQ(lambda1_index(15, 3, 3, 5), kLambda1Count - 1);
  EXPECT_EQ(lambda0_index(0, 0, 0), kLambda1Count);
  EXPECT_EQ(lambda0_index(3, 3, 5), kLambdaCount - 1);
}

TEST(LambdaFile, RoundTripAndErrors) {
  LambdaUnknowns l;
  l.d = 2;
  l.values[lambda1_index(3, 1, 2, 4)][17] = Rat(-3, 2);
  l.values[lambda0_index(1, 1, 1)][0] = 5;
  std::stringstream io;
  write_lambda(io, l);
  LambdaUnknowns back = read_lambda(io);
  EXPECT_EQ(back.d, 2);
  EXPECT_EQ(back.values.size(), 2u);
  EXPECT_EQ(back.values[lambda1_index(3, 1, 2, 4)][17], Rat(-3, 2));

  std::istringstream bad_header("lamda 1 0\n");
  EXPECT_THROW(read_lambda(bad_header), MalformedLambdaFile);
  std::istringstream truncated("lambda 1 2\n0 0 1\n");
  EXPECT_THROW(read_lambda(truncated), MalformedLambdaFile);
  std::istringstream range("lambda 1 1\n99999 0 1\n");
  EXPECT_THROW(read_lambda(range), MalformedLambdaFile);
  std::istringstream value("lambda 1 1\n0 0 x\n");
  EXPECT_THROW(read_lambda(value), MalformedLambdaFile);
}

TEST(Reduction, AllIdentitiesHold) {
  auto log = derive_reduced_equations();
  EXPECT_TRUE(log.ok());
  EXPECT_GE(log.checks.size(), 5u);
  for (const auto& c : log.checks) EXPECT_TRUE(c.ok) << c.name << ": " << c.detail;
  EXPECT_FALSE(log.lines.empty());
}

TEST(Schemas, E2RightHandSideInstance) {
  // At (s, t, u, v) = (a, b, e1, e2) the known term is 2ab (x) e12^2.
  std::vector<RatVector> p{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, RatVector(6, 0)};
  ClassT expected;
  expected[idx::t(idx::sym2p(0, 1), idx::sym2w(0, 0))] = 2;
  EXPECT_EQ(e2_schema().evaluate(p, {}), -expected);
}

TEST(Schemas, E1RightHandSideInstance) {
  std::vector<RatVector> p{{0, 0, 1, 0}, RatVector(4, 0), {1, 0, 0, 0}, {0, 0, 1, 0}, RatVector(6, 0)};
  ClassT expected;
  expected[idx::t(idx::sym2p(2, 2), idx::sym2w(1, 1))] = 1;  // c^2 (x) e13^2
  EXPECT_EQ(e1_schema().evaluate(p, {}), -expected);
}

TEST_F(SystemD1, RowCountsMatchGradedDimensions) {
  const auto& c = sys_->counts;
  EXPECT_EQ(c.at(RowKind::C1).rows, 960u);
  EXPECT_EQ(c.at(RowKind::C1).graded_dimension, 960u);
  EXPECT_EQ(c.at(RowKind::C2).rows, 384u);
  EXPECT_EQ(c.at(RowKind::C2).graded_dimension, 384u);
  EXPECT_EQ(c.at(RowKind::E1).rows, 1720u);
  EXPECT_EQ(c.at(RowKind::E1).graded_dimension, 1800u);
  EXPECT_EQ(c.at(RowKind::E2).rows, 1536u);
  EXPECT_EQ(c.at(RowKind::E2).graded_dimension, 1600u);
  EXPECT_EQ(c.at(RowKind::E2).empty_lhs, 96u);
  EXPECT_EQ(sys_->rows(), 4600u);
  for (const auto& [kind, k] : c) EXPECT_LE(k.rows, k.graded_dimension) << to_string(kind);
}

TEST_F(SystemD1, LambdaZeroNeverAppears) {
  for (const auto& row : sys_->block)
    for (const auto& [col, v] : row) EXPECT_LT(col, kLambda1Count);
}

TEST_F(SystemD1, ResidualsOnlyOnCommutativityRows) {
  for (std::size_t r = 0; r < sys_->rows(); ++r) {
    bool exact = sys_->info[r].kind == RowKind::C1 || sys_->info[r].kind == RowKind::C2;
    EXPECT_EQ(sys_->residual[r] != 0, !exact) << r;
  }
}

TEST_F(SystemD1, InjectionColumnsAreTheExpandedClasses) {
  auto c = standard_classes(1);
  EXPECT_EQ(sys_->w[0], expand_class_to_T(c.theta, 1));
  EXPECT_EQ(sys_->w[1], expand_class_to_T(c.w1, 1));
  EXPECT_EQ(sys_->w[2], expand_class_to_T(c.w2, 1));
}

TEST_F(SystemD1, SolverRanks) {
  EXPECT_EQ(solver_->block_rank(), 1491u);
  EXPECT_EQ(solver_->kernel_dimension(), 312u);
  EXPECT_EQ(solver_->obstruction_dimension(), 29u);
}

TEST_F(SystemD1, DescentKillsLambdaOnGammaColumns) {
  Sampler rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    LambdaUnknowns l = random_kernel_lambda(*solver_, rng, 1);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 5; ++k) {
        GpVector s = rng.scale(3);
        G2Vector u = rng.direction(3);
        Wedge2 w = wedge2(rng.direction(2), rng.direction(2));
        EXPECT_TRUE((l.lambda(gamma_column(1, i), s, u, w) - l.lambda(XVector{}, s, u, w)).is_zero());
      }
  }
}

TEST_F(SystemD1, DirectionalInvarianceOnKernel) {
  // lambda1(t (x) u; s; u) = 0 for every lambda in the kernel.
  Sampler rng(32);
  LambdaUnknowns l = random_kernel_lambda(*solver_, rng, 1);
  for (int k = 0; k < 20; ++k) {
    GpVector s = rng.scale(3), t = rng.scale(3);
    G2Vector u = rng.direction(3);
    Wedge2 w = wedge2(rng.direction(2), rng.direction(2));
    EXPECT_TRUE((l.lambda(tensor(t, u), s, u, w) - l.lambda(XVector{}, s, u, w)).is_zero());
  }
}

TEST_F(SystemD1, ParallelogramEquationIsTwoTriangleEquations) {
  // With t = s the parallelogram equation is the sum of the two triangle
  // equations of its diagonal split (which coincide), modulo the exact rows.
  Sampler rng(33);
  auto e1 = e1_schema();
  auto e2 = e2_schema();
  for (int trial = 0; trial < 5; ++trial) {
    auto unknowns = lambda1_only(random_kernel_lambda(*solver_, rng, 1));
    for (int k = 0; k < 4; ++k) {
      auto p = point(rng, true);
      EXPECT_EQ(e2.evaluate(p, unknowns), Rat(2) * e1.evaluate(p, unknowns));
    }
  }
}

TEST_F(SystemD1, ExactCertificateVerifiesAndTamperingIsCaught) {
  auto cert = solve_exact_infeasibility(*sys_);
  EXPECT_TRUE(verify_certificate(cert, *sys_, SublatticeSpec::zero()));
  auto bad = cert;
  for (auto& y : bad.y)
    if (sgn(y) != 0) {
      y += 1;
      break;
    }
  EXPECT_FALSE(verify_certificate(bad, *sys_, SublatticeSpec::zero()));
  auto wrong_value = cert;
  wrong_value.value += 1;
  EXPECT_FALSE(verify_certificate(wrong_value, *sys_, SublatticeSpec::zero()));
}

TEST_F(SystemD1, ObstructedModuloW) {
  auto r = solver_->solve_mod(SublatticeSpec::whole());
  ASSERT_TRUE(std::holds_alternative<RationalCertificate>(r));
  EXPECT_TRUE(verify_certificate(std::get<RationalCertificate>(r), *sys_, SublatticeSpec::whole()));
}

TEST_F(SystemD1, ScanIsEmptyWithCoveringCertificate) {
  auto scan = solver_->scan();
  EXPECT_TRUE(scan.empty());
  EXPECT_FALSE(scan.obstruction_inside_W);
  ASSERT_TRUE(scan.certificate);
  EXPECT_TRUE(verify_certificate(*scan.certificate, *sys_, SublatticeSpec::whole()));
  EXPECT_EQ(scan.bad_primes, (std::vector<Int>{2}));
}

TEST_F(SystemD1, BlockwiseMatchesOneShot) {
  auto b = compare_blockwise(*sys_);
  EXPECT_TRUE(b.identical);
  EXPECT_EQ(b.one_shot_obstruction, b.blockwise_obstruction);
  EXPECT_EQ(b.one_shot_obstruction, 29u);
  EXPECT_GT(b.rows_compared, 0u);
}

TEST_F(SystemD1, PlantedSolutionModuloTheta) {
  EquationSystem doc = doctored_system(*sys_);
  ObstructionSolver solver(doc);
  auto r = solver.solve_mod(SublatticeSpec::named("theta"));
  ASSERT_TRUE(std::holds_alternative<ResidualSolution>(r));
  const auto& sol = std::get<ResidualSolution>(r);
  EXPECT_TRUE(verify_solution(sol, doc, SublatticeSpec::named("theta")));
  EXPECT_FALSE(verify_solution(sol, doc, SublatticeSpec::named("w1,w2")));
  for (const auto& [row, c] : sol.residuals) {
    EXPECT_EQ(c[1], 0);
    EXPECT_EQ(c[2], 0);
  }

  // Monotonicity along theta < (theta, w1) < W.
  for (const char* name : {"theta,w1", "w"}) {
    auto l = SublatticeSpec::named(name);
    auto bigger = solver.solve_mod(l);
    ASSERT_TRUE(std::holds_alternative<ResidualSolution>(bigger)) << name;
    EXPECT_TRUE(verify_solution(std::get<ResidualSolution>(bigger), doc, l));
  }
  for (const char* name : {"0", "w1,w2"}) {
    auto l = SublatticeSpec::named(name);
    auto smaller = solver.solve_mod(l);
    ASSERT_TRUE(std::holds_alternative<RationalCertificate>(smaller)) << name;
    EXPECT_TRUE(verify_certificate(std::get<RationalCertificate>(smaller), doc, l));
  }
}

TEST_F(SystemD1, PlantedScanFindsTheta) {
  EquationSystem doc = doctored_system(*sys_);
  auto scan = proper_sublattice_scan(doc);
  EXPECT_FALSE(scan.empty());
  EXPECT_TRUE(scan.obstruction_inside_W);
  EXPECT_FALSE(scan.certificate);
  // Every functional found vanishes on theta = (1, 0, 0).
  for (const auto& f : scan.rational_functionals) EXPECT_EQ(f[0], 0);
  for (const auto& [p, fs] : scan.prime_solutions)
    for (const auto& f : fs) EXPECT_EQ(f[0] % std::stol(p), 0);
}

TEST_F(SystemD1, CandidatePhiOnChains) {
  Sampler rng(34);
  LambdaUnknowns zero;
  zero.d = 1;
  // Empty chain passes trivially.
  auto empty = verify_candidate_phi(zero, SublatticeSpec::named("theta"), {Chain{}});
  ASSERT_EQ(empty.size(), 1u);
  EXPECT_TRUE(empty[0].in_lattice);
  // With lambda = 0 the defect of a cell is -vol.
  for (int i = 0; i < 10; ++i) {
    Cell c = rng.cell();
    EXPECT_EQ(cell_defect(zero, c), -vol_cell(c));
  }
}

TEST(Sublattices, NamedAndIndexTwo) {
  EXPECT_FALSE(SublatticeSpec::whole().is_proper());
  EXPECT_TRUE(SublatticeSpec::zero().is_proper());
  EXPECT_TRUE(SublatticeSpec::named("theta,w1").is_proper());
  EXPECT_FALSE(SublatticeSpec::named("theta,w1,w2").is_proper());
  EXPECT_THROW(SublatticeSpec::named("w3"), std::invalid_argument);
  auto subs = index_two_sublattices();
  ASSERT_EQ(subs.size(), 7u);
  for (const auto& s : subs) {
    auto f = s.in_W().invariant_factors();
    Int index = 1;
    for (const auto& x : f) index *= x;
    EXPECT_EQ(f.size(), 3u);
    EXPECT_EQ(index, 2) << s.name;
  }
}

TEST(SlackDescent, StillObstructedModuloW) {
  auto sys = assemble_system(1, true);
  for (std::size_t r = 0; r < sys.rows(); ++r)
    if (sys.info[r].kind == RowKind::C2) EXPECT_TRUE(sys.residual[r]);
  ObstructionSolver solver(sys);
  auto r = solver.solve_mod(SublatticeSpec::whole());
  ASSERT_TRUE(std::holds_alternative<RationalCertificate>(r));
  EXPECT_TRUE(verify_certificate(std::get<RationalCertificate>(r), sys, SublatticeSpec::whole()));
}

TEST(SecondParameter, ExactlyInfeasibleAtDTwo) {
  auto sys = assemble_system(2);
  auto cert = solve_exact_infeasibility(sys);
  EXPECT_TRUE(verify_certificate(cert, sys, SublatticeSpec::zero()));
  EXPECT_EQ(ObstructionSolver(sys).obstruction_dimension(), 29u);
}
