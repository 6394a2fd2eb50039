#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tropweil/chains.hpp"
#include "tropweil/linalg.hpp"
#include "tropweil/multilinear.hpp"
#include "tropweil/polarize.hpp"
#include "tropweil/reducer.hpp"

namespace tropweil {

// Unknown layout of one T-coordinate block: lambda1 first, then lambda0.
inline constexpr std::size_t kLambda1Count = 16 * 4 * 4 * 6;
inline constexpr std::size_t kLambda0Count = 4 * 4 * 6;
inline constexpr std::size_t kLambdaCount = kLambda1Count + kLambda0Count;
std::uint32_t lambda1_index(int x, int s, int u, int w);
std::uint32_t lambda0_index(int s, int u, int w);
std::string lambda_name(std::uint32_t i);  // "l1[a*e2;b;e1;e12]" or "l0[a;e1;e12]"

// lambda_{x,s,u}(w) = lambda0(s,u,w) + lambda1(x;s,u,w), each value in T.
struct LambdaUnknowns {
  int d = 1;
  std::map<std::uint32_t, ClassT> values;  // zero entries omitted
  ClassT lambda(const XVector& x, const GpVector& s, const G2Vector& u, const Wedge2& w) const;
};

class MalformedLambdaFile : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
// "index tau value" triples after a "lambda d" header line.
void write_lambda(std::ostream& out, const LambdaUnknowns& l);
LambdaUnknowns read_lambda(std::istream& in);

// Polarization schemas. Variables: s, t (Gamma_p), u, v (Gamma2), w (wedge^2).
std::vector<VarSpec> ansatz_vars();
Schema c1_schema();
Schema c2_schema(int d, int generator);
Schema e1_schema();
Schema e2_schema();
std::vector<std::vector<int>> c1_degrees();
std::vector<std::vector<int>> c2_degrees();
std::vector<std::vector<int>> e1_degrees();
std::vector<std::vector<int>> e2_degrees();

// ---------------------------------------------------------------------------
// Formal reduction of the two commutativity equations.

struct IdentityCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};
struct ReductionLog {
  std::vector<IdentityCheck> checks;
  std::vector<std::string> lines;
  bool ok() const;
};
ReductionLog derive_reduced_equations();

// ---------------------------------------------------------------------------
// The assembled system. The unknowns are lambda (kLambdaCount per T-coordinate)
// and the full matrix is I_T (x) block, so only the block is stored.

enum class RowKind { C1, C2, E1, E2 };
std::string to_string(RowKind k);

struct RowInfo {
  RowKind kind;
  int generator = -1;  // C2 only
  std::string monomial;
};

struct KindCount {
  std::size_t rows = 0;
  std::size_t empty_lhs = 0;
  std::size_t graded_dimension = 0;
};

struct EquationSystem {
  int d = 1;
  bool slack_descent = false;
  std::vector<SparseRow> block;       // rows over kLambdaCount
  std::vector<SparseRow> rhs;         // rows over the 210 T-coordinates
  std::vector<RowInfo> info;
  std::vector<char> residual;         // row takes a W-residual
  std::array<ClassT, 3> w;            // theta_T, w1_T, w2_T: the injection columns
  std::map<RowKind, KindCount> counts;

  std::size_t rows() const { return block.size(); }
  IntMatrix block_matrix() const;
  IntVector rhs_column(int tau) const;
  IntVector rhs_times(const IntVector& g) const;  // R * g
};

EquationSystem assemble_system(int d, bool slack_descent = false);

// Sublattice of W given by generators in (theta, w1, w2)-coordinates.
struct SublatticeSpec {
  std::string name;
  RatMatrix gens;  // 3 x k
  static SublatticeSpec whole();
  static SublatticeSpec zero();
  static SublatticeSpec span(const std::string& name, const std::vector<std::array<long, 3>>& cols);
  // Named: "w", "0", "theta", "theta,w1", "w1,w2", ...
  static SublatticeSpec named(const std::string& name);
  std::vector<RatVector> in_T(const std::array<ClassT, 3>& w) const;
  LatticeSpec in_W() const;
  bool is_proper() const;
};
std::vector<SublatticeSpec> index_two_sublattices();  // the 7 index-2 sublattices of W

// Y = g (x) y on (T-coordinate, row): y.block = 0, g annihilates L, y.(R g) = value != 0.
struct RationalCertificate {
  RatVector g;  // 210
  RatVector y;  // rows
  Rat value;
};
// A transformed row whose right-hand side is not in L + delta Z^210.
struct RowObstruction {
  Int delta;
  IntVector rhs;  // 210
  std::string reason;
};

struct ResidualSolution {
  LambdaUnknowns lambda;
  std::map<std::size_t, std::array<Int, 3>> residuals;  // row -> W-coordinates (nonzero only)
  LatticeSpec residual_lattice;                          // in W-coordinates
};

using ModResult = std::variant<ResidualSolution, RationalCertificate, RowObstruction>;

// Independent checks by substitution into a freshly given system.
bool verify_certificate(const RationalCertificate& c, const EquationSystem& sys, const SublatticeSpec& l);
bool verify_solution(const ResidualSolution& s, const EquationSystem& sys, const SublatticeSpec& l);

class UnexpectedlyFeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScanReport {
  // (i) functionals f on W (rows, W-coordinates) vanishing on the rational obstruction.
  std::size_t obstruction_dimension = 0;
  bool obstruction_inside_W = false;
  std::vector<RatVector> rational_functionals;
  // (ii) bad primes and, per prime, the functionals mod p (normalized) that admit a solution.
  std::vector<Int> bad_primes;
  std::map<std::string, std::vector<std::array<long, 3>>> prime_solutions;  // key: prime
  std::size_t functionals_checked = 0;
  std::optional<RationalCertificate> certificate;  // covers all of W when present
  bool empty() const;
};

// The two-stage reduction of a system: integer kernel K of the exact rows, then
// the residual rows times K, reduced with the 210 right-hand sides as passengers.
class ObstructionSolver {
 public:
  // tau_subset: restrict passengers to these T-coordinates (blockwise solving).
  explicit ObstructionSolver(const EquationSystem& sys, std::vector<int> tau_subset = {});
  const EquationSystem& system() const { return sys_; }

  std::size_t block_rank() const;  // rank of the block over Q
  std::size_t kernel_dimension() const { return kernel_.size(); }
  // Integer kernel of the rows without residual (columns of length kLambdaCount).
  const std::vector<IntVector>& kernel() const { return kernel_; }
  // Nonzero right-hand sides of transformed null rows (the rational obstruction spans these).
  const std::vector<IntVector>& forced() const { return forced_; }
  // Core factors > 1 with their transformed right-hand sides.
  const std::vector<std::pair<Int, IntVector>>& divisors() const { return divisors_; }
  // Every transformed null / core row in elimination order. The pivot sequence
  // does not depend on the passengers, so these align across T-subsets.
  const std::vector<IntVector>& null_rows() const { return null_rows_; }
  const std::vector<std::pair<Int, IntVector>>& core_rows() const { return core_rows_; }
  std::size_t obstruction_dimension() const;

  ModResult solve_mod(const SublatticeSpec& l) const;
  RationalCertificate certificate_against(const IntVector& p, const SublatticeSpec& l) const;
  ScanReport scan() const;

 private:
  bool row_condition(const IntVector& p, const Int& delta, const std::vector<RatVector>& gens,
                     std::vector<Int>* coords) const;

  const EquationSystem& sys_;
  std::vector<int> taus_;
  std::vector<IntVector> kernel_;  // columns of K, length kLambdaCount
  std::unique_ptr<SparseReducer> stage_b_;
  std::vector<IntVector> null_rows_, forced_;
  std::vector<std::pair<Int, IntVector>> core_rows_, divisors_;
  std::size_t exact_rank_ = 0;
};

RationalCertificate solve_exact_infeasibility(const EquationSystem& sys);
ModResult solve_mod_W(const EquationSystem& sys);
ModResult solvable_mod_sublattice(const EquationSystem& sys, const SublatticeSpec& l);
ScanReport proper_sublattice_scan(const EquationSystem& sys);

// The system with every residual row's right-hand side replaced by theta_T.
EquationSystem doctored_system(const EquationSystem& sys);

// Blockwise (10 groups of 21 T-coordinates) against one shot.
struct BlockComparison {
  std::size_t one_shot_obstruction = 0;
  std::size_t blockwise_obstruction = 0;  // after merging the aligned rows
  std::size_t rows_compared = 0;
  bool identical = false;
};
BlockComparison compare_blockwise(const EquationSystem& sys);

// Phi.alpha(cell) - vol(cell) for the Phi determined by lambda (weights included).
ClassT cell_defect(const LambdaUnknowns& l, const Cell& cell);
struct ChainVerdict {
  ClassT defect;
  bool in_lattice = false;
};
std::vector<ChainVerdict> verify_candidate_phi(const LambdaUnknowns& l, const SublatticeSpec& spec,
                                               const std::vector<Chain>& chains);

}  // namespace tropweil
