#include <algorithm>
#include <numeric>
#include <set>

#include "tropweil/obstruction.hpp"
#include "tropweil/weil.hpp"

namespace tropweil {
namespace {

IntVector densify(const SparseRow& row, const std::vector<int>& taus) {
  IntVector out(idx::kT, 0);
  for (const auto& [j, v] : row) out[taus[j]] = v;
  return out;
}

RatVector to_rat(const IntVector& v) { return RatVector(v.begin(), v.end()); }

Rat dot(const RatVector& a, const RatVector& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

std::size_t rank_of(const std::vector<RatVector>& vs, std::size_t n) {
  if (vs.empty()) return 0;
  RatMatrix m(vs.size(), n);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(vs[i][j]) != 0) m.set(i, j, vs[i][j]);
  return rank(m);
}

// A maximal independent subset, in order.
std::vector<RatVector> independent(const std::vector<RatVector>& vs, std::size_t n) {
  std::vector<RatVector> out;
  for (const auto& v : vs) {
    out.push_back(v);
    if (rank_of(out, n) < out.size()) out.pop_back();
  }
  return out;
}

// Coordinates of v in the (independent) vectors w, if v lies in their span.
std::optional<RatVector> span_coordinates(const std::vector<RatVector>& w, const RatVector& v) {
  const std::size_t k = w.size(), n = v.size();
  if (k == 0) {
    for (const auto& x : v)
      if (sgn(x) != 0) return std::nullopt;
    return RatVector{};
  }
  RatMatrix a(n, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(w[j][i]) != 0) a.set(i, j, w[j][i]);
  auto r = solve_rational(a, v);
  if (!std::holds_alternative<RationalSolution>(r)) return std::nullopt;
  return std::get<RationalSolution>(r).x;
}

std::array<RatVector, 3> w_vectors(const std::array<ClassT, 3>& w) {
  return {w[0].to_vector(), w[1].to_vector(), w[2].to_vector()};
}

std::optional<std::array<Rat, 3>> w_coordinates(const std::array<ClassT, 3>& w, const ClassT& v) {
  auto wv = w_vectors(w);
  auto c = span_coordinates({wv[0], wv[1], wv[2]}, v.to_vector());
  if (!c) return std::nullopt;
  return std::array<Rat, 3>{(*c)[0], (*c)[1], (*c)[2]};
}

// Row r of the block applied to lambda, minus the right-hand side.
ClassT row_defect(const EquationSystem& sys, std::size_t r, const LambdaUnknowns& l) {
  ClassT v;
  for (const auto& [c, a] : sys.block[r]) {
    auto it = l.values.find(c);
    if (it != l.values.end()) v += Rat(a) * it->second;
  }
  for (const auto& [t, a] : sys.rhs[r]) v[t] -= a;
  return v;
}

bool in_sublattice(const std::array<ClassT, 3>& w, const SublatticeSpec& l, const ClassT& v,
                   std::array<Int, 3>* coords) {
  auto c = w_coordinates(w, v);
  if (!c) return false;
  RatVector cv{(*c)[0], (*c)[1], (*c)[2]};
  if (!l.in_W().contains(cv)) return false;
  if (coords)
    for (int k = 0; k < 3; ++k) (*coords)[k] = (*c)[k].get_num();
  return true;
}

std::vector<Int> unique_primes(const std::vector<Int>& values) {
  std::set<Int> ps;
  for (const auto& v : values) {
    Int a = abs(v);
    if (a > 1)
      for (const auto& p : prime_factors(a)) ps.insert(p);
  }
  return {ps.begin(), ps.end()};
}

// Sublattice {c in W : f.c = 0 mod p} for f normalized with first nonzero entry 1.
SublatticeSpec mod_p_sublattice(const std::array<long, 3>& f, long p) {
  int lead = f[0] != 0 ? 0 : (f[1] != 0 ? 1 : 2);
  std::vector<std::array<long, 3>> cols{{p, 0, 0}, {0, p, 0}, {0, 0, p}};
  for (int j = 0; j < 3; ++j) {
    if (j == lead) continue;
    std::array<long, 3> c{0, 0, 0};
    c[j] = 1;
    c[lead] = ((-f[j]) % p + p) % p;
    cols.push_back(c);
  }
  return SublatticeSpec::span("ker(" + std::to_string(f[0]) + "," + std::to_string(f[1]) + "," +
                                  std::to_string(f[2]) + " mod " + std::to_string(p) + ")",
                              cols);
}

std::vector<std::array<long, 3>> projective_points(long p) {
  std::vector<std::array<long, 3>> out;
  for (long b = 0; b < p; ++b)
    for (long c = 0; c < p; ++c) out.push_back({1, b, c});
  for (long c = 0; c < p; ++c) out.push_back({0, 1, c});
  out.push_back({0, 0, 1});
  return out;
}

}  // namespace

ObstructionSolver::ObstructionSolver(const EquationSystem& sys, std::vector<int> tau_subset)
    : sys_(sys), taus_(std::move(tau_subset)) {
  if (taus_.empty()) {
    taus_.resize(idx::kT);
    std::iota(taus_.begin(), taus_.end(), 0);
  }
  std::vector<int> pos(idx::kT, -1);
  for (std::size_t j = 0; j < taus_.size(); ++j) pos[taus_[j]] = static_cast<int>(j);

  // Stage A: integer kernel of the exact rows.
  SparseReducer exact(kLambdaCount, 0);
  for (std::size_t r = 0; r < sys.rows(); ++r)
    if (!sys.residual[r]) exact.add_row(sys.block[r]);
  exact.reduce();
  exact_rank_ = exact.rank();
  kernel_ = exact.kernel();

  std::vector<std::vector<std::pair<std::uint32_t, Int>>> k_rows(kLambdaCount);
  for (std::size_t j = 0; j < kernel_.size(); ++j)
    for (std::size_t c = 0; c < kLambdaCount; ++c)
      if (kernel_[j][c] != 0) k_rows[c].emplace_back(static_cast<std::uint32_t>(j), kernel_[j][c]);

  // Stage B: residual rows restricted to the kernel, right-hand sides as passengers.
  stage_b_ = std::make_unique<SparseReducer>(kernel_.size(), taus_.size());
  for (std::size_t r = 0; r < sys.rows(); ++r) {
    if (!sys.residual[r]) continue;
    std::map<std::uint32_t, Int> acc;
    for (const auto& [c, a] : sys.block[r])
      for (const auto& [j, k] : k_rows[c]) acc[j] += a * k;
    SparseRow row, pass;
    for (auto& [j, v] : acc)
      if (v != 0) row.emplace_back(j, std::move(v));
    for (const auto& [t, v] : sys.rhs[r])
      if (pos[t] >= 0) pass.emplace_back(static_cast<std::uint32_t>(pos[t]), v);
    stage_b_->add_row(std::move(row), std::move(pass));
  }
  stage_b_->reduce();

  for (const auto& p : stage_b_->null_passengers()) {
    null_rows_.push_back(densify(p, taus_));
    if (!p.empty()) forced_.push_back(null_rows_.back());
  }
  const auto& f = stage_b_->core_factors();
  for (std::size_t i = 0; i < f.size(); ++i) {
    core_rows_.emplace_back(f[i], densify(stage_b_->core_passengers()[i], taus_));
    if (f[i] > 1) divisors_.push_back(core_rows_.back());
  }
}

std::size_t ObstructionSolver::block_rank() const { return exact_rank_ + stage_b_->rank(); }

std::size_t ObstructionSolver::obstruction_dimension() const {
  std::vector<RatVector> v;
  for (const auto& p : forced_) v.push_back(to_rat(p));
  return rank_of(independent(v, idx::kT), idx::kT);
}

bool ObstructionSolver::row_condition(const IntVector& p, const Int& delta, const std::vector<RatVector>& gens,
                                      std::vector<Int>* coords) const {
  // p in Z<gens> + delta Z^210, after scaling by the common denominator.
  // Coordinates outside the support of the generators only need p = 0 mod delta.
  Int den = 1;
  for (const auto& g : gens) den = lcm(den, lcm_of_denominators(g));
  const std::size_t k = gens.size();
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < idx::kT; ++i) {
    bool used = std::any_of(gens.begin(), gens.end(), [&](const RatVector& g) { return sgn(g[i]) != 0; });
    if (used) {
      support.push_back(i);
    } else if (delta == 0 ? p[i] != 0 : !mpz_divisible_p(p[i].get_mpz_t(), delta.get_mpz_t())) {
      return false;
    }
  }
  const std::size_t n = support.size();
  const std::size_t extra = delta > 0 ? n : 0;
  if (k == 0) {
    if (coords) coords->clear();
    return true;
  }
  IntMatrix a(n, k + extra);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(gens[j][support[i]]) != 0) a.set(i, j, Rat(gens[j][support[i]] * den).get_num());
  for (std::size_t i = 0; i < extra; ++i) a.set(i, k + i, den * delta);
  IntVector b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = p[support[i]] * den;
  auto r = solve_integer(a, b);
  if (!std::holds_alternative<IntegerSolution>(r)) return false;
  if (coords) {
    const auto& x = std::get<IntegerSolution>(r).x;
    coords->assign(x.begin(), x.begin() + static_cast<long>(k));
  }
  return true;
}

RationalCertificate ObstructionSolver::certificate_against(const IntVector& p, const SublatticeSpec& l) const {
  auto basis = independent(l.in_T(sys_.w), idx::kT);
  RatVector pr = to_rat(p);
  // g = p minus its orthogonal projection onto span(L): g kills L and g.p = |g|^2 > 0.
  RatVector g = pr;
  if (!basis.empty()) {
    const std::size_t k = basis.size();
    RatMatrix gram(k, k);
    RatVector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      rhs[i] = dot(basis[i], pr);
      for (std::size_t j = 0; j < k; ++j) gram.set(i, j, dot(basis[i], basis[j]));
    }
    auto sol = std::get<RationalSolution>(solve_rational(gram, rhs)).x;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t t = 0; t < idx::kT; ++t) g[t] -= sol[i] * basis[i][t];
  }
  Int den = lcm_of_denominators(g);
  IntVector gi(idx::kT);
  for (std::size_t t = 0; t < idx::kT; ++t) gi[t] = Rat(g[t] * den).get_num();
  Int c = content(gi);
  if (c == 0) throw std::logic_error("certificate_against: obstruction lies in the sublattice span");
  for (auto& x : gi) x /= c;

  auto y = left_functional(sys_.block_matrix(), sys_.rhs_times(gi));
  if (!y) throw std::logic_error("certificate_against: no left functional for an obstructed direction");
  RationalCertificate cert;
  cert.g = to_rat(gi);
  cert.y = std::move(*y);
  cert.value = 0;
  IntVector b = sys_.rhs_times(gi);
  for (std::size_t r = 0; r < b.size(); ++r) cert.value += cert.y[r] * b[r];
  return cert;
}

ModResult ObstructionSolver::solve_mod(const SublatticeSpec& l) const {
  if (taus_.size() != idx::kT) throw std::logic_error("solve_mod needs all T-coordinates");
  const auto gens = l.in_T(sys_.w);
  const auto basis = independent(gens, idx::kT);
  for (const auto& p : forced_)
    if (!span_coordinates(basis, to_rat(p))) return certificate_against(p, l);
  for (const auto& p : forced_)
    if (!row_condition(p, 0, gens, nullptr)) return RowObstruction{0, p, "forced right-hand side outside L"};

  // Adjust core rows with delta > 1 so their right-hand sides become divisible.
  std::vector<std::map<std::size_t, Rat>> adjust(idx::kT);
  const auto& f = stage_b_->core_factors();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] <= 1) continue;
    IntVector p = densify(stage_b_->core_passengers()[i], taus_);
    std::vector<Int> c;
    if (!row_condition(p, f[i], gens, &c)) return RowObstruction{f[i], p, "right-hand side outside L + delta Z^T"};
    for (std::size_t k = 0; k < c.size(); ++k)
      for (std::size_t t = 0; t < idx::kT; ++t)
        if (sgn(gens[k][t]) != 0) adjust[t][i] -= c[k] * gens[k][t];
  }

  ResidualSolution sol;
  sol.lambda.d = sys_.d;
  for (std::size_t t = 0; t < idx::kT; ++t) {
    auto mu = stage_b_->solve(t, adjust[t], true);
    if (!mu) throw std::logic_error("solve_mod: inexact division after adjustment");
    for (std::size_t j = 0; j < kernel_.size(); ++j) {
      if (sgn((*mu)[j]) == 0) continue;
      for (std::size_t c = 0; c < kLambdaCount; ++c)
        if (kernel_[j][c] != 0) sol.lambda.values[static_cast<std::uint32_t>(c)][t] += (*mu)[j] * kernel_[j][c];
    }
  }
  std::erase_if(sol.lambda.values, [](const auto& e) { return e.second.is_zero(); });

  std::set<std::array<Int, 3>> triples;
  for (std::size_t r = 0; r < sys_.rows(); ++r) {
    ClassT v = row_defect(sys_, r, sol.lambda);
    if (v.is_zero()) continue;
    std::array<Int, 3> c;
    if (!sys_.residual[r] || !in_sublattice(sys_.w, l, v, &c))
      throw std::logic_error("solve_mod: constructed solution fails row " + sys_.info[r].monomial);
    sol.residuals[r] = c;
    triples.insert(c);
  }
  std::vector<RatVector> cols;
  for (const auto& c : triples) cols.push_back({Rat(c[0]), Rat(c[1]), Rat(c[2])});
  sol.residual_lattice = cols.empty() ? LatticeSpec::zero(3) : LatticeSpec::from_columns(3, cols);
  return sol;
}

bool ScanReport::empty() const {
  if (!rational_functionals.empty()) return false;
  for (const auto& [p, fs] : prime_solutions)
    if (!fs.empty()) return false;
  return true;
}

ScanReport ObstructionSolver::scan() const {
  ScanReport rep;
  rep.obstruction_dimension = obstruction_dimension();
  auto wv = w_vectors(sys_.w);
  std::vector<RatVector> wlist{wv[0], wv[1], wv[2]};

  std::vector<RatVector> forced_coords;
  rep.obstruction_inside_W = true;
  const IntVector* outside = nullptr;
  for (const auto& p : forced_) {
    auto c = span_coordinates(wlist, to_rat(p));
    if (!c) {
      rep.obstruction_inside_W = false;
      if (!outside) outside = &p;
    } else {
      forced_coords.push_back(*c);
    }
  }

  // Bad primes: denominators of W, core factors, invariant factors of the forced triples.
  std::vector<Int> values;
  for (const auto& w : wlist) values.push_back(lcm_of_denominators(w));
  for (const auto& [delta, p] : divisors_) values.push_back(delta);
  if (rep.obstruction_inside_W && !forced_coords.empty()) {
    auto f = LatticeSpec::from_columns(3, forced_coords);
    if (f.basis().cols() == 3)
      for (const auto& x : f.invariant_factors()) values.push_back(x);
  }
  rep.bad_primes = unique_primes(values);

  if (!rep.obstruction_inside_W) {
    // W itself is obstructed; one certificate covers every sublattice.
    rep.certificate = certificate_against(*outside, SublatticeSpec::whole());
    for (const auto& p : rep.bad_primes) {
      rep.prime_solutions[p.get_str()] = {};
      rep.functionals_checked += projective_points(p.get_si()).size();
    }
    return rep;
  }

  // (i) functionals vanishing on every forced triple.
  if (forced_coords.empty()) {
    for (int k = 0; k < 3; ++k) {
      RatVector e(3, 0);
      e[k] = 1;
      rep.rational_functionals.push_back(e);
    }
  } else {
    RatMatrix m(forced_coords.size(), 3);
    for (std::size_t i = 0; i < forced_coords.size(); ++i)
      for (int k = 0; k < 3; ++k) m.set(i, k, forced_coords[i][k]);
    RatMatrix ker = kernel_basis(m);
    for (std::size_t j = 0; j < ker.cols(); ++j) rep.rational_functionals.push_back(ker.column(j));
  }

  // (ii) every functional mod p for each bad prime.
  for (const auto& p : rep.bad_primes) {
    auto& sols = rep.prime_solutions[p.get_str()];
    for (const auto& f : projective_points(p.get_si())) {
      ++rep.functionals_checked;
      SublatticeSpec l = mod_p_sublattice(f, p.get_si());
      auto gens = l.in_T(sys_.w);
      bool ok = true;
      for (const auto& q : forced_)
        if (!row_condition(q, 0, gens, nullptr)) {
          ok = false;
          break;
        }
      for (std::size_t i = 0; ok && i < divisors_.size(); ++i)
        ok = row_condition(divisors_[i].second, divisors_[i].first, gens, nullptr);
      if (ok) sols.push_back(f);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

bool verify_certificate(const RationalCertificate& c, const EquationSystem& sys, const SublatticeSpec& l) {
  if (c.g.size() != idx::kT || c.y.size() != sys.rows() || sgn(c.value) == 0) return false;
  RatVector ya(kLambdaCount, 0);
  Rat value = 0;
  for (std::size_t r = 0; r < sys.rows(); ++r) {
    if (sgn(c.y[r]) == 0) continue;
    for (const auto& [col, a] : sys.block[r]) ya[col] += c.y[r] * a;
    Rat rg = 0;
    for (const auto& [t, a] : sys.rhs[r]) rg += c.g[t] * a;
    value += c.y[r] * rg;
  }
  for (const auto& x : ya)
    if (sgn(x) != 0) return false;
  for (const auto& gen : l.in_T(sys.w))
    if (sgn(dot(c.g, gen)) != 0) return false;
  return value == c.value;
}

bool verify_solution(const ResidualSolution& s, const EquationSystem& sys, const SublatticeSpec& l) {
  for (const auto& [i, v] : s.lambda.values)
    for (std::size_t t = 0; t < idx::kT; ++t)
      if (v[t].get_den() != 1) return false;
  for (std::size_t r = 0; r < sys.rows(); ++r) {
    ClassT v = row_defect(sys, r, s.lambda);
    auto it = s.residuals.find(r);
    if (v.is_zero()) {
      if (it != s.residuals.end()) return false;
      continue;
    }
    std::array<Int, 3> c;
    if (!sys.residual[r] || !in_sublattice(sys.w, l, v, &c)) return false;
    if (it == s.residuals.end() || it->second != c) return false;
  }
  return true;
}

RationalCertificate solve_exact_infeasibility(const EquationSystem& sys) {
  ObstructionSolver solver(sys);
  if (solver.forced().empty())
    throw UnexpectedlyFeasible("the system is rationally solvable with zero residuals");
  return solver.certificate_against(solver.forced().front(), SublatticeSpec::zero());
}

ModResult solve_mod_W(const EquationSystem& sys) { return solvable_mod_sublattice(sys, SublatticeSpec::whole()); }

ModResult solvable_mod_sublattice(const EquationSystem& sys, const SublatticeSpec& l) {
  return ObstructionSolver(sys).solve_mod(l);
}

ScanReport proper_sublattice_scan(const EquationSystem& sys) { return ObstructionSolver(sys).scan(); }

BlockComparison compare_blockwise(const EquationSystem& sys) {
  BlockComparison out;
  ObstructionSolver one(sys);
  std::vector<IntVector> nulls(one.null_rows().size(), IntVector(idx::kT, 0));
  std::vector<std::pair<Int, IntVector>> cores(one.core_rows().size(), {Int(0), IntVector(idx::kT, 0)});
  bool aligned = true;
  for (int g = 0; g < idx::kSym2p; ++g) {
    std::vector<int> taus;
    for (int w = 0; w < idx::kSym2W; ++w) taus.push_back(idx::t(g, w));
    ObstructionSolver part(sys, taus);
    if (part.null_rows().size() != nulls.size() || part.core_rows().size() != cores.size()) {
      aligned = false;
      break;
    }
    for (std::size_t i = 0; i < nulls.size(); ++i)
      for (int t : taus) nulls[i][t] = part.null_rows()[i][t];
    for (std::size_t i = 0; i < cores.size(); ++i) {
      cores[i].first = part.core_rows()[i].first;
      for (int t : taus) cores[i].second[t] = part.core_rows()[i].second[t];
    }
  }
  std::vector<RatVector> a, b;
  for (const auto& p : one.null_rows()) a.push_back(to_rat(p));
  for (const auto& p : nulls) b.push_back(to_rat(p));
  out.one_shot_obstruction = rank_of(a, idx::kT);
  out.blockwise_obstruction = rank_of(b, idx::kT);
  out.rows_compared = nulls.size() + cores.size();
  out.identical = aligned && nulls == one.null_rows() && cores == one.core_rows();
  return out;
}

// ---------------------------------------------------------------------------

ClassT cell_defect(const LambdaUnknowns& l, const Cell& cell) {
  ClassT phi;
  Rat weight = cell_weight(cell);
  std::visit(
      [&](const auto& c) {
        using C = std::decay_t<decltype(c)>;
        Wedge2 w = wedge2(c.u, c.v);
        if constexpr (std::is_same_v<C, TriangleCell>) {
          XVector su = tensor(c.s, c.u);
          phi = l.lambda(c.x, c.s, c.v, w) - l.lambda(c.x, c.s, c.u, w) + l.lambda(c.x + su, c.s, c.u - c.v, w);
        } else {
          XVector su = tensor(c.s, c.u), tv = tensor(c.t, c.v);
          phi = l.lambda(c.x + su + tv, c.s, c.u, w) - l.lambda(c.x, c.s, c.u, w) + l.lambda(c.x, c.t, c.v, w) -
                l.lambda(c.x + su, c.t, c.v, w);
        }
      },
      cell);
  return weight * phi - vol_cell(cell);
}

std::vector<ChainVerdict> verify_candidate_phi(const LambdaUnknowns& l, const SublatticeSpec& spec,
                                               const std::vector<Chain>& chains) {
  StandardClasses cls = standard_classes(l.d);
  std::array<ClassT, 3> w{expand_class_to_T(cls.theta, l.d), expand_class_to_T(cls.w1, l.d),
                          expand_class_to_T(cls.w2, l.d)};
  std::vector<ChainVerdict> out;
  for (const auto& chain : chains) {
    if (chain.d != l.d) throw std::invalid_argument("verify_candidate_phi: chain and lambda differ in d");
    ChainVerdict v;
    for (const auto& cell : chain.cells) {
      validate_cell(cell);
      v.defect += cell_defect(l, cell);
    }
    v.in_lattice = v.defect.is_zero() || in_sublattice(w, spec, v.defect, nullptr);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace tropweil
