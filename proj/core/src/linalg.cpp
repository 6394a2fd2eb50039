#include "tropweil/linalg.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "tropweil/reducer.hpp"

namespace tropweil {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int floor_rat(const Rat& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::vector<IntVector> dense_rows(const IntMatrix& a) {
  std::vector<IntVector> out(a.rows(), IntVector(a.cols(), 0));
  for (std::size_t r = 0; r < a.rows(); ++r)
    a.for_row(r, [&](std::size_t c, const Int& v) { out[r][c] = v; });
  return out;
}

IntMatrix from_dense(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (rows[r][c] != 0) m.set(r, c, rows[r][c]);
  return m;
}

// Integer matrix with the same row space as a (row i scaled by its lcm).
IntMatrix clear_row_denominators(const RatMatrix& a, RatVector* b = nullptr) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Int l = 1;
    a.for_row(r, [&](std::size_t, const Rat& v) { l = lcm(l, v.get_den()); });
    if (b) l = lcm(l, (*b)[r].get_den());
    a.for_row(r, [&](std::size_t c, const Rat& v) { out.set(r, c, Int(v * l)); });
    if (b) (*b)[r] = canonical((*b)[r] * l);
  }
  return out;
}

SparseReducer reducer_for(const IntMatrix& a, const std::vector<IntVector>& passengers_by_col) {
  SparseReducer red(a.cols(), passengers_by_col.size());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseRow row, pass;
    a.for_row(r, [&](std::size_t c, const Int& v) { row.emplace_back(static_cast<std::uint32_t>(c), v); });
    for (std::size_t j = 0; j < passengers_by_col.size(); ++j)
      if (passengers_by_col[j][r] != 0)
        pass.emplace_back(static_cast<std::uint32_t>(j), passengers_by_col[j][r]);
    red.add_row(std::move(row), std::move(pass));
  }
  red.reduce();
  return red;
}

constexpr std::size_t kDenseSolveLimit = 400;

}  // namespace

std::optional<RatVector> left_functional(const IntMatrix& a, const IntVector& b) {
  // Solve [A^T; b^T] y = e_last.
  SparseReducer red(a.rows(), 1);
  IntMatrix at = a.transpose();
  for (std::size_t c = 0; c < at.rows(); ++c) {
    SparseRow row;
    at.for_row(c, [&](std::size_t r, const Int& v) { row.emplace_back(static_cast<std::uint32_t>(r), v); });
    red.add_row(std::move(row));
  }
  SparseRow last;
  for (std::size_t r = 0; r < b.size(); ++r)
    if (b[r] != 0) last.emplace_back(static_cast<std::uint32_t>(r), b[r]);
  red.add_row(std::move(last), SparseRow{{0u, Int(1)}});
  red.reduce();
  for (const auto& p : red.null_passengers())
    if (!p.empty()) return std::nullopt;
  return red.solve(0, {}, false);
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    a.for_row(r, [&](std::size_t c, const Int& v) { out.set(r, c, Rat(v)); });
  return out;
}

Int lcm_of_denominators(const RatVector& v) {
  Int l = 1;
  for (const auto& q : v) l = lcm(l, q.get_den());
  return l;
}

IntMatrix clear_column_denominators(const RatMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    RatVector col = a.column(c);
    Int l = lcm_of_denominators(col);
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (sgn(col[r]) != 0) out.set(r, c, Int(col[r] * l));
  }
  return out;
}

HermiteDecomposition hnf(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<IntVector> cols(n, IntVector(m, 0));
  for (std::size_t r = 0; r < m; ++r) a.for_row(r, [&](std::size_t c, const Int& v) { cols[c][r] = v; });
  std::vector<IntVector> u(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

  auto axpy = [](IntVector& x, const Int& f, const IntVector& y) {
    if (f == 0) return;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (y[i] != 0) x[i] += f * y[i];
  };

  HermiteDecomposition out;
  std::size_t k = 0;
  for (std::size_t r = 0; r < m && k < n; ++r) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = k; j < n; ++j) {
        if (cols[j][r] == 0) continue;
        if (best == n || mpz_cmpabs(cols[j][r].get_mpz_t(), cols[best][r].get_mpz_t()) < 0) best = j;
      }
      if (best == n) break;
      std::swap(cols[k], cols[best]);
      std::swap(u[k], u[best]);
      bool clean = true;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (cols[j][r] == 0) continue;
        Int q = floor_div(cols[j][r], cols[k][r]);
        axpy(cols[j], -q, cols[k]);
        axpy(u[j], -q, u[k]);
        if (cols[j][r] != 0) clean = false;
      }
      if (clean) break;
    }
    if (k >= n || cols[k][r] == 0) continue;
    if (cols[k][r] < 0) {
      for (auto& v : cols[k]) v = -v;
      for (auto& v : u[k]) v = -v;
    }
    for (std::size_t j = 0; j < k; ++j) {
      Int q = floor_div(cols[j][r], cols[k][r]);
      axpy(cols[j], -q, cols[k]);
      axpy(u[j], -q, u[k]);
    }
    out.pivot_rows.push_back(r);
    ++k;
  }
  out.H = IntMatrix(m, n);
  out.U = IntMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < m; ++r)
      if (cols[c][r] != 0) out.H.set(r, c, cols[c][r]);
    for (std::size_t r = 0; r < n; ++r)
      if (u[c][r] != 0) out.U.set(r, c, u[c][r]);
  }
  return out;
}

SmithDecomposition snf(const IntMatrix& a) {
  DenseSmith s(dense_rows(a), a.cols());
  s.track_left(true);
  s.track_left_inv(true);
  s.track_right(true);
  s.track_right_inv(true);
  s.run();
  SmithDecomposition out;
  out.S = from_dense(s.matrix(), a.cols());
  out.left = from_dense(s.left(), a.rows());
  out.U = from_dense(s.left_inv(), a.rows());
  out.right = from_dense(s.right(), a.cols());
  out.V = from_dense(s.right_inv(), a.cols());
  for (std::size_t i = 0; i < s.rank(); ++i) out.invariant_factors.push_back(s.diagonal(i));
  return out;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  auto m = dense_rows(a);
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = v;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::size_t rank(const RatMatrix& a) {
  IntMatrix ia = clear_row_denominators(a);
  if (ia.rows() * ia.cols() <= kDenseSolveLimit * kDenseSolveLimit && !ia.is_sparse()) {
    DenseSmith s(dense_rows(ia), ia.cols());
    s.run();
    return s.rank();
  }
  SparseReducer red = reducer_for(ia, {});
  return red.rank();
}

bool verify_witness(const InfeasibilityWitness& w, const IntMatrix& a, const IntVector& b) {
  if (w.y.size() != a.rows() || b.size() != a.rows()) return false;
  RatVector ya(a.cols(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (sgn(w.y[r]) == 0) continue;
    a.for_row(r, [&](std::size_t c, const Int& v) { ya[c] += w.y[r] * v; });
  }
  Rat yb = 0;
  for (std::size_t r = 0; r < b.size(); ++r) yb += w.y[r] * b[r];
  yb.canonicalize();
  if (w.kind == InfeasibilityWitness::Kind::Rational) {
    for (auto& v : ya)
      if (sgn(v) != 0) return false;
    return sgn(yb) != 0;
  }
  for (auto& v : ya) {
    v.canonicalize();
    if (v.get_den() != 1) return false;
  }
  return yb.get_den() != 1;
}

IntegerSolveResult solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve_integer: rhs length");
  const std::size_t m = a.rows(), n = a.cols();
  if (!a.is_sparse() && m <= kDenseSolveLimit && n <= kDenseSolveLimit) {
    std::vector<IntVector> pass(m, IntVector(1));
    for (std::size_t r = 0; r < m; ++r) pass[r][0] = b[r];
    DenseSmith s(dense_rows(a), n, std::move(pass));
    s.track_left(true);
    s.track_right(true);
    s.run();
    const std::size_t rk = s.rank();
    for (std::size_t i = 0; i < m; ++i) {
      const Int& bi = s.passengers()[i][0];
      if (i < rk && mpz_divisible_p(bi.get_mpz_t(), s.diagonal(i).get_mpz_t())) continue;
      if (i >= rk && bi == 0) continue;
      InfeasibilityWitness w;
      w.kind = i < rk ? InfeasibilityWitness::Kind::Divisibility : InfeasibilityWitness::Kind::Rational;
      w.y.resize(m);
      for (std::size_t c = 0; c < m; ++c)
        w.y[c] = i < rk ? canonical(Rat(s.left()[i][c], s.diagonal(i))) : Rat(s.left()[i][c]);
      return w;
    }
    IntVector y(n, 0);
    for (std::size_t i = 0; i < rk; ++i) y[i] = s.passengers()[i][0] / s.diagonal(i);
    IntegerSolution sol;
    sol.x.assign(n, 0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t i = 0; i < rk; ++i) sol.x[r] += s.right()[r][i] * y[i];
    sol.kernel = IntMatrix(n, n - rk);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = rk; c < n; ++c) sol.kernel.set(r, c - rk, s.right()[r][c]);
    return sol;
  }

  SparseReducer red = reducer_for(a, {b});
  bool consistent = true;
  for (const auto& p : red.null_passengers())
    if (!p.empty()) consistent = false;
  if (!consistent) {
    auto y = left_functional(a, b);
    if (!y) throw std::logic_error("solve_integer: inconsistent system without left functional");
    return InfeasibilityWitness{InfeasibilityWitness::Kind::Rational, *y};
  }
  auto x = red.solve(0, {}, true);
  if (!x) {
    // Divisibility obstruction in the core; fall back to a dense certificate.
    DenseSmith s(dense_rows(a), n, [&] {
      std::vector<IntVector> p(m, IntVector(1));
      for (std::size_t r = 0; r < m; ++r) p[r][0] = b[r];
      return p;
    }());
    s.track_left(true);
    s.run();
    for (std::size_t i = 0; i < s.rank(); ++i) {
      const Int& bi = s.passengers()[i][0];
      if (mpz_divisible_p(bi.get_mpz_t(), s.diagonal(i).get_mpz_t())) continue;
      InfeasibilityWitness w;
      w.kind = InfeasibilityWitness::Kind::Divisibility;
      w.y.resize(m);
      for (std::size_t c = 0; c < m; ++c) w.y[c] = canonical(Rat(s.left()[i][c], s.diagonal(i)));
      return w;
    }
    throw std::logic_error("solve_integer: divisibility failure not reproduced");
  }
  IntegerSolution sol;
  sol.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) sol.x[i] = (*x)[i].get_num();
  auto ker = red.kernel();
  sol.kernel = IntMatrix(n, ker.size());
  for (std::size_t c = 0; c < ker.size(); ++c)
    for (std::size_t r = 0; r < n; ++r)
      if (ker[c][r] != 0) sol.kernel.set(r, c, ker[c][r]);
  return sol;
}

RationalSolveResult solve_rational(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve_rational: rhs length");
  RatVector bs = b;
  IntMatrix ia = clear_row_denominators(a, &bs);
  // Clear the remaining rhs denominators by a global factor.
  Int l = lcm_of_denominators(bs);
  IntVector ib(bs.size());
  for (std::size_t i = 0; i < bs.size(); ++i) ib[i] = Int(bs[i] * l);
  SparseReducer red = reducer_for(ia, {ib});
  for (const auto& p : red.null_passengers())
    if (!p.empty()) {
      auto y = left_functional(ia, ib);
      if (!y) throw std::logic_error("solve_rational: inconsistent system without left functional");
      // Express the functional against the original rows.
      RatVector yo(a.rows());
      for (std::size_t r = 0; r < a.rows(); ++r) {
        Int rl = 1;
        a.for_row(r, [&](std::size_t, const Rat& v) { rl = lcm(rl, v.get_den()); });
        rl = lcm(rl, b[r].get_den());
        yo[r] = canonical((*y)[r] * rl);
      }
      return InfeasibilityWitness{InfeasibilityWitness::Kind::Rational, yo};
    }
  auto x = red.solve(0, {}, false);
  RationalSolution sol;
  sol.x.resize(a.cols());
  for (std::size_t i = 0; i < a.cols(); ++i) sol.x[i] = canonical((*x)[i] / l);
  auto ker = red.kernel();
  sol.kernel = RatMatrix(a.cols(), ker.size());
  for (std::size_t c = 0; c < ker.size(); ++c)
    for (std::size_t r = 0; r < a.cols(); ++r)
      if (ker[c][r] != 0) sol.kernel.set(r, c, Rat(ker[c][r]));
  return sol;
}

RatMatrix kernel_basis(const RatMatrix& a) {
  IntMatrix ia = clear_row_denominators(a);
  SparseReducer red = reducer_for(ia, {});
  auto ker = red.kernel();
  RatMatrix out(a.cols(), ker.size());
  for (std::size_t c = 0; c < ker.size(); ++c)
    for (std::size_t r = 0; r < a.cols(); ++r)
      if (ker[c][r] != 0) out.set(r, c, Rat(ker[c][r]));
  return out;
}

// ---------------------------------------------------------------- lattices

LatticeSpec::LatticeSpec(std::size_t ambient, RatMatrix generators) : n_(ambient), gens_(std::move(generators)) {
  if (gens_.rows() != n_) throw DimensionMismatch("LatticeSpec: generator rows != ambient dimension");
  normalize();
}

LatticeSpec LatticeSpec::from_columns(std::size_t ambient, const std::vector<RatVector>& cols) {
  RatMatrix g(ambient, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != ambient) throw DimensionMismatch("LatticeSpec: generator length");
    for (std::size_t r = 0; r < ambient; ++r)
      if (sgn(cols[c][r]) != 0) g.set(r, c, cols[c][r]);
  }
  return LatticeSpec(ambient, std::move(g));
}

LatticeSpec LatticeSpec::zero(std::size_t ambient) { return LatticeSpec(ambient, RatMatrix(ambient, 0)); }

LatticeSpec LatticeSpec::standard(std::size_t ambient) { return LatticeSpec(ambient, RatMatrix::identity(ambient)); }

void LatticeSpec::normalize() {
  denom_ = 1;
  for (std::size_t r = 0; r < gens_.rows(); ++r)
    gens_.for_row(r, [&](std::size_t, const Rat& v) { denom_ = lcm(denom_, v.get_den()); });
  IntMatrix g(n_, gens_.cols());
  for (std::size_t r = 0; r < gens_.rows(); ++r)
    gens_.for_row(r, [&](std::size_t c, const Rat& v) { g.set(r, c, Int(v * denom_)); });
  HermiteDecomposition h = hnf(g);
  pivots_ = h.pivot_rows;
  basis_ = RatMatrix(n_, pivots_.size());
  for (std::size_t c = 0; c < pivots_.size(); ++c)
    for (std::size_t r = 0; r < n_; ++r) {
      Int v = h.H.get(r, c);
      if (v != 0) basis_.set(r, c, canonical(Rat(v, denom_)));
    }
}

std::size_t LatticeSpec::rank() const { return pivots_.size(); }

std::optional<IntVector> LatticeSpec::coordinates(const RatVector& v) const {
  if (v.size() != n_) throw DimensionMismatch("lattice membership: vector length");
  RatVector w = v;
  IntVector coords(pivots_.size());
  for (std::size_t j = 0; j < pivots_.size(); ++j) {
    Rat q = canonical(w[pivots_[j]] / basis_.get(pivots_[j], j));
    if (q.get_den() != 1) return std::nullopt;
    coords[j] = q.get_num();
    if (coords[j] != 0)
      for (std::size_t r = pivots_[j]; r < n_; ++r) w[r] -= q * basis_.get(r, j);
  }
  for (const auto& x : w)
    if (sgn(x) != 0) return std::nullopt;
  return coords;
}

bool LatticeSpec::contains(const RatVector& v) const { return coordinates(v).has_value(); }

LatticeSpec LatticeSpec::saturation() const {
  if (rank() == 0) return zero(n_);
  // Left annihilator of the span, then its integer kernel at scale 1/denom.
  RatMatrix bt = basis_.transpose();
  RatMatrix ann = kernel_basis(bt);  // n x (n - rank); columns y with B^T y = 0
  RatMatrix annt = ann.transpose();
  RatMatrix ker = kernel_basis(annt);
  RatMatrix g(n_, ker.cols());
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < ker.cols(); ++c)
      if (sgn(ker.get(r, c)) != 0) g.set(r, c, canonical(ker.get(r, c) / denom_));
  // The integer kernel of an integer matrix is saturated in Z^n.
  return LatticeSpec(n_, std::move(g));
}

IntVector LatticeSpec::invariant_factors() const {
  if (denom_ != 1) throw std::domain_error("invariant factors requested for a non-integral lattice");
  IntMatrix g(n_, basis_.cols());
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < basis_.cols(); ++c) g.set(r, c, basis_.get(r, c).get_num());
  return snf(g).invariant_factors;
}

LatticeSpec LatticeSpec::intersection(const LatticeSpec& other) const {
  if (other.n_ != n_) throw DimensionMismatch("lattice intersection: ambient mismatch");
  const std::size_t k1 = basis_.cols(), k2 = other.basis_.cols();
  if (k1 == 0 || k2 == 0) return zero(n_);
  Int D = lcm(denom_, other.denom_);
  IntMatrix stacked(n_, k1 + k2);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < k1; ++c) stacked.set(r, c, Int(basis_.get(r, c) * D));
    for (std::size_t c = 0; c < k2; ++c) stacked.set(r, k1 + c, Int(-other.basis_.get(r, c) * D));
  }
  HermiteDecomposition h = hnf(stacked);
  const std::size_t rk = h.pivot_rows.size();
  RatMatrix g(n_, k1 + k2 - rk);
  for (std::size_t c = rk; c < k1 + k2; ++c) {
    for (std::size_t r = 0; r < n_; ++r) {
      Rat s = 0;
      for (std::size_t j = 0; j < k1; ++j) s += basis_.get(r, j) * h.U.get(j, c);
      if (sgn(s) != 0) g.set(r, c - rk, s);
    }
  }
  return LatticeSpec(n_, std::move(g));
}

LatticeSpec LatticeSpec::sum(const LatticeSpec& other) const {
  if (other.n_ != n_) throw DimensionMismatch("lattice sum: ambient mismatch");
  RatMatrix g(n_, basis_.cols() + other.basis_.cols());
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < basis_.cols(); ++c) g.set(r, c, basis_.get(r, c));
    for (std::size_t c = 0; c < other.basis_.cols(); ++c) g.set(r, basis_.cols() + c, other.basis_.get(r, c));
  }
  return LatticeSpec(n_, std::move(g));
}

bool LatticeSpec::is_sublattice_of(const LatticeSpec& other) const {
  if (other.n_ != n_) throw DimensionMismatch("sublattice test: ambient mismatch");
  for (std::size_t c = 0; c < basis_.cols(); ++c)
    if (!other.contains(basis_.column(c))) return false;
  return true;
}

bool LatticeSpec::operator==(const LatticeSpec& other) const {
  return n_ == other.n_ && basis_ == other.basis_;
}

RatVector canonical_coset_rep(const RatVector& x, const LatticeSpec& lattice) {
  if (x.size() != lattice.ambient()) throw DimensionMismatch("coset rep: vector length");
  RatVector w = x;
  const auto& piv = lattice.pivot_rows();
  const auto& b = lattice.basis();
  for (std::size_t j = 0; j < piv.size(); ++j) {
    Int k = floor_rat(canonical(w[piv[j]] / b.get(piv[j], j)));
    if (k == 0) continue;
    for (std::size_t r = piv[j]; r < w.size(); ++r) w[r] -= k * b.get(r, j);
  }
  for (auto& v : w) v.canonicalize();
  return w;
}

IntVector canonical_coset_rep(const IntVector& x, const LatticeSpec& lattice) {
  RatVector xr(x.begin(), x.end());
  RatVector rep = canonical_coset_rep(xr, lattice);
  IntVector out(rep.size());
  for (std::size_t i = 0; i < rep.size(); ++i) {
    if (rep[i].get_den() != 1) throw std::domain_error("coset rep of integer vector left Z^n");
    out[i] = rep[i].get_num();
  }
  return out;
}

// ---------------------------------------------------------------- text format

RatMatrix read_matrix(std::istream& in) {
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw std::runtime_error("matrix text: missing header");
  RatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      std::string tok;
      if (!(in >> tok)) throw std::runtime_error("matrix text: too few entries");
      Rat v;
      if (v.set_str(tok, 10) != 0) throw std::runtime_error("matrix text: bad entry '" + tok + "'");
      if (v.get_den() == 0) throw std::runtime_error("matrix text: zero denominator");
      v.canonicalize();
      if (sgn(v) != 0) m.set(r, c, v);
    }
  std::string extra;
  if (in >> extra) throw std::runtime_error("matrix text: trailing data");
  return m;
}

void write_matrix(std::ostream& out, const RatMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << m.get(r, c).get_str();
    }
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const IntMatrix& m) { write_matrix(out, to_rational(m)); }

std::string matrix_to_string(const RatMatrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

RatMatrix matrix_from_string(const std::string& s) {
  std::istringstream is(s);
  return read_matrix(is);
}

Int content(const IntVector& v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

std::vector<Int> prime_factors(Int n) {
  std::vector<Int> out;
  n = abs(n);
  if (n < 2) return out;
  for (Int p = 2; p * p <= n; ++p) {
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      out.push_back(p);
      while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace tropweil
