#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tropweil {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

// Matrices with more entries than this are stored sparsely.
inline constexpr std::size_t kSparseThreshold = 10000;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Rat canonical(Rat q) {
  q.canonicalize();
  return q;
}

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), sparse_(rows * cols > kSparseThreshold) {
    if (sparse_)
      srows_.resize(rows);
    else
      dense_.assign(rows * cols, T(0));
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, T(1));
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged rows");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_sparse() const { return sparse_; }

  T get(std::size_t r, std::size_t c) const {
    check(r, c);
    if (!sparse_) return dense_[r * cols_ + c];
    auto it = srows_[r].find(c);
    return it == srows_[r].end() ? T(0) : it->second;
  }

  void set(std::size_t r, std::size_t c, const T& v) {
    check(r, c);
    if (!sparse_) {
      dense_[r * cols_ + c] = v;
    } else if (sgn(v) == 0) {
      srows_[r].erase(c);
    } else {
      srows_[r][c] = v;
    }
  }

  void add(std::size_t r, std::size_t c, const T& v) {
    if (sgn(v) == 0) return;
    check(r, c);
    if (!sparse_) {
      dense_[r * cols_ + c] += v;
      return;
    }
    auto [it, fresh] = srows_[r].try_emplace(c, v);
    if (!fresh) {
      it->second += v;
      if (sgn(it->second) == 0) srows_[r].erase(it);
    }
  }

  // Calls f(col, value) for each nonzero entry of row r, in column order.
  template <class F>
  void for_row(std::size_t r, F&& f) const {
    if (!sparse_) {
      for (std::size_t c = 0; c < cols_; ++c)
        if (sgn(dense_[r * cols_ + c]) != 0) f(c, dense_[r * cols_ + c]);
    } else {
      for (const auto& [c, v] : srows_[r]) f(c, v);
    }
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (std::size_t r = 0; r < rows_; ++r) for_row(r, [&](std::size_t, const T&) { ++n; });
    return n;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for_row(r, [&](std::size_t c, const T& v) { t.set(c, r, v); });
    return t;
  }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = get(r, c);
    return out;
  }

  std::vector<T> row(std::size_t r) const {
    std::vector<T> out(cols_, T(0));
    for_row(r, [&](std::size_t c, const T& v) { out[c] = v; });
    return out;
  }

  std::vector<T> apply(const std::vector<T>& x) const {
    if (x.size() != cols_) throw DimensionMismatch("matrix-vector size");
    std::vector<T> y(rows_, T(0));
    for (std::size_t r = 0; r < rows_; ++r)
      for_row(r, [&](std::size_t c, const T& v) { y[r] += v * x[c]; });
    return y;
  }

  std::vector<T> apply_left(const std::vector<T>& y) const {
    if (y.size() != rows_) throw DimensionMismatch("vector-matrix size");
    std::vector<T> x(cols_, T(0));
    for (std::size_t r = 0; r < rows_; ++r) {
      if (sgn(y[r]) == 0) continue;
      for_row(r, [&](std::size_t c, const T& v) { x[c] += y[r] * v; });
    }
    return x;
  }

  Matrix operator*(const Matrix& b) const {
    if (cols_ != b.rows_) throw DimensionMismatch("matrix product");
    Matrix out(rows_, b.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for_row(r, [&](std::size_t k, const T& v) {
        b.for_row(k, [&](std::size_t c, const T& w) { out.add(r, c, v * w); });
      });
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t c = 0; c < a.cols_; ++c)
        if (a.get(r, c) != b.get(r, c)) return false;
    return true;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  bool sparse_ = false;
  std::vector<T> dense_;
  std::vector<std::map<std::size_t, T>> srows_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rational(const IntMatrix& a);
// Scales each column by the lcm of its denominators.
IntMatrix clear_column_denominators(const RatMatrix& a);
Int lcm_of_denominators(const RatVector& v);

// Column Hermite normal form: H = A*U with U unimodular. Pivot rows strictly
// increase from left to right, pivots are positive, entries left of a pivot
// in its row lie in [0, pivot). Zero columns come last.
struct HermiteDecomposition {
  IntMatrix H;
  IntMatrix U;
  std::vector<std::size_t> pivot_rows;  // one per nonzero column of H
};
HermiteDecomposition hnf(const IntMatrix& a);

// A = U*S*V with U, V unimodular and S diagonal, d1 | d2 | ... .
// left/right are the inverses: left*A*right = S.
struct SmithDecomposition {
  IntMatrix U, S, V;
  IntMatrix left, right;
  IntVector invariant_factors;  // nonzero diagonal entries, in order
  std::size_t rank() const { return invariant_factors.size(); }
};
SmithDecomposition snf(const IntMatrix& a);

Int determinant(const IntMatrix& a);  // square only, Bareiss
std::size_t rank(const RatMatrix& a);

// Certificates of integer infeasibility of A x = b.
struct InfeasibilityWitness {
  enum class Kind { Rational, Divisibility };
  Kind kind = Kind::Rational;
  // Rational: y A = 0 and y b != 0. Divisibility: y A integral, y b not.
  RatVector y;
};
bool verify_witness(const InfeasibilityWitness& w, const IntMatrix& a, const IntVector& b);

struct IntegerSolution {
  IntVector x;
  IntMatrix kernel;  // columns form a basis of {k : A k = 0} over Z
};
using IntegerSolveResult = std::variant<IntegerSolution, InfeasibilityWitness>;
IntegerSolveResult solve_integer(const IntMatrix& a, const IntVector& b);

// y with y*A = 0 and y*b = 1 (a Farkas functional), if one exists.
std::optional<RatVector> left_functional(const IntMatrix& a, const IntVector& b);

struct RationalSolution {
  RatVector x;
  RatMatrix kernel;
};
using RationalSolveResult = std::variant<RationalSolution, InfeasibilityWitness>;
RationalSolveResult solve_rational(const RatMatrix& a, const RatVector& b);

// Basis of the rational kernel / left kernel, as columns / rows.
RatMatrix kernel_basis(const RatMatrix& a);

class LatticeSpec {
 public:
  LatticeSpec() = default;
  LatticeSpec(std::size_t ambient, RatMatrix generators);
  static LatticeSpec from_columns(std::size_t ambient, const std::vector<RatVector>& cols);
  static LatticeSpec zero(std::size_t ambient);
  static LatticeSpec standard(std::size_t ambient);

  std::size_t ambient() const { return n_; }
  const RatMatrix& generators() const { return gens_; }
  std::size_t rank() const;

  // Canonical basis: columns of the column HNF of the generators (after
  // clearing a common denominator), scaled back.
  const RatMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivot_rows() const { return pivots_; }

  bool contains(const RatVector& v) const;
  std::optional<IntVector> coordinates(const RatVector& v) const;  // in basis()
  LatticeSpec saturation() const;
  // Invariant factors of the lattice in the ambient Z^n (integer lattices).
  IntVector invariant_factors() const;
  LatticeSpec intersection(const LatticeSpec& other) const;
  LatticeSpec sum(const LatticeSpec& other) const;
  bool is_sublattice_of(const LatticeSpec& other) const;
  bool operator==(const LatticeSpec& other) const;

 private:
  void normalize();
  std::size_t n_ = 0;
  RatMatrix gens_;
  RatMatrix basis_;
  Int denom_ = 1;
  std::vector<std::size_t> pivots_;
};

// HNF-based reduction of x modulo L; equal outputs iff x - x' in L.
RatVector canonical_coset_rep(const RatVector& x, const LatticeSpec& lattice);
IntVector canonical_coset_rep(const IntVector& x, const LatticeSpec& lattice);

// "rows cols" then row-major entries, integers or p/q.
RatMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const RatMatrix& m);
void write_matrix(std::ostream& out, const IntMatrix& m);
std::string matrix_to_string(const RatMatrix& m);
RatMatrix matrix_from_string(const std::string& s);

Int content(const IntVector& v);
std::vector<Int> prime_factors(Int n);

}  // namespace tropweil
