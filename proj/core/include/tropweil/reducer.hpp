#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tropweil/linalg.hpp"

namespace tropweil {

using SparseRow = std::vector<std::pair<std::uint32_t, Int>>;  // sorted by column

SparseRow sparse_axpy(const SparseRow& a, const Int& f, const SparseRow& b);  // a + f*b
Int sparse_dot(const SparseRow& a, const IntVector& x);
Rat sparse_dot(const SparseRow& a, const RatVector& x);

// Dense Smith reduction with optional tracking. Row operations are also applied
// to the passenger block; right/right_inv track column operations, left and
// left_inv track row operations. After run(): left*A*right = S.
class DenseSmith {
 public:
  DenseSmith(std::vector<IntVector> a, std::size_t cols, std::vector<IntVector> passengers = {});
  void track_left(bool on) { want_left_ = on; }
  void track_left_inv(bool on) { want_left_inv_ = on; }
  void track_right(bool on) { want_right_ = on; }
  void track_right_inv(bool on) { want_right_inv_ = on; }
  void run();

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::size_t rank() const { return rank_; }
  const std::vector<IntVector>& matrix() const { return a_; }
  const std::vector<IntVector>& passengers() const { return p_; }
  const std::vector<IntVector>& left() const { return l_; }
  const std::vector<IntVector>& left_inv() const { return li_; }
  const std::vector<IntVector>& right() const { return r_; }
  const std::vector<IntVector>& right_inv() const { return ri_; }
  Int diagonal(std::size_t i) const { return i < m_ && i < n_ ? a_[i][i] : Int(0); }

 private:
  void row_swap(std::size_t i, std::size_t j);
  void row_addmul(std::size_t i, std::size_t j, const Int& q);  // row i += q*row j
  void row_neg(std::size_t i);
  void col_swap(std::size_t i, std::size_t j);
  void col_addmul(std::size_t i, std::size_t j, const Int& q);  // col i += q*col j
  bool pick_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const;

  std::size_t m_, n_;
  std::vector<IntVector> a_, p_, l_, li_, r_, ri_;
  bool want_left_ = false, want_left_inv_ = false, want_right_ = false, want_right_inv_ = false;
  std::size_t rank_ = 0;
  std::size_t lo_col_ = 0;  // columns below this are already final
};

// Sparse integer elimination: unit pivots first (Markowitz cost with
// lexicographic tie-break), then a dense Smith reduction of the remaining core.
// Every row operation is unimodular and is also applied to the passenger rows,
// so each right-hand side can be carried along.
class SparseReducer {
 public:
  SparseReducer(std::size_t cols, std::size_t passenger_cols);
  std::size_t add_row(SparseRow row, SparseRow passenger = {});
  void reduce();

  std::size_t cols() const { return n_; }
  std::size_t passenger_cols() const { return q_; }
  std::size_t rank() const { return pivots_.size() + core_rank_; }
  std::size_t unit_pivots() const { return pivots_.size(); }

  // Transformed rows whose coefficient part vanished, with their passengers.
  const std::vector<SparseRow>& null_passengers() const { return null_pass_; }
  // Transformed core rows i < core rank: diagonal entry and passenger row.
  const std::vector<Int>& core_factors() const { return core_diag_; }
  const std::vector<SparseRow>& core_passengers() const { return core_pass_; }

  // Solution for passenger column j where core row i gets extra right-hand side
  // adjust[i]. Null-row consistency is the caller's business. Returns nullopt if
  // integral is requested and a core division is inexact.
  std::optional<RatVector> solve(std::size_t j, const std::map<std::size_t, Rat>& adjust = {},
                                 bool integral = true) const;

  // Basis of the integer kernel (columns).
  std::vector<IntVector> kernel() const;

 private:
  struct Pivot {
    std::uint32_t row;
    std::uint32_t col;
    int sign;
    SparseRow coeffs;
    SparseRow passenger;
  };
  RatVector back_substitute(RatVector x) const;

  std::size_t n_, q_;
  std::vector<SparseRow> rows_, pass_;
  std::vector<Pivot> pivots_;
  std::vector<SparseRow> null_pass_;
  std::vector<std::uint32_t> core_cols_;
  std::vector<IntVector> core_right_;  // n_core x n_core
  std::vector<Int> core_diag_;
  std::vector<SparseRow> core_pass_;
  std::size_t core_rank_ = 0;
  bool reduced_ = false;
};

}  // namespace tropweil
