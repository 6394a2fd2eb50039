#include "tropweil/reducer.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tropweil {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool is_unit(const Int& v) { return mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0; }

SparseRow merge_duplicates(SparseRow row) {
  SparseRow out;
  for (auto& e : row) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

SparseRow sparse_axpy(const SparseRow& a, const Int& f, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, f * b[j].second);
      ++j;
    } else {
      Int v = a[i].second + f * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

Int sparse_dot(const SparseRow& a, const IntVector& x) {
  Int s = 0;
  for (const auto& [c, v] : a) s += v * x[c];
  return s;
}

Rat sparse_dot(const SparseRow& a, const RatVector& x) {
  Rat s = 0;
  for (const auto& [c, v] : a) s += v * x[c];
  return s;
}

DenseSmith::DenseSmith(std::vector<IntVector> a, std::size_t cols, std::vector<IntVector> passengers)
    : m_(a.size()), n_(cols), a_(std::move(a)), p_(std::move(passengers)) {
  for (auto& row : a_)
    if (row.size() != n_) throw DimensionMismatch("DenseSmith row length");
  if (!p_.empty() && p_.size() != m_) throw DimensionMismatch("DenseSmith passenger rows");
}

void DenseSmith::row_swap(std::size_t i, std::size_t j) {
  if (i == j) return;
  std::swap(a_[i], a_[j]);
  if (!p_.empty()) std::swap(p_[i], p_[j]);
  if (want_left_) std::swap(l_[i], l_[j]);
  if (want_left_inv_)
    for (auto& row : li_) std::swap(row[i], row[j]);
}

void DenseSmith::row_addmul(std::size_t i, std::size_t j, const Int& q) {
  if (q == 0) return;
  for (std::size_t c = lo_col_; c < n_; ++c)
    if (a_[j][c] != 0) a_[i][c] += q * a_[j][c];
  if (!p_.empty())
    for (std::size_t c = 0; c < p_[j].size(); ++c)
      if (p_[j][c] != 0) p_[i][c] += q * p_[j][c];
  if (want_left_)
    for (std::size_t c = 0; c < m_; ++c)
      if (l_[j][c] != 0) l_[i][c] += q * l_[j][c];
  if (want_left_inv_)
    for (auto& row : li_)
      if (row[i] != 0) row[j] -= q * row[i];
}

void DenseSmith::row_neg(std::size_t i) {
  for (auto& v : a_[i]) v = -v;
  if (!p_.empty())
    for (auto& v : p_[i]) v = -v;
  if (want_left_)
    for (auto& v : l_[i]) v = -v;
  if (want_left_inv_)
    for (auto& row : li_) row[i] = -row[i];
}

void DenseSmith::col_swap(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (auto& row : a_) std::swap(row[i], row[j]);
  if (want_right_)
    for (auto& row : r_) std::swap(row[i], row[j]);
  if (want_right_inv_) std::swap(ri_[i], ri_[j]);
}

void DenseSmith::col_addmul(std::size_t i, std::size_t j, const Int& q) {
  if (q == 0) return;
  for (auto& row : a_)
    if (row[j] != 0) row[i] += q * row[j];
  if (want_right_)
    for (auto& row : r_)
      if (row[j] != 0) row[i] += q * row[j];
  if (want_right_inv_)
    for (std::size_t c = 0; c < n_; ++c)
      if (ri_[i][c] != 0) ri_[j][c] -= q * ri_[i][c];
}

bool DenseSmith::pick_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
  bool found = false;
  for (std::size_t i = t; i < m_; ++i)
    for (std::size_t j = t; j < n_; ++j) {
      const Int& v = a_[i][j];
      if (v == 0) continue;
      if (!found || mpz_cmpabs(v.get_mpz_t(), a_[pi][pj].get_mpz_t()) < 0) {
        pi = i;
        pj = j;
        found = true;
        if (is_unit(v)) return true;
      }
    }
  return found;
}

void DenseSmith::run() {
  if (want_left_) {
    l_.assign(m_, IntVector(m_, 0));
    for (std::size_t i = 0; i < m_; ++i) l_[i][i] = 1;
  }
  if (want_left_inv_) {
    li_.assign(m_, IntVector(m_, 0));
    for (std::size_t i = 0; i < m_; ++i) li_[i][i] = 1;
  }
  if (want_right_) {
    r_.assign(n_, IntVector(n_, 0));
    for (std::size_t i = 0; i < n_; ++i) r_[i][i] = 1;
  }
  if (want_right_inv_) {
    ri_.assign(n_, IntVector(n_, 0));
    for (std::size_t i = 0; i < n_; ++i) ri_[i][i] = 1;
  }
  rank_ = 0;
  lo_col_ = 0;
  const std::size_t lim = std::min(m_, n_);
  for (std::size_t t = 0; t < lim; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!pick_pivot(t, pi, pj)) break;
    row_swap(t, pi);
    col_swap(t, pj);
    lo_col_ = t;
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m_; ++i) {
        if (a_[i][t] == 0) continue;
        row_addmul(i, t, -floor_div(a_[i][t], a_[t][t]));
        if (a_[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n_; ++j) {
        if (a_[t][j] == 0) continue;
        col_addmul(j, t, -floor_div(a_[t][j], a_[t][t]));
        if (a_[t][j] != 0) dirty = true;
      }
      if (dirty) {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m_; ++i)
          if (a_[i][t] != 0 && mpz_cmpabs(a_[i][t].get_mpz_t(), a_[bi][bj].get_mpz_t()) < 0) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n_; ++j)
          if (a_[t][j] != 0 && mpz_cmpabs(a_[t][j].get_mpz_t(), a_[bi][bj].get_mpz_t()) < 0) {
            bi = t;
            bj = j;
          }
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      bool fixed = false;
      for (std::size_t i = t + 1; i < m_ && !fixed; ++i)
        for (std::size_t j = t + 1; j < n_; ++j)
          if (a_[i][j] != 0 && !mpz_divisible_p(a_[i][j].get_mpz_t(), a_[t][t].get_mpz_t())) {
            row_addmul(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (a_[t][t] < 0) row_neg(t);
    ++rank_;
  }
}

SparseReducer::SparseReducer(std::size_t cols, std::size_t passenger_cols)
    : n_(cols), q_(passenger_cols) {}

std::size_t SparseReducer::add_row(SparseRow row, SparseRow passenger) {
  if (reduced_) throw std::logic_error("SparseReducer: add_row after reduce");
  std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::sort(passenger.begin(), passenger.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  row = merge_duplicates(std::move(row));
  passenger = merge_duplicates(std::move(passenger));
  for (const auto& e : row)
    if (e.first >= n_) throw DimensionMismatch("SparseReducer column");
  for (const auto& e : passenger)
    if (e.first >= q_) throw DimensionMismatch("SparseReducer passenger column");
  std::erase_if(row, [](const auto& e) { return e.second == 0; });
  std::erase_if(passenger, [](const auto& e) { return e.second == 0; });
  rows_.push_back(std::move(row));
  pass_.push_back(std::move(passenger));
  return rows_.size() - 1;
}

void SparseReducer::reduce() {
  if (reduced_) return;
  reduced_ = true;
  const std::size_t m = rows_.size();
  std::vector<char> row_active(m, 1), col_active(n_, 1);
  std::vector<std::uint32_t> col_count(n_);
  std::vector<std::vector<std::uint32_t>> col_rows(n_);

  for (;;) {
    std::fill(col_count.begin(), col_count.end(), 0);
    for (auto& v : col_rows) v.clear();
    for (std::size_t r = 0; r < m; ++r) {
      if (!row_active[r]) continue;
      for (const auto& e : rows_[r]) {
        ++col_count[e.first];
        col_rows[e.first].push_back(static_cast<std::uint32_t>(r));
      }
    }
    std::size_t best_r = m, best_c = n_;
    std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t r = 0; r < m && best_cost > 0; ++r) {
      if (!row_active[r] || rows_[r].empty()) continue;
      const std::uint64_t rn = rows_[r].size() - 1;
      for (const auto& e : rows_[r]) {
        if (!is_unit(e.second)) continue;
        const std::uint64_t cost = rn * (col_count[e.first] - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best_r = r;
          best_c = e.first;
        }
      }
    }
    if (best_r == m) break;

    const SparseRow prow = rows_[best_r];
    const SparseRow ppass = pass_[best_r];
    const int sign = sgn(std::find_if(prow.begin(), prow.end(),
                                      [&](const auto& e) { return e.first == best_c; })
                             ->second);
    for (std::uint32_t r : col_rows[best_c]) {
      if (r == best_r) continue;
      auto it = std::lower_bound(rows_[r].begin(), rows_[r].end(), best_c,
                                 [](const auto& e, std::uint32_t c) { return e.first < c; });
      Int f = -it->second * sign;
      rows_[r] = sparse_axpy(rows_[r], f, prow);
      if (!ppass.empty()) pass_[r] = sparse_axpy(pass_[r], f, ppass);
    }
    pivots_.push_back({static_cast<std::uint32_t>(best_r), static_cast<std::uint32_t>(best_c), sign,
                       prow, ppass});
    row_active[best_r] = 0;
    col_active[best_c] = 0;
  }

  std::vector<std::size_t> core_rows;
  for (std::size_t r = 0; r < m; ++r) {
    if (!row_active[r]) continue;
    if (rows_[r].empty())
      null_pass_.push_back(pass_[r]);
    else
      core_rows.push_back(r);
  }
  std::vector<std::uint32_t> col_pos(n_, 0);
  for (std::size_t c = 0; c < n_; ++c)
    if (col_active[c]) {
      col_pos[c] = static_cast<std::uint32_t>(core_cols_.size());
      core_cols_.push_back(static_cast<std::uint32_t>(c));
    }
  const std::size_t nc = core_cols_.size();
  std::vector<IntVector> dense(core_rows.size(), IntVector(nc, 0));
  std::vector<IntVector> dpass(core_rows.size(), IntVector(q_, 0));
  for (std::size_t i = 0; i < core_rows.size(); ++i) {
    for (const auto& e : rows_[core_rows[i]]) dense[i][col_pos[e.first]] = e.second;
    for (const auto& e : pass_[core_rows[i]]) dpass[i][e.first] = e.second;
  }
  DenseSmith smith(std::move(dense), nc, std::move(dpass));
  smith.track_right(true);
  smith.run();
  core_rank_ = smith.rank();
  core_right_ = smith.right();
  for (std::size_t i = 0; i < core_rows.size(); ++i) {
    SparseRow p;
    for (std::size_t c = 0; c < q_; ++c)
      if (smith.passengers()[i][c] != 0)
        p.emplace_back(static_cast<std::uint32_t>(c), smith.passengers()[i][c]);
    if (i < core_rank_) {
      core_diag_.push_back(smith.diagonal(i));
      core_pass_.push_back(std::move(p));
    } else {
      null_pass_.push_back(std::move(p));
    }
  }
  rows_.clear();
  rows_.shrink_to_fit();
  pass_.clear();
  pass_.shrink_to_fit();
}

RatVector SparseReducer::back_substitute(RatVector x) const {
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    Rat acc = 0;
    for (const auto& [c, v] : it->coeffs)
      if (c != it->col) acc += v * x[c];
    x[it->col] = -acc * it->sign;
  }
  return x;
}

std::optional<RatVector> SparseReducer::solve(std::size_t j, const std::map<std::size_t, Rat>& adjust,
                                              bool integral) const {
  if (!reduced_) throw std::logic_error("SparseReducer: solve before reduce");
  const std::size_t nc = core_cols_.size();
  RatVector y(nc, 0);
  for (std::size_t i = 0; i < core_rank_; ++i) {
    Rat rhs = 0;
    for (const auto& [c, v] : core_pass_[i])
      if (c == j) rhs = v;
    if (auto it = adjust.find(i); it != adjust.end()) rhs += it->second;
    Rat yi = canonical(rhs / core_diag_[i]);
    if (integral && yi.get_den() != 1) return std::nullopt;
    y[i] = yi;
  }
  RatVector x(n_, 0);
  for (std::size_t a = 0; a < nc; ++a) {
    Rat s = 0;
    for (std::size_t b = 0; b < core_rank_; ++b)
      if (core_right_[a][b] != 0) s += core_right_[a][b] * y[b];
    x[core_cols_[a]] = s;
  }
  // Pivot rows: x_c = sign * (rhs - sum of other coefficients).
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    Rat rhs = 0;
    for (const auto& [c, v] : it->passenger)
      if (c == j) rhs = v;
    Rat acc = 0;
    for (const auto& [c, v] : it->coeffs)
      if (c != it->col) acc += v * x[c];
    x[it->col] = (rhs - acc) * it->sign;
  }
  return x;
}

std::vector<IntVector> SparseReducer::kernel() const {
  if (!reduced_) throw std::logic_error("SparseReducer: kernel before reduce");
  std::vector<IntVector> out;
  const std::size_t nc = core_cols_.size();
  for (std::size_t t = core_rank_; t < nc; ++t) {
    RatVector x(n_, 0);
    for (std::size_t a = 0; a < nc; ++a) x[core_cols_[a]] = core_right_[a][t];
    x = back_substitute(std::move(x));
    IntVector k(n_);
    for (std::size_t i = 0; i < n_; ++i) k[i] = x[i].get_num();
    out.push_back(std::move(k));
  }
  return out;
}

}  // namespace tropweil
