#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hypcyc/rational.hpp"

namespace hypcyc {

// Column-major sparse matrix over the rationals. Each column is sorted by
// row index. Exact arithmetic throughout.
struct SparseMatrix {
  long rows = 0;
  long cols = 0;
  std::vector<std::vector<std::pair<long, Rat>>> col;

  SparseMatrix() = default;
  SparseMatrix(long r, long c) : rows(r), cols(c), col(size_t(c)) {}

  void set(long r, long c, const Rat& v) {
    if (v == 0) return;
    auto& cc = col[size_t(c)];
    auto it = std::lower_bound(cc.begin(), cc.end(), r,
                               [](const auto& p, long row) { return p.first < row; });
    if (it != cc.end() && it->first == r)
      it->second = v;
    else
      cc.insert(it, {r, v});
  }

  void add(long r, long c, const Rat& v) {
    if (v == 0) return;
    auto& cc = col[size_t(c)];
    auto it = std::lower_bound(cc.begin(), cc.end(), r,
                               [](const auto& p, long row) { return p.first < row; });
    if (it != cc.end() && it->first == r) {
      it->second += v;
      if (it->second == 0) cc.erase(it);
    } else {
      cc.insert(it, {r, v});
    }
  }

  long nnz() const {
    long n = 0;
    for (const auto& c : col) n += long(c.size());
    return n;
  }
};

namespace detail {

// y -= s * x   (sparse sorted columns)
inline void axpy_sub(std::vector<std::pair<long, Rat>>& y,
                     const std::vector<std::pair<long, Rat>>& x, const Rat& s) {
  std::vector<std::pair<long, Rat>> out;
  out.reserve(y.size() + x.size());
  size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(y[i++]);
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, -s * x[j].second);
      ++j;
    } else {
      Rat v = y[i].second - s * x[j].second;
      if (v != 0) out.emplace_back(y[i].first, v);
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

}  // namespace detail

// Exact rank by left-to-right column reduction against recorded pivot
// columns (the reduction scheme persistent-homology codes use, over Q).
inline long exact_rank(const SparseMatrix& m) {
  std::vector<long> pivot_of_row(size_t(m.rows), -1);
  std::vector<std::vector<std::pair<long, Rat>>> reduced;
  reduced.reserve(size_t(m.cols));
  long rank = 0;
  for (long c = 0; c < m.cols; ++c) {
    auto cur = m.col[size_t(c)];
    while (!cur.empty()) {
      long low = cur.back().first;
      long p = pivot_of_row[size_t(low)];
      if (p < 0) break;
      Rat s = cur.back().second / reduced[size_t(p)].back().second;
      detail::axpy_sub(cur, reduced[size_t(p)], s);
    }
    if (!cur.empty()) {
      pivot_of_row[size_t(cur.back().first)] = long(reduced.size());
      reduced.push_back(std::move(cur));
      ++rank;
    }
  }
  return rank;
}

inline long nullity(const SparseMatrix& m) { return m.cols - exact_rank(m); }

// One particular solution of A x = b (free variables set to zero), or
// nullopt when inconsistent. Row-echelon elimination on sparse rows.
inline std::optional<std::vector<Rat>> solve(const SparseMatrix& A,
                                             const std::vector<Rat>& b) {
  if (long(b.size()) != A.rows) throw invalid_input_error("solve: size mismatch");
  // build sparse rows of [A | b]
  std::vector<std::vector<std::pair<long, Rat>>> row(size_t(A.rows));
  for (long c = 0; c < A.cols; ++c)
    for (const auto& [r, v] : A.col[size_t(c)]) row[size_t(r)].emplace_back(c, v);
  for (long r = 0; r < A.rows; ++r) {
    std::sort(row[size_t(r)].begin(), row[size_t(r)].end());
    if (b[size_t(r)] != 0) row[size_t(r)].emplace_back(A.cols, b[size_t(r)]);
  }
  std::vector<long> pivot_col_of_row;
  std::vector<long> echelon;  // indices of pivot rows in elimination order
  std::vector<char> used(size_t(A.rows), 0);
  for (long c = 0; c < A.cols; ++c) {
    // choose the sparsest unused row with leading entry in column c
    long best = -1;
    for (long r = 0; r < A.rows; ++r) {
      if (used[size_t(r)] || row[size_t(r)].empty()) continue;
      if (row[size_t(r)].front().first != c) continue;
      if (best < 0 || row[size_t(r)].size() < row[size_t(best)].size()) best = r;
    }
    if (best < 0) continue;
    used[size_t(best)] = 1;
    echelon.push_back(best);
    pivot_col_of_row.push_back(c);
    const auto piv = row[size_t(best)];
    Rat pv = piv.front().second;
    for (long r = 0; r < A.rows; ++r) {
      if (used[size_t(r)] || row[size_t(r)].empty()) continue;
      if (row[size_t(r)].front().first != c) continue;
      Rat s = row[size_t(r)].front().second / pv;
      detail::axpy_sub(row[size_t(r)], piv, s);
    }
  }
  // inconsistent iff any remaining row is (0,...,0 | nonzero)
  for (long r = 0; r < A.rows; ++r)
    if (!used[size_t(r)] && !row[size_t(r)].empty())
      if (row[size_t(r)].front().first == A.cols) return std::nullopt;
  std::vector<Rat> x(size_t(A.cols), Rat(0));
  for (long i = long(echelon.size()) - 1; i >= 0; --i) {
    const auto& rr = row[size_t(echelon[size_t(i)])];
    long pc = pivot_col_of_row[size_t(i)];
    Rat rhs(0);
    Rat pv(0);
    for (const auto& [c, v] : rr) {
      if (c == pc)
        pv = v;
      else if (c == A.cols)
        rhs += v;
      else
        rhs -= v * x[size_t(c)];
    }
    x[size_t(pc)] = rhs / pv;
  }
  return x;
}

}  // namespace hypcyc
