// SPDX-License-Identifier: Apache-2.0
//
// Minimal sparse layer used by every solver: triplet accumulation, CSR
// compression, symmetric Dirichlet elimination, and a direct LU solve backed
// by Eigen's SparseLU with COLAMD ordering (deterministic for a fixed
// pattern, no pivoting randomness).

#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace sgfem {

struct TripletBuffer {
  struct Entry {
    int row;
    int col;
    double value;
  };
  std::vector<Entry> entries;

  void add(int i, int j, double v) { entries.push_back({i, j, v}); }
  void reserve(std::size_t n) { entries.reserve(n); }
  std::size_t size() const { return entries.size(); }
};

/// Compressed sparse row storage; column indices ascending within each row.
/// Entries that sum to zero are kept so the sparsity pattern is reproducible.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> values;

  int nnz() const { return static_cast<int>(values.size()); }

  double* find(int i, int j) {
    const int lo = row_ptr[static_cast<std::size_t>(i)];
    const int hi = row_ptr[static_cast<std::size_t>(i) + 1];
    auto first = col_idx.begin() + lo;
    auto last = col_idx.begin() + hi;
    auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return nullptr;
    return &values[static_cast<std::size_t>(it - col_idx.begin())];
  }
  const double* find(int i, int j) const { return const_cast<SparseMatrix*>(this)->find(i, j); }
};

inline SparseMatrix compress(const TripletBuffer& buf, int rows, int cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("compress: negative dimensions");
  std::vector<TripletBuffer::Entry> sorted = buf.entries;
  for (const auto& e : sorted)
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
      throw std::invalid_argument("compress: triplet index out of range");
  // The value participates in the ordering so each entry's contributions are
  // summed in a canonical order: any two dofs that receive the same multiset
  // of element contributions end up with bit-identical sums, which keeps
  // discrete symmetries (periodic shifts, reflections) exact regardless of
  // assembly traversal order.
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.row != b.row) return a.row < b.row;
    if (a.col != b.col) return a.col < b.col;
    return a.value < b.value;
  });

  SparseMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(static_cast<std::size_t>(rows) + 1, 0);
  m.col_idx.reserve(sorted.size());
  m.values.reserve(sorted.size());

  std::size_t k = 0;
  while (k < sorted.size()) {
    const int i = sorted[k].row, j = sorted[k].col;
    double sum = 0.0;
    while (k < sorted.size() && sorted[k].row == i && sorted[k].col == j) sum += sorted[k++].value;
    m.col_idx.push_back(j);
    m.values.push_back(sum);
    ++m.row_ptr[static_cast<std::size_t>(i) + 1];
  }
  for (int i = 0; i < rows; ++i)
    m.row_ptr[static_cast<std::size_t>(i) + 1] += m.row_ptr[static_cast<std::size_t>(i)];
  return m;
}

inline std::vector<double> matvec(const SparseMatrix& A, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != A.cols) throw std::invalid_argument("matvec: size mismatch");
  std::vector<double> y(static_cast<std::size_t>(A.rows), 0.0);
  for (int i = 0; i < A.rows; ++i) {
    double s = 0.0;
    for (int k = A.row_ptr[static_cast<std::size_t>(i)]; k < A.row_ptr[static_cast<std::size_t>(i) + 1];
         ++k)
      s += A.values[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(A.col_idx[static_cast<std::size_t>(k)])];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

/// Symmetric elimination of Dirichlet constraints in place: moves the known
/// columns to the right-hand side, zeroes constrained rows and columns, and
/// puts 1 on their diagonals with the prescribed value in rhs. Repeating a
/// constraint is fine; repeating it with a different value is an error.
inline void apply_dirichlet(SparseMatrix& A, std::vector<double>& rhs,
                            const std::vector<std::pair<int, double>>& constraints) {
  if (A.rows != A.cols) throw std::invalid_argument("apply_dirichlet: matrix must be square");
  if (static_cast<int>(rhs.size()) != A.rows)
    throw std::invalid_argument("apply_dirichlet: rhs size mismatch");

  const std::size_t n = static_cast<std::size_t>(A.rows);
  std::vector<char> fixed(n, 0);
  std::vector<double> value(n, 0.0);
  for (const auto& [dof, v] : constraints) {
    if (dof < 0 || dof >= A.rows) throw std::invalid_argument("apply_dirichlet: dof out of range");
    const auto d = static_cast<std::size_t>(dof);
    if (fixed[d] && value[d] != v)
      throw std::invalid_argument("apply_dirichlet: conflicting values for one dof");
    fixed[d] = 1;
    value[d] = v;
  }

  // Constrained rows must own a diagonal slot; rebuild the pattern when a
  // boundary dof never received a stiffness contribution.
  bool need_diag = false;
  for (int i = 0; i < A.rows && !need_diag; ++i)
    if (fixed[static_cast<std::size_t>(i)] && A.find(i, i) == nullptr) need_diag = true;
  if (need_diag) {
    TripletBuffer buf;
    buf.reserve(A.values.size() + n);
    for (int i = 0; i < A.rows; ++i)
      for (int k = A.row_ptr[static_cast<std::size_t>(i)];
           k < A.row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
        buf.add(i, A.col_idx[static_cast<std::size_t>(k)], A.values[static_cast<std::size_t>(k)]);
    for (int i = 0; i < A.rows; ++i)
      if (fixed[static_cast<std::size_t>(i)]) buf.add(i, i, 0.0);
    A = compress(buf, A.rows, A.cols);
  }

  for (int i = 0; i < A.rows; ++i) {
    const bool row_fixed = fixed[static_cast<std::size_t>(i)] != 0;
    for (int k = A.row_ptr[static_cast<std::size_t>(i)];
         k < A.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
      const int j = A.col_idx[static_cast<std::size_t>(k)];
      double& a = A.values[static_cast<std::size_t>(k)];
      if (row_fixed) {
        a = (j == i) ? 1.0 : 0.0;
      } else if (fixed[static_cast<std::size_t>(j)]) {
        rhs[static_cast<std::size_t>(i)] -= a * value[static_cast<std::size_t>(j)];
        a = 0.0;
      }
    }
    if (row_fixed) rhs[static_cast<std::size_t>(i)] = value[static_cast<std::size_t>(i)];
  }
}

inline std::vector<double> solve_sparse(const SparseMatrix& A, const std::vector<double>& b) {
  if (A.rows != A.cols) throw std::invalid_argument("solve_sparse: matrix must be square");
  if (static_cast<int>(b.size()) != A.rows) throw std::invalid_argument("solve_sparse: rhs size mismatch");
  if (A.rows == 0) return {};

  using RowMajorCsr = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;
  Eigen::Map<const RowMajorCsr> mapped(A.rows, A.cols, A.nnz(), A.row_ptr.data(), A.col_idx.data(),
                                       A.values.data());
  Eigen::SparseMatrix<double> acol = mapped;
  acol.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(acol);
  lu.factorize(acol);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("solve_sparse: LU factorization failed, matrix is singular or ill-posed");

  Eigen::Map<const Eigen::VectorXd> bv(b.data(), A.rows);
  Eigen::VectorXd x = lu.solve(bv);
  if (lu.info() != Eigen::Success) throw std::runtime_error("solve_sparse: back substitution failed");

  // Iterative refinement with the residual accumulated in extended precision.
  // A double-precision residual bottoms out near |A||x| eps, which caps Newton
  // solvers and solution symmetries well above working precision; the wider
  // accumulator pushes that floor down by the extra mantissa bits.
  Eigen::VectorXd r(A.rows);
  for (int pass = 0; pass < 3; ++pass) {
    for (int i = 0; i < A.rows; ++i) {
      long double s = static_cast<long double>(b[static_cast<std::size_t>(i)]);
      for (int k = A.row_ptr[static_cast<std::size_t>(i)];
           k < A.row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
        s -= static_cast<long double>(A.values[static_cast<std::size_t>(k)]) *
             static_cast<long double>(x[A.col_idx[static_cast<std::size_t>(k)]]);
      r[i] = static_cast<double>(s);
    }
    if (r.lpNorm<Eigen::Infinity>() == 0.0) break;
    x += lu.solve(r);
  }
  return std::vector<double>(x.data(), x.data() + A.rows);
}

}  // namespace sgfem
