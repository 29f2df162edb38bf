#ifndef TANAKA_LINALG_HPP
#define TANAKA_LINALG_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tanaka/errors.hpp"
#include "tanaka/rational.hpp"

namespace tanaka {

/// Dense matrix over an exact field F (Rational, or a quadratic extension of it).
template <class F>
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = F(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  F& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const F& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  void append_row(const std::vector<F>& row) {
    if (cols_ == 0 && rows_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw ConsistencyError("appended row has wrong length");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

  std::vector<F> row(size_t i) const {
    return std::vector<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  void swap_rows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

private:
  size_t rows_, cols_;
  std::vector<F> data_;
};

/// In-place reduced row echelon form. Deterministic pivoting: columns scanned
/// left to right, pivot row = first unused row with a nonzero entry.
/// Returns the pivot column indices in order.
template <class F>
std::vector<size_t> rref(Matrix<F>& m) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t p = r;
    while (p < m.rows() && m.at(p, c) == F(0)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    const F inv = F(1) / m.at(r, c);
    for (size_t j = c; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == F(0)) continue;
      const F f = m.at(i, c);
      for (size_t j = c; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
size_t rank(Matrix<F> m) {
  return rref(m).size();
}

/// Basis of the right kernel {x : A x = 0}, one vector per free column,
/// in increasing free-column order.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> a) {
  const std::vector<size_t> pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<F>> basis;
  for (size_t fc = 0; fc < a.cols(); ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<F> v(a.cols(), F(0));
    v[fc] = F(1);
    for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a.at(k, fc);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One exact solution of A x = b, or nullopt if inconsistent.
/// Free variables are set to zero (deterministic particular solution).
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& a, const std::vector<F>& b) {
  if (b.size() != a.rows()) throw ConsistencyError("solve: rhs length mismatch");
  Matrix<F> aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  const std::vector<size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<F> x(a.cols(), F(0));
  for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(k, a.cols());
  return x;
}

/// Is v in the span of the rows of m?
template <class F>
bool in_row_span(const Matrix<F>& m, const std::vector<F>& v) {
  Matrix<F> t(m.cols(), m.rows());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
  return solve(t, v).has_value();
}

/// Row-reduced basis of A(ker C): the image under A of the kernel of C,
/// computed without materializing the kernel (C and A share column count).
template <class F>
std::vector<std::vector<F>> image_of_kernel(Matrix<F> c, const Matrix<F>& a) {
  if (c.cols() != a.cols()) throw ConsistencyError("image_of_kernel: column mismatch");
  const std::vector<size_t> pivots = rref(c);
  std::vector<bool> is_pivot(c.cols(), false);
  for (size_t p : pivots) is_pivot[p] = true;
  Matrix<F> img;
  for (size_t fc = 0; fc < c.cols(); ++fc) {
    if (is_pivot[fc]) continue;
    // kernel vector: 1 at fc, -c.at(k, fc) at pivot columns
    std::vector<F> w(a.rows(), F(0));
    for (size_t i = 0; i < a.rows(); ++i) {
      w[i] = a.at(i, fc);
      for (size_t k = 0; k < pivots.size(); ++k)
        w[i] = w[i] - a.at(i, pivots[k]) * c.at(k, fc);
    }
    img.append_row(w);
  }
  if (img.rows() == 0) return {};
  const std::vector<size_t> ip = rref(img);
  std::vector<std::vector<F>> basis;
  for (size_t k = 0; k < ip.size(); ++k) basis.push_back(img.row(k));
  return basis;
}

/// Incrementally grown basis that remembers which candidate vectors were kept.
/// Used to pick nested adapted bases with a deterministic pivot order.
template <class F>
class IncrementalBasis {
public:
  explicit IncrementalBasis(size_t dim) : dim_(dim), reduced_(0, dim) {}

  // Returns true (and keeps v) iff v is independent of the vectors kept so far.
  bool add(const std::vector<F>& v) {
    if (v.size() != dim_) throw ConsistencyError("IncrementalBasis: wrong length");
    Matrix<F> probe = reduced_;
    probe.append_row(v);
    if (rref(probe).size() <= kept_.size()) return false;
    reduced_ = probe;
    kept_.push_back(v);
    return true;
  }

  size_t size() const { return kept_.size(); }
  const std::vector<std::vector<F>>& vectors() const { return kept_; }

  /// Coordinates of v in the kept vectors, or nullopt if outside their span.
  std::optional<std::vector<F>> coordinates(const std::vector<F>& v) const {
    Matrix<F> t(dim_, kept_.size());
    for (size_t i = 0; i < kept_.size(); ++i)
      for (size_t j = 0; j < dim_; ++j) t.at(j, i) = kept_[i][j];
    return solve(t, v);
  }

private:
  size_t dim_;
  Matrix<F> reduced_;
  std::vector<std::vector<F>> kept_;
};

} // namespace tanaka

#endif
