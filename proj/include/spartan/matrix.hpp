#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spartan/error.hpp"

namespace spartan {

// Dense row-major n x d matrix of doubles; the common currency of the
// pipeline (samples, transformed clouds, design points).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != m.cols_) throw DataError("from_rows: ragged rows");
      std::size_t j = 0;
      for (double v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return values_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) {
    return {values_.data() + i * cols_, cols_};
  }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  // Sample-matrix invariant: at least one row/col, all entries finite.
  void validate(const std::string& what = "sample matrix") const {
    if (rows_ == 0 || cols_ == 0) throw DataError(what + ": empty matrix");
    for (double v : values_)
      if (!std::isfinite(v)) throw DataError(what + ": non-finite value");
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && values_ == o.values_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

using SampleMatrix = Matrix;

// Symmetric d x d matrix. Construction enforces exact symmetry.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim, double fill = 0.0)
      : dim_(dim), values_(dim * dim, fill) {}

  static SymMatrix identity(std::size_t dim) {
    SymMatrix s(dim);
    for (std::size_t i = 0; i < dim; ++i) s(i, i) = 1.0;
    return s;
  }

  static SymMatrix from_matrix(const Matrix& m, double tol = 0.0) {
    if (m.rows() != m.cols()) throw DataError("SymMatrix: not square");
    SymMatrix s(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (std::abs(m(i, j) - m(j, i)) > tol)
          throw DataError("SymMatrix: input is not symmetric");
        s(i, j) = 0.5 * (m(i, j) + m(j, i));
      }
    return s;
  }

  std::size_t dim() const { return dim_; }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * dim_ + j]; }

  // Assign both (i,j) and (j,i) so symmetry is exact by construction.
  void set(std::size_t i, std::size_t j, double v) {
    values_[i * dim_ + j] = v;
    values_[j * dim_ + i] = v;
  }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  const std::vector<double>& values() const { return values_; }

  bool operator==(const SymMatrix& o) const {
    return dim_ == o.dim_ && values_ == o.values_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return s;
}

}  // namespace spartan
