#pragma once

#include <cstddef>
#include <vector>

#include "orbitred/rational_function.hpp"

namespace orbitred {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::vector<std::vector<T>> rows) : rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size()) {
    data_.reserve(rows_ * cols_);
    for (auto& r : rows) {
      if (r.size() != cols_) throw InvalidArgument("ragged matrix");
      for (auto& v : r) data_.push_back(std::move(v));
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix select(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    Matrix m(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs.at(i), cs.at(j));
    return m;
  }

  template <class F>
  auto map(F&& fn) const {
    using U = decltype(fn(std::declval<const T&>()));
    Matrix<U> m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = fn((*this)(i, j));
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using PolyMatrix = Matrix<Polynomial>;

/// Bareiss elimination. Throws InvalidArgument on non-square input.
Polynomial det_fraction_free(const PolyMatrix& m);

struct LinearSolution {
  bool consistent = true;
  std::size_t rank = 0;
  /// One entry per column; free unknowns are 0. Empty when inconsistent.
  std::vector<RationalFunction> solution;
  /// Successive Bareiss pivots; the k-th is a (k+1)-minor of the input.
  std::vector<Polynomial> pivot_minors;
  std::vector<std::size_t> pivot_rows, pivot_cols;
  /// Determinant of the rank x rank block on pivot_rows x pivot_cols
  /// (1 when the rank is 0). The solution is valid wherever it is nonzero.
  Polynomial determinant;
};

/// Solve m * x = f over the fraction field of the parameter ring, treating
/// parameters as generic. Full pivoting: fewest terms, then greatest
/// leading monomial, then lowest row and column.
LinearSolution solve_linear(const PolyMatrix& m, const std::vector<Polynomial>& f);
LinearSolution solve_linear(const PolyMatrix& m, const std::vector<RationalFunction>& f);

/// Generic rank over the parameter fraction field.
std::size_t generic_rank(const PolyMatrix& m);

/// Split a nonzero polynomial into single-indeterminate factors (from its
/// monomial content, each once) and one primitive cofactor. The
/// rational content is dropped.
std::vector<Polynomial> condition_factors(const Polynomial& p);

/// Primitive part with positive leading coefficient.
Polynomial normalize_condition(const Polynomial& p);

/// Whether p and q have the same zero set in the sense p | q^k and q | p^k
/// for some k <= max_power.
bool same_vanishing_locus(const Polynomial& p, const Polynomial& q, unsigned max_power = 6);

/// Whether p / q is a nonzero rational constant.
bool proportional(const Polynomial& p, const Polynomial& q);

}  // namespace orbitred
