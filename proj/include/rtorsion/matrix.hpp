#pragma once

#include "rtorsion/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace rtorsion {

// Dense rational matrix, row-major. Zero-row and zero-column shapes are
// legal and show up constantly (empty degrees, empty boundary bases).
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const Matrix& other) const = default;

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;  // throws on dimension mismatch
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-() const;
  Matrix scaled(const Rational& factor) const;

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix column(std::size_t j) const;
  Matrix columns(const std::vector<std::size_t>& indices) const;
  void set_column(std::size_t j, const Matrix& col);
  void swap_columns(std::size_t a, std::size_t b);
  void negate_column(std::size_t j);

  void swap_rows(std::size_t a, std::size_t b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> data_;
};

// [a | b]; both must have the same row count (either may have 0 columns).
Matrix hcat(const Matrix& a, const Matrix& b);

}  // namespace rtorsion
