#include "rtorsion/linalg.hpp"

#include <stdexcept>

namespace rtorsion {

RrefResult rref_decompose(const Matrix& m) {
  RrefResult res{m, {}, Matrix::identity(m.rows())};
  Matrix& a = res.rref;
  Matrix& t = res.transform;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
    std::size_t piv = pivot_row;
    while (piv < a.rows() && a.at(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != pivot_row) {
      a.swap_rows(piv, pivot_row);
      t.swap_rows(piv, pivot_row);
    }
    const Rational inv_pivot = Rational(1) / a.at(pivot_row, col);
    for (std::size_t j = 0; j < a.cols(); ++j) a.at(pivot_row, j) *= inv_pivot;
    for (std::size_t j = 0; j < t.cols(); ++j) t.at(pivot_row, j) *= inv_pivot;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == pivot_row || a.at(i, col) == 0) continue;
      const Rational factor = a.at(i, col);
      for (std::size_t j = 0; j < a.cols(); ++j)
        a.at(i, j) -= factor * a.at(pivot_row, j);
      for (std::size_t j = 0; j < t.cols(); ++j)
        t.at(i, j) -= factor * t.at(pivot_row, j);
    }
    res.pivot_columns.push_back(col);
    ++pivot_row;
  }
  return res;
}

std::size_t rank(const Matrix& m) { return rref_decompose(m).pivot_columns.size(); }

Rational determinant(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;  // det of the empty matrix
  Matrix a = m;
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a.at(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      a.swap_rows(piv, col);
      det = -det;
    }
    det *= a.at(col, col);
    const Rational inv_pivot = Rational(1) / a.at(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a.at(i, col) == 0) continue;
      const Rational factor = a.at(i, col) * inv_pivot;
      for (std::size_t j = col; j < n; ++j) a.at(i, j) -= factor * a.at(col, j);
    }
  }
  return det;
}

Matrix kernel_basis(const Matrix& m) {
  const RrefResult r = rref_decompose(m);
  std::vector<std::size_t> free_cols;
  {
    std::size_t next_pivot = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (next_pivot < r.pivot_columns.size() && r.pivot_columns[next_pivot] == j) {
        ++next_pivot;
      } else {
        free_cols.push_back(j);
      }
    }
  }
  Matrix out(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    out.at(free_cols[k], k) = 1;
    for (std::size_t i = 0; i < r.pivot_columns.size(); ++i) {
      out.at(r.pivot_columns[i], k) = -r.rref.at(i, free_cols[k]);
    }
  }
  return out;
}

Matrix column_space_basis(const Matrix& m) {
  return m.columns(rref_decompose(m).pivot_columns);
}

std::optional<Matrix> solve_linear(const Matrix& m, const Matrix& b) {
  if (b.rows() != m.rows()) throw std::invalid_argument("solve_linear rhs shape");
  const RrefResult r = rref_decompose(hcat(m, b));
  for (std::size_t p : r.pivot_columns) {
    if (p >= m.cols()) return std::nullopt;  // pivot in an rhs column
  }
  Matrix x(m.cols(), b.cols());
  for (std::size_t i = 0; i < r.pivot_columns.size(); ++i) {
    for (std::size_t k = 0; k < b.cols(); ++k) {
      x.at(r.pivot_columns[i], k) = r.rref.at(i, m.cols() + k);
    }
  }
  return x;
}

Rational change_of_basis_det(const Matrix& new_basis, const Matrix& old_basis) {
  if (new_basis.cols() != old_basis.cols()) {
    throw std::invalid_argument("change_of_basis_det: column counts differ");
  }
  if (new_basis.rows() != old_basis.rows()) {
    throw std::invalid_argument("change_of_basis_det: ambient dimensions differ");
  }
  if (rank(old_basis) != old_basis.cols()) {
    throw std::invalid_argument("change_of_basis_det: old family is dependent");
  }
  const auto t = solve_linear(old_basis, new_basis);
  if (!t) throw std::invalid_argument("change_of_basis_det: spans differ");
  const Rational d = determinant(*t);
  if (d == 0) throw std::invalid_argument("change_of_basis_det: new family is dependent");
  return d;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  const RrefResult r = rref_decompose(m);
  if (r.pivot_columns.size() != m.rows()) {
    throw std::invalid_argument("inverse of singular matrix");
  }
  return r.transform;
}

}  // namespace rtorsion
