#pragma once

#include "rtorsion/matrix.hpp"

#include <optional>
#include <vector>

namespace rtorsion {

struct RrefResult {
  Matrix rref;
  std::vector<std::size_t> pivot_columns;
  Matrix transform;  // invertible, transform * input = rref
};

// Gauss-Jordan with the deterministic pivot rule: leftmost unfinished
// column, topmost nonzero entry. No magnitude pivoting; arithmetic is exact.
RrefResult rref_decompose(const Matrix& m);

std::size_t rank(const Matrix& m);

// Throws std::invalid_argument on non-square input.
Rational determinant(const Matrix& m);

// Columns form a basis of ker m; count = cols - rank. Free columns are
// taken in ascending order with the free variable set to 1.
Matrix kernel_basis(const Matrix& m);

// Pivot columns of m itself, in ascending pivot order; count = rank.
Matrix column_space_basis(const Matrix& m);

// Canonical solution of m x = b with free variables zeroed; b may have
// several columns (each solved independently). nullopt when unsolvable.
std::optional<Matrix> solve_linear(const Matrix& m, const Matrix& b);

// [f,e] = det T with new_basis = old_basis * T. Both arguments are column
// families in ambient coordinates; they must be independent, of equal
// count, and span the same subspace. Throws otherwise.
Rational change_of_basis_det(const Matrix& new_basis, const Matrix& old_basis);

// Throws std::invalid_argument on singular or non-square input.
Matrix inverse(const Matrix& m);

}  // namespace rtorsion
