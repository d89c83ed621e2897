#pragma once

#include "rtorsion/matrix.hpp"

namespace rtorsion {

// Exact combinatorial Pfaffian (first-row expansion over the remaining
// index set). Requires a square, even-sided, skew-symmetric matrix; the
// 0x0 matrix gives 1. pfaffian(a)^2 = det(a).
Rational pfaffian(const Matrix& a);

}  // namespace rtorsion
