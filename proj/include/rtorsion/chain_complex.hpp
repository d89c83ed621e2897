#pragma once

#include "rtorsion/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rtorsion {

// C_n -> C_{n-1} -> ... -> C_0, boundaries[p-1] is d_p of shape
// dims[p-1] x dims[p]. Degrees may be zero-dimensional.
struct ChainComplex {
  int n = 0;
  std::vector<int> dims;           // size n+1
  std::vector<Matrix> boundaries;  // size n

  const Matrix& boundary(int p) const { return boundaries[static_cast<std::size_t>(p) - 1]; }
  int dim(int p) const {
    if (p < 0 || p > n) return 0;
    return dims[static_cast<std::size_t>(p)];
  }
  // d_p for any p; p <= 0 and p > n give the zero map with correct shape.
  Matrix boundary_or_zero(int p) const;
};

struct Violation {
  std::string what;
  int degree = -1;
};

// ok (= nullopt) iff shapes are consistent and d(p) . d(p+1) = 0 for all p.
// Violations are data, not faults; the report names the first failing degree.
std::optional<Violation> validate_complex(const ChainComplex& c);

// Per degree p: cycle_basis spans ker d_p, boundary_basis spans im d_{p+1},
// homology_reps are cycles whose classes form a basis of H_p (completion of
// boundary_basis inside cycle_basis), lifts satisfies
// d_p * lifts[p] = boundary_basis[p-1] column for column.
struct HomologyData {
  std::vector<Matrix> cycle_basis;
  std::vector<Matrix> boundary_basis;
  std::vector<Matrix> homology_reps;
  std::vector<Matrix> lifts;
  std::vector<int> betti;

  int rank_boundary(int p) const;  // rank of d_p (0 outside 1..n)
};

// Throws std::invalid_argument if validate_complex fails.
HomologyData compute_homology(const ChainComplex& c);

// bases[p] is a matrix of columns in ambient C_p coordinates.
using BasisFamily = std::vector<Matrix>;

BasisFamily standard_bases(const ChainComplex& c);

struct SplitPart {
  ChainComplex complex;
  BasisFamily embedding;  // columns: the part's basis inside C_p
};

struct SplitResult {
  SplitPart exact_part;  // spans of boundary_basis + lifts, restricted d
  SplitPart dzero_part;  // spans of homology_reps, zero d
};

SplitResult split_general(const ChainComplex& c);

// Coordinates of [cycle] in the homology_reps basis at degree p.
// Throws if cycle is not a cycle.
Matrix class_reduce(const ChainComplex& c, const HomologyData& h, int p,
                    const Matrix& cycle);

// Coordinates of [cycle] in the classes of the given representative columns
// (which must be cycles with independent classes).
Matrix class_coords_in(const ChainComplex& c, const HomologyData& h, int p,
                       const Matrix& basis_reps, const Matrix& cycle);

// Degreewise direct sum, first summand's coordinates first.
ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);

}  // namespace rtorsion
