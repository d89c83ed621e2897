#pragma once

#include "rtorsion/torsion.hpp"

#include <optional>
#include <vector>

namespace rtorsion {

// Pairings[p] is the matrix of omega_{p,n-p} : C_p x C_{n-p} -> Q, shape
// dims[p] x dims[n-p]; omega(a, b) = a^T Omega_p b.
struct SymplecticComplex {
  ChainComplex base;
  std::vector<Matrix> pairings;  // size n+1

  int n() const { return base.n; }
  int middle() const { return base.n / 2; }
};

// Checks n = 2 (mod 4), antisymmetry Omega_{n-p} = (-1)^p Omega_p^T,
// non-degeneracy, and the boundary compatibility
// d_{p+1}^T Omega_p = (-1)^{p+1} Omega_{p+1} d_{n-p}.
std::optional<Violation> validate_symplectic(const SymplecticComplex& s);

struct HomologyPairing {
  std::vector<Matrix> matrices;  // [omega_{p,n-p}] in the homology bases
};

// Matrices of the induced pairings on homology in the given bases.
// Degeneracy is an invariant-violation fault (std::logic_error): the input
// was not a symplectic complex or the code is wrong.
HomologyPairing induced_pairing(const SymplecticComplex& s, const HomologyData& h,
                                const BasisFamily& homology_bases);

struct BlockIndices {
  std::vector<std::size_t> image;     // spans im d_{p+1}
  std::vector<std::size_t> homology;  // classes form a basis of H_p
  std::vector<std::size_t> lift;      // completes, maps onto im d_p
};

struct CompatibleBasis {
  BasisFamily bases;
  std::vector<BlockIndices> blocks;
};

// Block-aligned omega-compatible bases: Gram matrices are exactly Id for
// p < n/2 (with p > n/2 then forced by antisymmetry) and the standard
// symplectic block at the middle degree. p < n/2 takes the aligned
// (image | homology | lift) basis and pairs it with its Omega-dual; the
// middle degree is built by hyperbolic normalization of the image/lift
// blocks plus symplectic Gram-Schmidt on the homology block.
CompatibleBasis make_omega_compatible_bases(const SymplecticComplex& s);

struct AlignmentInfo {
  int structural_sign = 1;   // permutation/bookkeeping parity of the splitting
  int middle_class_sign = 1; // sign of [o^2_mid] against h_mid before any flip
  bool flipped_middle_pair = false;
  int flipped_degree = -1;   // off-middle column negation, -1 if none
};

// Adjusts the compatible basis so the torsion side of the pairing theorems
// carries the orientation the splitting bookkeeping requires. Flips one
// middle omega-pair (the paper's switch) or, when the middle homology is
// zero-dimensional, negates one off-middle homology column.
CompatibleBasis align_orientation(const SymplecticComplex& s,
                                  const CompatibleBasis& compat,
                                  const BasisFamily& homology_bases,
                                  AlignmentInfo* info = nullptr);

struct SymplecticSplitPart {
  SymplecticComplex part;
  BasisFamily embedding;
};

struct SymplecticSplit {
  SymplecticSplitPart exact_part;
  SymplecticSplitPart dzero_part;
};

// omega-orthogonal splitting along the block structure. Throws if the
// basis is not block-aligned or cross-orthogonality fails.
SymplecticSplit split_symplectic(const SymplecticComplex& s, const CompatibleBasis& compat);

// prod_{p<n/2} det[omega_{p,n-p}]^{(-1)^p} * |Pf[omega_{mid,mid}]|^{(-1)^{n/2}},
// the square root of the middle determinant realized as |pfaffian|.
Rational rhs_pairing_formula(const HomologyPairing& hp, int n);

struct MainTheoremReport {
  Rational lhs;
  Rational rhs;
  bool equal = false;
  AlignmentInfo alignment;
  std::vector<DegreeFactor> factors;
};

MainTheoremReport verify_main_theorem(const SymplecticComplex& s,
                                      const BasisFamily& homology_bases);

// Discrepancy factor prod_p [c_p, o_p]^{(-1)^p} reported by the probe mode:
// how the torsion side moves when arbitrary chain bases replace the
// omega-compatible ones.
Rational arbitrary_basis_probe(const SymplecticComplex& s, const CompatibleBasis& compat,
                               const BasisFamily& chain_bases);

}  // namespace rtorsion
