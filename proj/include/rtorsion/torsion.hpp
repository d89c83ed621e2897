#pragma once

#include "rtorsion/chain_complex.hpp"

#include <map>
#include <optional>
#include <vector>

namespace rtorsion {

struct DegreeFactor {
  int degree = 0;
  Rational base_change;  // cob of the assembled basis against the chain basis
  int exponent = 1;      // (-1)^p
  Rational applied;      // base_change^exponent
};

struct TorsionReport {
  Rational value;
  std::vector<DegreeFactor> factors;
};

// Non-canonical choices for the internally picked data, used by the
// section/boundary-basis independence tests. boundary_transform[p]
// right-multiplies the boundary basis at degree p (must be invertible);
// lift_shift[p] adds cycle_basis[p] * K to the lifts at degree p.
struct TorsionChoices {
  std::map<int, Matrix> boundary_transform;
  std::map<int, Matrix> lift_shift;
};

// Tor(C, {c_p}, {h_p}) = prod_p [b_p + h_p + lift(b_{p-1}), c_p]^{(-1)^p}
// with [f,e] = change_of_basis_det(f,e). homology_bases[p] columns must be
// cycles whose classes form a basis of H_p.
TorsionReport torsion(const ChainComplex& c, const BasisFamily& chain_bases,
                      const BasisFamily& homology_bases,
                      const TorsionChoices* choices = nullptr);

// factor with torsion(new bases) = factor * torsion(old bases):
// prod_p ( [h'_p,h_p] / [c'_p,c_p] )^{(-1)^p}, the homology bracket taken
// on classes.
Rational base_change_factor(const ChainComplex& c,
                            const BasisFamily& old_chain, const BasisFamily& new_chain,
                            const BasisFamily& old_homology, const BasisFamily& new_homology);

// Witten's measure formulation for acyclic complexes: per degree, the dual
// pairing det[(c_i)^*(u_j)] of the boundary/lift wedge against the volume
// basis, alternated. Throws if any betti is nonzero.
Rational torsion_acyclic_witten(const ChainComplex& c, const BasisFamily& volumes);

// ---------------------------------------------------------------------------

struct ShortExactSequence {
  ChainComplex sub, total, quotient;   // 0 -> sub -> total -> quotient -> 0
  std::vector<Matrix> inclusion;       // per degree, dim(total) x dim(sub)
  std::vector<Matrix> projection;      // per degree, dim(quotient) x dim(total)
};

std::optional<Violation> validate_ses(const ShortExactSequence& s);

// The long exact homology sequence as an acyclic based complex of length
// 3n+2. Slots: C_{3p} = H_p(quotient), C_{3p+1} = H_p(total),
// C_{3p+2} = H_p(sub); the maps are pi_*, i_* and the snake map
// (lift through the projection, apply d, pull back through the inclusion).
// The returned complex is expressed in the given homology bases, so its
// distinguished chain bases are the standard ones.
ChainComplex long_exact_sequence(const ShortExactSequence& s,
                                 const BasisFamily& h_sub,
                                 const BasisFamily& h_total,
                                 const BasisFamily& h_quotient);

struct MilnorCheck {
  Rational lhs;                       // Tor(total)
  Rational rhs;                       // Tor(sub) * Tor(quotient) * Tor(LES)
  bool compatible = false;            // every compatibility det is +-1
  std::vector<Rational> compat_dets;  // per degree
};

MilnorCheck milnor_product_check(const ShortExactSequence& s,
                                 const BasisFamily& sub_bases,
                                 const BasisFamily& total_bases,
                                 const BasisFamily& quot_bases,
                                 const BasisFamily& h_sub,
                                 const BasisFamily& h_total,
                                 const BasisFamily& h_quotient);

// Parity of the block-interleaving permutation comparing concatenated
// (sub, quotient) bases: the sign by which signed torsion multiplicativity
// differs from the unsigned statement. +1 or -1.
int interleave_parity(const HomologyData& h_sub, const HomologyData& h_quotient, int n);

}  // namespace rtorsion
