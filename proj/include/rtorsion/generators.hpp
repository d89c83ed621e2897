#pragma once

#include "rtorsion/symplectic.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rtorsion {

// splitmix64; the determinism contract is seed-reproducibility of the
// serialized output, independent of the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform in [lo, hi], inclusive.
  long range(long lo, long hi);
  Rational rational(int entry_bound);          // num in [-b,b], den in [1,b]
  Rational nonzero_rational(int entry_bound);  // same, num != 0

 private:
  std::uint64_t state_;
};

struct GenConfig {
  std::uint64_t seed = 0;
  int n = 1;
  int max_dim = 4;
  std::optional<std::vector<int>> betti_targets;
  int entry_bound = 5;
};

// Product of elementary column operations; always invertible.
Matrix random_invertible(Rng& rng, std::size_t size, int entry_bound);

// Unitriangular column ops and pair swaps only; det is exactly +1 or -1
// as requested.
Matrix random_unit_det(Rng& rng, std::size_t size, int entry_bound, bool negative);

struct GeneratedComplex {
  ChainComplex complex;
  BasisFamily chain_bases;  // the distinguished bases (standard)
};

// Canonical rank-profile model conjugated by random invertibles. Achieved
// betti numbers equal betti_targets when given. Throws on infeasible
// targets (dim C_p = betti_p + rank_p + rank_{p+1} must fit in max_dim).
GeneratedComplex gen_chain_complex(const GenConfig& cfg);

enum class SymplecticKind { dzero, exact, mixed };

// Builds a d-zero block with standard pairings plus an exact block of
// mirrored rungs, direct-sums them, and conjugates by random invertibles
// with pairings transported as Omega -> T_p^T Omega T_{n-p}.
SymplecticComplex gen_symplectic(const GenConfig& cfg, SymplecticKind kind);

// Basis transport: boundaries conjugated, pairings Omega -> T_p^T Omega T_{n-p}.
// Every symplectic axiom is preserved.
SymplecticComplex transport_symplectic(const SymplecticComplex& s,
                                       const std::vector<Matrix>& transforms);

struct GeneratedSes {
  ShortExactSequence ses;
  BasisFamily sub_bases, total_bases, quot_bases;
  BasisFamily h_sub, h_total, h_quotient;
  std::vector<Rational> twist_dets;  // per degree, each +-1
};

// total = sub (+) quotient with the total bases twisted by det +-1 maps.
// The twist determinants are chosen with product equal to the interleave
// parity of the splitting, so the generated instances satisfy the product
// formula exactly (the paper's compatible-basing move).
GeneratedSes gen_ses(const GenConfig& cfg);

}  // namespace rtorsion
