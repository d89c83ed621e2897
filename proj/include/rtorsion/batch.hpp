#pragma once

#include "rtorsion/generators.hpp"

#include <cstdint>
#include <vector>

namespace rtorsion {

struct VerifyOutcome {
  std::uint64_t seed = 0;
  Rational lhs;
  Rational rhs;
  bool equal = false;
};

// Verifies the main theorem on `count` generated instances with seeds
// base.seed, base.seed+1, ... Results are stored by index, so the output
// is deterministic and identical between the serial reference path and the
// OpenMP path; `threads` <= 1 selects the serial path.
std::vector<VerifyOutcome> verify_batch(const GenConfig& base, SymplecticKind kind,
                                        int count, int threads);

// Per-instance body shared by both paths.
VerifyOutcome verify_one(const GenConfig& cfg, SymplecticKind kind);

int default_batch_threads();

}  // namespace rtorsion
