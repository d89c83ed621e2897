#include "rtorsion/batch.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rtorsion {

VerifyOutcome verify_one(const GenConfig& cfg, SymplecticKind kind) {
  const SymplecticComplex s = gen_symplectic(cfg, kind);
  const HomologyData h = compute_homology(s.base);

  // Random homology bases: canonical representatives mixed by an invertible
  // transform and shifted by boundaries.
  Rng rng(cfg.seed ^ 0x5bd1e9955bd1e995ULL);
  BasisFamily hom;
  for (int p = 0; p <= s.n(); ++p) {
    const std::size_t up = static_cast<std::size_t>(p);
    Matrix reps = h.homology_reps[up];
    if (reps.cols() > 0) {
      reps = reps * random_invertible(rng, reps.cols(), cfg.entry_bound);
      if (h.boundary_basis[up].cols() > 0) {
        Matrix shift(h.boundary_basis[up].cols(), reps.cols());
        for (std::size_t i = 0; i < shift.rows(); ++i)
          for (std::size_t j = 0; j < shift.cols(); ++j)
            shift.at(i, j) = rng.rational(1);
        reps = reps + h.boundary_basis[up] * shift;
      }
    }
    hom.push_back(std::move(reps));
  }

  const MainTheoremReport report = verify_main_theorem(s, hom);
  return VerifyOutcome{cfg.seed, report.lhs, report.rhs, report.equal};
}

std::vector<VerifyOutcome> verify_batch(const GenConfig& base, SymplecticKind kind,
                                        int count, int threads) {
  std::vector<VerifyOutcome> out(static_cast<std::size_t>(count));
#ifdef _OPENMP
  if (threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int i = 0; i < count; ++i) {
      GenConfig cfg = base;
      cfg.seed = base.seed + static_cast<std::uint64_t>(i);
      out[static_cast<std::size_t>(i)] = verify_one(cfg, kind);
    }
    return out;
  }
#else
  (void)threads;
#endif
  for (int i = 0; i < count; ++i) {
    GenConfig cfg = base;
    cfg.seed = base.seed + static_cast<std::uint64_t>(i);
    out[static_cast<std::size_t>(i)] = verify_one(cfg, kind);
  }
  return out;
}

int default_batch_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace rtorsion
