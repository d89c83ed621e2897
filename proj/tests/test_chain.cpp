#include "rtorsion/chain_complex.hpp"
#include "rtorsion/generators.hpp"

#include <doctest.h>

using namespace rtorsion;

namespace {

ChainComplex two_term(long entry) {
  ChainComplex c;
  c.n = 1;
  c.dims = {1, 1};
  c.boundaries = {Matrix{{entry}}};
  return c;
}

}  // namespace

TEST_CASE("validate_complex") {
  CHECK_FALSE(validate_complex(two_term(1)).has_value());

  ChainComplex bad;
  bad.n = 2;
  bad.dims = {1, 1, 1};
  bad.boundaries = {Matrix{{1}}, Matrix{{1}}};
  const auto v = validate_complex(bad);
  REQUIRE(v.has_value());
  CHECK(v->degree == 1);

  ChainComplex dzero;
  dzero.n = 2;
  dzero.dims = {2, 3, 1};
  dzero.boundaries = {Matrix(2, 3), Matrix(3, 1)};
  CHECK_FALSE(validate_complex(dzero).has_value());

  ChainComplex shape;
  shape.n = 1;
  shape.dims = {2, 1};
  shape.boundaries = {Matrix{{1}}};
  CHECK(validate_complex(shape).has_value());
}

TEST_CASE("homology of simple complexes") {
  ChainComplex dzero;
  dzero.n = 2;
  dzero.dims = {2, 3, 1};
  dzero.boundaries = {Matrix(2, 3), Matrix(3, 1)};
  const HomologyData h = compute_homology(dzero);
  CHECK(h.betti == std::vector<int>{2, 3, 1});
  CHECK(h.cycle_basis[1] == Matrix::identity(3));
  CHECK(h.boundary_basis[0].cols() == 0);

  const HomologyData acyclic = compute_homology(two_term(1));
  CHECK(acyclic.betti == std::vector<int>{0, 0});

  const HomologyData doubled = compute_homology(two_term(2));
  CHECK(doubled.betti == std::vector<int>{0, 0});
  REQUIRE(doubled.boundary_basis[0].cols() == 1);
  CHECK(doubled.boundary_basis[0].at(0, 0) == 2);
}

TEST_CASE("homology data invariants on random complexes") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.n = 3;
    cfg.max_dim = 5;
    const ChainComplex c = gen_chain_complex(cfg).complex;
    const HomologyData h = compute_homology(c);
    for (int p = 0; p <= c.n; ++p) {
      const std::size_t up = static_cast<std::size_t>(p);
      CHECK((c.boundary_or_zero(p) * h.cycle_basis[up]).is_zero());
      // boundaries sit inside the cycles
      CHECK(solve_linear(h.cycle_basis[up], h.boundary_basis[up]).has_value());
      const Matrix z = hcat(h.boundary_basis[up], h.homology_reps[up]);
      CHECK(rank(z) == z.cols());
      CHECK(z.cols() == h.cycle_basis[up].cols());
      const Matrix full = hcat(z, h.lifts[up]);
      CHECK(full.cols() == static_cast<std::size_t>(c.dim(p)));
      CHECK(rank(full) == full.cols());
      if (p >= 1) {
        CHECK(c.boundary(p) * h.lifts[up] == h.boundary_basis[up - 1]);
      }
      // dim C_p = rank d_p + betti_p + rank d_{p+1}
      CHECK(c.dim(p) == h.rank_boundary(p) + h.betti[up] + h.rank_boundary(p + 1));
    }
  }
}

TEST_CASE("split_general trivial cases") {
  const SplitResult exact = split_general(two_term(3));
  CHECK(exact.dzero_part.complex.dims == std::vector<int>{0, 0});
  CHECK(exact.exact_part.complex.dims == std::vector<int>{1, 1});

  ChainComplex dzero;
  dzero.n = 1;
  dzero.dims = {2, 1};
  dzero.boundaries = {Matrix(2, 1)};
  const SplitResult r = split_general(dzero);
  CHECK(r.exact_part.complex.dims == std::vector<int>{0, 0});
  CHECK(r.dzero_part.complex.dims == std::vector<int>{2, 1});
}

TEST_CASE("split_general on a rank-one boundary") {
  ChainComplex c;
  c.n = 1;
  c.dims = {1, 2};
  c.boundaries = {Matrix{{1, 0}}};
  const SplitResult r = split_general(c);
  CHECK(r.exact_part.complex.dims == std::vector<int>{1, 1});
  CHECK(r.dzero_part.complex.dims == std::vector<int>{0, 1});
}

TEST_CASE("split reconstruction on random complexes") {
  int checked = 0;
  for (std::uint64_t seed = 100; checked < 200; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.n = static_cast<int>(1 + seed % 6);
    cfg.max_dim = 6;
    const ChainComplex c = gen_chain_complex(cfg).complex;
    const SplitResult r = split_general(c);
    const HomologyData h = compute_homology(c);
    for (int p = 1; p <= c.n; ++p) {
      const std::size_t up = static_cast<std::size_t>(p);
      // d restricted to the exact part matches through the embeddings, and
      // the d-zero part maps to zero.
      CHECK(c.boundary(p) * r.exact_part.embedding[up] ==
            r.exact_part.embedding[up - 1] * r.exact_part.complex.boundary(p));
      CHECK((c.boundary(p) * r.dzero_part.embedding[up]).is_zero());
    }
    for (int p = 0; p <= c.n; ++p) {
      const std::size_t up = static_cast<std::size_t>(p);
      const Matrix joint = hcat(r.exact_part.embedding[up], r.dzero_part.embedding[up]);
      CHECK(rank(joint) == static_cast<std::size_t>(c.dim(p)));
      CHECK(r.dzero_part.complex.dim(p) == h.betti[up]);
    }
    const HomologyData he = compute_homology(r.exact_part.complex);
    for (int b : he.betti) CHECK(b == 0);
    ++checked;
  }
}

TEST_CASE("class_reduce") {
  // 0 -> Q^2 --[1,0]--> Q -> 0 : H_1 spanned by (0,1)
  ChainComplex c;
  c.n = 1;
  c.dims = {1, 2};
  c.boundaries = {Matrix{{1, 0}}};
  const HomologyData h = compute_homology(c);
  REQUIRE(h.betti[1] == 1);

  Matrix boundary_cycle(2, 1);  // no boundaries in degree 1, use the zero cycle
  CHECK(class_reduce(c, h, 1, boundary_cycle).is_zero());

  const Matrix rep = h.homology_reps[1];
  const Matrix unit = class_reduce(c, h, 1, rep);
  CHECK(unit == Matrix::identity(1));

  Matrix noncycle(2, 1);
  noncycle.at(0, 0) = 1;
  CHECK_THROWS_AS(class_reduce(c, h, 1, noncycle), std::invalid_argument);

  // degree 0: boundaries exist; rep + boundary reduces to the unit vector
  ChainComplex c2;
  c2.n = 1;
  c2.dims = {2, 1};
  c2.boundaries = {Matrix{{2}, {0}}};
  const HomologyData h2 = compute_homology(c2);
  REQUIRE(h2.betti[0] == 1);
  const Matrix shifted = h2.homology_reps[0] + h2.boundary_basis[0];
  CHECK(class_reduce(c2, h2, 0, shifted) == Matrix::identity(1));
}

TEST_CASE("direct_sum") {
  const ChainComplex s = direct_sum(two_term(2), two_term(3));
  CHECK(s.dims == std::vector<int>{2, 2});
  CHECK(s.boundary(1) == Matrix{{2, 0}, {0, 3}});
}
