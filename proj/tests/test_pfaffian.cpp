#include "rtorsion/generators.hpp"
#include "rtorsion/linalg.hpp"
#include "rtorsion/pfaffian.hpp"

#include <doctest.h>

#include <map>

using namespace rtorsion;

namespace {

// Independent oracle: the coefficient of e_1 ^ ... ^ e_{2m} in
// (sum_{i<j} a_ij e_i ^ e_j)^m / m!, computed with a formal exterior
// algebra over bitmask monomials.
Rational pfaffian_wedge_oracle(const Matrix& a) {
  const std::size_t n = a.rows();
  using Multivector = std::map<unsigned, Rational>;
  Multivector omega;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a.at(i, j) != 0) omega[(1u << i) | (1u << j)] = a.at(i, j);
    }
  }
  auto wedge_sign = [](unsigned x, unsigned y) {
    // parity of transpositions moving the y factors past the x factors
    int swaps = 0;
    for (unsigned bit = 0; bit < 32; ++bit) {
      if (!(y & (1u << bit))) continue;
      unsigned higher = x >> (bit + 1);
      swaps += __builtin_popcount(higher);
    }
    return swaps % 2 == 0 ? 1 : -1;
  };
  Multivector acc{{0u, Rational(1)}};
  for (std::size_t k = 0; k < n / 2; ++k) {
    Multivector next;
    for (const auto& [ma, va] : acc) {
      for (const auto& [mb, vb] : omega) {
        if (ma & mb) continue;
        const int sign = wedge_sign(ma, mb);
        next[ma | mb] += (sign > 0 ? va * vb : -(va * vb));
      }
    }
    acc = std::move(next);
  }
  const unsigned full = n == 0 ? 0u : ((1u << n) - 1u);
  Rational coeff = acc.count(full) ? acc[full] : Rational(0);
  Rational mfact(1);
  for (std::size_t k = 2; k <= n / 2; ++k) mfact *= static_cast<long>(k);
  return coeff / mfact;
}

Matrix random_skew(Rng& rng, std::size_t n, int bound) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m.at(i, j) = rng.rational(bound);
      m.at(j, i) = -m.at(i, j);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("pfaffian basics") {
  CHECK(pfaffian(Matrix{{0, 1}, {-1, 0}}) == 1);
  CHECK(pfaffian(Matrix(0, 0)) == 1);

  Matrix blocks(4, 4);
  blocks.at(0, 1) = 2;
  blocks.at(1, 0) = -2;
  blocks.at(2, 3) = 3;
  blocks.at(3, 2) = -3;
  CHECK(pfaffian(blocks) == 6);
}

TEST_CASE("pfaffian rejects bad input") {
  CHECK_THROWS_AS(pfaffian(Matrix(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(pfaffian(Matrix{{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(pfaffian(Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("pfaffian agrees with the wedge-coefficient oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 2 * static_cast<std::size_t>(rng.range(0, 3));
    const Matrix a = random_skew(rng, n, 4);
    CHECK(pfaffian(a) == pfaffian_wedge_oracle(a));
  }
}

TEST_CASE("pfaffian squared is the determinant") {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 * static_cast<std::size_t>(rng.range(0, 4));
    const Matrix a = random_skew(rng, n, 4);
    const Rational pf = pfaffian(a);
    CHECK(pf * pf == determinant(a));
  }
}

TEST_CASE("pfaffian transformation law") {
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 * static_cast<std::size_t>(rng.range(0, 4));
    const Matrix x = random_skew(rng, n, 3);
    Matrix y(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) y.at(i, j) = rng.rational(3);
    CHECK(pfaffian(y * x * y.transpose()) == determinant(y) * pfaffian(x));
  }
}
