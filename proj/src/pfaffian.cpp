#include "rtorsion/pfaffian.hpp"

#include <stdexcept>
#include <vector>

namespace rtorsion {

namespace {

Rational pf_expand(const Matrix& a, std::vector<std::size_t>& live) {
  if (live.empty()) return 1;
  const std::size_t i0 = live.front();
  Rational total(0);
  for (std::size_t t = 1; t < live.size(); ++t) {
    const Rational& entry = a.at(i0, live[t]);
    if (entry == 0) continue;
    std::vector<std::size_t> rest;
    rest.reserve(live.size() - 2);
    for (std::size_t k = 1; k < live.size(); ++k) {
      if (k != t) rest.push_back(live[k]);
    }
    const Rational term = entry * pf_expand(a, rest);
    if (t % 2 == 1) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

}  // namespace

Rational pfaffian(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("pfaffian of non-square matrix");
  if (a.rows() % 2 != 0) throw std::invalid_argument("pfaffian of odd-sided matrix");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (a.at(i, j) != -a.at(j, i)) {
        throw std::invalid_argument("pfaffian of non-skew matrix");
      }
    }
  }
  std::vector<std::size_t> live(a.rows());
  for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
  return pf_expand(a, live);
}

}  // namespace rtorsion
