#include "rtorsion/torsion.hpp"

#include <stdexcept>
#include <string>

namespace rtorsion {

namespace {

void check_chain_bases(const ChainComplex& c, const BasisFamily& chain_bases) {
  if (chain_bases.size() != static_cast<std::size_t>(c.n) + 1) {
    throw std::invalid_argument("chain basis family has wrong length");
  }
  for (int p = 0; p <= c.n; ++p) {
    const Matrix& b = chain_bases[static_cast<std::size_t>(p)];
    if (b.rows() != static_cast<std::size_t>(c.dim(p)) || !b.is_square()) {
      throw std::invalid_argument("chain basis at degree " + std::to_string(p) +
                                  " has wrong shape");
    }
  }
}

void check_homology_bases(const ChainComplex& c, const HomologyData& h,
                          const BasisFamily& homology_bases) {
  if (homology_bases.size() != static_cast<std::size_t>(c.n) + 1) {
    throw std::invalid_argument("homology basis family has wrong length");
  }
  for (int p = 0; p <= c.n; ++p) {
    const std::size_t up = static_cast<std::size_t>(p);
    const Matrix& hb = homology_bases[up];
    if (hb.cols() != static_cast<std::size_t>(h.betti[up]) ||
        hb.rows() != static_cast<std::size_t>(c.dim(p))) {
      throw std::invalid_argument("homology basis at degree " + std::to_string(p) +
                                  " has wrong shape (betti = " +
                                  std::to_string(h.betti[up]) + ")");
    }
    if (!(c.boundary_or_zero(p) * hb).is_zero()) {
      throw std::invalid_argument("homology basis at degree " + std::to_string(p) +
                                  " contains a non-cycle column");
    }
    if (hb.cols() > 0) {
      const Matrix coords = class_reduce(c, h, p, hb);
      if (determinant(coords) == 0) {
        throw std::invalid_argument("homology basis classes at degree " +
                                    std::to_string(p) + " are dependent");
      }
    }
  }
}

}  // namespace

TorsionReport torsion(const ChainComplex& c, const BasisFamily& chain_bases,
                      const BasisFamily& homology_bases,
                      const TorsionChoices* choices) {
  const HomologyData h = compute_homology(c);
  check_chain_bases(c, chain_bases);
  check_homology_bases(c, h, homology_bases);

  // Boundary bases (possibly transformed for the independence tests).
  std::vector<Matrix> bnd;
  for (int p = 0; p <= c.n; ++p) {
    Matrix b = h.boundary_basis[static_cast<std::size_t>(p)];
    if (choices) {
      auto it = choices->boundary_transform.find(p);
      if (it != choices->boundary_transform.end()) b = b * it->second;
    }
    bnd.push_back(std::move(b));
  }

  TorsionReport report;
  report.value = 1;
  for (int p = 0; p <= c.n; ++p) {
    const std::size_t up = static_cast<std::size_t>(p);
    DegreeFactor f;
    f.degree = p;
    f.exponent = (p % 2 == 0) ? 1 : -1;
    if (c.dim(p) == 0) {
      f.base_change = 1;
      f.applied = 1;
      report.factors.push_back(f);
      continue;
    }
    Matrix lift(static_cast<std::size_t>(c.dim(p)), 0);
    if (p >= 1 && bnd[up - 1].cols() > 0) {
      auto x = solve_linear(c.boundary(p), bnd[up - 1]);
      if (!x) throw std::logic_error("boundary basis failed to lift");
      lift = *x;
      if (choices) {
        auto it = choices->lift_shift.find(p);
        if (it != choices->lift_shift.end()) {
          lift = lift + h.cycle_basis[up] * it->second;
        }
      }
    }
    const Matrix assembled = hcat(hcat(bnd[up], homology_bases[up]), lift);
    f.base_change = change_of_basis_det(assembled, chain_bases[up]);
    f.applied = (f.exponent == 1) ? f.base_change : Rational(1) / f.base_change;
    report.value *= f.applied;
    report.factors.push_back(f);
  }
  return report;
}

Rational base_change_factor(const ChainComplex& c,
                            const BasisFamily& old_chain, const BasisFamily& new_chain,
                            const BasisFamily& old_homology, const BasisFamily& new_homology) {
  const HomologyData h = compute_homology(c);
  check_chain_bases(c, old_chain);
  check_chain_bases(c, new_chain);
  check_homology_bases(c, h, old_homology);
  check_homology_bases(c, h, new_homology);
  Rational factor(1);
  for (int p = 0; p <= c.n; ++p) {
    const std::size_t up = static_cast<std::size_t>(p);
    Rational fc(1), fh(1);
    if (c.dim(p) > 0) fc = change_of_basis_det(new_chain[up], old_chain[up]);
    if (h.betti[up] > 0) {
      const Matrix new_coords = class_reduce(c, h, p, new_homology[up]);
      const Matrix old_coords = class_reduce(c, h, p, old_homology[up]);
      fh = determinant(new_coords) / determinant(old_coords);
    }
    const Rational ratio = fh / fc;
    factor *= (p % 2 == 0) ? ratio : Rational(1) / ratio;
  }
  return factor;
}

Rational torsion_acyclic_witten(const ChainComplex& c, const BasisFamily& volumes) {
  const HomologyData h = compute_homology(c);
  check_chain_bases(c, volumes);
  for (int p = 0; p <= c.n; ++p) {
    if (h.betti[static_cast<std::size_t>(p)] != 0) {
      throw std::invalid_argument("torsion_acyclic_witten: complex is not acyclic");
    }
  }
  Rational value(1);
  for (int p = 0; p <= c.n; ++p) {
    const std::size_t up = static_cast<std::size_t>(p);
    if (c.dim(p) == 0) continue;
    const Matrix wedge = hcat(h.boundary_basis[up], h.lifts[up]);
    // <(c_1)^* ^ ... ^ (c_k)^*, u_1 ^ ... ^ u_k> = det of the coordinates of
    // the u's in the c basis.
    const Matrix coords = inverse(volumes[up]) * wedge;
    const Rational d = determinant(coords);
    if (d == 0) throw std::logic_error("degenerate wedge in Witten pairing");
    value *= (p % 2 == 0) ? d : Rational(1) / d;
  }
  return value;
}

std::optional<Violation> validate_ses(const ShortExactSequence& s) {
  if (auto v = validate_complex(s.sub)) return Violation{"sub: " + v->what, v->degree};
  if (auto v = validate_complex(s.total)) return Violation{"total: " + v->what, v->degree};
  if (auto v = validate_complex(s.quotient)) {
    return Violation{"quotient: " + v->what, v->degree};
  }
  if (s.sub.n != s.total.n || s.quotient.n != s.total.n) {
    return Violation{"top degrees differ", -1};
  }
  const int n = s.total.n;
  if (s.inclusion.size() != static_cast<std::size_t>(n) + 1 ||
      s.projection.size() != static_cast<std::size_t>(n) + 1) {
    return Violation{"map family length must be n+1", -1};
  }
  for (int p = 0; p <= n; ++p) {
    const std::size_t up = static_cast<std::size_t>(p);
    const Matrix& inc = s.inclusion[up];
    const Matrix& proj = s.projection[up];
    if (inc.rows() != static_cast<std::size_t>(s.total.dim(p)) ||
        inc.cols() != static_cast<std::size_t>(s.sub.dim(p))) {
      return Violation{"inclusion shape", p};
    }
    if (proj.rows() != static_cast<std::size_t>(s.quotient.dim(p)) ||
        proj.cols() != static_cast<std::size_t>(s.total.dim(p))) {
      return Violation{"projection shape", p};
    }
    if (rank(inc) != inc.cols()) return Violation{"inclusion not injective", p};
    if (rank(proj) != proj.rows()) return Violation{"projection not surjective", p};
    if (!(proj * inc).is_zero()) return Violation{"projection . inclusion != 0", p};
    if (s.total.dim(p) != s.sub.dim(p) + s.quotient.dim(p)) {
      return Violation{"im(inclusion) != ker(projection)", p};
    }
  }
  for (int p = 1; p <= n; ++p) {
    const std::size_t up = static_cast<std::size_t>(p);
    const Matrix lhs_inc = s.total.boundary(p) * s.inclusion[up];
    const Matrix rhs_inc = s.inclusion[up - 1] * s.sub.boundary(p);
    if (!(lhs_inc + (-rhs_inc)).is_zero()) return Violation{"inclusion not a chain map", p};
    const Matrix lhs_proj = s.quotient.boundary(p) * s.projection[up];
    const Matrix rhs_proj = s.projection[up - 1] * s.total.boundary(p);
    if (!(lhs_proj + (-rhs_proj)).is_zero()) return Violation{"projection not a chain map", p};
  }
  return std::nullopt;
}

namespace {

// Coordinates of the mapped cycles' classes in the target homology basis.
Matrix homology_map_matrix(const ChainComplex& target,
                           const HomologyData& target_h, const BasisFamily& target_basis,
                           int target_degree, const Matrix& mapped_cycles) {
  if (mapped_cycles.cols() == 0 ||
      target_h.betti[static_cast<std::size_t>(target_degree)] == 0) {
    return Matrix(static_cast<std::size_t>(
                      target_h.betti[static_cast<std::size_t>(target_degree)]),
                  mapped_cycles.cols());
  }
  return class_coords_in(target, target_h, target_degree,
                         target_basis[static_cast<std::size_t>(target_degree)],
                         mapped_cycles);
}

}  // namespace

ChainComplex long_exact_sequence(const ShortExactSequence& s,
                                 const BasisFamily& h_sub,
                                 const BasisFamily& h_total,
                                 const BasisFamily& h_quotient) {
  if (auto v = validate_ses(s)) {
    throw std::invalid_argument("long_exact_sequence: invalid SES at degree " +
                                std::to_string(v->degree) + ": " + v->what);
  }
  const int n = s.total.n;
  const HomologyData ha = compute_homology(s.sub);
  const HomologyData hb = compute_homology(s.total);
  const HomologyData hd = compute_homology(s.quotient);

  ChainComplex les;
  les.n = 3 * n + 2;
  les.dims.assign(static_cast<std::size_t>(les.n) + 1, 0);
  for (int p = 0; p <= n; ++p) {
    les.dims[static_cast<std::size_t>(3 * p)] = hd.betti[static_cast<std::size_t>(p)];
    les.dims[static_cast<std::size_t>(3 * p + 1)] = hb.betti[static_cast<std::size_t>(p)];
    les.dims[static_cast<std::size_t>(3 * p + 2)] = ha.betti[static_cast<std::size_t>(p)];
  }
  les.boundaries.assign(static_cast<std::size_t>(les.n), Matrix());

  for (int p = 0; p <= n; ++p) {
    const std::size_t up = static_cast<std::size_t>(p);
    // pi_*: H_p(total) -> H_p(quotient), slot 3p+1 -> 3p.
    {
      const Matrix mapped = s.projection[up] * h_total[up];
      les.boundaries[static_cast<std::size_t>(3 * p)] =
          homology_map_matrix(s.quotient, hd, h_quotient, p, mapped);
    }
    // i_*: H_p(sub) -> H_p(total), slot 3p+2 -> 3p+1.
    {
      const Matrix mapped = s.inclusion[up] * h_sub[up];
      les.boundaries[static_cast<std::size_t>(3 * p + 1)] =
          homology_map_matrix(s.total, hb, h_total, p, mapped);
    }
    // Snake map: H_{p+1}(quotient) -> H_p(sub), slot 3p+3 -> 3p+2.
    if (p + 1 <= n) {
      const std::size_t upn = up + 1;
      Matrix delta(static_cast<std::size_t>(ha.betti[up]),
                   static_cast<std::size_t>(hd.betti[upn]));
      if (delta.cols() > 0) {
        auto lifted = solve_linear(s.projection[upn], h_quotient[upn]);
        if (!lifted) throw std::logic_error("snake: projection lift failed");
        const Matrix down = s.total.boundary(p + 1) * (*lifted);
        auto pulled = solve_linear(s.inclusion[up], down);
        if (!pulled) throw std::logic_error("snake: inclusion pullback failed");
        delta = homology_map_matrix(s.sub, ha, h_sub, p, *pulled);
      }
      les.boundaries[static_cast<std::size_t>(3 * p + 2)] = delta;
    }
  }
  if (auto v = validate_complex(les)) {
    throw std::logic_error("long exact sequence is not a complex at slot " +
                           std::to_string(v->degree));
  }
  return les;
}

MilnorCheck milnor_product_check(const ShortExactSequence& s,
                                 const BasisFamily& sub_bases,
                                 const BasisFamily& total_bases,
                                 const BasisFamily& quot_bases,
                                 const BasisFamily& h_sub,
                                 const BasisFamily& h_total,
                                 const BasisFamily& h_quotient) {
  MilnorCheck out;
  const int n = s.total.n;
  out.lhs = torsion(s.total, total_bases, h_total).value;
  const Rational t_sub = torsion(s.sub, sub_bases, h_sub).value;
  const Rational t_quot = torsion(s.quotient, quot_bases, h_quotient).value;
  const ChainComplex les = long_exact_sequence(s, h_sub, h_total, h_quotient);
  const BasisFamily les_bases = standard_bases(les);
  BasisFamily les_h;
  for (int k = 0; k <= les.n; ++k) {
    les_h.push_back(Matrix(static_cast<std::size_t>(les.dim(k)), 0));
  }
  const Rational t_les = torsion(les, les_bases, les_h).value;
  out.rhs = t_sub * t_quot * t_les;

  out.compatible = true;
  for (int p = 0; p <= n; ++p) {
    const std::size_t up = static_cast<std::size_t>(p);
    if (s.total.dim(p) == 0) {
      out.compat_dets.push_back(1);
      continue;
    }
    auto lift = solve_linear(s.projection[up], quot_bases[up]);
    if (!lift) throw std::logic_error("milnor: quotient basis lift failed");
    const Matrix reference = hcat(s.inclusion[up] * sub_bases[up], *lift);
    const Rational det = change_of_basis_det(total_bases[up], reference);
    out.compat_dets.push_back(det);
    if (det != 1 && det != -1) out.compatible = false;
  }
  return out;
}

int interleave_parity(const HomologyData& h_sub, const HomologyData& h_quotient, int n) {
  long acc = 0;
  for (int p = 0; p <= n; ++p) {
    const std::size_t up = static_cast<std::size_t>(p);
    const long beta_sub = h_sub.betti[up];
    const long beta_quot = h_quotient.betti[up];
    const long rank_sub = h_sub.rank_boundary(p);
    const long rank_quot_next = h_quotient.rank_boundary(p + 1);
    acc += rank_quot_next * (beta_sub + rank_sub) + beta_quot * rank_sub;
  }
  return (acc % 2 == 0) ? 1 : -1;
}

}  // namespace rtorsion
