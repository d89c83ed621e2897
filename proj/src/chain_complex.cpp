#include "rtorsion/chain_complex.hpp"

#include <stdexcept>

namespace rtorsion {

Matrix ChainComplex::boundary_or_zero(int p) const {
  if (p >= 1 && p <= n) return boundary(p);
  if (p <= 0) return Matrix(0, static_cast<std::size_t>(dim(0)));
  return Matrix(static_cast<std::size_t>(dim(n)), 0);  // p == n+1
}

std::optional<Violation> validate_complex(const ChainComplex& c) {
  if (c.n < 0 || c.dims.size() != static_cast<std::size_t>(c.n) + 1) {
    return Violation{"dims length must be n+1", -1};
  }
  if (c.boundaries.size() != static_cast<std::size_t>(c.n)) {
    return Violation{"boundaries length must be n", -1};
  }
  for (int p = 1; p <= c.n; ++p) {
    const Matrix& d = c.boundary(p);
    if (d.rows() != static_cast<std::size_t>(c.dim(p - 1)) ||
        d.cols() != static_cast<std::size_t>(c.dim(p))) {
      return Violation{"boundary shape mismatch", p};
    }
  }
  for (int p = 1; p + 1 <= c.n; ++p) {
    if (!(c.boundary(p) * c.boundary(p + 1)).is_zero()) {
      return Violation{"d(p) . d(p+1) != 0", p};
    }
  }
  return std::nullopt;
}

int HomologyData::rank_boundary(int p) const {
  if (p < 1 || static_cast<std::size_t>(p) > boundary_basis.size()) return 0;
  return static_cast<int>(boundary_basis[static_cast<std::size_t>(p) - 1].cols());
}

HomologyData compute_homology(const ChainComplex& c) {
  if (auto v = validate_complex(c)) {
    throw std::invalid_argument("compute_homology: invalid complex at degree " +
                                std::to_string(v->degree) + ": " + v->what);
  }
  HomologyData h;
  const std::size_t count = static_cast<std::size_t>(c.n) + 1;
  h.cycle_basis.resize(count);
  h.boundary_basis.resize(count);
  h.homology_reps.resize(count);
  h.lifts.resize(count);
  h.betti.resize(count);

  for (int p = 0; p <= c.n; ++p) {
    const std::size_t up = static_cast<std::size_t>(p);
    h.cycle_basis[up] = p == 0 ? Matrix::identity(static_cast<std::size_t>(c.dim(0)))
                               : kernel_basis(c.boundary(p));
    h.boundary_basis[up] = p == c.n
                               ? Matrix(static_cast<std::size_t>(c.dim(p)), 0)
                               : column_space_basis(c.boundary(p + 1));
  }
  for (int p = 0; p <= c.n; ++p) {
    const std::size_t up = static_cast<std::size_t>(p);
    // Complete the boundary basis to a basis of the cycles; the pivots of
    // [B | Z] landing in the Z block pick the representatives.
    const Matrix bz = hcat(h.boundary_basis[up], h.cycle_basis[up]);
    const auto r = rref_decompose(bz);
    std::vector<std::size_t> rep_cols;
    for (std::size_t piv : r.pivot_columns) {
      if (piv >= h.boundary_basis[up].cols()) {
        rep_cols.push_back(piv - h.boundary_basis[up].cols());
      }
    }
    h.homology_reps[up] = h.cycle_basis[up].columns(rep_cols);
    h.betti[up] = static_cast<int>(rep_cols.size());

    if (p >= 1 && h.boundary_basis[up - 1].cols() > 0) {
      auto lift = solve_linear(c.boundary(p), h.boundary_basis[up - 1]);
      if (!lift) throw std::logic_error("lift of boundary basis failed");
      h.lifts[up] = *lift;
    } else {
      h.lifts[up] = Matrix(static_cast<std::size_t>(c.dim(p)), 0);
    }
  }
  return h;
}

BasisFamily standard_bases(const ChainComplex& c) {
  BasisFamily f;
  for (int p = 0; p <= c.n; ++p) {
    f.push_back(Matrix::identity(static_cast<std::size_t>(c.dim(p))));
  }
  return f;
}

namespace {

// Restrict d to the span of the given embeddings (which must be d-closed).
ChainComplex restrict_complex(const ChainComplex& c, const BasisFamily& emb) {
  ChainComplex out;
  out.n = c.n;
  for (int p = 0; p <= c.n; ++p) out.dims.push_back(static_cast<int>(emb[p].cols()));
  for (int p = 1; p <= c.n; ++p) {
    const Matrix image = c.boundary(p) * emb[static_cast<std::size_t>(p)];
    auto x = solve_linear(emb[static_cast<std::size_t>(p) - 1], image);
    if (!x) throw std::logic_error("restriction is not closed under the boundary");
    out.boundaries.push_back(*x);
  }
  return out;
}

}  // namespace

SplitResult split_general(const ChainComplex& c) {
  const HomologyData h = compute_homology(c);
  BasisFamily exact_emb, dzero_emb;
  for (int p = 0; p <= c.n; ++p) {
    const std::size_t up = static_cast<std::size_t>(p);
    exact_emb.push_back(hcat(h.boundary_basis[up], h.lifts[up]));
    dzero_emb.push_back(h.homology_reps[up]);
  }
  SplitResult res;
  res.exact_part = {restrict_complex(c, exact_emb), exact_emb};
  ChainComplex dz;
  dz.n = c.n;
  for (int p = 0; p <= c.n; ++p) dz.dims.push_back(static_cast<int>(dzero_emb[p].cols()));
  for (int p = 1; p <= c.n; ++p) {
    dz.boundaries.push_back(Matrix(static_cast<std::size_t>(dz.dims[p - 1]),
                                   static_cast<std::size_t>(dz.dims[p])));
  }
  res.dzero_part = {dz, dzero_emb};
  return res;
}

Matrix class_reduce(const ChainComplex& c, const HomologyData& h, int p,
                    const Matrix& cycle) {
  const std::size_t up = static_cast<std::size_t>(p);
  if (!(c.boundary_or_zero(p) * cycle).is_zero()) {
    throw std::invalid_argument("class_reduce: input is not a cycle");
  }
  const Matrix hb = hcat(h.homology_reps[up], h.boundary_basis[up]);
  auto x = solve_linear(hb, cycle);
  if (!x) throw std::logic_error("cycle outside span of reps and boundaries");
  Matrix coords(static_cast<std::size_t>(h.betti[up]), cycle.cols());
  for (std::size_t i = 0; i < coords.rows(); ++i)
    for (std::size_t j = 0; j < coords.cols(); ++j) coords.at(i, j) = x->at(i, j);
  return coords;
}

Matrix class_coords_in(const ChainComplex& c, const HomologyData& h, int p,
                       const Matrix& basis_reps, const Matrix& cycle) {
  const Matrix basis_coords = class_reduce(c, h, p, basis_reps);
  const Matrix target = class_reduce(c, h, p, cycle);
  auto x = solve_linear(basis_coords, target);
  if (!x) throw std::invalid_argument("classes do not span the target class");
  return *x;
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  if (a.n != b.n) throw std::invalid_argument("direct_sum: top degrees differ");
  ChainComplex out;
  out.n = a.n;
  for (int p = 0; p <= a.n; ++p) out.dims.push_back(a.dim(p) + b.dim(p));
  for (int p = 1; p <= a.n; ++p) {
    Matrix d(static_cast<std::size_t>(out.dims[p - 1]), static_cast<std::size_t>(out.dims[p]));
    const Matrix& da = a.boundary(p);
    const Matrix& db = b.boundary(p);
    for (std::size_t i = 0; i < da.rows(); ++i)
      for (std::size_t j = 0; j < da.cols(); ++j) d.at(i, j) = da.at(i, j);
    const std::size_t ro = da.rows();
    const std::size_t co = da.cols();
    for (std::size_t i = 0; i < db.rows(); ++i)
      for (std::size_t j = 0; j < db.cols(); ++j) d.at(ro + i, co + j) = db.at(i, j);
    out.boundaries.push_back(d);
  }
  return out;
}

}  // namespace rtorsion
