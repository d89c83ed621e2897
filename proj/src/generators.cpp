#include "rtorsion/generators.hpp"

#include <stdexcept>
#include <string>

namespace rtorsion {

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long Rng::range(long lo, long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(next() % span);
}

Rational Rng::rational(int entry_bound) {
  const long num = range(-entry_bound, entry_bound);
  const long den = range(1, entry_bound);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational Rng::nonzero_rational(int entry_bound) {
  while (true) {
    Rational q = rational(entry_bound);
    if (q != 0) return q;
  }
}

Matrix random_invertible(Rng& rng, std::size_t size, int entry_bound) {
  Matrix m = Matrix::identity(size);
  if (size == 0) return m;
  const std::size_t ops = 3 * size;
  for (std::size_t k = 0; k < ops; ++k) {
    const std::size_t i = static_cast<std::size_t>(rng.range(0, static_cast<long>(size) - 1));
    const std::size_t j = static_cast<std::size_t>(rng.range(0, static_cast<long>(size) - 1));
    if (i == j) {
      const Rational s = rng.nonzero_rational(entry_bound);
      for (std::size_t r = 0; r < size; ++r) m.at(r, i) *= s;
    } else {
      const Rational lam = rng.rational(entry_bound);
      for (std::size_t r = 0; r < size; ++r) m.at(r, i) += lam * m.at(r, j);
    }
  }
  return m;
}

Matrix random_unit_det(Rng& rng, std::size_t size, int entry_bound, bool negative) {
  Matrix m = Matrix::identity(size);
  if (size == 0) {
    if (negative) throw std::invalid_argument("cannot realize det -1 in dimension 0");
    return m;
  }
  const std::size_t ops = 3 * size;
  for (std::size_t k = 0; k < ops; ++k) {
    const std::size_t i = static_cast<std::size_t>(rng.range(0, static_cast<long>(size) - 1));
    const std::size_t j = static_cast<std::size_t>(rng.range(0, static_cast<long>(size) - 1));
    if (i == j) continue;
    const Rational lam = rng.rational(entry_bound);
    for (std::size_t r = 0; r < size; ++r) m.at(r, i) += lam * m.at(r, j);
  }
  if (negative) m.negate_column(0);
  return m;
}

namespace {

ChainComplex conjugate(const ChainComplex& c, const std::vector<Matrix>& t) {
  ChainComplex out;
  out.n = c.n;
  out.dims = c.dims;
  for (int p = 1; p <= c.n; ++p) {
    out.boundaries.push_back(inverse(t[static_cast<std::size_t>(p) - 1]) *
                             c.boundary(p) * t[static_cast<std::size_t>(p)]);
  }
  return out;
}

// Rank profile r[p] = rank d_p for p = 1..n with dims[p] = betti_p + r_p + r_{p+1}.
std::vector<int> sample_ranks(Rng& rng, const GenConfig& cfg, const std::vector<int>& betti) {
  const int n = cfg.n;
  for (int p = 0; p <= n; ++p) {
    if (betti[static_cast<std::size_t>(p)] > cfg.max_dim) {
      throw std::invalid_argument("betti target exceeds max_dim at degree " +
                                  std::to_string(p));
    }
  }
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<int> r(static_cast<std::size_t>(n) + 2, 0);
    bool ok = true;
    for (int p = 1; p <= n; ++p) {
      const int room = cfg.max_dim - betti[static_cast<std::size_t>(p) - 1] -
                       r[static_cast<std::size_t>(p) - 1];
      if (room < 0) {
        ok = false;
        break;
      }
      r[static_cast<std::size_t>(p)] = static_cast<int>(rng.range(0, room));
    }
    if (!ok) continue;
    if (betti[static_cast<std::size_t>(n)] + r[static_cast<std::size_t>(n)] > cfg.max_dim) {
      continue;
    }
    return r;
  }
  throw std::invalid_argument("betti targets infeasible under max_dim");
}

}  // namespace

GeneratedComplex gen_chain_complex(const GenConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("top degree must be >= 1");
  Rng rng(cfg.seed);
  std::vector<int> betti;
  if (cfg.betti_targets) {
    if (cfg.betti_targets->size() != static_cast<std::size_t>(cfg.n) + 1) {
      throw std::invalid_argument("betti target length must be n+1");
    }
    betti = *cfg.betti_targets;
  } else {
    for (int p = 0; p <= cfg.n; ++p) {
      betti.push_back(static_cast<int>(rng.range(0, cfg.max_dim / 2)));
    }
  }
  const std::vector<int> r = sample_ranks(rng, cfg, betti);

  // Canonical model: coordinates ordered (image part, homology part, lift
  // part); d maps the lift part identically onto the next image part.
  ChainComplex model;
  model.n = cfg.n;
  for (int p = 0; p <= cfg.n; ++p) {
    model.dims.push_back(betti[static_cast<std::size_t>(p)] +
                         r[static_cast<std::size_t>(p)] +
                         r[static_cast<std::size_t>(p) + 1]);
  }
  for (int p = 1; p <= cfg.n; ++p) {
    Matrix d(static_cast<std::size_t>(model.dims[p - 1]), static_cast<std::size_t>(model.dims[p]));
    const std::size_t rp = static_cast<std::size_t>(r[static_cast<std::size_t>(p)]);
    const std::size_t lift_offset =
        static_cast<std::size_t>(model.dims[p]) - rp;  // lift block is last
    for (std::size_t i = 0; i < rp; ++i) d.at(i, lift_offset + i) = 1;
    model.boundaries.push_back(d);
  }

  std::vector<Matrix> t;
  for (int p = 0; p <= cfg.n; ++p) {
    t.push_back(random_invertible(rng, static_cast<std::size_t>(model.dims[p]), cfg.entry_bound));
  }
  GeneratedComplex out;
  out.complex = conjugate(model, t);
  out.chain_bases = standard_bases(out.complex);
  if (auto v = validate_complex(out.complex)) {
    throw std::logic_error("generated complex invalid: " + v->what);
  }
  return out;
}

SymplecticComplex gen_symplectic(const GenConfig& cfg, SymplecticKind kind) {
  if (cfg.n % 4 != 2) throw std::invalid_argument("symplectic top degree must be 2 mod 4");
  Rng rng(cfg.seed);
  const int n = cfg.n;
  const int half = n / 2;

  std::vector<int> betti(static_cast<std::size_t>(n) + 1, 0);
  if (kind != SymplecticKind::exact) {
    if (cfg.betti_targets) {
      betti = *cfg.betti_targets;
      for (int p = 0; p < half; ++p) {
        if (betti[static_cast<std::size_t>(p)] != betti[static_cast<std::size_t>(n - p)]) {
          throw std::invalid_argument("symplectic betti targets must be symmetric");
        }
      }
      if (betti[static_cast<std::size_t>(half)] % 2 != 0) {
        throw std::invalid_argument("middle betti must be even");
      }
    } else {
      for (int p = 0; p < half; ++p) {
        const int b = static_cast<int>(rng.range(0, 2));
        betti[static_cast<std::size_t>(p)] = b;
        betti[static_cast<std::size_t>(n - p)] = b;
      }
      betti[static_cast<std::size_t>(half)] = 2 * static_cast<int>(rng.range(0, 1));
    }
  }

  // Mirrored rung pairs (q, q+1) + (n-q-1, n-q) make the exact block.
  std::vector<int> rungs;
  if (kind != SymplecticKind::dzero) {
    for (int q = 0; q < half; ++q) {
      const int count = static_cast<int>(rng.range(kind == SymplecticKind::exact ? 1 : 0, 2));
      for (int k = 0; k < count; ++k) rungs.push_back(q);
    }
    if (rungs.empty()) rungs.push_back(static_cast<int>(rng.range(0, half - 1)));
  }
  if (kind == SymplecticKind::mixed) {
    bool any = false;
    for (int b : betti) any = any || b > 0;
    if (!any) betti[static_cast<std::size_t>(half)] = 2;
  }

  // Slot bookkeeping: homology generator i at degree p pairs with generator
  // i at degree n-p; rung generators pair across the mirrored rung.
  struct Slot {
    int kind;  // 0 = homology, 1..4 = rung x0/x1/y0/y1
    int id;
  };
  std::vector<std::vector<Slot>> slots(static_cast<std::size_t>(n) + 1);
  for (int p = 0; p <= n; ++p) {
    for (int i = 0; i < betti[static_cast<std::size_t>(p)]; ++i) {
      slots[static_cast<std::size_t>(p)].push_back({0, i});
    }
  }
  for (std::size_t rid = 0; rid < rungs.size(); ++rid) {
    const int q = rungs[rid];
    slots[static_cast<std::size_t>(q)].push_back({1, static_cast<int>(rid)});
    slots[static_cast<std::size_t>(q + 1)].push_back({2, static_cast<int>(rid)});
    slots[static_cast<std::size_t>(n - q - 1)].push_back({3, static_cast<int>(rid)});
    slots[static_cast<std::size_t>(n - q)].push_back({4, static_cast<int>(rid)});
  }
  auto find_slot = [&](int degree, int kind_code, int id) {
    const auto& list = slots[static_cast<std::size_t>(degree)];
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].kind == kind_code && list[i].id == id) return i;
    }
    throw std::logic_error("slot bookkeeping failure");
  };

  ChainComplex base;
  base.n = n;
  for (int p = 0; p <= n; ++p) {
    base.dims.push_back(static_cast<int>(slots[static_cast<std::size_t>(p)].size()));
  }
  for (int p = 1; p <= n; ++p) {
    Matrix d(static_cast<std::size_t>(base.dims[p - 1]), static_cast<std::size_t>(base.dims[p]));
    for (std::size_t j = 0; j < slots[static_cast<std::size_t>(p)].size(); ++j) {
      const Slot& sl = slots[static_cast<std::size_t>(p)][j];
      if (sl.kind == 2) d.at(find_slot(p - 1, 1, sl.id), j) = 1;  // d x1 = x0
      if (sl.kind == 4) d.at(find_slot(p - 1, 3, sl.id), j) = 1;  // d y1 = y0
    }
    base.boundaries.push_back(d);
  }

  std::vector<Matrix> pairings;
  for (int p = 0; p <= n; ++p) {
    pairings.push_back(Matrix(static_cast<std::size_t>(base.dims[p]),
                              static_cast<std::size_t>(base.dims[n - p])));
  }
  auto put_pair = [&](int p, std::size_t i, std::size_t j, const Rational& v) {
    pairings[static_cast<std::size_t>(p)].at(i, j) = v;
    // antisymmetry: Omega_{n-p} = (-1)^p Omega_p^T
    pairings[static_cast<std::size_t>(n - p)].at(j, i) = (p % 2 == 0) ? v : -v;
  };
  for (int p = 0; p < half; ++p) {
    for (int i = 0; i < betti[static_cast<std::size_t>(p)]; ++i) {
      put_pair(p, find_slot(p, 0, i), find_slot(n - p, 0, i), 1);
    }
  }
  {
    const int mh = betti[static_cast<std::size_t>(half)] / 2;
    for (int i = 0; i < mh; ++i) {
      const std::size_t a = find_slot(half, 0, i);
      const std::size_t b = find_slot(half, 0, mh + i);
      pairings[static_cast<std::size_t>(half)].at(a, b) = 1;
      pairings[static_cast<std::size_t>(half)].at(b, a) = -1;
    }
  }
  for (std::size_t rid = 0; rid < rungs.size(); ++rid) {
    const int q = rungs[rid];
    // omega_{q,n-q}(x0, y1) = (-1)^{q+1}, omega_{q+1,n-q-1}(x1, y0) = 1;
    // forced by boundary compatibility.
    const Rational alpha = (q % 2 == 0) ? Rational(-1) : Rational(1);
    if (q == half) throw std::logic_error("rung starts at middle");
    put_pair(q, find_slot(q, 1, static_cast<int>(rid)),
             find_slot(n - q, 4, static_cast<int>(rid)), alpha);
    if (q + 1 < n - q - 1) {
      put_pair(q + 1, find_slot(q + 1, 2, static_cast<int>(rid)),
               find_slot(n - q - 1, 3, static_cast<int>(rid)), 1);
    } else {
      // q+1 == n-q-1 == middle: both generators live in the middle degree.
      const std::size_t a = find_slot(half, 2, static_cast<int>(rid));
      const std::size_t b = find_slot(half, 3, static_cast<int>(rid));
      pairings[static_cast<std::size_t>(half)].at(a, b) = 1;
      pairings[static_cast<std::size_t>(half)].at(b, a) = -1;
    }
  }

  SymplecticComplex model{base, pairings};
  if (auto v = validate_symplectic(model)) {
    throw std::logic_error("generated symplectic model invalid at degree " +
                           std::to_string(v->degree) + ": " + v->what);
  }

  std::vector<Matrix> t;
  for (int p = 0; p <= n; ++p) {
    t.push_back(random_invertible(rng, static_cast<std::size_t>(base.dims[p]), cfg.entry_bound));
  }
  SymplecticComplex out = transport_symplectic(model, t);
  if (auto v = validate_symplectic(out)) {
    throw std::logic_error("conjugated symplectic instance invalid at degree " +
                           std::to_string(v->degree) + ": " + v->what);
  }
  return out;
}

SymplecticComplex transport_symplectic(const SymplecticComplex& s,
                                       const std::vector<Matrix>& transforms) {
  const int n = s.n();
  if (transforms.size() != static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("transport: transform family length must be n+1");
  }
  SymplecticComplex out;
  out.base = conjugate(s.base, transforms);
  for (int p = 0; p <= n; ++p) {
    out.pairings.push_back(transforms[static_cast<std::size_t>(p)].transpose() *
                           s.pairings[static_cast<std::size_t>(p)] *
                           transforms[static_cast<std::size_t>(n - p)]);
  }
  return out;
}

GeneratedSes gen_ses(const GenConfig& cfg) {
  Rng rng(cfg.seed);
  GenConfig sub_cfg = cfg;
  sub_cfg.seed = rng.next();
  sub_cfg.betti_targets.reset();
  GenConfig quot_cfg = cfg;
  quot_cfg.seed = rng.next();
  quot_cfg.betti_targets.reset();

  GeneratedComplex sub = gen_chain_complex(sub_cfg);
  GeneratedComplex quot = gen_chain_complex(quot_cfg);
  const int n = cfg.n;

  GeneratedSes out;
  out.ses.sub = sub.complex;
  out.ses.quotient = quot.complex;
  out.ses.total.n = n;
  for (int p = 0; p <= n; ++p) {
    out.ses.total.dims.push_back(sub.complex.dim(p) + quot.complex.dim(p));
  }
  for (int p = 1; p <= n; ++p) {
    Matrix d(static_cast<std::size_t>(out.ses.total.dims[p - 1]),
             static_cast<std::size_t>(out.ses.total.dims[p]));
    const Matrix& da = sub.complex.boundary(p);
    const Matrix& dd = quot.complex.boundary(p);
    for (std::size_t i = 0; i < da.rows(); ++i)
      for (std::size_t j = 0; j < da.cols(); ++j) d.at(i, j) = da.at(i, j);
    const std::size_t ro = static_cast<std::size_t>(sub.complex.dim(p - 1));
    const std::size_t co = static_cast<std::size_t>(sub.complex.dim(p));
    for (std::size_t i = 0; i < dd.rows(); ++i)
      for (std::size_t j = 0; j < dd.cols(); ++j) d.at(ro + i, co + j) = dd.at(i, j);
    out.ses.total.boundaries.push_back(d);
  }
  for (int p = 0; p <= n; ++p) {
    const std::size_t na = static_cast<std::size_t>(sub.complex.dim(p));
    const std::size_t nd = static_cast<std::size_t>(quot.complex.dim(p));
    Matrix inc(na + nd, na);
    for (std::size_t i = 0; i < na; ++i) inc.at(i, i) = 1;
    Matrix proj(nd, na + nd);
    for (std::size_t i = 0; i < nd; ++i) proj.at(i, na + i) = 1;
    out.ses.inclusion.push_back(inc);
    out.ses.projection.push_back(proj);
  }

  const HomologyData ha = compute_homology(sub.complex);
  const HomologyData hd = compute_homology(quot.complex);
  const HomologyData hb = compute_homology(out.ses.total);
  const int parity = interleave_parity(ha, hd, n);

  // Per-degree det +-1 twists whose product equals the interleave parity,
  // realizing a sign-compatible basing of the total complex.
  std::vector<bool> negate(static_cast<std::size_t>(n) + 1, false);
  if (parity < 0) {
    int degree = -1;
    for (int p = 0; p <= n; ++p) {
      if (out.ses.total.dim(p) > 0) {
        degree = p;
        break;
      }
    }
    if (degree < 0) throw std::logic_error("empty total complex with odd parity");
    negate[static_cast<std::size_t>(degree)] = true;
  }
  // A few extra paired -1 twists keep the +-1 condition exercised on both
  // signs without moving the product.
  {
    std::vector<int> candidates;
    for (int p = 0; p <= n; ++p) {
      if (out.ses.total.dim(p) > 0 && !negate[static_cast<std::size_t>(p)]) {
        candidates.push_back(p);
      }
    }
    if (candidates.size() >= 2 && rng.range(0, 1) == 1) {
      negate[static_cast<std::size_t>(candidates[0])] =
          !negate[static_cast<std::size_t>(candidates[0])];
      negate[static_cast<std::size_t>(candidates[1])] =
          !negate[static_cast<std::size_t>(candidates[1])];
    }
  }

  for (int p = 0; p <= n; ++p) {
    const std::size_t size = static_cast<std::size_t>(out.ses.total.dim(p));
    const Matrix u = random_unit_det(rng, size, cfg.entry_bound,
                                     negate[static_cast<std::size_t>(p)]);
    out.total_bases.push_back(u);
    out.twist_dets.push_back(size == 0 ? Rational(1) : determinant(u));
  }
  out.sub_bases = sub.chain_bases;
  out.quot_bases = quot.chain_bases;
  out.h_sub = ha.homology_reps;
  out.h_quotient = hd.homology_reps;
  out.h_total = hb.homology_reps;

  if (auto v = validate_ses(out.ses)) {
    throw std::logic_error("generated SES invalid: " + v->what);
  }
  return out;
}

}  // namespace rtorsion
