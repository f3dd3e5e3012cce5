#include "polycert/polymat_oracles.hpp"

#include <algorithm>
#include <numeric>

namespace polycert {

namespace {

struct Bareiss {
  PolyMat work;
  std::vector<std::size_t> perm;
  std::vector<std::size_t> pivots;
  int swaps = 0;
};

// Row-echelon Bareiss. After pivot k every remaining entry is a (k+1)-minor
// of the input, so the division by the previous pivot is exact.
Bareiss bareiss(const PolyMat& a) {
  Bareiss b{a, std::vector<std::size_t>(a.rows()), {}, 0};
  std::iota(b.perm.begin(), b.perm.end(), 0);
  PolyMat& w = b.work;
  const Modulus& m = a.modulus();
  Poly prev = Poly::constant(m, 1);
  std::size_t k = 0;
  for (std::size_t j = 0; j < a.cols() && k < a.rows(); ++j) {
    std::size_t piv = a.rows();
    for (std::size_t i = k; i < a.rows(); ++i) {
      if (!w.at(i, j).is_zero() && (piv == a.rows() || w.at(i, j).deg() < w.at(piv, j).deg())) piv = i;
    }
    if (piv == a.rows()) continue;
    if (piv != k) {
      w.swap_rows(piv, k);
      std::swap(b.perm[piv], b.perm[k]);
      ++b.swaps;
    }
    const Poly p = w.at(k, j);
    for (std::size_t i = k + 1; i < a.rows(); ++i) {
      const Poly f = w.at(i, j);
      for (std::size_t c = j + 1; c < a.cols(); ++c) {
        Poly t = p * w.at(i, c);
        if (!f.is_zero()) t -= f * w.at(k, c);
        w.at(i, c) = prev.is_one() ? std::move(t) : div_exact(t, prev);
      }
      w.at(i, j) = Poly(m);
    }
    prev = p;
    b.pivots.push_back(j);
    ++k;
  }
  return b;
}

}  // namespace

RankProfile rank_and_profile(const PolyMat& a) {
  const Bareiss b = bareiss(a);
  RankProfile r;
  r.rank = b.pivots.size();
  r.columns = b.pivots;
  r.rows.assign(b.perm.begin(), b.perm.begin() + static_cast<std::ptrdiff_t>(r.rank));
  return r;
}

Poly det_bareiss(const PolyMat& a) {
  if (a.rows() != a.cols()) throw DimMismatch("det_bareiss: matrix is not square");
  const Modulus& m = a.modulus();
  const std::size_t n = a.rows();
  if (n == 0) return Poly::constant(m, 1);
  const Bareiss b = bareiss(a);
  if (b.pivots.size() < n) return Poly(m);
  const Poly& d = b.work.at(n - 1, n - 1);
  return (b.swaps % 2) ? -d : d;
}

RationalSolve rational_solve_left(const PolyMat& a, const PolyVec& v) {
  if (v.size() != a.cols()) throw DimMismatch("rational_solve_left: vector length differs from column count");
  const Modulus& m = a.modulus();
  const std::size_t rows = a.rows();
  const RankProfile rp = rank_and_profile(a);
  RationalSolve out;
  if (rp.rank < rows) {
    out.outcome = SolveOutcome::LowRank;
    return out;
  }
  // B^T x = y^T on the pivot columns, as one augmented fraction-free sweep.
  PolyMat t(m, rows, rows + 1);
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t i = 0; i < rows; ++i) t.at(k, i) = a.at(i, rp.columns[k]);
    t.at(k, rows) = v[rp.columns[k]];
  }
  const Bareiss fb = bareiss(t);
  const PolyMat& tri = fb.work;
  if (fb.pivots.size() < rows || (rows > 0 && fb.pivots.back() != rows - 1)) {
    throw std::logic_error("rational_solve_left: pivot submatrix is singular");
  }
  Poly d = rows ? tri.at(rows - 1, rows - 1) : Poly::constant(m, 1);
  // X_i = d x_i are polynomials by Cramer's rule, so each division is exact.
  PolyVec x(rows, Poly(m));
  for (std::size_t i = rows; i-- > 0;) {
    Poly acc = d * tri.at(i, rows);
    for (std::size_t j = i + 1; j < rows; ++j) acc -= tri.at(i, j) * x[j];
    x[i] = div_exact(acc, tri.at(i, i));
  }
  PolyVec lhs = row_times(x, a);
  const PolyVec rhs = vec_scaled(v, d);
  if (lhs != rhs) {
    out.outcome = SolveOutcome::NoSolution;
    return out;
  }
  std::vector<std::pair<Poly, Poly>> raw;
  raw.reserve(rows);
  for (auto& xi : x) raw.emplace_back(std::move(xi), d);
  out.outcome = SolveOutcome::Solved;
  out.u = ratvec_normalize(m, raw);
  return out;
}

HermiteResult hermite_form(const PolyMat& a) {
  const Modulus& m = a.modulus();
  PolyMat h = a;
  PolyMat u = PolyMat::identity(m, a.rows());
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    // Euclid on the column: reduce everything by the lowest-degree entry until
    // one nonzero entry remains.
    bool found = false;
    for (;;) {
      std::size_t p = a.rows(), nonzero = 0;
      for (std::size_t i = row; i < a.rows(); ++i) {
        if (h.at(i, col).is_zero()) continue;
        ++nonzero;
        if (p == a.rows() || h.at(i, col).deg() < h.at(p, col).deg()) p = i;
      }
      if (nonzero == 0) break;
      if (nonzero == 1) {
        h.swap_rows(p, row);
        u.swap_rows(p, row);
        found = true;
        break;
      }
      for (std::size_t i = row; i < a.rows(); ++i) {
        if (i == p || h.at(i, col).is_zero()) continue;
        const Poly q = divrem(h.at(i, col), h.at(p, col)).q;
        h.sub_row_multiple(i, q, p);
        u.sub_row_multiple(i, q, p);
      }
    }
    if (!found) continue;
    const u64 inv = m.inv(h.at(row, col).lc());
    h.scale_row(row, inv);
    u.scale_row(row, inv);
    for (std::size_t i = 0; i < row; ++i) {
      if (h.at(i, col).deg() < h.at(row, col).deg()) continue;
      const Poly q = divrem(h.at(i, col), h.at(row, col)).q;
      h.sub_row_multiple(i, q, row);
      u.sub_row_multiple(i, q, row);
    }
    ++row;
  }
  std::vector<std::size_t> keep(row);
  std::iota(keep.begin(), keep.end(), 0);
  return {h.select_rows(keep), std::move(u)};
}

namespace {

struct RowLead {
  bool zero = true;
  i64 sdeg = 0;
  std::size_t pivot = 0;
};

RowLead row_lead(const PolyMat& a, std::size_t i, const Shift& s) {
  RowLead r;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (a.at(i, j).is_zero()) continue;
    const i64 sd = a.at(i, j).deg() + s[j];
    if (r.zero || sd >= r.sdeg) {
      r.sdeg = sd;
      r.pivot = j;
      r.zero = false;
    }
  }
  return r;
}

PolyMat drop_zero_rows(const PolyMat& a) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < a.cols() && zero; ++j) zero = a.at(i, j).is_zero();
    if (!zero) keep.push_back(i);
  }
  return a.select_rows(keep);
}

}  // namespace

PolyMat popov_form(const PolyMat& a, const Shift& s) {
  if (s.size() != a.cols()) throw DimMismatch("popov_form: shift length differs from column count");
  const Modulus& m = a.modulus();
  PolyMat w = drop_zero_rows(a);

  // Weak Popov by pivot collisions: never raises a shifted row degree.
  for (;;) {
    std::vector<RowLead> lead(w.rows());
    for (std::size_t i = 0; i < w.rows(); ++i) lead[i] = row_lead(w, i, s);
    bool collided = false;
    for (std::size_t i = 0; i < w.rows() && !collided; ++i) {
      if (lead[i].zero) continue;
      for (std::size_t k = 0; k < w.rows(); ++k) {
        if (k == i || lead[k].zero || lead[k].pivot != lead[i].pivot) continue;
        std::size_t hi = i, lo = k;
        if (lead[hi].sdeg < lead[lo].sdeg) std::swap(hi, lo);
        const std::size_t p = lead[i].pivot;
        const int shift = w.at(hi, p).deg() - w.at(lo, p).deg();
        const u64 c = m.mul(w.at(hi, p).lc(), m.inv(w.at(lo, p).lc()));
        w.sub_row_multiple(hi, Poly::monomial(m, c, static_cast<std::size_t>(shift)), lo);
        collided = true;
        break;
      }
    }
    if (!collided) break;
    w = drop_zero_rows(w);
  }

  // Reduce each pivot column below its pivot degree. Each step cancels the
  // leading term of a row and only introduces smaller terms, so it stops.
  std::vector<std::size_t> piv(w.rows());
  for (std::size_t i = 0; i < w.rows(); ++i) piv[i] = row_lead(w, i, s).pivot;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < w.rows(); ++k) {
      const std::size_t pk = piv[k];
      for (std::size_t i = 0; i < w.rows(); ++i) {
        if (i == k || w.at(i, pk).deg() < w.at(k, pk).deg()) continue;
        const Poly q = divrem(w.at(i, pk), w.at(k, pk)).q;
        w.sub_row_multiple(i, q, k);
        changed = true;
      }
    }
  }

  std::vector<std::size_t> order(w.rows());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return piv[x] < piv[y]; });
  PolyMat out = w.select_rows(order);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    out.scale_row(i, m.inv(out.at(i, piv[order[i]]).lc()));
  }
  return out;
}

PolyMat kernel_basis_left(const PolyMat& a) {
  const HermiteResult hf = hermite_form(a);
  const std::size_t r = hf.H.rows();
  std::vector<std::size_t> tail;
  for (std::size_t i = r; i < a.rows(); ++i) tail.push_back(i);
  const PolyMat k = hf.U.select_rows(tail);
  if (k.rows() == 0) return k;
  return popov_form(k, Shift(a.rows(), 0));
}

PolyMat kernel_basis_right(const PolyMat& a) { return kernel_basis_left(a.transpose()).transpose(); }

PolyMat saturation_basis(const PolyMat& a) {
  const PolyMat k = kernel_basis_right(a);
  if (k.cols() == 0) return PolyMat::identity(a.modulus(), a.cols());
  return kernel_basis_left(k);
}

std::optional<PolyVec> polynomial_solve_left(const PolyMat& a, const PolyVec& v) {
  if (v.size() != a.cols()) throw DimMismatch("polynomial_solve_left: vector length differs from column count");
  const Modulus& m = a.modulus();
  const HermiteResult hf = hermite_form(a);
  const ShapeCheck shape = check_hermite_shape(hf.H);
  PolyVec w = v;
  PolyVec coef(hf.H.rows(), Poly(m));
  for (std::size_t i = 0; i < hf.H.rows(); ++i) {
    const std::size_t k = shape.profile.index[i];
    DivRem dr = divrem(w[k], hf.H.at(i, k));
    if (!dr.r.is_zero()) return std::nullopt;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!hf.H.at(i, j).is_zero()) w[j] -= dr.q * hf.H.at(i, j);
    }
    coef[i] = std::move(dr.q);
  }
  if (!vec_is_zero(w)) return std::nullopt;
  PolyVec u = zero_vec(m, a.rows());
  for (std::size_t i = 0; i < coef.size(); ++i) {
    if (coef[i].is_zero()) continue;
    for (std::size_t j = 0; j < a.rows(); ++j) {
      if (!hf.U.at(i, j).is_zero()) u[j] += coef[i] * hf.U.at(i, j);
    }
  }
  return u;
}

bool row_membership_oracle(const PolyMat& a, const PolyVec& v) { return polynomial_solve_left(a, v).has_value(); }

PolyMat random_unimodular(const Modulus& m, std::size_t n, int ops, int max_deg, std::mt19937_64& rng) {
  PolyMat u = PolyMat::identity(m, n);
  if (n == 0) return u;
  const u64 p = m.value();
  for (int t = 0; t < ops; ++t) {
    const std::size_t i = rng() % n;
    if (n == 1 || rng() % 8 == 0) {
      u.scale_row(i, 1 + rng() % (p - 1));
      continue;
    }
    std::size_t k = rng() % (n - 1);
    if (k >= i) ++k;
    std::vector<u64> co(static_cast<std::size_t>(max_deg) + 1);
    for (auto& c : co) c = rng() % p;
    const Poly q(m, std::move(co));
    u.sub_row_multiple(i, q, k);
  }
  return u;
}

}  // namespace polycert
