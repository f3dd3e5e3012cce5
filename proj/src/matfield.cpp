#include "polycert/matfield.hpp"

#include <numeric>
#include <string>

namespace polycert {

FieldMat::FieldMat(const Modulus& m, std::size_t rows, std::size_t cols, std::vector<u64> entries)
    : m_(m), rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows * cols) throw DimMismatch("FieldMat: entry count does not match dims");
  for (auto& x : a_) x = m_.reduce(x);
}

FieldMat FieldMat::identity(const Modulus& m, std::size_t n) {
  FieldMat r(m, n, n);
  for (std::size_t i = 0; i < n; ++i) r.at(i, i) = 1;
  return r;
}

FieldMat FieldMat::from_rows(const Modulus& m, const std::vector<std::vector<i64>>& rows) {
  const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  FieldMat out(m, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimMismatch("FieldMat::from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) out.at(i, j) = m.from_signed(rows[i][j]);
  }
  return out;
}

bool FieldMat::is_zero() const noexcept {
  for (u64 x : a_) {
    if (x) return false;
  }
  return true;
}

FieldVec FieldMat::row(std::size_t i) const {
  return FieldVec(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

FieldMat FieldMat::transpose() const {
  FieldMat t(m_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

FieldMat FieldMat::select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  FieldMat r(m_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) r.at(i, j) = at(rows[i], cols[j]);
  }
  return r;
}

FieldVec FieldMat::apply(const FieldVec& x) const {
  if (x.size() != cols_) throw DimMismatch("FieldMat::apply: length mismatch");
  FieldVec y(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    u64 acc = 0;
    const u64* r = &a_[i * cols_];
    for (std::size_t j = 0; j < cols_; ++j) acc = m_.mul_add(r[j], x[j], acc);
    y[i] = acc;
  }
  return y;
}

FieldVec FieldMat::apply_left(const FieldVec& y) const {
  if (y.size() != rows_) throw DimMismatch("FieldMat::apply_left: length mismatch");
  FieldVec x(cols_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (y[i] == 0) continue;
    const u64* r = &a_[i * cols_];
    for (std::size_t j = 0; j < cols_; ++j) x[j] = m_.mul_add(r[j], y[i], x[j]);
  }
  return x;
}

FieldMat operator*(const FieldMat& a, const FieldMat& b) {
  require_same(a.m_, b.m_);
  if (a.cols_ != b.rows_) throw DimMismatch("FieldMat product: inner dims differ");
  FieldMat c(a.m_, a.rows_, b.cols_);
  const Modulus& m = a.m_;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const u64 x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c.at(i, j) = m.mul_add(x, b.at(k, j), c.at(i, j));
    }
  }
  return c;
}

namespace {

// Row-echelon elimination scanning columns left to right. Multipliers are
// stored below the pivot in the pivot column, rows swapped in place.
struct Elimination {
  FieldMat work;
  std::vector<std::size_t> perm;    // work row i came from input row perm[i]
  std::vector<std::size_t> pivots;  // pivot column of row t
};

Elimination eliminate(const FieldMat& a) {
  const Modulus& m = a.modulus();
  Elimination e{a, std::vector<std::size_t>(a.rows()), {}};
  std::iota(e.perm.begin(), e.perm.end(), 0);
  FieldMat& w = e.work;
  std::size_t k = 0;
  for (std::size_t j = 0; j < a.cols() && k < a.rows(); ++j) {
    std::size_t piv = k;
    while (piv < a.rows() && w.at(piv, j) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != k) {
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(w.at(piv, c), w.at(k, c));
      std::swap(e.perm[piv], e.perm[k]);
    }
    const u64 inv = m.inv(w.at(k, j));
    for (std::size_t i = k + 1; i < a.rows(); ++i) {
      const u64 f = m.mul(w.at(i, j), inv);
      w.at(i, j) = f;
      if (f == 0) continue;
      const u64 nf = m.neg(f);
      for (std::size_t c = j + 1; c < a.cols(); ++c) w.at(i, c) = m.mul_add(w.at(k, c), nf, w.at(i, c));
    }
    e.pivots.push_back(j);
    ++k;
  }
  return e;
}

u64 lower_multiplier(const Elimination& e, std::size_t i, std::size_t t) {
  // L(i, t) for i > t
  return e.work.at(i, e.pivots[t]);
}

}  // namespace

Pluq pluq(const FieldMat& a) {
  const Modulus& m = a.modulus();
  const Elimination e = eliminate(a);
  const std::size_t r = e.pivots.size(), rows = a.rows(), cols = a.cols();
  Pluq out;
  out.rank = r;
  out.P = e.perm;
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  out.Q = e.pivots;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) out.Q.push_back(c);
  }
  out.L = FieldMat(m, rows, r);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t t = 0; t < r && t <= i; ++t) out.L.at(i, t) = (t == i) ? 1 : lower_multiplier(e, i, t);
  }
  out.U = FieldMat(m, r, cols);
  for (std::size_t t = 0; t < r; ++t) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t src = out.Q[j];
      if (src >= e.pivots[t]) out.U.at(t, j) = e.work.at(t, src);
    }
  }
  return out;
}

std::size_t rank(const FieldMat& a) { return eliminate(a).pivots.size(); }

SquarePluq square_pluq(const FieldMat& a) {
  if (a.rows() != a.cols()) throw DimMismatch("square_pluq: matrix is not square");
  const std::size_t n = a.rows();
  Pluq f = pluq(a);
  SquarePluq s{f.P, f.Q, FieldMat(a.modulus(), n, n), FieldMat(a.modulus(), n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < f.rank; ++t) s.L.at(i, t) = f.L.at(i, t);
    for (std::size_t t = f.rank; t < n; ++t) s.L.at(i, t) = (i == t) ? 1 : 0;
  }
  for (std::size_t t = 0; t < f.rank; ++t) {
    for (std::size_t j = 0; j < n; ++j) s.U.at(t, j) = f.U.at(t, j);
  }
  return s;
}

bool is_permutation(const std::vector<std::size_t>& perm, std::size_t n) {
  if (perm.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t x : perm) {
    if (x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

int permutation_sign(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  if (!is_permutation(perm, n)) return 0;
  std::vector<bool> seen(n, false);
  int sign = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

FieldVec apply_pluq(const std::vector<std::size_t>& P, const FieldMat& L, const FieldMat& U,
                    const std::vector<std::size_t>& Q, const FieldVec& v) {
  FieldVec qv(Q.size());
  for (std::size_t j = 0; j < Q.size(); ++j) qv[j] = v[Q[j]];
  const FieldVec z = L.apply(U.apply(qv));
  FieldVec out(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) out[P[i]] = z[i];
  return out;
}

std::optional<FieldVec> nullvector_left(const FieldMat& a) {
  const Modulus& m = a.modulus();
  const Elimination e = eliminate(a);
  const std::size_t r = e.pivots.size(), rows = a.rows();
  if (r == rows) return std::nullopt;
  // Prefer a non-pivot row whose multipliers all vanish: that row is zero in A.
  std::size_t pick = r;
  for (std::size_t i = r; i < rows; ++i) {
    bool zero = true;
    for (std::size_t t = 0; t < r && zero; ++t) zero = lower_multiplier(e, i, t) == 0;
    if (zero) {
      pick = i;
      break;
    }
  }
  // w = (y, e_pick) with y L1 = -L2[pick]; L1 is unit lower triangular.
  FieldVec y(r, 0);
  for (std::size_t t = r; t-- > 0;) {
    u64 acc = m.neg(lower_multiplier(e, pick, t));
    for (std::size_t s = t + 1; s < r; ++s) acc = m.sub(acc, m.mul(y[s], lower_multiplier(e, s, t)));
    y[t] = acc;
  }
  FieldVec v(rows, 0);
  for (std::size_t t = 0; t < r; ++t) v[e.perm[t]] = y[t];
  v[e.perm[pick]] = 1;
  return v;
}

std::optional<FieldVec> solve_right(const FieldMat& a, const FieldVec& b) {
  if (b.size() != a.rows()) throw DimMismatch("solve_right: rhs length mismatch");
  const Modulus& m = a.modulus();
  const Elimination e = eliminate(a);
  const std::size_t r = e.pivots.size(), rows = a.rows();
  // Forward substitution with the unit lower factor on the permuted rhs.
  FieldVec z(rows);
  for (std::size_t i = 0; i < rows; ++i) z[i] = b[e.perm[i]];
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t lim = i < r ? i : r;
    for (std::size_t t = 0; t < lim; ++t) z[i] = m.sub(z[i], m.mul(lower_multiplier(e, i, t), z[t]));
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (z[i] != 0) return std::nullopt;
  }
  FieldVec w(a.cols(), 0);
  for (std::size_t t = r; t-- > 0;) {
    const std::size_t pc = e.pivots[t];
    u64 acc = z[t];
    for (std::size_t c = pc + 1; c < a.cols(); ++c) acc = m.sub(acc, m.mul(e.work.at(t, c), w[c]));
    w[pc] = m.mul(acc, m.inv(e.work.at(t, pc)));
  }
  return w;
}

std::optional<FieldVec> sparse_representative(const FieldMat& a, const FieldVec& v, std::size_t rho) {
  if (v.size() != a.cols()) throw DimMismatch("sparse_representative: vector length mismatch");
  if (rho >= a.cols()) return v;
  if (rank(a) > rho) return std::nullopt;
  // solve_right leaves non-pivot coordinates at zero, so the support lies in
  // the column rank profile.
  return solve_right(a, a.apply(v));
}

u64 det_field(const FieldMat& a) {
  if (a.rows() != a.cols()) throw DimMismatch("det_field: matrix is not square");
  const Modulus& m = a.modulus();
  const Elimination e = eliminate(a);
  const std::size_t n = a.rows();
  if (e.pivots.size() < n) return 0;
  u64 d = 1;
  for (std::size_t i = 0; i < n; ++i) d = m.mul(d, e.work.at(i, i));
  return permutation_sign(e.perm) < 0 ? m.neg(d) : d;
}

std::size_t hamming_weight(const FieldVec& v) {
  std::size_t w = 0;
  for (u64 x : v) w += x != 0;
  return w;
}

bool is_zero(const FieldVec& v) { return hamming_weight(v) == 0; }

}  // namespace polycert
