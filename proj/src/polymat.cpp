#include "polycert/polymat.hpp"

#include <algorithm>

#include "polycert/kernels.hpp"

namespace polycert {

PolyMat::PolyMat(const Modulus& m, std::size_t rows, std::size_t cols)
    : m_(m), rows_(rows), cols_(cols), a_(rows * cols, Poly(m)) {}

PolyMat::PolyMat(const Modulus& m, std::size_t rows, std::size_t cols, std::vector<Poly> entries)
    : m_(m), rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows * cols) throw DimMismatch("PolyMat: entry count does not match dims");
  for (const auto& e : a_) require_same(m_, e.modulus());
}

PolyMat PolyMat::identity(const Modulus& m, std::size_t n) {
  PolyMat r(m, n, n);
  for (std::size_t i = 0; i < n; ++i) r.at(i, i) = Poly::constant(m, 1);
  return r;
}

PolyMat PolyMat::from_field(const FieldMat& a) {
  PolyMat r(a.modulus(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = Poly::constant(a.modulus(), a.at(i, j));
  }
  return r;
}

PolyMat PolyMat::from_ints(const Modulus& m, const std::vector<std::vector<std::vector<i64>>>& rows) {
  const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  PolyMat out(m, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimMismatch("PolyMat::from_ints: ragged rows");
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<u64> co;
      co.reserve(rows[i][j].size());
      for (i64 v : rows[i][j]) co.push_back(m.from_signed(v));
      out.at(i, j) = Poly(m, std::move(co));
    }
  }
  return out;
}

PolyMat PolyMat::row_matrix(const Modulus& m, const PolyVec& v) {
  return PolyMat(m, 1, v.size(), v);
}

int PolyMat::deg() const noexcept {
  int d = kNegInf;
  for (const auto& e : a_) d = std::max(d, e.deg());
  return d;
}

bool PolyMat::is_zero() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](const Poly& p) { return p.is_zero(); });
}

PolyVec PolyMat::row(std::size_t i) const {
  return PolyVec(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

PolyMat PolyMat::transpose() const {
  PolyMat t(m_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

PolyMat PolyMat::select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  PolyMat r(m_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) r.at(i, j) = at(rows.at(i), cols.at(j));
  }
  return r;
}

PolyMat PolyMat::select_rows(const std::vector<std::size_t>& rows) const {
  std::vector<std::size_t> all(cols_);
  for (std::size_t j = 0; j < cols_; ++j) all[j] = j;
  return select(rows, all);
}

PolyMat PolyMat::select_cols(const std::vector<std::size_t>& cols) const {
  std::vector<std::size_t> all(rows_);
  for (std::size_t i = 0; i < rows_; ++i) all[i] = i;
  return select(all, cols);
}

PolyMat PolyMat::stacked(const PolyMat& below) const {
  if (below.cols_ != cols_) throw DimMismatch("PolyMat::stacked: column counts differ");
  require_same(m_, below.m_);
  std::vector<Poly> e = a_;
  e.insert(e.end(), below.a_.begin(), below.a_.end());
  return PolyMat(m_, rows_ + below.rows_, cols_, std::move(e));
}

void PolyMat::swap_rows(std::size_t i, std::size_t k) {
  if (i == k) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(at(i, j), at(k, j));
}

void PolyMat::scale_row(std::size_t i, u64 c) {
  for (std::size_t j = 0; j < cols_; ++j) at(i, j) = at(i, j).scaled(c);
}

void PolyMat::sub_row_multiple(std::size_t i, const Poly& q, std::size_t k) {
  if (q.is_zero()) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Poly& src = at(k, j);
    if (src.is_zero()) continue;
    if (q.size() == 1) {
      at(i, j).sub_scaled_shifted(src, q[0], 0);
    } else {
      at(i, j) -= q * src;
    }
  }
}

PolyMat operator+(const PolyMat& a, const PolyMat& b) {
  require_same(a.m_, b.m_);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimMismatch("PolyMat sum: dims differ");
  PolyMat c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] += b.a_[k];
  return c;
}

PolyMat operator-(const PolyMat& a, const PolyMat& b) {
  require_same(a.m_, b.m_);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimMismatch("PolyMat difference: dims differ");
  PolyMat c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] -= b.a_[k];
  return c;
}

PolyMat operator*(const PolyMat& a, const PolyMat& b) {
  if (a.rows() * b.cols() >= kernels::kParallelEntries) return kernels::mul_parallel(a, b);
  return kernels::mul_serial(a, b);
}

FieldMat eval_mat(const PolyMat& a, u64 alpha) {
  if (a.rows() * a.cols() >= kernels::kParallelEntries) return kernels::eval_parallel(a, alpha);
  return kernels::eval_serial(a, alpha);
}

FieldVec eval_vec(const PolyVec& v, u64 alpha) {
  FieldVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].eval(alpha);
  return r;
}

int vec_deg(const PolyVec& v) noexcept {
  int d = kNegInf;
  for (const auto& p : v) d = std::max(d, p.deg());
  return d;
}

bool vec_is_zero(const PolyVec& v) noexcept {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

PolyVec zero_vec(const Modulus& m, std::size_t n) { return PolyVec(n, Poly(m)); }

PolyVec vec_scaled(const PolyVec& v, const Poly& f) {
  PolyVec r;
  r.reserve(v.size());
  for (const auto& p : v) r.push_back(p * f);
  return r;
}

PolyVec row_times(const PolyVec& v, const PolyMat& a) {
  if (v.size() != a.rows()) throw DimMismatch("row_times: length mismatch");
  PolyVec r = zero_vec(a.modulus(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a.at(i, j).is_zero()) r[j] += v[i] * a.at(i, j);
    }
  }
  return r;
}

PolyVec mat_times(const PolyMat& a, const PolyVec& v) {
  if (v.size() != a.cols()) throw DimMismatch("mat_times: length mismatch");
  PolyVec r = zero_vec(a.modulus(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a.at(i, j).is_zero() && !v[j].is_zero()) r[i] += a.at(i, j) * v[j];
    }
  }
  return r;
}

Shift hermite_shift(std::size_t n, i64 t) {
  Shift s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = static_cast<i64>(n - j) * t;
  return s;
}

namespace {

ShapeCheck fail(std::string why) {
  ShapeCheck c;
  c.why = std::move(why);
  return c;
}

}  // namespace

ShapeCheck check_hermite_shape(const PolyMat& h) {
  ShapeCheck out;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t k = 0;
    while (k < h.cols() && h.at(i, k).is_zero()) ++k;
    if (k == h.cols()) return fail("row " + std::to_string(i) + " is zero");
    if (!out.profile.index.empty() && k <= out.profile.index.back()) {
      return fail("pivot indices do not increase at row " + std::to_string(i));
    }
    if (h.at(i, k).lc() != 1) return fail("pivot of row " + std::to_string(i) + " is not monic");
    out.profile.index.push_back(k);
    out.profile.degree.push_back(h.at(i, k).deg());
  }
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const std::size_t k = out.profile.index[i];
    for (std::size_t above = 0; above < i; ++above) {
      if (h.at(above, k).deg() >= out.profile.degree[i]) {
        return fail("entry above pivot " + std::to_string(i) + " is not reduced");
      }
    }
  }
  out.ok = true;
  return out;
}

ShapeCheck check_popov_shape(const PolyMat& p, const Shift& s) {
  if (s.size() != p.cols()) throw DimMismatch("check_popov_shape: shift length differs from column count");
  ShapeCheck out;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    bool any = false;
    i64 best = 0;
    std::size_t k = 0;
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (p.at(i, j).is_zero()) continue;
      const i64 sd = p.at(i, j).deg() + s[j];
      if (!any || sd >= best) {
        best = sd;
        k = j;
        any = true;
      }
    }
    if (!any) return fail("row " + std::to_string(i) + " is zero");
    if (!out.profile.index.empty() && k <= out.profile.index.back()) {
      return fail("pivot indices do not increase at row " + std::to_string(i));
    }
    if (p.at(i, k).lc() != 1) return fail("pivot of row " + std::to_string(i) + " is not monic");
    out.profile.index.push_back(k);
    out.profile.degree.push_back(p.at(i, k).deg());
  }
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const std::size_t k = out.profile.index[i];
    for (std::size_t other = 0; other < p.rows(); ++other) {
      if (other != i && p.at(other, k).deg() >= out.profile.degree[i]) {
        return fail("pivot column of row " + std::to_string(i) + " is not reduced");
      }
    }
  }
  out.ok = true;
  return out;
}

ToeplitzSpec::ToeplitzSpec(std::size_t r, std::size_t c, FieldVec e) : rows(r), cols(c), entries(std::move(e)) {
  const std::size_t want = (r == 0 || c == 0) ? 0 : r + c - 1;
  if (entries.size() != want) {
    throw LengthMismatch("Toeplitz spec needs " + std::to_string(want) + " entries, got " +
                         std::to_string(entries.size()));
  }
}

FieldMat ToeplitzSpec::materialize(const Modulus& m) const {
  FieldMat c(m, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) c.at(i, j) = m.reduce(at(i, j));
  }
  return c;
}

FieldMat ToeplitzSpec::apply(const FieldMat& a) const {
  if (a.rows() != cols) throw DimMismatch("ToeplitzSpec::apply: inner dims differ");
  return materialize(a.modulus()) * a;
}

FieldVec ToeplitzSpec::apply_left(const Modulus& m, const FieldVec& y) const {
  return materialize(m).apply_left(y);
}

PolyMat ToeplitzSpec::apply(const PolyMat& a) const {
  if (a.rows() != cols) throw DimMismatch("ToeplitzSpec::apply: inner dims differ");
  const Modulus& m = a.modulus();
  PolyMat r(m, rows, a.cols());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) {
      const u64 c = m.reduce(at(i, k));
      if (c == 0) continue;
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (!a.at(k, j).is_zero()) r.at(i, j).sub_scaled_shifted(a.at(k, j), m.neg(c), 0);
      }
    }
  }
  return r;
}

}  // namespace polycert
