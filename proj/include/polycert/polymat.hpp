// Dense matrices over F[x]: evaluation, products, shifts, pivot profiles,
// normal-form shape checks and Toeplitz compressors. Everything here is cheap
// enough for the verifier; heavy oracles live in polymat_oracles.hpp.
#pragma once

#include <string>
#include <vector>

#include "polycert/matfield.hpp"
#include "polycert/upoly.hpp"

namespace polycert {

using PolyVec = std::vector<Poly>;

class PolyMat {
 public:
  PolyMat() = default;
  PolyMat(const Modulus& m, std::size_t rows, std::size_t cols);
  PolyMat(const Modulus& m, std::size_t rows, std::size_t cols, std::vector<Poly> entries);

  static PolyMat identity(const Modulus& m, std::size_t n);
  static PolyMat from_field(const FieldMat& a);
  // Nested rows of signed coefficient lists, low-to-high. For fixtures.
  static PolyMat from_ints(const Modulus& m, const std::vector<std::vector<std::vector<i64>>>& rows);
  static PolyMat row_matrix(const Modulus& m, const PolyVec& v);

  const Modulus& modulus() const noexcept { return m_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Poly& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Poly& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<Poly>& entries() const noexcept { return a_; }

  int deg() const noexcept;  // kNegInf for the zero matrix
  int working_degree() const noexcept { return polycert::working_degree(deg()); }
  bool is_zero() const noexcept;

  PolyVec row(std::size_t i) const;
  PolyMat transpose() const;
  PolyMat select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  PolyMat select_rows(const std::vector<std::size_t>& rows) const;
  PolyMat select_cols(const std::vector<std::size_t>& cols) const;
  PolyMat stacked(const PolyMat& below) const;

  void swap_rows(std::size_t i, std::size_t k);
  void scale_row(std::size_t i, u64 c);
  // row i -= q * row k
  void sub_row_multiple(std::size_t i, const Poly& q, std::size_t k);

  friend PolyMat operator+(const PolyMat& a, const PolyMat& b);
  friend PolyMat operator-(const PolyMat& a, const PolyMat& b);
  friend PolyMat operator*(const PolyMat& a, const PolyMat& b);
  friend bool operator==(const PolyMat& a, const PolyMat& b) noexcept {
    return a.m_ == b.m_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  Modulus m_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> a_;
};

FieldMat eval_mat(const PolyMat& a, u64 alpha);
FieldVec eval_vec(const PolyVec& v, u64 alpha);
int vec_deg(const PolyVec& v) noexcept;
bool vec_is_zero(const PolyVec& v) noexcept;
PolyVec zero_vec(const Modulus& m, std::size_t n);
PolyVec vec_scaled(const PolyVec& v, const Poly& f);
PolyVec row_times(const PolyVec& v, const PolyMat& a);  // v A
PolyVec mat_times(const PolyMat& a, const PolyVec& v);  // A v

using Shift = std::vector<i64>;

// Hermite shift (n t, ..., 2t, t): earlier columns dominate.
Shift hermite_shift(std::size_t n, i64 t);

struct PivotProfile {
  std::vector<std::size_t> index;
  std::vector<int> degree;
};

struct ShapeCheck {
  bool ok = false;
  PivotProfile profile;
  std::string why;
};

// Row echelon with monic pivots at the first nonzero column of each row,
// strictly increasing pivot indices, and entries above each pivot of smaller
// degree. No zero rows.
ShapeCheck check_hermite_shape(const PolyMat& h);

// s-Popov: pivot is the rightmost column attaining the shifted row degree;
// pivot indices strictly increase, pivots are monic, and every other entry in
// a pivot column has smaller degree than the pivot.
ShapeCheck check_popov_shape(const PolyMat& p, const Shift& s);

class LengthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// rows x cols Toeplitz matrix given by rows+cols-1 scalars:
// C[i][j] = entries[i - j + cols - 1].
struct ToeplitzSpec {
  std::size_t rows = 0;
  std::size_t cols = 0;
  FieldVec entries;

  ToeplitzSpec() = default;
  ToeplitzSpec(std::size_t r, std::size_t c, FieldVec e);

  u64 at(std::size_t i, std::size_t j) const { return entries[i + cols - 1 - j]; }
  bool is_zero() const noexcept { return polycert::is_zero(entries); }
  FieldMat materialize(const Modulus& m) const;
  FieldMat apply(const FieldMat& a) const;                // C A
  FieldVec apply_left(const Modulus& m, const FieldVec& y) const;  // y C
  PolyMat apply(const PolyMat& a) const;                  // prover side only
};

}  // namespace polycert
