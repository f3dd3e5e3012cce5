// Dense matrices over F_p and the PLUQ elimination kernel behind rank,
// nullspace, solving and determinants.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "polycert/ff.hpp"

namespace polycert {

class DimMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using FieldVec = std::vector<u64>;

class FieldMat {
 public:
  FieldMat() = default;
  FieldMat(const Modulus& m, std::size_t rows, std::size_t cols)
      : m_(m), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  FieldMat(const Modulus& m, std::size_t rows, std::size_t cols, std::vector<u64> entries);

  static FieldMat identity(const Modulus& m, std::size_t n);
  static FieldMat from_rows(const Modulus& m, const std::vector<std::vector<i64>>& rows);

  const Modulus& modulus() const noexcept { return m_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  u64& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  u64 at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<u64>& data() const noexcept { return a_; }
  bool is_zero() const noexcept;

  FieldVec row(std::size_t i) const;
  FieldMat transpose() const;
  FieldMat select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

  FieldVec apply(const FieldVec& x) const;       // A x
  FieldVec apply_left(const FieldVec& y) const;  // y A

  friend FieldMat operator*(const FieldMat& a, const FieldMat& b);
  friend bool operator==(const FieldMat& a, const FieldMat& b) noexcept {
    return a.m_ == b.m_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  Modulus m_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<u64> a_;
};

// A = P L U Q, where row i of L U is row P[i] of A and column j of L U is
// column Q[j] of A. L is m x r unit lower trapezoidal, U is r x n upper
// trapezoidal with nonzero diagonal. The first r entries of Q are the column
// rank profile in increasing order.
struct Pluq {
  std::vector<std::size_t> P;
  std::vector<std::size_t> Q;
  FieldMat L;
  FieldMat U;
  std::size_t rank = 0;

  std::vector<std::size_t> column_profile() const {
    return {Q.begin(), Q.begin() + static_cast<std::ptrdiff_t>(rank)};
  }
};

Pluq pluq(const FieldMat& a);
std::size_t rank(const FieldMat& a);

// Square n x n factors padded with unit columns of L and zero rows of U, so
// that P L U Q = A still holds when A is singular.
struct SquarePluq {
  std::vector<std::size_t> P;
  std::vector<std::size_t> Q;
  FieldMat L;
  FieldMat U;
};
SquarePluq square_pluq(const FieldMat& a);

// Sign of a permutation given as an index list; 0 if it is not a permutation.
int permutation_sign(const std::vector<std::size_t>& perm);
bool is_permutation(const std::vector<std::size_t>& perm, std::size_t n);

// P (L (U (Q v))) with the index conventions of Pluq.
FieldVec apply_pluq(const std::vector<std::size_t>& P, const FieldMat& L, const FieldMat& U,
                    const std::vector<std::size_t>& Q, const FieldVec& v);

std::optional<FieldVec> nullvector_left(const FieldMat& a);
std::optional<FieldVec> solve_right(const FieldMat& a, const FieldVec& b);
std::optional<FieldVec> sparse_representative(const FieldMat& a, const FieldVec& v, std::size_t rho);
u64 det_field(const FieldMat& a);  // throws DimMismatch when not square

std::size_t hamming_weight(const FieldVec& v);
bool is_zero(const FieldVec& v);

}  // namespace polycert
