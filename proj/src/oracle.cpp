#include "polycert/oracle.hpp"

namespace polycert {

namespace {

PolyVec combine_rows(const PolyMat& a, const FieldVec& lambda) {
  const Modulus& m = a.modulus();
  PolyVec out = zero_vec(m, a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (lambda[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += a.at(i, j).scaled(lambda[i]);
  }
  return out;
}

class Explicit final : public MatrixOracle {
 public:
  explicit Explicit(PolyMat a) : a_(std::move(a)), deg_(a_.deg()) {}
  const Modulus& modulus() const override { return a_.modulus(); }
  std::size_t rows() const override { return a_.rows(); }
  std::size_t cols() const override { return a_.cols(); }
  int degree_bound() const override { return deg_; }
  FieldMat eval(u64 alpha) const override { return eval_mat(a_, alpha); }
  PolyVec left_combination(const FieldVec& lambda) const override {
    if (lambda.size() != a_.rows()) throw DimMismatch("left_combination: length differs from row count");
    return combine_rows(a_, lambda);
  }
  PolyVec right_combination(const FieldVec& lambda) const override {
    if (lambda.size() != a_.cols()) throw DimMismatch("right_combination: length differs from column count");
    return combine_rows(a_.transpose(), lambda);
  }
  PolyMat materialize() const override { return a_; }

 private:
  PolyMat a_;
  int deg_;
};

class Transposed final : public MatrixOracle {
 public:
  explicit Transposed(OracleRef a) : a_(std::move(a)) {}
  const Modulus& modulus() const override { return a_->modulus(); }
  std::size_t rows() const override { return a_->cols(); }
  std::size_t cols() const override { return a_->rows(); }
  int degree_bound() const override { return a_->degree_bound(); }
  FieldMat eval(u64 alpha) const override { return a_->eval(alpha).transpose(); }
  PolyVec left_combination(const FieldVec& lambda) const override { return a_->right_combination(lambda); }
  PolyVec right_combination(const FieldVec& lambda) const override { return a_->left_combination(lambda); }
  PolyMat materialize() const override { return a_->materialize().transpose(); }

 private:
  OracleRef a_;
};

class ToeplitzProduct final : public MatrixOracle {
 public:
  ToeplitzProduct(ToeplitzSpec c, OracleRef a) : c_(std::move(c)), a_(std::move(a)) {
    if (c_.cols != a_->rows()) throw DimMismatch("toeplitz_product: inner dimensions differ");
  }
  const Modulus& modulus() const override { return a_->modulus(); }
  std::size_t rows() const override { return c_.rows; }
  std::size_t cols() const override { return a_->cols(); }
  int degree_bound() const override { return a_->degree_bound(); }
  FieldMat eval(u64 alpha) const override { return c_.apply(a_->eval(alpha)); }
  PolyVec left_combination(const FieldVec& lambda) const override {
    if (lambda.size() != c_.rows) throw DimMismatch("left_combination: length differs from row count");
    return a_->left_combination(c_.apply_left(modulus(), lambda));
  }
  PolyVec right_combination(const FieldVec& lambda) const override {
    const PolyVec y = a_->right_combination(lambda);
    const Modulus& m = modulus();
    PolyVec out = zero_vec(m, c_.rows);
    for (std::size_t i = 0; i < c_.rows; ++i) {
      for (std::size_t j = 0; j < c_.cols; ++j) {
        if (c_.at(i, j)) out[i] += y[j].scaled(c_.at(i, j));
      }
    }
    return out;
  }
  PolyMat materialize() const override { return c_.apply(a_->materialize()); }

 private:
  ToeplitzSpec c_;
  OracleRef a_;
};

class Submatrix final : public MatrixOracle {
 public:
  Submatrix(OracleRef a, std::vector<std::size_t> rows, std::vector<std::size_t> cols)
      : a_(std::move(a)), rows_(std::move(rows)), cols_(std::move(cols)) {
    for (std::size_t i : rows_) {
      if (i >= a_->rows()) throw DimMismatch("submatrix: row index out of range");
    }
    for (std::size_t j : cols_) {
      if (j >= a_->cols()) throw DimMismatch("submatrix: column index out of range");
    }
  }
  const Modulus& modulus() const override { return a_->modulus(); }
  std::size_t rows() const override { return rows_.size(); }
  std::size_t cols() const override { return cols_.size(); }
  int degree_bound() const override { return a_->degree_bound(); }
  FieldMat eval(u64 alpha) const override { return a_->eval(alpha).select(rows_, cols_); }
  PolyVec left_combination(const FieldVec& lambda) const override {
    if (lambda.size() != rows_.size()) throw DimMismatch("left_combination: length differs from row count");
    FieldVec full(a_->rows(), 0);
    for (std::size_t k = 0; k < rows_.size(); ++k) full[rows_[k]] = modulus().add(full[rows_[k]], lambda[k]);
    return pick(a_->left_combination(full), cols_);
  }
  PolyVec right_combination(const FieldVec& lambda) const override {
    if (lambda.size() != cols_.size()) throw DimMismatch("right_combination: length differs from column count");
    FieldVec full(a_->cols(), 0);
    for (std::size_t k = 0; k < cols_.size(); ++k) full[cols_[k]] = modulus().add(full[cols_[k]], lambda[k]);
    return pick(a_->right_combination(full), rows_);
  }
  PolyMat materialize() const override { return a_->materialize().select(rows_, cols_); }

 private:
  static PolyVec pick(const PolyVec& v, const std::vector<std::size_t>& idx) {
    PolyVec out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(v[i]);
    return out;
  }
  OracleRef a_;
  std::vector<std::size_t> rows_, cols_;
};

}  // namespace

OracleRef explicit_oracle(PolyMat a) { return std::make_shared<Explicit>(std::move(a)); }
OracleRef transposed(OracleRef a) { return std::make_shared<Transposed>(std::move(a)); }
OracleRef toeplitz_product(ToeplitzSpec c, OracleRef a) {
  return std::make_shared<ToeplitzProduct>(std::move(c), std::move(a));
}
OracleRef submatrix(OracleRef a, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
  return std::make_shared<Submatrix>(std::move(a), std::move(rows), std::move(cols));
}

}  // namespace polycert
