// How the verifier sees a polynomial matrix: dimensions, a degree bound, and
// evaluations. Products such as C A with a Toeplitz C are never formed; they
// are evaluated as C (A(alpha)).
#pragma once

#include <memory>

#include "polycert/polymat.hpp"

namespace polycert {

class MatrixOracle {
 public:
  virtual ~MatrixOracle() = default;
  virtual const Modulus& modulus() const = 0;
  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  // Upper bound on deg of every entry; kNegInf only for a known zero matrix.
  virtual int degree_bound() const = 0;
  virtual FieldMat eval(u64 alpha) const = 0;
  virtual PolyVec left_combination(const FieldVec& lambda) const = 0;   // lambda A
  virtual PolyVec right_combination(const FieldVec& lambda) const = 0;  // A lambda
  // Explicit entries. Only provers and tests call this.
  virtual PolyMat materialize() const = 0;
};

using OracleRef = std::shared_ptr<const MatrixOracle>;

OracleRef explicit_oracle(PolyMat a);
OracleRef transposed(OracleRef a);
OracleRef toeplitz_product(ToeplitzSpec c, OracleRef a);  // C A
OracleRef submatrix(OracleRef a, std::vector<std::size_t> rows, std::vector<std::size_t> cols);

}  // namespace polycert
