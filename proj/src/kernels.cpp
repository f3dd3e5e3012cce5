#include "polycert/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polycert::kernels {

FieldMat eval_serial(const PolyMat& a, u64 alpha) {
  FieldMat r(a.modulus(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j).eval(alpha);
  }
  return r;
}

FieldMat eval_parallel(const PolyMat& a, u64 alpha) {
  FieldMat r(a.modulus(), a.rows(), a.cols());
  const auto total = static_cast<std::ptrdiff_t>(a.rows() * a.cols());
  const std::size_t cols = a.cols();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto i = static_cast<std::size_t>(k) / cols, j = static_cast<std::size_t>(k) % cols;
    r.at(i, j) = a.at(i, j).eval(alpha);
  }
  return r;
}

namespace {

Poly dot_entry(const PolyMat& a, const PolyMat& b, std::size_t i, std::size_t j) {
  Poly acc(a.modulus());
  for (std::size_t k = 0; k < a.cols(); ++k) {
    if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
    acc += a.at(i, k) * b.at(k, j);
  }
  return acc;
}

void check_mul_dims(const PolyMat& a, const PolyMat& b) {
  require_same(a.modulus(), b.modulus());
  if (a.cols() != b.rows()) throw DimMismatch("PolyMat product: inner dims differ");
}

}  // namespace

PolyMat mul_serial(const PolyMat& a, const PolyMat& b) {
  check_mul_dims(a, b);
  PolyMat c(a.modulus(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) = dot_entry(a, b, i, j);
  }
  return c;
}

PolyMat mul_parallel(const PolyMat& a, const PolyMat& b) {
  check_mul_dims(a, b);
  PolyMat c(a.modulus(), a.rows(), b.cols());
  const auto total = static_cast<std::ptrdiff_t>(a.rows() * b.cols());
  const std::size_t cols = b.cols();
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto i = static_cast<std::size_t>(k) / cols, j = static_cast<std::size_t>(k) % cols;
    c.at(i, j) = dot_entry(a, b, i, j);
  }
  return c;
}

bool parallel_available() noexcept {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace polycert::kernels
