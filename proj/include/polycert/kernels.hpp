// Hot loops with two implementations: a plain serial reference and an OpenMP
// version. The public eval_mat and operator* pick one by problem size; tests
// and the benchmark call both directly.
#pragma once

#include "polycert/polymat.hpp"

namespace polycert::kernels {

FieldMat eval_serial(const PolyMat& a, u64 alpha);
FieldMat eval_parallel(const PolyMat& a, u64 alpha);

PolyMat mul_serial(const PolyMat& a, const PolyMat& b);
PolyMat mul_parallel(const PolyMat& a, const PolyMat& b);

// Entry count above which the dispatchers use the parallel path.
inline constexpr std::size_t kParallelEntries = 256;

bool parallel_available() noexcept;

}  // namespace polycert::kernels
