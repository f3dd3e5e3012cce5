// Prover-side and test-side computations over F[x]: fraction-free elimination,
// rational solving, normal forms, kernels and saturation. Verifier code must
// not link against this.
#pragma once

#include <optional>
#include <random>

#include "polycert/polymat.hpp"

namespace polycert {

struct RankProfile {
  std::size_t rank = 0;
  std::vector<std::size_t> columns;  // column rank profile, increasing
  // rows[k] is the pivot row for columns[k]; every leading k x k block of
  // A[rows, columns] is nonsingular.
  std::vector<std::size_t> rows;
};

// Bareiss elimination over F[x]. Every division is checked for exactness.
RankProfile rank_and_profile(const PolyMat& a);
Poly det_bareiss(const PolyMat& a);  // throws DimMismatch when not square

enum class SolveOutcome { Solved, LowRank, NoSolution };

struct RationalSolve {
  SolveOutcome outcome = SolveOutcome::NoSolution;
  RatVec u;
};

// u A = v over F(x) for A of full row rank, solved on the pivot columns.
RationalSolve rational_solve_left(const PolyMat& a, const PolyVec& v);

struct HermiteResult {
  PolyMat H;  // r x n
  PolyMat U;  // m x m unimodular; first r rows of U A are H, the rest are zero
};
HermiteResult hermite_form(const PolyMat& a);

PolyMat popov_form(const PolyMat& a, const Shift& s);

PolyMat kernel_basis_left(const PolyMat& a);   // (m - r) x m, 0-Popov
PolyMat kernel_basis_right(const PolyMat& a);  // n x (n - r)
PolyMat saturation_basis(const PolyMat& a);    // r x n, 0-Popov

bool row_membership_oracle(const PolyMat& a, const PolyVec& v);
// Some u with u A = v, if v lies in the F[x]-row space.
std::optional<PolyVec> polynomial_solve_left(const PolyMat& a, const PolyVec& v);

// Unimodular m x m matrix built from random elementary row operations.
PolyMat random_unimodular(const Modulus& m, std::size_t n, int ops, int max_deg, std::mt19937_64& rng);

}  // namespace polycert
