#include <random>

#include "doctest.h"
#include "polycert/kernels.hpp"
#include "polycert/polymat_oracles.hpp"

using namespace polycert;

namespace {

Poly random_poly(const Modulus& m, int deg, std::mt19937_64& rng) {
  if (deg < 0) return Poly(m);
  std::vector<u64> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = rng() % m.value();
  return Poly(m, c);
}

PolyMat random_pmat(const Modulus& m, std::size_t r, std::size_t c, int d, std::mt19937_64& rng) {
  PolyMat a(m, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) a.at(i, j) = random_poly(m, d, rng);
  }
  return a;
}

PolyMat m1(const Modulus& m) { return PolyMat::from_ints(m, {{{1}, {1}}, {{0, 0, 1}, {0, 1, 1}}, {{0, 1}, {0, 1}}}); }
PolyMat m2(const Modulus& m) { return PolyMat::from_ints(m, {{{1}, {1, 0, 1}}, {{}, {0, 0, 1}}}); }

}  // namespace

TEST_CASE("evaluation and products") {
  const Modulus m(kDefaultPrime);
  const PolyMat c = PolyMat::from_ints(m, {{{2}, {3}}, {{5}, {7}}});
  CHECK(eval_mat(c, 99) == FieldMat::from_rows(m, {{2, 3}, {5, 7}}));
  CHECK(eval_mat(PolyMat::from_ints(m, {{{0, 1}}}), 3) == FieldMat::from_rows(m, {{3}}));
  const PolyMat x = PolyMat::from_ints(m, {{{0, 1}}});
  CHECK(x * x == PolyMat::from_ints(m, {{{0, 0, 1}}}));

  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const PolyMat a = random_pmat(m, 4, 4, 3, rng), b = random_pmat(m, 4, 4, 3, rng);
    const u64 alpha = rng() % m.value();
    CHECK(eval_mat(a * b, alpha) == eval_mat(a, alpha) * eval_mat(b, alpha));
    CHECK(a * PolyMat::identity(m, 4) == a);
  }
  // Convolution oracle written against raw coefficient arrays.
  for (int t = 0; t < 10; ++t) {
    const PolyMat a = random_pmat(m, 3, 3, 2, rng), b = random_pmat(m, 3, 3, 2, rng);
    const PolyMat prod = a * b;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        std::vector<u64> acc(5, 0);
        for (std::size_t k = 0; k < 3; ++k) {
          for (std::size_t e = 0; e < 3; ++e) {
            for (std::size_t f = 0; f < 3; ++f) acc[e + f] = m.mul_add(a.at(i, k)[e], b.at(k, j)[f], acc[e + f]);
          }
        }
        CHECK(prod.at(i, j) == Poly(m, acc));
      }
    }
  }
}

TEST_CASE("serial and parallel kernels agree") {
  const Modulus m(kDefaultPrime);
  std::mt19937_64 rng(2);
  const PolyMat a = random_pmat(m, 17, 19, 5, rng), b = random_pmat(m, 19, 16, 5, rng);
  CHECK(kernels::eval_serial(a, 12345) == kernels::eval_parallel(a, 12345));
  CHECK(kernels::mul_serial(a, b) == kernels::mul_parallel(a, b));
}

TEST_CASE("rank and column profile") {
  const Modulus m(kDefaultPrime);
  const RankProfile id = rank_and_profile(PolyMat::identity(m, 4));
  CHECK(id.rank == 4);
  CHECK(id.columns == std::vector<std::size_t>{0, 1, 2, 3});
  const RankProfile r1 = rank_and_profile(m1(m));
  CHECK(r1.rank == 2);
  CHECK(r1.columns == std::vector<std::size_t>{0, 1});
  std::mt19937_64 rng(3);
  const PolyMat a = random_pmat(m, 3, 4, 2, rng);
  CHECK(rank_and_profile(a.stacked(a)).rank == rank_and_profile(a).rank);

  const PolyMat skew = PolyMat::from_ints(m, {{{0, 1}, {0, 2}, {1}}, {{1}, {2}, {0, 1}}});
  const RankProfile rs = rank_and_profile(skew);
  CHECK(rs.rank == 2);
  CHECK(rs.columns == std::vector<std::size_t>{0, 2});
}

TEST_CASE("bareiss determinant") {
  const Modulus m(kDefaultPrime);
  CHECK(det_bareiss(PolyMat::from_ints(m, {{{0, 1}, {}}, {{1}, {0, 1}}})) == Poly::from_ints(m, {0, 0, 1}));
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const PolyMat a = random_pmat(m, 4, 4, 2, rng), b = random_pmat(m, 4, 4, 2, rng);
    CHECK(det_bareiss(a * b) == det_bareiss(a) * det_bareiss(b));
    const u64 alpha = rng() % m.value();
    CHECK(det_bareiss(a).eval(alpha) == det_field(eval_mat(a, alpha)));
  }
}

TEST_CASE("rational solving") {
  const Modulus m(kDefaultPrime);
  const PolyVec v{Poly::from_ints(m, {1, 2}), Poly::from_ints(m, {0, 0, 3})};
  const RationalSolve id = rational_solve_left(PolyMat::identity(m, 2), v);
  REQUIRE(id.outcome == SolveOutcome::Solved);
  CHECK(id.u.numerators() == v);

  const RationalSolve inv_x = rational_solve_left(PolyMat::from_ints(m, {{{0, 1}, {0, 0, 1}}}),
                                                  {Poly::constant(m, 1), Poly::x(m)});
  REQUIRE(inv_x.outcome == SolveOutcome::Solved);
  CHECK(inv_x.u[0].num().is_one());
  CHECK(inv_x.u[0].den() == Poly::x(m));

  const PolyMat dup = PolyMat::from_ints(m, {{{1}, {0, 1}, {2}}, {{1}, {0, 1}, {2}}});
  CHECK(rational_solve_left(dup, zero_vec(m, 3)).outcome == SolveOutcome::LowRank);
  CHECK(rational_solve_left(PolyMat::from_ints(m, {{{1}, {1}}}), {Poly::constant(m, 1), Poly(m)}).outcome ==
        SolveOutcome::NoSolution);
}

TEST_CASE("hermite form") {
  const Modulus m7(7);
  const HermiteResult hr = hermite_form(PolyMat::from_ints(m7, {{{0, 1}, {0, 0, 1}}, {{1}, {0, 1}}}));
  CHECK(hr.H == PolyMat::from_ints(m7, {{{1}, {0, 1}}}));

  const Modulus m(kDefaultPrime);
  const PolyMat id = PolyMat::identity(m, 3);
  CHECK(hermite_form(id).H == id);
  CHECK(hermite_form(id).U == id);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const PolyMat a = random_pmat(m, r, c, static_cast<int>(rng() % 3), rng);
    const HermiteResult h = hermite_form(a);
    CHECK(check_hermite_shape(h.H).ok);
    const PolyMat ua = h.U * a;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        CHECK(ua.at(i, j) == (i < h.H.rows() ? h.H.at(i, j) : Poly(m)));
      }
    }
    const Poly du = det_bareiss(h.U);
    CHECK(du.deg() == 0);
    CHECK(hermite_form(h.H).H == h.H);
    const PolyMat w = random_unimodular(m, r, 6, 2, rng);
    CHECK(hermite_form(w * a).H == h.H);
  }
}

TEST_CASE("shape checks") {
  const Modulus m(kDefaultPrime);
  CHECK(check_hermite_shape(PolyMat::identity(m, 3)).ok);
  CHECK(check_popov_shape(PolyMat::identity(m, 3), Shift(3, 0)).ok);
  const PolyMat h = PolyMat::from_ints(m, {{{0, 1}, {1}}, {{}, {0, 0, 1}}});
  CHECK(check_hermite_shape(h).ok);
  PolyMat bad = h;
  bad.at(0, 0) = Poly::from_ints(m, {0, 2});
  CHECK_FALSE(check_hermite_shape(bad).ok);
  bad = h;
  bad.at(0, 1) = Poly::from_ints(m, {1, 0, 1});
  CHECK_FALSE(check_hermite_shape(bad).ok);
  CHECK_FALSE(check_hermite_shape(h.select_rows({1, 0})).ok);
  CHECK(check_popov_shape(h, hermite_shift(2, 3)).ok);
  CHECK_FALSE(check_popov_shape(h.select_rows({1, 0}), hermite_shift(2, 3)).ok);
  CHECK_FALSE(check_hermite_shape(PolyMat(m, 1, 2)).ok);
}

TEST_CASE("popov form") {
  const Modulus m(kDefaultPrime);
  CHECK(popov_form(PolyMat::identity(m, 3), Shift(3, 0)) == PolyMat::identity(m, 3));
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const PolyMat a = random_pmat(m, r, c, static_cast<int>(rng() % 3), rng);
    Shift s(c);
    for (auto& x : s) x = static_cast<i64>(rng() % 5) - 2;
    const PolyMat p = popov_form(a, s);
    CHECK(check_popov_shape(p, s).ok);
    CHECK(p.rows() == rank_and_profile(a).rank);
    const PolyMat w = random_unimodular(m, r, 6, 2, rng);
    CHECK(popov_form(w * a, s) == p);
    const PolyMat h = hermite_form(a).H;
    CHECK(popov_form(a, hermite_shift(c, std::max(h.deg(), 0) + 1)) == h);
  }
}

TEST_CASE("kernels, saturation and membership") {
  const Modulus m(kDefaultPrime);
  CHECK(kernel_basis_left(PolyMat::identity(m, 3)).rows() == 0);
  const PolyMat k = kernel_basis_left(PolyMat::from_ints(m, {{{1}}, {{1}}}));
  REQUIRE(k.rows() == 1);
  // 0-Popov picks the rightmost pivot, so the basis is [-1, 1].
  CHECK(k.at(0, 0) == Poly::constant(m, m.value() - 1));
  CHECK(k.at(0, 1) == Poly::constant(m, 1));

  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    const PolyMat b = random_pmat(m, 4, 2, 1, rng);
    const PolyMat a = b * random_pmat(m, 2, 3, 1, rng);
    const PolyMat kb = kernel_basis_left(a);
    CHECK((kb * a).is_zero());
    CHECK(rank_and_profile(kb).rank == 4 - rank_and_profile(a).rank);
    const PolyMat sat = saturation_basis(a);
    for (std::size_t i = 0; i < a.rows(); ++i) CHECK(row_membership_oracle(sat, a.row(i)));
    CHECK(saturation_basis(sat) == popov_form(sat, Shift(3, 0)));
  }

  const PolyMat id2 = PolyMat::identity(m, 2);
  CHECK(saturation_basis(m1(m)) == id2);
  CHECK(saturation_basis(m2(m)) == id2);
  const PolyVec zx{Poly(m), Poly::x(m)};
  CHECK(row_membership_oracle(m1(m), zx));
  CHECK_FALSE(row_membership_oracle(m2(m), zx));
  const auto u = polynomial_solve_left(m1(m), zx);
  REQUIRE(u.has_value());
  CHECK(row_times(*u, m1(m)) == zx);
  const PolyMat a = m1(m);
  PolyVec comb = vec_scaled(a.row(0), Poly::x(m));
  for (std::size_t j = 0; j < 2; ++j) comb[j] += a.at(1, j);
  CHECK(row_membership_oracle(a, comb));
}

TEST_CASE("toeplitz compressors") {
  const Modulus m(kDefaultPrime);
  const ToeplitzSpec zero(2, 3, FieldVec(4, 0));
  CHECK(zero.materialize(m).is_zero());
  CHECK_THROWS_AS(ToeplitzSpec(2, 3, FieldVec(3, 0)), LengthMismatch);
  const ToeplitzSpec row(1, 3, FieldVec{5, 6, 7});
  // Single row reads the entries backwards: C = [7 6 5].
  CHECK(row.materialize(m) == FieldMat::from_rows(m, {{7, 6, 5}}));
  std::mt19937_64 rng(8);
  const PolyMat a = random_pmat(m, 3, 4, 2, rng);
  const ToeplitzSpec c(2, 3, FieldVec{1, 2, 3, 4});
  const u64 alpha = 77;
  CHECK(c.apply(eval_mat(a, alpha)) == eval_mat(c.apply(a), alpha));
  CHECK(c.materialize(m) * eval_mat(a, alpha) == eval_mat(PolyMat::from_field(c.materialize(m)) * a, alpha));
}
