#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include "doctest.h"
#include "polycert/matfield.hpp"

using namespace polycert;

namespace {

FieldMat random_mat(const Modulus& m, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  FieldMat a(m, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) a.at(i, j) = rng() % m.value();
  }
  return a;
}

// Leibniz expansion; independent of the elimination code.
u64 det_leibniz(const FieldMat& a) {
  const Modulus& m = a.modulus();
  std::vector<std::size_t> perm(a.rows());
  std::iota(perm.begin(), perm.end(), 0);
  u64 total = 0;
  do {
    u64 term = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) term = m.mul(term, a.at(i, perm[i]));
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    }
    total = inversions % 2 ? m.sub(total, term) : m.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Largest k with a nonzero k x k minor.
std::size_t rank_by_minors(const FieldMat& a) {
  const std::size_t lim = std::min(a.rows(), a.cols());
  for (std::size_t k = lim; k > 0; --k) {
    std::vector<bool> rsel(a.rows(), false), csel(a.cols(), false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        std::vector<std::size_t> ri, ci;
        for (std::size_t i = 0; i < a.rows(); ++i) if (rsel[i]) ri.push_back(i);
        for (std::size_t j = 0; j < a.cols(); ++j) if (csel[j]) ci.push_back(j);
        if (det_leibniz(a.select(ri, ci)) != 0) return k;
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

FieldMat reconstruct(const Pluq& f, std::size_t rows, std::size_t cols) {
  const FieldMat lu = f.L * f.U;
  FieldMat a(lu.modulus(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a.at(f.P[i], f.Q[j]) = lu.at(i, j);
  }
  return a;
}

}  // namespace

TEST_CASE("pluq on identity, zero and planted rank") {
  const Modulus m(kDefaultPrime);
  const FieldMat id = FieldMat::identity(m, 4);
  const Pluq fi = pluq(id);
  CHECK(fi.rank == 4);
  CHECK(fi.L == id);
  CHECK(fi.U == id);
  CHECK(pluq(FieldMat(m, 3, 5)).rank == 0);

  std::mt19937_64 rng(1);
  const FieldMat a = random_mat(m, 6, 2, rng) * random_mat(m, 2, 4, rng);
  CHECK(rank_by_minors(a) == 2);
  const Pluq f = pluq(a);
  CHECK(f.rank == 2);
  CHECK(reconstruct(f, 6, 4) == a);
}

TEST_CASE("pluq reconstructs random matrices and its rank matches minors") {
  std::mt19937_64 rng(2);
  for (u64 p : std::array<u64, 3>{3, 5, kDefaultPrime}) {
    const Modulus m(p);
    for (int t = 0; t < 1000 / 3; ++t) {
      const std::size_t r = 1 + rng() % 16, c = 1 + rng() % 16;
      FieldMat a = random_mat(m, r, c, rng);
      if (t % 3 == 0 && r > 1) {
        for (std::size_t j = 0; j < c; ++j) a.at(r - 1, j) = a.at(0, j);
      }
      const Pluq f = pluq(a);
      REQUIRE(reconstruct(f, r, c) == a);
      for (std::size_t i = 0; i < f.rank; ++i) CHECK(f.L.at(i, i) == 1);
      for (std::size_t i = 0; i < f.rank; ++i) CHECK(f.U.at(i, i) != 0);
      if (r <= 5 && c <= 5) CHECK(f.rank == rank_by_minors(a));
    }
  }
}

TEST_CASE("left null vectors") {
  const Modulus m(7);
  const FieldMat a = FieldMat::from_rows(m, {{1, 0}, {0, 1}, {1, 1}});
  const auto v = nullvector_left(a);
  REQUIRE(v.has_value());
  CHECK(is_zero(a.apply_left(*v)));
  CHECK_FALSE(is_zero(*v));
  // Proportional to (1, 1, -1).
  CHECK(m.mul((*v)[0], 6) == (*v)[2]);
  CHECK((*v)[0] == (*v)[1]);

  CHECK_FALSE(nullvector_left(FieldMat::identity(m, 3)).has_value());

  const FieldMat z = FieldMat::from_rows(m, {{1, 2}, {0, 0}, {3, 1}});
  const auto e = nullvector_left(z);
  REQUIRE(e.has_value());
  CHECK(*e == FieldVec{0, 1, 0});

  std::mt19937_64 rng(4);
  const Modulus big(kDefaultPrime);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = 2 + rng() % 8;
    const FieldMat b = random_mat(big, r, 1 + rng() % r, rng);
    const auto w = nullvector_left(b);
    if (pluq(b).rank == r) {
      CHECK_FALSE(w.has_value());
    } else {
      REQUIRE(w.has_value());
      CHECK(is_zero(b.apply_left(*w)));
      CHECK_FALSE(is_zero(*w));
    }
  }
}

TEST_CASE("right solving and sparse representatives") {
  const Modulus m(kDefaultPrime);
  const FieldVec b{4, 5, 6};
  CHECK(solve_right(FieldMat::identity(m, 3), b) == b);
  CHECK(solve_right(FieldMat::from_rows(m, {{1, 2}, {3, 4}}), FieldVec{0, 0}) == FieldVec{0, 0});

  const FieldMat sing = FieldMat::from_rows(m, {{1, 2}, {2, 4}});
  // Column space is spanned by (1, 2); (1, 0) lies outside it.
  CHECK_FALSE(solve_right(sing, FieldVec{1, 0}).has_value());
  const auto w = solve_right(sing, FieldVec{3, 6});
  REQUIRE(w.has_value());
  CHECK(sing.apply(*w) == FieldVec{3, 6});

  const FieldVec v{7, 8};
  CHECK(sparse_representative(sing, v, 2) == v);
  const auto g = sparse_representative(sing, v, 1);
  REQUIRE(g.has_value());
  CHECK(hamming_weight(*g) == 1);
  CHECK(sing.apply(*g) == sing.apply(v));
  CHECK_FALSE(sparse_representative(FieldMat::identity(m, 3), FieldVec{1, 1, 1}, 2).has_value());
}

TEST_CASE("field determinants") {
  const Modulus m7(7);
  CHECK(det_field(FieldMat::identity(m7, 5)) == 1);
  CHECK(det_field(FieldMat::from_rows(m7, {{2, 1}, {1, 4}})) == 0);
  CHECK(det_field(FieldMat::from_rows(m7, {{1, 2}, {2, 4}})) == 0);
  CHECK_THROWS_AS(det_field(FieldMat(m7, 2, 3)), DimMismatch);

  const Modulus m(kDefaultPrime);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const FieldMat a = random_mat(m, n, n, rng), b = random_mat(m, n, n, rng);
    CHECK(det_field(a) == det_leibniz(a));
    CHECK(det_field(a * b) == m.mul(det_field(a), det_field(b)));
  }
}

TEST_CASE("square pluq certificate satisfies the product identity") {
  const Modulus m(kDefaultPrime);
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 7;
    FieldMat a = random_mat(m, n, n, rng);
    if (t % 2 && n > 1) {
      for (std::size_t j = 0; j < n; ++j) a.at(n - 1, j) = m.add(a.at(0, j), a.at(1 % n, j));
    }
    const SquarePluq f = square_pluq(a);
    u64 d = 1;
    for (std::size_t i = 0; i < n; ++i) d = m.mul(d, f.U.at(i, i));
    if (permutation_sign(f.P) * permutation_sign(f.Q) < 0) d = m.neg(d);
    CHECK(d == det_field(a));
    FieldVec v(n);
    for (auto& x : v) x = rng() % m.value();
    CHECK(apply_pluq(f.P, f.L, f.U, f.Q, v) == a.apply(v));
  }
  CHECK(permutation_sign({1, 0, 2}) == -1);
  CHECK(permutation_sign({1, 2, 0}) == 1);
  CHECK(permutation_sign({0, 0}) == 0);
}
