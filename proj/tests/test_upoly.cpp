#include <array>
#include <random>

#include "doctest.h"
#include "polycert/upoly.hpp"

using namespace polycert;

namespace {

Poly random_poly(const Modulus& m, int deg, std::mt19937_64& rng) {
  std::vector<u64> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = rng() % m.value();
  return Poly(m, c);
}

}  // namespace

TEST_CASE("hand-checked arithmetic over F_7") {
  const Modulus m(7);
  const Poly a = Poly::from_ints(m, {1, 1}), b = Poly::from_ints(m, {-1, 1});
  CHECK(a * b == Poly::from_ints(m, {6, 0, 1}));
  CHECK((a * Poly(m)).is_zero());
  CHECK(Poly(m).deg() == kNegInf);

  const DivRem dr = divrem(Poly::monomial(m, 1, 2), Poly::x(m));
  CHECK(dr.q == Poly::x(m));
  CHECK(dr.r.is_zero());
  CHECK_THROWS_AS(divrem(a, Poly(m)), DivisionByZero);

  const Poly f = Poly::from_ints(m, {3, 2, 1});
  CHECK(f.eval(2) == 4);
  CHECK(Poly::constant(m, 5).eval(3) == 5);
  // Roots of x^2 + 6 = x^2 - 1 found by scanning F_7: 1 and 6.
  for (u64 r = 0; r < 7; ++r) CHECK((Poly::from_ints(m, {6, 0, 1}).eval(r) == 0) == (r == 1 || r == 6));
}

TEST_CASE("xgcd") {
  const Modulus m(7);
  const Poly f = Poly::from_ints(m, {1, 0, 1}), g = Poly::from_ints(m, {3, 1});
  const Xgcd r = xgcd(f, g);
  CHECK(r.g.is_one());
  CHECK(r.s * f + r.t * g == r.g);

  const Poly h = Poly::from_ints(m, {2, 0, 3});
  const Xgcd self = xgcd(h, h);
  CHECK(self.g == h.monic());
  CHECK(self.s * h + self.t * h == self.g);

  const Xgcd z = xgcd(Poly(m), h);
  CHECK(z.g == h.monic());
  CHECK(z.s.is_zero());
  CHECK(z.t == Poly::constant(m, m.inv(h.lc())));
  CHECK_THROWS_AS(xgcd(Poly(m), Poly(m)), BothZero);

  const Modulus big(kDefaultPrime);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Poly a = random_poly(big, 1 + static_cast<int>(rng() % 12), rng);
    const Poly b = random_poly(big, 1 + static_cast<int>(rng() % 12), rng);
    const Xgcd e = xgcd(a, b);
    REQUIRE(e.s * a + e.t * b == e.g);
    CHECK(divrem(a, e.g).r.is_zero());
    CHECK(divrem(b, e.g).r.is_zero());
    if (e.g.deg() < a.deg() && e.g.deg() < b.deg()) {
      CHECK(e.s.deg() < b.deg() - e.g.deg());
      CHECK(e.t.deg() < a.deg() - e.g.deg());
    }
  }
}

TEST_CASE("divrem round trip and evaluation homomorphism") {
  const Modulus m(kDefaultPrime);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Poly f = random_poly(m, static_cast<int>(rng() % 17), rng);
    Poly g = random_poly(m, static_cast<int>(rng() % 17), rng);
    if (g.is_zero()) g = Poly::constant(m, 1);
    const DivRem dr = divrem(f, g);
    REQUIRE(dr.q * g + dr.r == f);
    REQUIRE(dr.r.deg() < g.deg());
    const u64 alpha = rng() % m.value();
    CHECK((f * g).eval(alpha) == m.mul(f.eval(alpha), g.eval(alpha)));
  }
}

TEST_CASE("karatsuba agrees with schoolbook") {
  for (u64 p : std::array<u64, 3>{7, kDefaultPrime, (1ULL << 61) - 1}) {
    const Modulus m(p);
    std::mt19937_64 rng(p);
    for (int i = 0; i < 30; ++i) {
      const Poly a = random_poly(m, 20 + static_cast<int>(rng() % 120), rng);
      const Poly b = random_poly(m, 20 + static_cast<int>(rng() % 120), rng);
      CHECK(a * b == mul_schoolbook(a, b));
    }
  }
}

TEST_CASE("interpolation") {
  const Modulus m(7);
  std::vector<std::pair<u64, u64>> one{{0, 4}};
  CHECK(interpolate(m, one) == Poly::constant(m, 4));
  std::vector<std::pair<u64, u64>> line{{0, 1}, {1, 2}};
  CHECK(interpolate(m, line) == Poly::from_ints(m, {1, 1}));
  std::vector<std::pair<u64, u64>> dup{{2, 1}, {2, 3}};
  CHECK_THROWS_AS(interpolate(m, dup), DuplicateAbscissa);

  const Modulus big(kDefaultPrime);
  std::mt19937_64 rng(9);
  const Poly f = random_poly(big, 9, rng);
  std::vector<std::pair<u64, u64>> pts;
  for (u64 x = 0; x < 10; ++x) pts.emplace_back(x * 7 + 1, f.eval(x * 7 + 1));
  CHECK(interpolate(big, pts) == f);
}

TEST_CASE("rational functions and vectors") {
  const Modulus m(7);
  const Poly x = Poly::x(m);
  const RatFunc c(x, x);
  CHECK(c.is_poly());
  CHECK(c.num().is_one());
  CHECK_THROWS_AS(RatFunc(x, Poly(m)), ZeroDenominator);

  const Poly one = Poly::constant(m, 1);
  const RatVec v = ratvec_normalize(m, {{one, x}, {one, x * x}});
  CHECK(v.common_den() == x * x);
  const auto nums = v.numerators();
  CHECK(nums[0] == x);
  CHECK(nums[1] == one);

  const RatVec p = ratvec_normalize(m, {{x, one}, {one + x, one}});
  CHECK(p.is_poly());
  CHECK(p.common_den().is_one());

  const RatFunc h(Poly::from_ints(m, {1, 1}), Poly::from_ints(m, {2, 2}));
  CHECK(h.num() == Poly::constant(m, 4));  // (x+1)/(2x+2) = 1/2 = 4 in F_7
  CHECK(h.den().is_one());
  CHECK(((RatFunc(one) / RatFunc(x)) * RatFunc(x)).is_poly());
  CHECK_FALSE(RatFunc(one, x).eval(0).has_value());
}
