#include <array>
#include <cmath>

#include "doctest.h"
#include "polycert/ff.hpp"

using namespace polycert;

TEST_CASE("small field arithmetic") {
  const Modulus m7(7);
  CHECK(m7.mul(3, 5) == 1);
  CHECK(m7.inv(1) == 1);
  CHECK(m7.add(4, 3) == 0);
  CHECK(m7.from_signed(-1) == 6);
  CHECK((Fp(3, m7) / Fp(5, m7)) * Fp(5, m7) == Fp(3, m7));
  CHECK_THROWS_AS(m7.inv(0), DivisionByZero);
  CHECK_THROWS_AS(Fp(1, m7) + Fp(1, Modulus(11)), ModulusMismatch);
}

TEST_CASE("modulus validation") {
  CHECK_THROWS(Modulus(9));
  CHECK_THROWS(Modulus(1));
  CHECK(Modulus(2).inv(1) == 1);
  CHECK_NOTHROW(Modulus{kDefaultPrime});
  CHECK_NOTHROW(Modulus{(1ULL << 61) - 1});
  CHECK(is_prime_u64(1000000007ULL));
  CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("inverse identity on both multiplication paths") {
  for (u64 p : std::array<u64, 3>{101, kDefaultPrime, (1ULL << 61) - 1}) {
    const Modulus m(p);
    std::mt19937_64 rng(p);
    for (int i = 0; i < 200; ++i) {
      const u64 a = 1 + rng() % (p - 1);
      CHECK(m.mul(a, m.inv(a)) == 1);
    }
  }
}

TEST_CASE("sampling stays in range and is uniform") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) CHECK(uniform_below(rng, 1) == 0);
  std::array<int, 16> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const u64 v = uniform_below(rng, 16);
    REQUIRE(v < 16);
    ++counts[v];
  }
  double chi = 0;
  for (int c : counts) chi += (c - n / 16.0) * (c - n / 16.0) / (n / 16.0);
  CHECK(chi < 37.70);  // chi-square, 15 dof, alpha = 0.001

  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 50; ++i) CHECK(uniform_below(a, 64) == uniform_below(b, 64));
}

TEST_CASE("rejection limit") {
  CHECK(rejection_limit(1) == 0);
  CHECK(rejection_limit(16) == 0);
  const u64 lim = rejection_limit(3);
  CHECK(lim % 3 == 0);
  CHECK(lim == 18446744073709551615ULL);  // 2^64 - 1 is divisible by 3
}
