// Prime-field arithmetic over Z/pZ with 2 <= p < 2^62.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace polycert {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr u64 kDefaultPrime = 2147483647ULL;  // 2^31 - 1

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ModulusMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(u64 n);

class Modulus {
 public:
  Modulus() noexcept : p_(kDefaultPrime) {}
  explicit Modulus(u64 p);

  u64 value() const noexcept { return p_; }

  u64 reduce(u64 a) const noexcept { return a % p_; }
  u64 from_signed(i64 a) const noexcept;

  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
  u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const noexcept {
    if (p_ < (1ULL << 32)) return (a * b) % p_;
    return static_cast<u64>((static_cast<u128>(a) * b) % p_);
  }
  // a*b + c
  u64 mul_add(u64 a, u64 b, u64 c) const noexcept { return add(mul(a, b), c); }
  u64 pow(u64 a, u64 e) const noexcept;
  u64 inv(u64 a) const;  // throws DivisionByZero

  friend bool operator==(const Modulus& a, const Modulus& b) noexcept { return a.p_ == b.p_; }

 private:
  u64 p_;
};

void require_same(const Modulus& a, const Modulus& b);

class Fp {
 public:
  Fp() = default;
  Fp(u64 v, const Modulus& m) : v_(m.reduce(v)), m_(m) {}

  u64 value() const noexcept { return v_; }
  const Modulus& modulus() const noexcept { return m_; }
  bool is_zero() const noexcept { return v_ == 0; }

  Fp inv() const { return Fp(m_.inv(v_), m_, raw_tag{}); }
  Fp pow(u64 e) const { return Fp(m_.pow(v_, e), m_, raw_tag{}); }

  friend Fp operator+(const Fp& a, const Fp& b) {
    require_same(a.m_, b.m_);
    return Fp(a.m_.add(a.v_, b.v_), a.m_, raw_tag{});
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    require_same(a.m_, b.m_);
    return Fp(a.m_.sub(a.v_, b.v_), a.m_, raw_tag{});
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    require_same(a.m_, b.m_);
    return Fp(a.m_.mul(a.v_, b.v_), a.m_, raw_tag{});
  }
  friend Fp operator/(const Fp& a, const Fp& b) {
    require_same(a.m_, b.m_);
    return Fp(a.m_.mul(a.v_, a.m_.inv(b.v_)), a.m_, raw_tag{});
  }
  Fp operator-() const { return Fp(m_.neg(v_), m_, raw_tag{}); }

  friend bool operator==(const Fp& a, const Fp& b) noexcept {
    return a.v_ == b.v_ && a.m_ == b.m_;
  }

 private:
  struct raw_tag {};
  Fp(u64 v, const Modulus& m, raw_tag) : v_(v), m_(m) {}

  u64 v_ = 0;
  Modulus m_;
};

// The sample set S = {0, ..., sigma-1} embedded in F.
struct SampleSet {
  u64 sigma = 1;

  SampleSet() = default;
  SampleSet(u64 s, const Modulus& m);
};

// Acceptance threshold for rejection sampling of 64-bit words into [0, sigma):
// w is accepted iff w < floor(2^64/sigma)*sigma. Returns 0 when every word is
// accepted (sigma divides 2^64).
inline u64 rejection_limit(u64 sigma) noexcept {
  const u64 rem = (0 - sigma) % sigma;  // 2^64 mod sigma
  return rem == 0 ? 0 : 0 - rem;
}

inline bool accept_word(u64 w, u64 limit) noexcept { return limit == 0 || w < limit; }

// Uniform draw from [0, sigma) using the same rejection rule as the hash chain.
u64 uniform_below(std::mt19937_64& rng, u64 sigma);

}  // namespace polycert
