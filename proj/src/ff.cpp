#include "polycert/ff.hpp"

namespace polycert {

namespace {

u64 mulmod64(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Modulus::Modulus(u64 p) : p_(p) {
  if (p < 2 || p >= (1ULL << 62)) {
    throw std::invalid_argument("modulus must satisfy 2 <= p < 2^62, got " + std::to_string(p));
  }
  if (!is_prime_u64(p)) throw std::invalid_argument("modulus is not prime: " + std::to_string(p));
}

u64 Modulus::from_signed(i64 a) const noexcept {
  if (a >= 0) return static_cast<u64>(a) % p_;
  const u64 m = static_cast<u64>(-(a + 1)) % p_;  // avoids overflow at INT64_MIN
  return sub(p_ - 1, m);
}

u64 Modulus::pow(u64 a, u64 e) const noexcept {
  u64 r = 1;
  a %= p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 Modulus::inv(u64 a) const {
  a %= p_;
  if (a == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(p_));
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(p_), new_r = static_cast<i64>(a);
  while (new_r != 0) {
    const i64 q = r / new_r;
    const i64 tmp_t = t - q * new_t;
    t = new_t;
    new_t = tmp_t;
    const i64 tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  return from_signed(t);
}

void require_same(const Modulus& a, const Modulus& b) {
  if (!(a == b)) {
    throw ModulusMismatch("operands live in F_" + std::to_string(a.value()) + " and F_" +
                          std::to_string(b.value()));
  }
}

SampleSet::SampleSet(u64 s, const Modulus& m) : sigma(s) {
  if (s < 1 || s > m.value()) {
    throw std::invalid_argument("sample set size must lie in [1, p], got " + std::to_string(s));
  }
}

u64 uniform_below(std::mt19937_64& rng, u64 sigma) {
  const u64 limit = rejection_limit(sigma);
  for (;;) {
    const u64 w = rng();
    if (accept_word(w, limit)) return w % sigma;
  }
}

}  // namespace polycert
