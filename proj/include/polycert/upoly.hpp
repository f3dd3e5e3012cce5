// Dense univariate polynomials and rational functions over F_p.
#pragma once

#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polycert/ff.hpp"

namespace polycert {

// Degree of the zero polynomial. Far enough from INT_MIN that adding shifts
// or small multiples stays negative without overflow.
inline constexpr int kNegInf = std::numeric_limits<int>::min() / 4;

// max(1, deg) working degree.
inline int working_degree(int deg) { return deg < 1 ? 1 : deg; }

class ZeroDenominator : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DuplicateAbscissa : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(const Modulus& m) : m_(m) {}
  // Coefficients low-to-high; reduced mod p and trimmed.
  Poly(const Modulus& m, std::vector<u64> coeffs);

  static Poly constant(const Modulus& m, u64 c);
  static Poly monomial(const Modulus& m, u64 c, std::size_t k);
  static Poly x(const Modulus& m) { return monomial(m, 1, 1); }
  // Signed coefficients, for fixtures: from_ints(m, {1, 0, -1}) = 1 - x^2.
  static Poly from_ints(const Modulus& m, std::initializer_list<i64> coeffs);

  const Modulus& modulus() const noexcept { return m_; }
  int deg() const noexcept { return c_.empty() ? kNegInf : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  std::size_t size() const noexcept { return c_.size(); }
  u64 operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  u64 lc() const noexcept { return c_.empty() ? 0 : c_.back(); }
  const std::vector<u64>& coeffs() const noexcept { return c_; }

  u64 eval(u64 a) const noexcept;
  Fp eval(const Fp& a) const;

  Poly monic() const;
  Poly scaled(u64 c) const;
  Poly shifted(std::size_t k) const;  // times x^k

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  // this -= c * x^k * o, in place.
  void sub_scaled_shifted(const Poly& o, u64 c, std::size_t k);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;

  friend bool operator==(const Poly& a, const Poly& b) noexcept {
    return a.m_ == b.m_ && a.c_ == b.c_;
  }

 private:
  void trim() noexcept {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  Modulus m_;
  std::vector<u64> c_;
};

// Plain quadratic product; kept as the reference the Karatsuba path is tested against.
Poly mul_schoolbook(const Poly& a, const Poly& b);

struct DivRem {
  Poly q;
  Poly r;
};
DivRem divrem(const Poly& f, const Poly& g);  // throws DivisionByZero
// Exact quotient; throws std::logic_error if g does not divide f.
Poly div_exact(const Poly& f, const Poly& g);

struct Xgcd {
  Poly g;  // monic gcd (zero only if both inputs are zero, which throws)
  Poly s;
  Poly t;  // g = s*f + t*h
};
class BothZero : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
Xgcd xgcd(const Poly& f, const Poly& h);
Poly gcd(const Poly& f, const Poly& h);  // monic; gcd(0,0) = 0
Poly lcm(const Poly& f, const Poly& h);  // monic

Poly interpolate(const Modulus& m, std::span<const std::pair<u64, u64>> points);

class RatFunc {
 public:
  RatFunc() : den_(Poly::constant(Modulus(), 1)) {}
  explicit RatFunc(const Poly& p);
  RatFunc(Poly num, Poly den);  // reduces; throws ZeroDenominator

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }
  const Modulus& modulus() const noexcept { return num_.modulus(); }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_poly() const noexcept { return den_.is_one(); }

  // nullopt when the denominator vanishes at a.
  std::optional<u64> eval(u64 a) const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);  // throws DivisionByZero
  RatFunc operator-() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  Poly num_;
  Poly den_;
};

class RatVec {
 public:
  RatVec() = default;
  RatVec(const Modulus& m, std::vector<RatFunc> entries);

  const std::vector<RatFunc>& entries() const noexcept { return e_; }
  std::size_t size() const noexcept { return e_.size(); }
  const RatFunc& operator[](std::size_t i) const { return e_[i]; }
  // lcm of entry denominators, monic.
  const Poly& common_den() const noexcept { return den_; }
  // common_den * entries, as polynomials.
  std::vector<Poly> numerators() const;
  bool is_poly() const noexcept { return den_.is_one(); }

 private:
  std::vector<RatFunc> e_;
  Poly den_;
};

RatVec ratvec_normalize(const Modulus& m, const std::vector<std::pair<Poly, Poly>>& raw);

}  // namespace polycert
