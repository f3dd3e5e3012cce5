#include "polycert/upoly.hpp"

#include <algorithm>

namespace polycert {

namespace {

constexpr std::size_t kKaratsubaThreshold = 33;  // coefficient count, i.e. degree 32

// out[i+j] += a[i]*b[j]; out must have na+nb-1 slots.
void schoolbook_acc(const u64* a, std::size_t na, const u64* b, std::size_t nb, u64* out,
                    const Modulus& m) {
  if (na == 0 || nb == 0) return;
  const std::size_t n = na + nb - 1;
  if (m.value() < (1ULL << 32)) {
    // Products fit in 64 bits; sum exactly in 128 bits, reduce once.
    std::vector<u128> acc(n, 0);
    for (std::size_t i = 0; i < na; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < nb; ++j) acc[i + j] += static_cast<u128>(a[i] * b[j]);
    }
    for (std::size_t k = 0; k < n; ++k) out[k] = m.add(out[k], static_cast<u64>(acc[k] % m.value()));
    return;
  }
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < nb; ++j) out[i + j] = m.mul_add(a[i], b[j], out[i + j]);
  }
}

std::vector<u64> karatsuba(const std::vector<u64>& a, const std::vector<u64>& b, const Modulus& m) {
  const std::size_t na = a.size(), nb = b.size();
  if (na == 0 || nb == 0) return {};
  std::vector<u64> out(na + nb - 1, 0);
  if (std::min(na, nb) < kKaratsubaThreshold) {
    schoolbook_acc(a.data(), na, b.data(), nb, out.data(), m);
    return out;
  }
  const std::size_t h = std::max(na, nb) / 2;
  auto lo = [h](const std::vector<u64>& v) {
    return std::vector<u64>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(h, v.size())));
  };
  auto hi = [h](const std::vector<u64>& v) {
    return v.size() > h ? std::vector<u64>(v.begin() + static_cast<std::ptrdiff_t>(h), v.end())
                        : std::vector<u64>{};
  };
  auto add = [&m](const std::vector<u64>& x, const std::vector<u64>& y) {
    std::vector<u64> r(std::max(x.size(), y.size()), 0);
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i];
    for (std::size_t i = 0; i < y.size(); ++i) r[i] = m.add(r[i], y[i]);
    return r;
  };
  const auto a0 = lo(a), a1 = hi(a), b0 = lo(b), b1 = hi(b);
  const auto z0 = karatsuba(a0, b0, m);
  const auto z2 = karatsuba(a1, b1, m);
  auto z1 = karatsuba(add(a0, a1), add(b0, b1), m);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = m.sub(z1[i], z0[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = m.sub(z1[i], z2[i]);
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] = m.add(out[i], z0[i]);
  for (std::size_t i = 0; i < z1.size() && i + h < out.size(); ++i) out[i + h] = m.add(out[i + h], z1[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) out[i + 2 * h] = m.add(out[i + 2 * h], z2[i]);
  return out;
}

}  // namespace

Poly::Poly(const Modulus& m, std::vector<u64> coeffs) : m_(m), c_(std::move(coeffs)) {
  for (auto& c : c_) c = m_.reduce(c);
  trim();
}

Poly Poly::constant(const Modulus& m, u64 c) { return Poly(m, std::vector<u64>{c}); }

Poly Poly::monomial(const Modulus& m, u64 c, std::size_t k) {
  std::vector<u64> v(k + 1, 0);
  v[k] = c;
  return Poly(m, std::move(v));
}

Poly Poly::from_ints(const Modulus& m, std::initializer_list<i64> coeffs) {
  std::vector<u64> v;
  v.reserve(coeffs.size());
  for (i64 c : coeffs) v.push_back(m.from_signed(c));
  return Poly(m, std::move(v));
}

u64 Poly::eval(u64 a) const noexcept {
  u64 r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = m_.mul_add(r, a, c_[i]);
  return r;
}

Fp Poly::eval(const Fp& a) const {
  require_same(m_, a.modulus());
  return Fp(eval(a.value()), m_);
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(m_.inv(lc()));
}

Poly Poly::scaled(u64 c) const {
  c = m_.reduce(c);
  if (c == 0) return Poly(m_);
  Poly r(*this);
  for (auto& x : r.c_) x = m_.mul(x, c);
  return r;
}

Poly Poly::shifted(std::size_t k) const {
  if (is_zero()) return *this;
  Poly r(m_);
  r.c_.assign(k, 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  require_same(m_, o.m_);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = m_.add(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same(m_, o.m_);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = m_.sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

void Poly::sub_scaled_shifted(const Poly& o, u64 c, std::size_t k) {
  require_same(m_, o.m_);
  c = m_.reduce(c);
  if (c == 0 || o.is_zero()) return;
  if (o.c_.size() + k > c_.size()) c_.resize(o.c_.size() + k, 0);
  const u64 nc = m_.neg(c);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i + k] = m_.mul_add(o.c_[i], nc, c_[i + k]);
  trim();
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly operator*(const Poly& a, const Poly& b) {
  require_same(a.m_, b.m_);
  Poly r(a.m_);
  r.c_ = karatsuba(a.c_, b.c_, a.m_);
  r.trim();
  return r;
}

Poly mul_schoolbook(const Poly& a, const Poly& b) {
  require_same(a.modulus(), b.modulus());
  if (a.is_zero() || b.is_zero()) return Poly(a.modulus());
  std::vector<u64> out(a.size() + b.size() - 1, 0);
  const auto& m = a.modulus();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = m.mul_add(a[i], b[j], out[i + j]);
  }
  return Poly(m, std::move(out));
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& x : r.c_) x = m_.neg(x);
  return r;
}

DivRem divrem(const Poly& f, const Poly& g) {
  require_same(f.modulus(), g.modulus());
  const Modulus& m = f.modulus();
  if (g.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (f.deg() < g.deg()) return {Poly(m), f};
  std::vector<u64> r = f.coeffs();
  const std::size_t dg = g.coeffs().size() - 1;
  std::vector<u64> q(r.size() - dg, 0);
  const u64 ginv = m.inv(g.lc());
  const auto& gc = g.coeffs();
  for (std::size_t k = r.size(); k-- > dg;) {
    const u64 c = m.mul(r[k], ginv);
    q[k - dg] = c;
    if (c == 0) continue;
    const u64 nc = m.neg(c);
    for (std::size_t i = 0; i <= dg; ++i) r[k - dg + i] = m.mul_add(gc[i], nc, r[k - dg + i]);
  }
  r.resize(dg);
  return {Poly(m, std::move(q)), Poly(m, std::move(r))};
}

Poly div_exact(const Poly& f, const Poly& g) {
  auto [q, r] = divrem(f, g);
  if (!r.is_zero()) throw std::logic_error("div_exact: nonzero remainder");
  return q;
}

Xgcd xgcd(const Poly& f, const Poly& h) {
  require_same(f.modulus(), h.modulus());
  const Modulus& m = f.modulus();
  if (f.is_zero() && h.is_zero()) throw BothZero("xgcd(0, 0)");
  Poly r0 = f, r1 = h;
  Poly s0 = Poly::constant(m, 1), s1(m);
  Poly t0(m), t1 = Poly::constant(m, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const u64 inv = m.inv(r0.lc());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly gcd(const Poly& f, const Poly& h) {
  require_same(f.modulus(), h.modulus());
  Poly a = f, b = h;
  while (!b.is_zero()) {
    Poly r = divrem(a, b).r;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly lcm(const Poly& f, const Poly& h) {
  if (f.is_zero() || h.is_zero()) return Poly(f.modulus());
  return div_exact(f * h, gcd(f, h)).monic();
}

Poly interpolate(const Modulus& m, std::span<const std::pair<u64, u64>> points) {
  // Newton form, then expand.
  const std::size_t k = points.size();
  std::vector<u64> xs(k), coef(k);
  for (std::size_t i = 0; i < k; ++i) {
    xs[i] = m.reduce(points[i].first);
    coef[i] = m.reduce(points[i].second);
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (xs[i] == xs[j]) throw DuplicateAbscissa("interpolate: repeated abscissa");
    }
  }
  for (std::size_t j = 1; j < k; ++j) {
    for (std::size_t i = k - 1; i >= j; --i) {
      coef[i] = m.mul(m.sub(coef[i], coef[i - 1]), m.inv(m.sub(xs[i], xs[i - j])));
      if (i == j) break;
    }
  }
  Poly r(m);
  for (std::size_t i = k; i-- > 0;) {
    r = r * Poly(m, {m.neg(xs[i]), 1}) + Poly::constant(m, coef[i]);
  }
  return r;
}

RatFunc::RatFunc(const Poly& p) : num_(p), den_(Poly::constant(p.modulus(), 1)) {}

RatFunc::RatFunc(Poly num, Poly den) {
  require_same(num.modulus(), den.modulus());
  if (den.is_zero()) throw ZeroDenominator("rational function with zero denominator");
  const Modulus& m = num.modulus();
  if (num.is_zero()) {
    num_ = std::move(num);
    den_ = Poly::constant(m, 1);
    return;
  }
  Poly g = gcd(num, den);
  if (!g.is_one()) {
    num = div_exact(num, g);
    den = div_exact(den, g);
  }
  const u64 inv = m.inv(den.lc());
  num_ = num.scaled(inv);
  den_ = den.scaled(inv);
}

std::optional<u64> RatFunc::eval(u64 a) const {
  const u64 d = den_.eval(a);
  if (d == 0) return std::nullopt;
  const Modulus& m = num_.modulus();
  return m.mul(num_.eval(a), m.inv(d));
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc(Poly(a.modulus()));
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DivisionByZero("rational function division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r(*this);
  r.num_ = -r.num_;
  return r;
}

RatVec::RatVec(const Modulus& m, std::vector<RatFunc> entries)
    : e_(std::move(entries)), den_(Poly::constant(m, 1)) {
  for (const auto& e : e_) {
    require_same(m, e.modulus());
    if (!e.den().is_one()) den_ = lcm(den_, e.den());
  }
}

std::vector<Poly> RatVec::numerators() const {
  std::vector<Poly> out;
  out.reserve(e_.size());
  for (const auto& e : e_) out.push_back(div_exact(den_, e.den()) * e.num());
  return out;
}

RatVec ratvec_normalize(const Modulus& m, const std::vector<std::pair<Poly, Poly>>& raw) {
  std::vector<RatFunc> entries;
  entries.reserve(raw.size());
  for (const auto& [n, d] : raw) entries.emplace_back(n, d);
  return RatVec(m, std::move(entries));
}

}  // namespace polycert
