#include "polycert/workloads.hpp"

#include <algorithm>

#include "polycert/polymat_oracles.hpp"
#include "polycert/provers.hpp"

namespace polycert {

Poly random_poly(const Modulus& m, int deg, std::mt19937_64& rng) {
  if (deg < 0) return Poly(m);
  std::vector<u64> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = rng() % m.value();
  if (c.back() == 0) c.back() = 1;
  return Poly(m, std::move(c));
}

PolyVec random_polyvec(const Modulus& m, std::size_t n, int deg, std::mt19937_64& rng) {
  PolyVec v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_poly(m, deg, rng));
  return v;
}

PolyMat random_polymat(const Modulus& m, std::size_t rows, std::size_t cols, int deg, std::mt19937_64& rng) {
  std::vector<Poly> e;
  e.reserve(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) e.push_back(random_poly(m, deg, rng));
  return PolyMat(m, rows, cols, std::move(e));
}

PolyMat planted_rank(const Modulus& m, std::size_t rows, std::size_t cols, std::size_t r, int deg,
                     std::mt19937_64& rng) {
  if (r == 0) return PolyMat(m, rows, cols);
  const int d1 = deg / 2, d2 = deg - deg / 2;
  return random_polymat(m, rows, r, d1, rng) * random_polymat(m, r, cols, d2, rng);
}

std::optional<InstanceKind> kind_from_name(const std::string& s) {
  if (s == "random") return InstanceKind::Random;
  if (s == "planted-rank") return InstanceKind::PlantedRank;
  if (s == "planted-membership") return InstanceKind::PlantedMembership;
  if (s == "planted-normal-form") return InstanceKind::PlantedNormalForm;
  return std::nullopt;
}

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

// Rows of a random unimodular matrix: saturated and of full row rank.
PolyMat unimodular_rows(const Modulus& m, std::size_t rows, std::size_t n, std::mt19937_64& rng) {
  PolyMat u = random_unimodular(m, n, static_cast<int>(n) + 1, 1, rng);
  std::vector<std::size_t> keep(rows);
  for (std::size_t i = 0; i < rows; ++i) keep[i] = i;
  return u.select_rows(keep);
}

// Full row rank; resampled until the rank oracle agrees.
PolyMat full_row_rank(const Modulus& m, std::size_t rows, std::size_t cols, int deg, std::mt19937_64& rng) {
  for (;;) {
    PolyMat a = random_polymat(m, rows, cols, deg, rng);
    if (rank_and_profile(a).rank == rows) return a;
  }
}

Instance make(const std::string& id, const Modulus& m, PublicInputs in) { return {id, m, std::move(in), {}}; }

}  // namespace

Instance true_instance(const std::string& id, const Modulus& md, std::size_t max_dim, int max_deg,
                       std::mt19937_64& rng) {
  const std::size_t m = pick(rng, 1, max_dim), n = pick(rng, 1, max_dim);
  const int d = static_cast<int>(pick(rng, 0, static_cast<std::size_t>(max_deg)));
  const std::size_t sm = m, sn = n;
  const int sd = d;

  if (id == "singularity") {
    const PolyMat a = planted_rank(md, n, n, pick(rng, 0, n - 1), d, rng);
    return make(id, md, {{"A", a}});
  }
  if (id == "nonsingularity") {
    for (;;) {
      PolyMat a = random_polymat(md, n, n, d, rng);
      if (!det_bareiss(a).is_zero()) return make(id, md, {{"A", a}});
    }
  }
  if (id == "rank_lb" || id == "rank_ub" || id == "rank") {
    const std::size_t r = pick(rng, 0, std::min(m, n));
    const PolyMat a = planted_rank(md, m, n, r, d, rng);
    const u64 true_rank = rank_and_profile(a).rank;
    u64 rho = true_rank;
    if (id == "rank_lb") rho = pick(rng, 0, true_rank);
    if (id == "rank_ub") rho = pick(rng, true_rank, std::min(m, n));
    return make(id, md, {{"A", a}, {"rho", RankClaim{rho}}});
  }
  if (id == "determinant") {
    const PolyMat a = random_polymat(md, n, n, d, rng);
    return make(id, md, {{"A", a}, {"delta", det_bareiss(a)}});
  }
  if (id == "field_det") {
    FieldMat b = eval_mat(planted_rank(md, n, n, pick(rng, n > 1 ? n - 1 : n, n), 0, rng), 0);
    const u64 beta = det_field(b);
    return make(id, md, {{"B", std::move(b)}, {"beta", FieldScalar{beta}}});
  }
  if (id == "system_solve") {
    const PolyMat a = random_polymat(md, m, n, d, rng);
    const PolyVec w = random_polyvec(md, n, d, rng);
    const Poly delta = random_poly(md, static_cast<int>(pick(rng, 0, 2)), rng);
    return make(id, md, {{"A", a}, {"b", mat_times(a, w)}, {"v", vec_scaled(w, delta)}, {"delta", delta}});
  }
  if (id == "matmul") {
    const std::size_t k = pick(rng, 1, max_dim);
    const PolyMat a = random_polymat(md, m, k, d, rng);
    const PolyMat b = random_polymat(md, k, n, static_cast<int>(pick(rng, 0, static_cast<std::size_t>(max_deg))), rng);
    return make(id, md, {{"A", a}, {"B", b}, {"C", a * b}});
  }
  if (id == "inverse") {
    const PolyMat a = random_unimodular(md, sn, static_cast<int>(sn) + 1, 1, rng);
    HermiteResult h = hermite_form(a);
    return make(id, md, {{"A", a}, {"B", h.U}});
  }
  if (id == "frrsm") {
    const std::size_t rows = std::min(m, n);
    const PolyMat a = full_row_rank(md, rows, n, d, rng);
    const PolyVec u = random_polyvec(md, rows, d, rng);
    return make(id, md, {{"A", a}, {"v", row_times(u, a)}});
  }
  if (id == "coprime") {
    const std::size_t t = pick(rng, 1, 4);
    for (;;) {
      PolyVec f;
      for (std::size_t i = 0; i < t; ++i) f.push_back(random_poly(md, t == 1 ? 0 : d, rng));
      Poly g(md);
      for (const auto& fi : f) g = gcd(g, fi);
      if (g.is_one()) return make(id, md, {{"f", f}});
    }
  }
  if (id == "rsm") {
    const PolyMat a = planted_rank(md, sm, sn, pick(rng, 0, std::min(sm, sn)), sd, rng);
    const PolyVec v = rng() % 8 == 0 ? zero_vec(md, sn) : row_times(random_polyvec(md, sm, sd, rng), a);
    return make(id, md, {{"A", a}, {"v", v}});
  }
  if (id == "rs_subset") {
    const std::size_t l = pick(rng, 1, sm);
    const PolyMat b = random_polymat(md, l, sn, sd, rng);
    return make(id, md, {{"A", random_polymat(md, sm, l, 1, rng) * b}, {"B", b}});
  }
  if (id == "rs_equality" || id == "row_basis") {
    const std::size_t l = pick(rng, 1, sn);
    const PolyMat b = id == "row_basis" ? full_row_rank(md, l, sn, sd, rng) : random_polymat(md, l, sn, sd, rng);
    const PolyMat u = random_unimodular(md, l, static_cast<int>(l), 1, rng);
    const PolyMat a = (u * b).stacked(random_polymat(md, pick(rng, 0, 2), l, 1, rng) * b);
    return make(id, md, {{"A", a}, {"B", b}});
  }
  if (id == "hermite") {
    const PolyMat a = planted_rank(md, sm, sn, pick(rng, 1, std::min(sm, sn)), sd, rng);
    return make(id, md, {{"A", a}, {"H", hermite_form(a).H}});
  }
  if (id == "spopov") {
    const PolyMat a = planted_rank(md, sm, sn, pick(rng, 1, std::min(sm, sn)), sd, rng);
    Shift s(sn);
    for (auto& x : s) x = static_cast<i64>(rng() % 7) - 3;
    return make(id, md, {{"A", a}, {"s", ShiftVector{s}}, {"P", popov_form(a, s)}});
  }
  if (id == "saturated") {
    // Full rank and saturated: rows of a unimodular matrix, or (for tall A)
    // columns of one.
    if (sm <= sn) return make(id, md, {{"A", unimodular_rows(md, sm, sn, rng)}});
    return make(id, md, {{"A", unimodular_rows(md, sn, sm, rng).transpose()}});
  }
  if (id == "sat_basis") {
    const PolyMat a = planted_rank(md, sm, sn, pick(rng, 1, std::min(sm, sn)), sd, rng);
    return make(id, md, {{"A", a}, {"B", saturation_basis(a)}});
  }
  if (id == "unimod_completable") {
    const std::size_t cols = std::max<std::size_t>(sn, 2);
    return make(id, md, {{"A", unimodular_rows(md, pick(rng, 1, cols - 1), cols, rng)}});
  }
  if (id == "kernel_basis") {
    const PolyMat a = planted_rank(md, sm, sn, pick(rng, 0, std::min(sm, sn)), sd, rng);
    return make(id, md, {{"A", a}, {"B", kernel_basis_left(a)}});
  }
  throw SpecInvalid("unknown protocol '" + id + "'");
}

Instance generate(const Modulus& md, const InstanceSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  if (spec.m == 0 || spec.n == 0) throw SpecInvalid("dimensions must be positive");
  if (spec.d < 0) throw SpecInvalid("degree must be nonnegative");
  switch (spec.kind) {
    case InstanceKind::Random: {
      if (!spec.protocol.empty()) {
        if (!is_protocol_id(spec.protocol)) throw SpecInvalid("unknown protocol '" + spec.protocol + "'");
        return true_instance(spec.protocol, md, std::max(spec.m, spec.n), spec.d, rng);
      }
      // A bare matrix; pair it with a protocol later.
      return {"", md, {{"A", random_polymat(md, spec.m, spec.n, spec.d, rng)}}, {}};
    }
    case InstanceKind::PlantedRank: {
      if (spec.r > std::min(spec.m, spec.n)) throw SpecInvalid("r exceeds min(m, n)");
      PolyMat a = planted_rank(md, spec.m, spec.n, spec.r, spec.d, rng);
      // A degree split can drop rank over small fields; redraw until exact.
      while (rank_and_profile(a).rank != spec.r) a = planted_rank(md, spec.m, spec.n, spec.r, spec.d, rng);
      return {"rank", md, {{"A", a}, {"rho", RankClaim{spec.r}}}, {{"rank", RankClaim{spec.r}}}};
    }
    case InstanceKind::PlantedMembership: {
      const PolyMat a = random_polymat(md, spec.m, spec.n, spec.d, rng);
      const PolyVec u = random_polyvec(md, spec.m, spec.d, rng);
      return {"rsm", md, {{"A", a}, {"v", row_times(u, a)}}, {{"u", u}}};
    }
    case InstanceKind::PlantedNormalForm: {
      const std::size_t r = std::min(spec.r, std::min(spec.m, spec.n));
      const PolyMat a = planted_rank(md, spec.m, spec.n, r, spec.d, rng);
      const HermiteResult h = hermite_form(a);
      return {"hermite", md, {{"A", a}, {"H", h.H}}, {{"U", h.U}}};
    }
  }
  throw SpecInvalid("unknown instance kind");
}

}  // namespace polycert
