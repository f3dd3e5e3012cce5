#include <doctest.h>

#include <cmath>

#include "polycert/adversary.hpp"
#include "polycert/instance_io.hpp"
#include "polycert/polymat_oracles.hpp"
#include "polycert/workloads.hpp"

using namespace polycert;

namespace {

const Modulus kP(kDefaultPrime);

PolyMat pm(const std::vector<std::vector<std::vector<i64>>>& rows) { return PolyMat::from_ints(kP, rows); }
Poly p(std::initializer_list<i64> c) { return Poly::from_ints(kP, c); }

PolyMat m1() { return pm({{{1}, {1}}, {{0, 0, 1}, {0, 1, 1}}, {{0, 1}, {0, 1}}}); }
PolyMat m2() { return pm({{{1}, {1, 0, 1}}, {{}, {0, 0, 1}}}); }

Instance make(const char* id, PublicInputs in) { return {id, kP, std::move(in), {}}; }

SessionResult honest(const Instance& inst, Params params = {}) {
  ProverPtr prover = honest_prover(inst, params);
  return run_protocol(inst, params, *prover);
}

Params interactive(u64 sigma, u64 seed) {
  Params p;
  p.sigma = sigma;
  p.mode = Mode::Interactive;
  p.seed = seed;
  p.strict = false;
  return p;
}

// Accept count of the cheating prover over `trials` interactive runs.
std::size_t cheater_accepts(const Instance& inst, u64 sigma, std::size_t trials) {
  std::size_t acc = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const Params params = interactive(sigma, 1000 + i);
    ProverPtr prover = cheating_prover(inst, params);
    if (run_protocol(inst, params, *prover).verdict.accepted) ++acc;
  }
  return acc;
}

double ceiling(double bound, std::size_t trials) {
  return bound + 3 * std::sqrt(bound * (1 - bound) / static_cast<double>(trials));
}

const Payload& sent(const Transcript& t, const std::string& label) {
  for (const auto& m : t.messages) {
    if (m.label == label && m.sender == Sender::Prover) return m.payload;
  }
  FAIL("no message " << label);
  return t.messages.front().payload;
}

}  // namespace

TEST_CASE("singularity") {
  CHECK(honest(make("singularity", {{"A", pm({{{0, 1}, {0, 1}}, {{0, 1}, {0, 1}}})}})).verdict.accepted);

  // diag(x, 1) has det x: the honest prover has nothing to send away from 0.
  const Instance diag = make("singularity", {{"A", pm({{{0, 1}, {}}, {{}, {1}}})}});
  const SessionResult r = honest(diag);
  CHECK(r.prover_gave_up);
  CHECK_FALSE(r.transcript.verdict.has_value());
  CHECK(cheater_accepts(diag, 8, 2000) <= ceiling(1.0 / 8, 2000) * 2000);

  // The identity is never singular at any point.
  CHECK(cheater_accepts(make("singularity", {{"A", PolyMat::identity(kP, 2)}}), 8, 200) == 0);
}

TEST_CASE("nonsingularity") {
  CHECK(honest(make("nonsingularity", {{"A", PolyMat::identity(kP, 3)}})).verdict.accepted);
  const SessionResult r = honest(make("nonsingularity", {{"A", pm({{{0, 1}, {}}, {{1}, {0, 1}}})}}));
  CHECK(r.verdict.accepted);
  CHECK(std::get<FieldScalar>(sent(r.transcript, "alpha")).value != 0);

  const Instance singular = make("nonsingularity", {{"A", pm({{{1}, {0, 1}}, {{0, 1}, {0, 0, 1}}})}});
  CHECK(cheater_accepts(singular, 8, 2000) <= ceiling(1.0 / 8, 2000) * 2000);
}

TEST_CASE("rank lower bound") {
  const SessionResult zero = honest(make("rank_lb", {{"A", m1()}, {"rho", RankClaim{0}}}));
  CHECK(zero.verdict.accepted);
  CHECK(zero.transcript.messages.empty());
  CHECK(honest(make("rank_lb", {{"A", m1()}, {"rho", RankClaim{2}}})).verdict.accepted);

  const SessionResult over = honest(make("rank_lb", {{"A", m1()}, {"rho", RankClaim{3}}}));
  CHECK(over.verdict.reason == Reason::RankCheckFailed);

  // M1 has rank 2 exactly, so a cheater for rank 3 of [M1 | 0] cannot win at a large S.
  const Instance padded = make("rank_lb", {{"A", m1().transpose().stacked(PolyMat(kP, 1, 3)).transpose()}, {"rho", RankClaim{3}}});
  CHECK(cheater_accepts(padded, kDefaultPrime, 50) == 0);
}

TEST_CASE("rank upper bound and rank") {
  std::mt19937_64 rng(4);
  const PolyMat rank2 = planted_rank(kP, 3, 3, 2, 2, rng);
  REQUIRE(rank_and_profile(rank2).rank == 2);

  const Instance wide = make("rank_ub", {{"A", rank2}, {"rho", RankClaim{3}}});
  const SessionResult r = honest(wide);
  CHECK(r.verdict.accepted);
  // gamma = v is a valid answer once rho >= n; the prover may send any.
  CHECK(honest(make("rank_ub", {{"A", rank2}, {"rho", RankClaim{2}}})).verdict.accepted);

  CHECK(honest(make("rank", {{"A", PolyMat::identity(kP, 3)}, {"rho", RankClaim{3}}})).verdict.accepted);
  CHECK(honest(make("rank", {{"A", rank2}, {"rho", RankClaim{2}}})).verdict.accepted);
  for (u64 wrong : {1, 3}) {
    const Instance inst = make("rank", {{"A", rank2}, {"rho", RankClaim{wrong}}});
    CHECK(cheater_accepts(inst, kDefaultPrime, 30) == 0);
  }
}

TEST_CASE("determinant and field determinant") {
  CHECK(honest(make("determinant", {{"A", PolyMat::identity(kP, 3)}, {"delta", p({1})}})).verdict.accepted);
  const PolyMat a = pm({{{0, 1}, {}}, {{1}, {0, 1}}});
  CHECK(honest(make("determinant", {{"A", a}, {"delta", p({0, 0, 1})}})).verdict.accepted);
  CHECK(cheater_accepts(make("determinant", {{"A", a}, {"delta", p({1, 0, 1})}}), kDefaultPrime, 50) == 0);

  const SessionResult high = honest(make("determinant", {{"A", a}, {"delta", p({0, 0, 0, 1})}}));
  CHECK(high.verdict.reason == Reason::DegreeCheckFailed);

  CHECK(honest(make("field_det", {{"B", FieldMat::identity(kP, 3)}, {"beta", FieldScalar{1}}})).verdict.accepted);
  const FieldMat singular = FieldMat::from_rows(kP, {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
  CHECK(honest(make("field_det", {{"B", singular}, {"beta", FieldScalar{0}}})).verdict.accepted);
  // Honest factors with the wrong beta fail the product check every time.
  for (u64 seed = 0; seed < 20; ++seed) {
    const SessionResult bad = honest(make("field_det", {{"B", singular}, {"beta", FieldScalar{5}}}), interactive(64, seed));
    CHECK(bad.verdict.reason == Reason::EvaluationCheckFailed);
  }
}

TEST_CASE("system solve and matrix products") {
  const PolyVec b{p({1, 2}), p({0, 0, 3})};
  CHECK(honest(make("system_solve", {{"A", PolyMat::identity(kP, 2)}, {"b", b}, {"v", b}, {"delta", p({1})}})).verdict.accepted);
  std::mt19937_64 rng(8);
  const PolyMat any = random_polymat(kP, 2, 3, 2, rng);
  CHECK(honest(make("system_solve", {{"A", any}, {"b", b}, {"v", zero_vec(kP, 3)}, {"delta", Poly(kP)}})).verdict.accepted);
  PolyVec off = b;
  off[0] += p({0, 0, 0, 1});
  const Instance perturbed = make("system_solve", {{"A", PolyMat::identity(kP, 2)}, {"b", b}, {"v", off}, {"delta", p({1})}});
  CHECK(cheater_accepts(perturbed, 64, 500) <= ceiling(6.0 / 64, 500) * 500);

  const PolyMat a = random_polymat(kP, 3, 2, 2, rng), bb = random_polymat(kP, 2, 4, 1, rng);
  CHECK(honest(make("matmul", {{"A", a}, {"B", bb}, {"C", a * bb}})).verdict.accepted);
  PolyMat c = a * bb;
  c.at(1, 2) += p({0, 1});
  CHECK(cheater_accepts(make("matmul", {{"A", a}, {"B", bb}, {"C", c}}), 64, 500) <= ceiling(4.0 / 64, 500) * 500);
  c.at(0, 0) += p({0, 0, 0, 0, 1});
  CHECK(honest(make("matmul", {{"A", a}, {"B", bb}, {"C", c}})).verdict.reason == Reason::DegreeCheckFailed);

  CHECK(honest(make("inverse", {{"A", PolyMat::identity(kP, 3)}, {"B", PolyMat::identity(kP, 3)}})).verdict.accepted);
}

TEST_CASE("full-rank row membership") {
  const PolyMat a = pm({{{0, 1}, {1}, {2, 1}}, {{1}, {0, 0, 1}, {}}});
  const SessionResult zero = honest(make("frrsm", {{"A", a}, {"v", zero_vec(kP, 3)}}));
  CHECK(zero.verdict.accepted);
  CHECK(std::get<Poly>(sent(zero.transcript, "g")).is_zero());
  CHECK(is_zero(std::get<FieldVector>(sent(zero.transcript, "w")).values));

  CHECK(honest(make("frrsm", {{"A", a}, {"v", a.row(1)}})).verdict.accepted);

  // u = [1/x] is rational only.
  const Instance rational = make("frrsm", {{"A", pm({{{0, 1}, {0, 0, 1}}})}, {"v", PolyVec{p({1}), p({0, 1})}}});
  CHECK(honest(rational).prover_gave_up);
  CHECK(cheater_accepts(rational, kDefaultPrime, 50) == 0);
}

TEST_CASE("coprime") {
  const SessionResult unit = honest(make("coprime", {{"f", PolyVec{p({1}), p({3, 1, 4})}}}));
  CHECK(unit.verdict.accepted);
  CHECK(std::get<Poly>(sent(unit.transcript, "s1")) == p({1}));
  CHECK(std::get<Poly>(sent(unit.transcript, "s2")).is_zero());

  CHECK(honest(make("coprime", {{"f", PolyVec{p({0, 1}), p({1, 1})}}})).verdict.accepted);
  CHECK(honest(make("coprime", {{"f", PolyVec{p({0, 1}), p({0, 0, 1}), p({1, 0, 0, 1})}}})).verdict.accepted);

  const Instance common = make("coprime", {{"f", PolyVec{p({0, 1}), p({0, 0, 1}), p({0, 0, 0, 1})}}});
  CHECK(cheater_accepts(common, 64, 1000) <= ceiling(5.0 / 64, 1000) * 1000);
  CHECK(cheater_accepts(common, kDefaultPrime, 50) == 0);
}

TEST_CASE("row space membership") {
  CHECK(honest(make("rsm", {{"A", m1()}, {"v", PolyVec{Poly(kP), p({0, 1})}}})).verdict.accepted);
  CHECK(cheater_accepts(make("rsm", {{"A", m2()}, {"v", PolyVec{Poly(kP), p({0, 1})}}}), kDefaultPrime, 30) == 0);
  CHECK(honest(make("rsm", {{"A", m2()}, {"v", zero_vec(kP, 2)}})).verdict.accepted);

  const SessionResult zero_a = honest(make("rsm", {{"A", PolyMat(kP, 2, 2)}, {"v", PolyVec{p({1}), Poly(kP)}}}));
  CHECK(zero_a.verdict.reason == Reason::RankCheckFailed);
  CHECK(honest(make("rsm", {{"A", PolyMat(kP, 2, 2)}, {"v", zero_vec(kP, 2)}})).verdict.accepted);
}

TEST_CASE("row space subset, equality and basis") {
  std::mt19937_64 rng(2);
  const PolyMat a = random_polymat(kP, 3, 4, 2, rng);
  CHECK(honest(make("rs_subset", {{"A", a}, {"B", a}})).verdict.accepted);

  const SessionResult r = [&] {
    const Instance inst = make("rs_equality", {{"A", m1()}, {"B", PolyMat::identity(kP, 2)}});
    ProverPtr cheat = cheating_prover(inst, Params{});
    return run_protocol(inst, Params{}, *cheat);
  }();
  CHECK_FALSE(r.verdict.accepted);
  CHECK(r.verdict.reason == Reason::SubprotocolRejected);
  CHECK(r.verdict.subprotocol.rfind("rs_subset/rsm", 0) == 0);

  CHECK(honest(make("row_basis", {{"A", a}, {"B", hermite_form(a).H}})).verdict.accepted);
}

TEST_CASE("normal forms") {
  std::mt19937_64 rng(12);
  const PolyMat a = planted_rank(kP, 4, 4, 3, 2, rng);
  PolyMat h = hermite_form(a).H;
  CHECK(honest(make("hermite", {{"A", a}, {"H", h}})).verdict.accepted);

  // Scale the first row: its pivot is no longer monic.
  h.scale_row(0, 3);
  const SessionResult bad = honest(make("hermite", {{"A", a}, {"H", h}}));
  CHECK(bad.verdict.reason == Reason::ShapeCheckFailed);
  CHECK(bad.transcript.messages.empty());

  const Shift s{2, -1, 0, 3};
  CHECK(honest(make("spopov", {{"A", a}, {"s", ShiftVector{s}}, {"P", popov_form(a, s)}})).verdict.accepted);
}

TEST_CASE("saturation, completion and kernels") {
  CHECK(honest(make("saturated", {{"A", PolyMat::identity(kP, 3)}})).verdict.accepted);
  CHECK(honest(make("saturated", {{"A", pm({{{1}, {0, 1}}})}})).verdict.accepted);
  CHECK(cheater_accepts(make("saturated", {{"A", m2()}}), kDefaultPrime, 20) == 0);

  CHECK(honest(make("sat_basis", {{"A", m1()}, {"B", PolyMat::identity(kP, 2)}})).verdict.accepted);
  CHECK(cheater_accepts(make("sat_basis", {{"A", m1()}, {"B", m2()}}), kDefaultPrime, 20) == 0);

  CHECK(honest(make("unimod_completable", {{"A", pm({{{1}, {0, 1}}})}})).verdict.accepted);
  CHECK(cheater_accepts(make("unimod_completable", {{"A", pm({{{0, 1}, {0, 0, 1}}})}}), kDefaultPrime, 20) == 0);
  CHECK(honest(make("unimod_completable", {{"A", PolyMat::identity(kP, 2)}})).verdict.reason == Reason::ShapeCheckFailed);

  std::mt19937_64 rng(6);
  const PolyMat a = planted_rank(kP, 4, 3, 2, 2, rng);
  const PolyMat k = kernel_basis_left(a);
  CHECK(honest(make("kernel_basis", {{"A", a}, {"B", k}})).verdict.accepted);
  CHECK(honest(make("kernel_basis", {{"A", PolyMat::identity(kP, 3)}, {"B", PolyMat(kP, 0, 3)}})).verdict.accepted);

  PolyMat xk = k;
  for (std::size_t i = 0; i < xk.rows(); ++i) {
    for (std::size_t j = 0; j < xk.cols(); ++j) xk.at(i, j) = xk.at(i, j) * Poly::x(kP);
  }
  const Instance inst = make("kernel_basis", {{"A", a}, {"B", xk}});
  ProverPtr cheat = cheating_prover(inst, Params{});
  const SessionResult r = run_protocol(inst, Params{}, *cheat);
  CHECK(r.verdict.reason == Reason::SubprotocolRejected);
  CHECK(r.verdict.subprotocol.rfind("saturated/", 0) == 0);
}

TEST_CASE("strict mode refuses small sample sets") {
  const Instance inst = make("singularity", {{"A", pm({{{0, 1}, {0, 1}}, {{0, 1}, {0, 1}}})}});
  CHECK(strict_sigma_bound(inst) == 4);
  Params params;
  params.sigma = 3;
  const SessionResult r = honest(inst, params);
  CHECK(r.verdict.reason == Reason::ParamsInvalid);
  CHECK(r.transcript.messages.empty());
  params.sigma = 4;
  CHECK(honest(inst, params).verdict.accepted);
  params.sigma = 3;
  params.strict = false;
  CHECK(honest(inst, params).transcript.verdict.has_value());

  params = Params{};
  params.p = 101;
  CHECK(honest(inst, params).verdict.reason == Reason::ParamsInvalid);
}

TEST_CASE("rsm round count") {
  CHECK(rsm_rounds(kDefaultPrime, 1, 1) == 2u);
  CHECK(rsm_rounds(4, 2, 1) == 3u);
  CHECK(rsm_rounds(10, 3, 5) == 4u);
  CHECK(rsm_rounds(32, 1, 8) == 2u);
  CHECK_FALSE(rsm_rounds(3, 3, 1).has_value());
  CHECK_FALSE(rsm_rounds(100, 0, 1).has_value());
  // Cross-check against the real-valued formula away from exact powers.
  for (u64 sigma : {5, 7, 33, 1000}) {
    for (u64 rho : {1, 2, 4}) {
      for (int d : {1, 3, 8}) {
        if (sigma <= rho) continue;
        const double x = std::log(2.0 * static_cast<double>(rho) * d) / std::log(static_cast<double>(sigma) / static_cast<double>(rho));
        if (std::abs(x - std::round(x)) < 1e-9) continue;
        const auto want = std::max<std::size_t>(2, 1 + static_cast<std::size_t>(std::ceil(x)));
        CHECK_MESSAGE(rsm_rounds(sigma, rho, d) == want, sigma << " " << rho << " " << d);
      }
    }
  }
}

TEST_CASE("every protocol replays and rejects tampering") {
  std::mt19937_64 rng(21);
  for (const auto& id : protocol_ids()) {
    CAPTURE(id);
    for (int i = 0; i < 3; ++i) {
      const Instance inst = true_instance(id, kP, 4, 2, rng);
      for (Mode mode : {Mode::FiatShamir, Mode::Interactive}) {
        Params params;
        params.mode = mode;
        params.seed = static_cast<u64>(i);
        const SessionResult r = honest(inst, params);
        REQUIRE(r.verdict.accepted);
        CHECK(verify_transcript(r.transcript) == r.verdict);
        const Transcript back = parse_transcript(dump_transcript(r.transcript));
        CHECK(verify_transcript(back).accepted);
      }
    }
  }
}

TEST_CASE("instance files round-trip") {
  std::mt19937_64 rng(5);
  for (const auto& id : protocol_ids()) {
    const Instance inst = true_instance(id, kP, 3, 2, rng);
    const Instance back = parse_instance(dump_instance(inst));
    CHECK(back.protocol == inst.protocol);
    CHECK(back.inputs == inst.inputs);
  }
}
