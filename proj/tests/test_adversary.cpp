#include <doctest.h>

#include "polycert/adversary.hpp"
#include "polycert/polymat_oracles.hpp"
#include "polycert/workloads.hpp"

using namespace polycert;

namespace {

const Modulus kP(kDefaultPrime);

Params interactive(u64 sigma, u64 seed) {
  Params p;
  p.sigma = sigma;
  p.mode = Mode::Interactive;
  p.seed = seed;
  p.strict = false;
  return p;
}

}  // namespace

TEST_CASE("generated true instances satisfy the ground-truth oracle") {
  std::mt19937_64 rng(11);
  for (const auto& id : protocol_ids()) {
    for (int i = 0; i < 5; ++i) {
      const Instance inst = true_instance(id, kP, 4, 2, rng);
      CHECK_MESSAGE(statement_holds(inst), id);
      CHECK_THROWS_AS(cheating_prover(inst, Params{}), InstanceActuallyTrue);
    }
  }
}

TEST_CASE("soundness fixtures are false and the cheaters are not trivial") {
  for (const auto& fx : soundness_fixtures(kP)) {
    CAPTURE(fx.instance.protocol);
    CAPTURE(fx.name);
    REQUIRE(validate_instance(fx.instance).empty());
    REQUIRE_FALSE(statement_holds(fx.instance));
    const SoundnessReport r = run_soundness_experiment(fx.instance, 16, 400, 5, fx.name);
    MESSAGE(r.to_json().dump());
    CHECK(r.accepts > 0);
  }
}

TEST_CASE("cheating strategies reduce to honest behaviour on true sub-claims") {
  // rs_subset with a true claim, driven through the cheating strategy: every
  // nested prover finds its claim true and answers honestly.
  std::mt19937_64 rng(3);
  const Instance inst = true_instance("rs_subset", kP, 4, 2, rng);
  const ProverCtx ctx = ProverCtx::make(kP, Params{}, std::make_shared<CheatingStrategy>());
  ProverPtr prover = ctx.use().for_instance(ctx, inst);
  CHECK(run_protocol(inst, Params{}, *prover).verdict.accepted);
}

TEST_CASE("the rsm forgery is rejected at a large sample set") {
  // [0, x] is in the rational row space of M2 but not its polynomial one.
  const PolyMat m2 = PolyMat::from_ints(kP, {{{1}, {1, 0, 1}}, {{}, {0, 0, 1}}});
  const Instance inst{"rsm", kP, {{"A", m2}, {"v", PolyVec{Poly(kP), Poly::x(kP)}}}, {}};
  for (u64 seed = 0; seed < 20; ++seed) {
    ProverPtr prover = cheating_prover(inst, interactive(kDefaultPrime, seed));
    const SessionResult r = run_protocol(inst, interactive(kDefaultPrime, seed), *prover);
    CHECK_FALSE(r.verdict.accepted);
    CHECK(r.verdict.reason == Reason::SubprotocolRejected);
    CHECK(r.verdict.subprotocol == "frrsm");
  }
}

TEST_CASE("experiment reports are reproducible under a seed") {
  const auto fx = soundness_fixtures(kP).front();
  const SoundnessReport a = run_soundness_experiment(fx.instance, 32, 300, 9);
  const SoundnessReport b = run_soundness_experiment(fx.instance, 32, 300, 9);
  CHECK(a.accepts == b.accepts);
  CHECK(a.bound == doctest::Approx(4.0 / 32));
}
