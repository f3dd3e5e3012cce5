#include <doctest.h>

#include "polycert/accounting.hpp"
#include "polycert/provers.hpp"

using namespace polycert;

namespace {
const Modulus kP(kDefaultPrime);
}

TEST_CASE("communication counts skip markers and split by sender") {
  Transcript t;
  t.messages.push_back({Sender::Marker, "", Marker{true, "rank_lb"}});
  t.messages.push_back({Sender::Verifier, "alpha", FieldScalar{3}});
  t.messages.push_back({Sender::Prover, "w", FieldVector{{1, 2, 3}}});
  t.messages.push_back({Sender::Prover, "g", Poly::from_ints(kP, {1, 0, 2})});
  t.messages.push_back({Sender::Marker, "", Marker{false, "rank_lb"}});
  const Communication c = count_communication(t);
  CHECK(c.messages == 3);
  CHECK(c.verifier_elements == 1);
  CHECK(c.prover_elements == 6);
  CHECK(c.total() == 7);
}

TEST_CASE("singularity sends one vector of length n") {
  // diag(x, 0) is singular; the certificate is alpha and a null vector.
  const PolyMat a = PolyMat::from_ints(kP, {{{0, 1}, {}}, {{}, {}}});
  const Instance inst{"singularity", kP, {{"A", a}}, {}};
  ProverPtr prover = honest_prover(inst, Params{});
  const SessionResult r = run_protocol(inst, Params{}, *prover);
  REQUIRE(r.verdict.accepted);
  const Communication c = count_communication(r.transcript);
  CHECK(c.prover_elements == 2);
  CHECK(communication_shape(inst, kDefaultPrime) == doctest::Approx(2));
}

TEST_CASE("row space membership stays within a small multiple of m d + n t") {
  const PolyMat a = PolyMat::from_ints(kP, {{{1}, {1}}, {{0, 0, 1}, {0, 1, 1}}, {{0, 1}, {0, 1}}});
  const Instance inst{"rsm", kP, {{"A", a}, {"v", PolyVec{Poly(kP), Poly::x(kP)}}}, {}};
  ProverPtr prover = honest_prover(inst, Params{});
  const SessionResult r = run_protocol(inst, Params{}, *prover);
  REQUIRE(r.verdict.accepted);
  const double ratio = static_cast<double>(count_communication(r.transcript).total()) /
                       communication_shape(inst, kDefaultPrime);
  CHECK(ratio > 1);
  CHECK(ratio < 8);
}
