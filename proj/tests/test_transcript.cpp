#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "polycert/challenge.hpp"
#include "polycert/json_io.hpp"
#include "polycert/sha256.hpp"
#include "polycert/transcript.hpp"

using namespace polycert;

namespace {

Poly random_poly(const Modulus& m, std::mt19937_64& rng, int max_deg) {
  const int d = static_cast<int>(rng() % static_cast<u64>(max_deg + 2)) - 1;
  std::vector<u64> c(static_cast<std::size_t>(d + 1));
  for (auto& x : c) x = rng() % m.value();
  if (!c.empty() && c.back() == 0) c.back() = 1;
  return Poly(m, std::move(c));
}

Payload random_payload(const Modulus& m, std::mt19937_64& rng) {
  const std::size_t n = rng() % 4;
  FieldVec fv(n);
  for (auto& x : fv) x = rng() % m.value();
  switch (rng() % 12) {
    case 0: return FieldScalar{rng() % m.value()};
    case 1: return FieldVector{fv};
    case 2: {
      std::vector<u64> e(n * 2);
      for (auto& x : e) x = rng() % m.value();
      return FieldMat(m, n, 2, std::move(e));
    }
    case 3: return random_poly(m, rng, 4);
    case 4: {
      PolyVec v(n, Poly(m));
      for (auto& f : v) f = random_poly(m, rng, 3);
      return v;
    }
    case 5: {
      std::vector<Poly> e(n * 3, Poly(m));
      for (auto& f : e) f = random_poly(m, rng, 2);
      return PolyMat(m, n, 3, std::move(e));
    }
    case 6: return IndexSet{{rng() % 9, rng() % 9}};
    case 7: {
      FieldVec e(n + 2);
      for (auto& x : e) x = rng() % m.value();
      return ToeplitzSpec(n + 1, 2, std::move(e));
    }
    case 8: return RankClaim{rng() % 50};
    case 9: return BoolFlag{(rng() & 1) != 0};
    case 10: return ShiftVector{{-3, 0, static_cast<i64>(rng() % 7)}};
    default: return Marker{(rng() & 1) != 0, "rank_lb"};
  }
}

double chi_square(const std::vector<std::size_t>& counts, double expected) {
  double s = 0;
  for (std::size_t c : counts) s += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  return s;
}

}  // namespace

TEST_CASE("sha256 known answers") {
  const Sha256::Digest e = Sha256::hash({});
  CHECK(to_hex(e.data(), e.size()) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  Sha256 h;
  const std::string abc = "abc";
  h.update(reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size());
  Sha256 fork = h;
  const auto d = h.peek();
  CHECK(to_hex(d.data(), d.size()) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(fork.peek() == d);
  CHECK(h.peek() == d);
}

TEST_CASE("binary codec round trip") {
  const Modulus m(kDefaultPrime);
  std::mt19937_64 rng(11);
  for (int it = 0; it < 1000; ++it) {
    const Payload p = random_payload(m, rng);
    CHECK(decode_payload(encode(p), m) == p);
  }
}

TEST_CASE("binary codec rejects malformed input") {
  const Modulus m(101);
  CHECK_THROWS_AS(decode_payload(encode(Payload{FieldScalar{101}}), m), ParseError);
  CHECK_THROWS_AS(decode_payload(encode(Payload{Poly(m, std::vector<u64>{1, 5})}), Modulus(3)), ParseError);
  Encoder raw;
  raw.str("poly");
  raw.u64le(2);
  raw.u64le(1);
  raw.u64le(0);
  CHECK_THROWS_AS(decode_payload(raw.bytes(), m), ParseError);
  Bytes b = encode(Payload{FieldVector{{1, 2, 3}}});
  b.pop_back();
  CHECK_THROWS_AS(decode_payload(b, m), ParseError);
  b = encode(Payload{FieldScalar{5}});
  b.push_back(0);
  CHECK_THROWS_AS(decode_payload(b, m), ParseError);
}

TEST_CASE("json payload round trip") {
  const Modulus m(kDefaultPrime);
  std::mt19937_64 rng(12);
  for (int it = 0; it < 1000; ++it) {
    const Payload p = random_payload(m, rng);
    CHECK(payload_from_json(payload_to_json(p), m) == p);
  }
}

TEST_CASE("transcript save load save is the identity") {
  const Modulus m(kDefaultPrime);
  std::mt19937_64 rng(13);
  Transcript t;
  t.protocol_id = "matmul";
  t.params.seed = 42;
  t.public_inputs = {{"A", random_payload(m, rng)}, {"B", random_payload(m, rng)}};
  for (int i = 0; i < 20; ++i) t.messages.push_back({static_cast<Sender>(i % 3), "l" + std::to_string(i), random_payload(m, rng)});
  t.verdict = Verdict::reject(Reason::EvaluationCheckFailed, "x");
  t.soundness_bound = 0.125;
  const std::string first = dump_transcript(t);
  const Transcript back = parse_transcript(first);
  CHECK(dump_transcript(back) == first);
  CHECK(transcript_digest(back) == transcript_digest(t));

  Json j = Json::parse(first);
  j["messages"][0]["label"] = "tampered";
  CHECK_THROWS_AS(transcript_from_json(j), DigestMismatch);
}

TEST_CASE("digest covers every component") {
  Transcript t;
  t.protocol_id = "singularity";
  const std::string d0 = transcript_digest(t);
  Transcript u = t;
  u.params.sigma = 5;
  CHECK(transcript_digest(u) != d0);
  u = t;
  u.protocol_id = "rank_ub";
  CHECK(transcript_digest(u) != d0);
  u = t;
  u.verdict = Verdict::accept();
  CHECK(transcript_digest(u) != d0);
}

TEST_CASE("fiat-shamir challenges are deterministic and input-sensitive") {
  const Modulus m(kDefaultPrime);
  const PublicInputs in = {{"A", PolyMat::from_ints(m, {{{1, 2}, {3}}})}};
  auto a = ChallengeSource::fiat_shamir("singularity", in, m.value());
  auto b = ChallengeSource::fiat_shamir("singularity", in, m.value());
  CHECK(a.draw(5) == b.draw(5));
  auto c = ChallengeSource::fiat_shamir("nonsingularity", in, m.value());
  auto d = ChallengeSource::fiat_shamir("singularity", in, m.value());
  CHECK(c.draw(5) != d.draw(5));

  // One flipped bit in an absorbed message changes the challenge.
  auto e = ChallengeSource::fiat_shamir("singularity", in, m.value());
  auto f = ChallengeSource::fiat_shamir("singularity", in, m.value());
  e.absorb({Sender::Prover, "v", FieldVector{{4, 5}}});
  f.absorb({Sender::Prover, "v", FieldVector{{4, 5 ^ 1}}});
  CHECK(e.draw(1) != f.draw(1));
}

TEST_CASE("sigma one always draws zero with no rejection") {
  auto s = ChallengeSource::fiat_shamir("matmul", {}, 1);
  CHECK(s.draw(10) == FieldVec(10, 0));
  CHECK(s.last_words_used() == 10);
  auto i = ChallengeSource::interactive(3, 1);
  CHECK(i.draw(4) == FieldVec(4, 0));
}

TEST_CASE("challenge distribution is uniform on small sets") {
  for (u64 sigma : std::array<u64, 3>{2, 16, 64}) {
    auto s = ChallengeSource::fiat_shamir("matmul", {}, sigma);
    const std::size_t draws = 4000 * sigma;
    std::vector<std::size_t> counts(sigma, 0);
    for (u64 x : s.draw(draws)) {
      REQUIRE(x < sigma);
      ++counts[x];
    }
    // 99.9% quantiles of chi-square with 1, 15, 63 degrees of freedom.
    const double crit = sigma == 2 ? 10.83 : sigma == 16 ? 37.70 : 103.4;
    CHECK(chi_square(counts, static_cast<double>(draws) / static_cast<double>(sigma)) < crit);
  }
}

TEST_CASE("interactive challenges follow the seed") {
  auto a = ChallengeSource::interactive(5, 1000);
  auto b = ChallengeSource::interactive(5, 1000);
  auto c = ChallengeSource::interactive(6, 1000);
  const FieldVec x = a.draw(8);
  CHECK(x == b.draw(8));
  CHECK(x != c.draw(8));
}
