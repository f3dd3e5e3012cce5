// Verifier randomness: a seeded PRNG for interactive runs, or a SHA-256 hash
// chain over the domain tag, public inputs and every prior message.
#pragma once

#include <random>

#include "polycert/sha256.hpp"
#include "polycert/transcript.hpp"

namespace polycert {

class ChallengeSource {
 public:
  static ChallengeSource interactive(u64 seed, u64 sigma);
  static ChallengeSource fiat_shamir(const std::string& protocol_id, const PublicInputs& inputs, u64 sigma);

  Mode mode() const noexcept { return mode_; }
  u64 sigma() const noexcept { return sigma_; }

  // Every transcript message passes through here in order.
  void absorb(const Message& m);

  // k uniform draws from [0, sigma). In Fiat-Shamir mode they are read from
  // the stream H(state || u64le(0)), H(state || u64le(1)), ... as 8-byte
  // big-endian words with rejection sampling.
  FieldVec draw(std::size_t k);

  // Hash words consumed by the most recent draw, for tests.
  std::size_t last_words_used() const noexcept { return last_words_; }

 private:
  ChallengeSource(Mode mode, u64 sigma) : mode_(mode), sigma_(sigma) {}

  Mode mode_;
  u64 sigma_;
  std::mt19937_64 rng_;
  Sha256 state_;
  std::size_t last_words_ = 0;
};

}  // namespace polycert
