#include "polycert/challenge.hpp"

namespace polycert {

ChallengeSource ChallengeSource::interactive(u64 seed, u64 sigma) {
  ChallengeSource s(Mode::Interactive, sigma);
  s.rng_.seed(seed);
  return s;
}

ChallengeSource ChallengeSource::fiat_shamir(const std::string& protocol_id, const PublicInputs& inputs, u64 sigma) {
  ChallengeSource s(Mode::FiatShamir, sigma);
  Encoder e;
  e.str(domain_tag(protocol_id));
  e.public_inputs(inputs);
  s.state_.update(e.bytes());
  return s;
}

void ChallengeSource::absorb(const Message& m) {
  if (mode_ == Mode::FiatShamir) state_.update(encode(m));
}

FieldVec ChallengeSource::draw(std::size_t k) {
  FieldVec out;
  out.reserve(k);
  last_words_ = 0;
  if (mode_ == Mode::Interactive) {
    for (std::size_t i = 0; i < k; ++i) out.push_back(uniform_below(rng_, sigma_));
    return out;
  }
  const u64 limit = rejection_limit(sigma_);
  u64 counter = 0;
  Sha256::Digest block{};
  std::size_t word = 4;  // words left unread in block
  while (out.size() < k) {
    if (word == 4) {
      Sha256 h(state_);
      Encoder c;
      c.u64le(counter++);
      h.update(c.bytes());
      block = h.peek();
      word = 0;
    }
    u64 w = 0;
    for (std::size_t b = 0; b < 8; ++b) w = (w << 8) | block[8 * word + b];
    ++word;
    ++last_words_;
    if (accept_word(w, limit)) out.push_back(w % sigma_);
  }
  return out;
}

}  // namespace polycert
