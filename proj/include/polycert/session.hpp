// One protocol exchange as a single-owner state machine. The verifier body
// talks to a Channel; the Channel either asks a live Prover and records the
// message, or reads it back from a stored transcript. Challenges are always
// recomputed, so a replayed transcript is checked message by message.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>

#include "polycert/challenge.hpp"
#include "polycert/transcript.hpp"

namespace polycert {

// Honest prover could not complete (false statement, or a Las Vegas retry
// cap was hit). Not a verifier rejection.
class ProverGaveUp : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised inside a verifier body when a message is missing, mislabelled, of
// the wrong type or shape. Converted to MalformedMessage at the nearest
// protocol boundary.
class Malformed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Messages exchanged so far at one protocol level, challenges included.
using Scope = std::vector<Message>;

u64 scope_scalar(const Scope& s, const std::string& label);
const FieldVec& scope_vector(const Scope& s, const std::string& label);
const Poly& scope_poly(const Scope& s, const std::string& label);

class Prover {
 public:
  virtual ~Prover() = default;
  virtual Payload respond(const std::string& label, const Scope& scope) = 0;
  // Strategy for the index-th call to sub-protocol `id` made at this level.
  virtual std::unique_ptr<Prover> enter(const std::string& id, std::size_t index, const Scope& scope) = 0;
};

class Channel {
 public:
  struct Run;

  Channel(Run& run, Prover* prover, std::string protocol);

  const std::string& protocol() const noexcept { return protocol_; }
  const Modulus& modulus() const noexcept;
  const Params& params() const noexcept;
  u64 sigma() const noexcept { return params().sigma; }

  u64 challenge(const std::string& label);
  FieldVec challenge_vector(const std::string& label, std::size_t k);

  template <class T>
  T receive(const std::string& label) {
    Payload p = receive_payload(label);
    if (T* t = std::get_if<T>(&p)) return std::move(*t);
    throw Malformed("message '" + label + "' has type " + payload_tag(p));
  }

  // Runs a nested protocol between begin and end markers. A rejection inside
  // comes back as SubprotocolRejected naming the child.
  Verdict call(const std::string& id, const std::function<Verdict(Channel&)>& body);

 private:
  Payload receive_payload(const std::string& label);
  void exchange(Message msg);

  Run& run_;
  Prover* prover_;
  std::string protocol_;
  Scope scope_;
  std::map<std::string, std::size_t> calls_;
};

struct SessionResult {
  Transcript transcript;
  Verdict verdict;
  bool prover_gave_up = false;
  std::string gave_up_reason;
};

using VerifierBody = std::function<Verdict(Channel&)>;

// Live run. The transcript's verdict is left empty when the prover gives up.
SessionResult run_session(const std::string& protocol, const Modulus& m, const PublicInputs& inputs,
                          const Params& params, Prover& prover, const VerifierBody& body);

// Re-checks a stored transcript with no prover present. Messages left over
// after an accepting run make the transcript malformed.
Verdict replay_session(const Transcript& t, const Modulus& m, const VerifierBody& body);

}  // namespace polycert
