#include "polycert/session.hpp"

namespace polycert {

struct Channel::Run {
  const Modulus& m;
  const Params& params;
  ChallengeSource source;
  std::vector<Message>* log;
  bool replay;
  std::size_t cursor = 0;
};

namespace {

const Message* find_label(const Scope& s, const std::string& label) {
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    if (it->label == label) return &*it;
  }
  return nullptr;
}

ChallengeSource make_source(const std::string& protocol, const PublicInputs& inputs, const Params& params) {
  return params.mode == Mode::FiatShamir ? ChallengeSource::fiat_shamir(protocol, inputs, params.sigma)
                                         : ChallengeSource::interactive(params.seed, params.sigma);
}

}  // namespace

u64 scope_scalar(const Scope& s, const std::string& label) {
  const Message* m = find_label(s, label);
  const auto* v = m ? std::get_if<FieldScalar>(&m->payload) : nullptr;
  if (!v) throw ProverGaveUp("no scalar '" + label + "' in scope");
  return v->value;
}

const FieldVec& scope_vector(const Scope& s, const std::string& label) {
  const Message* m = find_label(s, label);
  const auto* v = m ? std::get_if<FieldVector>(&m->payload) : nullptr;
  if (!v) throw ProverGaveUp("no vector '" + label + "' in scope");
  return v->values;
}

const Poly& scope_poly(const Scope& s, const std::string& label) {
  const Message* m = find_label(s, label);
  const auto* v = m ? std::get_if<Poly>(&m->payload) : nullptr;
  if (!v) throw ProverGaveUp("no polynomial '" + label + "' in scope");
  return *v;
}

Channel::Channel(Run& run, Prover* prover, std::string protocol)
    : run_(run), prover_(prover), protocol_(std::move(protocol)) {}

const Modulus& Channel::modulus() const noexcept { return run_.m; }
const Params& Channel::params() const noexcept { return run_.params; }

void Channel::exchange(Message msg) {
  if (run_.replay) {
    if (run_.cursor >= run_.log->size()) throw Malformed("transcript ends before '" + msg.label + "'");
    const Message& stored = (*run_.log)[run_.cursor++];
    if (stored.sender != msg.sender || stored.label != msg.label) {
      throw Malformed("expected " + std::string(sender_name(msg.sender)) + " message '" + msg.label + "', found '" +
                      stored.label + "'");
    }
    if (msg.sender != Sender::Prover && !(stored.payload == msg.payload)) {
      throw Malformed("stored " + std::string(sender_name(msg.sender)) + " message '" + msg.label +
                      "' differs from the recomputed one");
    }
    if (msg.sender == Sender::Prover) msg.payload = stored.payload;
  } else {
    run_.log->push_back(msg);
  }
  run_.source.absorb(msg);
  if (msg.sender != Sender::Marker) scope_.push_back(std::move(msg));
}

u64 Channel::challenge(const std::string& label) {
  const u64 v = run_.source.draw(1)[0];
  exchange({Sender::Verifier, label, FieldScalar{v}});
  return v;
}

FieldVec Channel::challenge_vector(const std::string& label, std::size_t k) {
  FieldVec v = run_.source.draw(k);
  exchange({Sender::Verifier, label, FieldVector{v}});
  return v;
}

Payload Channel::receive_payload(const std::string& label) {
  Message msg{Sender::Prover, label, {}};
  if (!run_.replay) msg.payload = prover_->respond(label, scope_);
  exchange(std::move(msg));
  return scope_.back().payload;
}

Verdict Channel::call(const std::string& id, const std::function<Verdict(Channel&)>& body) {
  const std::size_t index = calls_[id]++;
  exchange({Sender::Marker, "begin", Marker{true, id}});
  std::unique_ptr<Prover> child_prover;
  if (!run_.replay) child_prover = prover_->enter(id, index, scope_);
  Channel child(run_, child_prover.get(), id);
  Verdict v;
  try {
    v = body(child);
  } catch (const Malformed& e) {
    v = Verdict::reject(Reason::MalformedMessage, e.what());
  } catch (const DimMismatch& e) {
    v = Verdict::reject(Reason::MalformedMessage, e.what());
  }
  if (v.accepted) {
    exchange({Sender::Marker, "end", Marker{false, id}});
    return v;
  }
  Verdict out = Verdict::reject(Reason::SubprotocolRejected, id + ": " + v.detail);
  out.subprotocol = v.reason == Reason::SubprotocolRejected ? id + "/" + v.subprotocol : id;
  return out;
}

namespace {

Verdict guarded(const VerifierBody& body, Channel& ch) {
  try {
    return body(ch);
  } catch (const Malformed& e) {
    return Verdict::reject(Reason::MalformedMessage, e.what());
  } catch (const DimMismatch& e) {
    return Verdict::reject(Reason::MalformedMessage, e.what());
  }
}

}  // namespace

SessionResult run_session(const std::string& protocol, const Modulus& m, const PublicInputs& inputs,
                          const Params& params, Prover& prover, const VerifierBody& body) {
  SessionResult r;
  r.transcript.protocol_id = protocol;
  r.transcript.params = params;
  r.transcript.public_inputs = inputs;
  Channel::Run run{m, params, make_source(protocol, inputs, params), &r.transcript.messages, false};
  Channel ch(run, &prover, protocol);
  try {
    r.verdict = guarded(body, ch);
    r.transcript.verdict = r.verdict;
  } catch (const ProverGaveUp& e) {
    r.prover_gave_up = true;
    r.gave_up_reason = e.what();
    r.verdict = Verdict::reject(Reason::Ok, std::string("prover gave up: ") + e.what());
  }
  return r;
}

Verdict replay_session(const Transcript& t, const Modulus& m, const VerifierBody& body) {
  std::vector<Message> log = t.messages;
  Channel::Run run{m, t.params, make_source(t.protocol_id, t.public_inputs, t.params), &log, true};
  Channel ch(run, nullptr, t.protocol_id);
  Verdict v = guarded(body, ch);
  if (v.accepted && run.cursor != log.size()) {
    return Verdict::reject(Reason::MalformedMessage, "transcript has messages after the final check");
  }
  return v;
}

}  // namespace polycert
