// Protocol messages, verdicts and transcripts, with the canonical byte
// encoding that feeds both the Fiat-Shamir hash and the transcript digest.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "polycert/polymat.hpp"

namespace polycert {

using Bytes = std::vector<std::uint8_t>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DigestMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FieldScalar {
  u64 value = 0;
  friend bool operator==(const FieldScalar&, const FieldScalar&) = default;
};
struct FieldVector {
  FieldVec values;
  friend bool operator==(const FieldVector&, const FieldVector&) = default;
};
struct IndexSet {
  std::vector<u64> indices;
  friend bool operator==(const IndexSet&, const IndexSet&) = default;
};
struct RankClaim {
  u64 rank = 0;
  friend bool operator==(const RankClaim&, const RankClaim&) = default;
};
struct BoolFlag {
  bool value = false;
  friend bool operator==(const BoolFlag&, const BoolFlag&) = default;
};
struct ShiftVector {
  Shift values;
  friend bool operator==(const ShiftVector&, const ShiftVector&) = default;
};
// Brackets a nested sub-protocol inside its parent's transcript.
struct Marker {
  bool begin = true;
  std::string protocol;
  friend bool operator==(const Marker&, const Marker&) = default;
};

inline bool operator==(const ToeplitzSpec& a, const ToeplitzSpec& b) {
  return a.rows == b.rows && a.cols == b.cols && a.entries == b.entries;
}

using Payload = std::variant<FieldScalar, FieldVector, FieldMat, Poly, PolyVec, PolyMat, IndexSet, ToeplitzSpec,
                             RankClaim, BoolFlag, ShiftVector, Marker>;

const char* payload_tag(const Payload& p) noexcept;
// Number of field elements (or integers) carried by a payload.
std::size_t payload_size(const Payload& p) noexcept;

enum class Sender : std::uint8_t { Prover = 0, Verifier = 1, Marker = 2 };
const char* sender_name(Sender s) noexcept;

struct Message {
  Sender sender = Sender::Prover;
  std::string label;
  Payload payload;
  friend bool operator==(const Message&, const Message&) = default;
};

struct NamedPayload {
  std::string name;
  Payload payload;
  friend bool operator==(const NamedPayload&, const NamedPayload&) = default;
};
using PublicInputs = std::vector<NamedPayload>;

enum class Reason {
  Ok,
  DegreeCheckFailed,
  EvaluationCheckFailed,
  RankCheckFailed,
  ShapeCheckFailed,
  SubprotocolRejected,
  MalformedMessage,
  ParamsInvalid,
};
const char* reason_name(Reason r) noexcept;
std::optional<Reason> reason_from_name(const std::string& s) noexcept;

struct Verdict {
  bool accepted = true;
  Reason reason = Reason::Ok;
  std::string subprotocol;  // innermost rejecting child, for SubprotocolRejected
  std::string detail;

  static Verdict accept() { return {}; }
  static Verdict reject(Reason r, std::string why) { return {false, r, {}, std::move(why)}; }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

enum class Mode { Interactive, FiatShamir };
const char* mode_name(Mode m) noexcept;
std::optional<Mode> mode_from_name(const std::string& s) noexcept;

struct Params {
  u64 p = kDefaultPrime;
  u64 sigma = kDefaultPrime;
  Mode mode = Mode::FiatShamir;
  u64 seed = 0;  // interactive mode only
  bool strict = true;
  friend bool operator==(const Params&, const Params&) = default;
};

struct Transcript {
  std::string protocol_id;
  Params params;
  PublicInputs public_inputs;
  std::vector<Message> messages;
  std::optional<Verdict> verdict;
  double soundness_bound = 0;  // theoretical error bound at this sigma, informational
};

// Canonical encoding: u64 little-endian integers, length-prefixed strings,
// a length-prefixed tag before every payload body.
class Encoder {
 public:
  void u64le(u64 v);
  void str(const std::string& s);
  void payload(const Payload& p);
  void message(const Message& m);
  void public_inputs(const PublicInputs& in);
  void params(const Params& p);
  void verdict(const Verdict& v);
  const Bytes& bytes() const noexcept { return out_; }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class Decoder {
 public:
  Decoder(const Bytes& b, const Modulus& m) : b_(b), m_(m) {}
  u64 u64le();
  std::string str();
  Payload payload();
  Message message();
  bool done() const noexcept { return pos_ == b_.size(); }

 private:
  u64 field();
  std::size_t count(std::size_t elem_bytes);
  const Bytes& b_;
  Modulus m_;
  std::size_t pos_ = 0;
};

Bytes encode(const Payload& p);
Bytes encode(const Message& m);
Bytes encode(const PublicInputs& in);
Payload decode_payload(const Bytes& b, const Modulus& m);

std::string domain_tag(const std::string& protocol_id);

// SHA-256 over domain tag, params, public inputs, messages and verdict, hex.
std::string transcript_digest(const Transcript& t);

std::string to_hex(const std::uint8_t* data, std::size_t n);

}  // namespace polycert
