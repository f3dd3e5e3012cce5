#include "polycert/transcript.hpp"

#include "polycert/sha256.hpp"

namespace polycert {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

const char* payload_tag(const Payload& p) noexcept {
  static constexpr const char* kTags[] = {"scalar",   "vector", "fmatrix", "poly", "polyvec", "pmatrix",
                                          "indexset", "toeplitz", "rank",  "bool", "shift",   "marker"};
  return kTags[p.index()];
}

std::size_t payload_size(const Payload& p) noexcept {
  return std::visit(
      overloaded{
          [](const FieldScalar&) -> std::size_t { return 1; },
          [](const FieldVector& v) -> std::size_t { return v.values.size(); },
          [](const FieldMat& a) -> std::size_t { return a.rows() * a.cols(); },
          [](const Poly& f) -> std::size_t { return f.size(); },
          [](const PolyVec& v) {
            std::size_t n = 0;
            for (const auto& f : v) n += f.size();
            return n;
          },
          [](const PolyMat& a) {
            std::size_t n = 0;
            for (const auto& f : a.entries()) n += f.size();
            return n;
          },
          [](const IndexSet& s) -> std::size_t { return s.indices.size(); },
          [](const ToeplitzSpec& t) -> std::size_t { return t.entries.size(); },
          [](const RankClaim&) -> std::size_t { return 1; },
          [](const BoolFlag&) -> std::size_t { return 1; },
          [](const ShiftVector& s) -> std::size_t { return s.values.size(); },
          [](const Marker&) -> std::size_t { return 0; },
      },
      p);
}

const char* sender_name(Sender s) noexcept {
  switch (s) {
    case Sender::Prover: return "prover";
    case Sender::Verifier: return "verifier";
    case Sender::Marker: return "marker";
  }
  return "?";
}

const char* reason_name(Reason r) noexcept {
  switch (r) {
    case Reason::Ok: return "OK";
    case Reason::DegreeCheckFailed: return "DegreeCheckFailed";
    case Reason::EvaluationCheckFailed: return "EvaluationCheckFailed";
    case Reason::RankCheckFailed: return "RankCheckFailed";
    case Reason::ShapeCheckFailed: return "ShapeCheckFailed";
    case Reason::SubprotocolRejected: return "SubprotocolRejected";
    case Reason::MalformedMessage: return "MalformedMessage";
    case Reason::ParamsInvalid: return "ParamsInvalid";
  }
  return "?";
}

std::optional<Reason> reason_from_name(const std::string& s) noexcept {
  for (int i = 0; i <= static_cast<int>(Reason::ParamsInvalid); ++i) {
    if (s == reason_name(static_cast<Reason>(i))) return static_cast<Reason>(i);
  }
  return std::nullopt;
}

const char* mode_name(Mode m) noexcept { return m == Mode::Interactive ? "interactive" : "fiat-shamir"; }

std::optional<Mode> mode_from_name(const std::string& s) noexcept {
  if (s == "interactive") return Mode::Interactive;
  if (s == "fiat-shamir") return Mode::FiatShamir;
  return std::nullopt;
}

void Encoder::u64le(u64 v) {
  for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void Encoder::str(const std::string& s) {
  u64le(s.size());
  out_.insert(out_.end(), s.begin(), s.end());
}

void Encoder::payload(const Payload& p) {
  str(payload_tag(p));
  auto poly = [this](const Poly& f) {
    u64le(f.size());
    for (u64 c : f.coeffs()) u64le(c);
  };
  std::visit(overloaded{
                 [&](const FieldScalar& s) { u64le(s.value); },
                 [&](const FieldVector& v) {
                   u64le(v.values.size());
                   for (u64 x : v.values) u64le(x);
                 },
                 [&](const FieldMat& a) {
                   u64le(a.rows());
                   u64le(a.cols());
                   for (u64 x : a.data()) u64le(x);
                 },
                 [&](const Poly& f) { poly(f); },
                 [&](const PolyVec& v) {
                   u64le(v.size());
                   for (const auto& f : v) poly(f);
                 },
                 [&](const PolyMat& a) {
                   u64le(a.rows());
                   u64le(a.cols());
                   for (const auto& f : a.entries()) poly(f);
                 },
                 [&](const IndexSet& s) {
                   u64le(s.indices.size());
                   for (u64 x : s.indices) u64le(x);
                 },
                 [&](const ToeplitzSpec& t) {
                   u64le(t.rows);
                   u64le(t.cols);
                   for (u64 x : t.entries) u64le(x);
                 },
                 [&](const RankClaim& r) { u64le(r.rank); },
                 [&](const BoolFlag& b) { u64le(b.value ? 1 : 0); },
                 [&](const ShiftVector& s) {
                   u64le(s.values.size());
                   for (i64 x : s.values) u64le(static_cast<u64>(x));
                 },
                 [&](const Marker& mk) {
                   u64le(mk.begin ? 1 : 0);
                   str(mk.protocol);
                 },
             },
             p);
}

void Encoder::message(const Message& m) {
  u64le(static_cast<u64>(m.sender));
  str(m.label);
  payload(m.payload);
}

void Encoder::public_inputs(const PublicInputs& in) {
  u64le(in.size());
  for (const auto& np : in) {
    str(np.name);
    payload(np.payload);
  }
}

void Encoder::params(const Params& p) {
  u64le(p.p);
  u64le(p.sigma);
  str(mode_name(p.mode));
  u64le(p.seed);
  u64le(p.strict ? 1 : 0);
}

void Encoder::verdict(const Verdict& v) {
  u64le(v.accepted ? 1 : 0);
  str(reason_name(v.reason));
  str(v.subprotocol);
  str(v.detail);
}

u64 Decoder::u64le() {
  if (b_.size() - pos_ < 8) throw ParseError("truncated integer");
  u64 v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<u64>(b_[pos_ + static_cast<std::size_t>(i)]) << (8 * i);
  pos_ += 8;
  return v;
}

std::size_t Decoder::count(std::size_t elem_bytes) {
  const u64 n = u64le();
  if (elem_bytes && n > (b_.size() - pos_) / elem_bytes) throw ParseError("length prefix exceeds input");
  return static_cast<std::size_t>(n);
}

std::string Decoder::str() {
  const std::size_t n = count(1);
  std::string s(b_.begin() + static_cast<std::ptrdiff_t>(pos_), b_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
  pos_ += n;
  return s;
}

u64 Decoder::field() {
  const u64 v = u64le();
  if (v >= m_.value()) throw ParseError("field element out of range");
  return v;
}

Payload Decoder::payload() {
  const std::string tag = str();
  auto poly = [this]() {
    const std::size_t n = count(8);
    std::vector<u64> c(n);
    for (auto& x : c) x = field();
    if (n && c.back() == 0) throw ParseError("polynomial has a zero leading coefficient");
    return Poly(m_, std::move(c));
  };
  auto dims = [this]() {
    const u64 r = u64le(), c = u64le();
    if (r && c > (b_.size() - pos_) / 8 / r) throw ParseError("matrix dims exceed input");
    return std::pair<std::size_t, std::size_t>(r, c);
  };
  if (tag == "scalar") return FieldScalar{field()};
  if (tag == "vector") {
    FieldVector v;
    v.values.resize(count(8));
    for (auto& x : v.values) x = field();
    return v;
  }
  if (tag == "fmatrix") {
    const auto [r, c] = dims();
    std::vector<u64> e(r * c);
    for (auto& x : e) x = field();
    return FieldMat(m_, r, c, std::move(e));
  }
  if (tag == "poly") return poly();
  if (tag == "polyvec") {
    PolyVec v(count(8));
    for (auto& f : v) f = poly();
    return v;
  }
  if (tag == "pmatrix") {
    const auto [r, c] = dims();
    std::vector<Poly> e(r * c);
    for (auto& f : e) f = poly();
    return PolyMat(m_, r, c, std::move(e));
  }
  if (tag == "indexset") {
    IndexSet s;
    s.indices.resize(count(8));
    for (auto& x : s.indices) x = u64le();
    return s;
  }
  if (tag == "toeplitz") {
    const u64 r = u64le(), c = u64le();
    const std::size_t n = (r == 0 || c == 0) ? 0 : static_cast<std::size_t>(r + c - 1);
    if (n > (b_.size() - pos_) / 8) throw ParseError("toeplitz spec exceeds input");
    FieldVec e(n);
    for (auto& x : e) x = field();
    return ToeplitzSpec(r, c, std::move(e));
  }
  if (tag == "rank") return RankClaim{u64le()};
  if (tag == "bool") {
    const u64 v = u64le();
    if (v > 1) throw ParseError("boolean out of range");
    return BoolFlag{v == 1};
  }
  if (tag == "shift") {
    ShiftVector s;
    s.values.resize(count(8));
    for (auto& x : s.values) x = static_cast<i64>(u64le());
    return s;
  }
  if (tag == "marker") {
    const u64 b = u64le();
    if (b > 1) throw ParseError("marker flag out of range");
    return Marker{b == 1, str()};
  }
  throw ParseError("unknown payload tag '" + tag + "'");
}

Message Decoder::message() {
  const u64 s = u64le();
  if (s > 2) throw ParseError("unknown sender");
  Message m;
  m.sender = static_cast<Sender>(s);
  m.label = str();
  m.payload = payload();
  return m;
}

Bytes encode(const Payload& p) {
  Encoder e;
  e.payload(p);
  return e.take();
}

Bytes encode(const Message& m) {
  Encoder e;
  e.message(m);
  return e.take();
}

Bytes encode(const PublicInputs& in) {
  Encoder e;
  e.public_inputs(in);
  return e.take();
}

Payload decode_payload(const Bytes& b, const Modulus& m) {
  Decoder d(b, m);
  Payload p = d.payload();
  if (!d.done()) throw ParseError("trailing bytes after payload");
  return p;
}

std::string domain_tag(const std::string& protocol_id) { return "polycert/v1/" + protocol_id; }

std::string to_hex(const std::uint8_t* data, std::size_t n) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    s.push_back(kHex[data[i] >> 4]);
    s.push_back(kHex[data[i] & 15]);
  }
  return s;
}

std::string transcript_digest(const Transcript& t) {
  Encoder e;
  e.str(domain_tag(t.protocol_id));
  e.params(t.params);
  e.public_inputs(t.public_inputs);
  e.u64le(t.messages.size());
  for (const auto& m : t.messages) e.message(m);
  e.u64le(t.verdict ? 1 : 0);
  if (t.verdict) e.verdict(*t.verdict);
  const auto d = Sha256::hash(e.bytes());
  return to_hex(d.data(), d.size());
}

}  // namespace polycert
