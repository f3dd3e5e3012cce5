#include "polycert/json_io.hpp"

#include <fstream>
#include <sstream>

namespace polycert {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr const char* kFormat = "polycert-transcript/1";

Json field_list(const std::vector<u64>& v) {
  Json a = Json::array();
  for (u64 x : v) a.push_back(std::to_string(x));
  return a;
}

u64 field_from(const Json& j, const Modulus& m) {
  if (!j.is_string()) throw ParseError("field element must be a decimal string");
  const u64 v = parse_decimal(j.get<std::string>());
  if (v >= m.value()) throw ParseError("field element " + j.get<std::string>() + " is not below p");
  return v;
}

std::vector<u64> fields_from(const Json& j, const Modulus& m) {
  if (!j.is_array()) throw ParseError("expected an array of field elements");
  std::vector<u64> v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(field_from(x, m));
  return v;
}

Poly poly_from(const Json& j, const Modulus& m) {
  std::vector<u64> c = fields_from(j, m);
  if (!c.empty() && c.back() == 0) throw ParseError("polynomial is not normalized");
  return Poly(m, std::move(c));
}

std::size_t dim_from(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned()) throw ParseError(std::string("missing dimension ") + key);
  return j.at(key).get<std::size_t>();
}

u64 uint_from(const Json& j) {
  if (!j.is_number_unsigned()) throw ParseError("expected a non-negative integer");
  return j.get<u64>();
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

u64 parse_decimal(const std::string& s) {
  if (s.empty() || s.size() > 20) throw ParseError("bad decimal '" + s + "'");
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw ParseError("bad decimal '" + s + "'");
    v = v * 10 + static_cast<u64>(c - '0');
  }
  if (v > ~u64{0}) throw ParseError("decimal out of range '" + s + "'");
  if (s.size() > 1 && s[0] == '0') throw ParseError("decimal has leading zeros '" + s + "'");
  return static_cast<u64>(v);
}

Json payload_to_json(const Payload& p) {
  Json j;
  j["type"] = payload_tag(p);
  std::visit(overloaded{
                 [&](const FieldScalar& s) { j["value"] = std::to_string(s.value); },
                 [&](const FieldVector& v) { j["value"] = field_list(v.values); },
                 [&](const FieldMat& a) {
                   j["rows"] = a.rows();
                   j["cols"] = a.cols();
                   Json rows = Json::array();
                   for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(field_list(a.row(i)));
                   j["value"] = rows;
                 },
                 [&](const Poly& f) { j["value"] = field_list(f.coeffs()); },
                 [&](const PolyVec& v) {
                   Json a = Json::array();
                   for (const auto& f : v) a.push_back(field_list(f.coeffs()));
                   j["value"] = a;
                 },
                 [&](const PolyMat& a) {
                   j["rows"] = a.rows();
                   j["cols"] = a.cols();
                   Json rows = Json::array();
                   for (std::size_t i = 0; i < a.rows(); ++i) {
                     Json r = Json::array();
                     for (std::size_t c = 0; c < a.cols(); ++c) r.push_back(field_list(a.at(i, c).coeffs()));
                     rows.push_back(r);
                   }
                   j["value"] = rows;
                 },
                 [&](const IndexSet& s) { j["value"] = s.indices; },
                 [&](const ToeplitzSpec& t) {
                   j["rows"] = t.rows;
                   j["cols"] = t.cols;
                   j["value"] = field_list(t.entries);
                 },
                 [&](const RankClaim& r) { j["value"] = r.rank; },
                 [&](const BoolFlag& b) { j["value"] = b.value; },
                 [&](const ShiftVector& s) { j["value"] = s.values; },
                 [&](const Marker& mk) {
                   j["begin"] = mk.begin;
                   j["protocol"] = mk.protocol;
                 },
             },
             p);
  return j;
}

Payload payload_from_json(const Json& j, const Modulus& m) {
  const Json& type = member(j, "type");
  if (!type.is_string()) throw ParseError("payload type must be a string");
  const std::string tag = type.get<std::string>();
  try {
    if (tag == "marker") {
      const Json& b = member(j, "begin");
      const Json& p = member(j, "protocol");
      if (!b.is_boolean() || !p.is_string()) throw ParseError("malformed marker");
      return Marker{b.get<bool>(), p.get<std::string>()};
    }
    const Json& v = member(j, "value");
    if (tag == "scalar") return FieldScalar{field_from(v, m)};
    if (tag == "vector") return FieldVector{fields_from(v, m)};
    if (tag == "fmatrix") {
      const std::size_t r = dim_from(j, "rows"), c = dim_from(j, "cols");
      if (!v.is_array() || v.size() != r) throw ParseError("fmatrix row count mismatch");
      std::vector<u64> e;
      e.reserve(r * c);
      for (const auto& row : v) {
        const auto vals = fields_from(row, m);
        if (vals.size() != c) throw ParseError("fmatrix column count mismatch");
        e.insert(e.end(), vals.begin(), vals.end());
      }
      return FieldMat(m, r, c, std::move(e));
    }
    if (tag == "poly") return poly_from(v, m);
    if (tag == "polyvec") {
      if (!v.is_array()) throw ParseError("polyvec must be an array");
      PolyVec out;
      for (const auto& f : v) out.push_back(poly_from(f, m));
      return out;
    }
    if (tag == "pmatrix") {
      const std::size_t r = dim_from(j, "rows"), c = dim_from(j, "cols");
      if (!v.is_array() || v.size() != r) throw ParseError("pmatrix row count mismatch");
      std::vector<Poly> e;
      e.reserve(r * c);
      for (const auto& row : v) {
        if (!row.is_array() || row.size() != c) throw ParseError("pmatrix column count mismatch");
        for (const auto& f : row) e.push_back(poly_from(f, m));
      }
      return PolyMat(m, r, c, std::move(e));
    }
    if (tag == "indexset") {
      if (!v.is_array()) throw ParseError("indexset must be an array");
      IndexSet s;
      for (const auto& x : v) s.indices.push_back(uint_from(x));
      return s;
    }
    if (tag == "toeplitz") {
      return ToeplitzSpec(dim_from(j, "rows"), dim_from(j, "cols"), fields_from(v, m));
    }
    if (tag == "rank") return RankClaim{uint_from(v)};
    if (tag == "bool") {
      if (!v.is_boolean()) throw ParseError("bool payload must be true or false");
      return BoolFlag{v.get<bool>()};
    }
    if (tag == "shift") {
      if (!v.is_array()) throw ParseError("shift must be an array");
      ShiftVector s;
      for (const auto& x : v) {
        if (!x.is_number_integer()) throw ParseError("shift entries must be integers");
        s.values.push_back(x.get<i64>());
      }
      return s;
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed ") + tag + ": " + e.what());
  }
  throw ParseError("unknown payload type '" + tag + "'");
}

Json public_inputs_to_json(const PublicInputs& in) {
  Json a = Json::array();
  for (const auto& np : in) a.push_back(Json{{"name", np.name}, {"payload", payload_to_json(np.payload)}});
  return a;
}

PublicInputs public_inputs_from_json(const Json& j, const Modulus& m) {
  if (!j.is_array()) throw ParseError("public inputs must be an array");
  PublicInputs in;
  for (const auto& e : j) {
    const Json& name = member(e, "name");
    if (!name.is_string()) throw ParseError("input name must be a string");
    in.push_back({name.get<std::string>(), payload_from_json(member(e, "payload"), m)});
  }
  return in;
}

Json transcript_to_json(const Transcript& t) {
  Json j;
  j["format"] = kFormat;
  j["protocol"] = t.protocol_id;
  j["params"] = Json{{"p", std::to_string(t.params.p)},
                     {"sigma", std::to_string(t.params.sigma)},
                     {"mode", mode_name(t.params.mode)},
                     {"seed", std::to_string(t.params.seed)},
                     {"strict", t.params.strict}};
  j["public_inputs"] = public_inputs_to_json(t.public_inputs);
  Json msgs = Json::array();
  for (const auto& m : t.messages) {
    msgs.push_back(Json{{"sender", sender_name(m.sender)}, {"label", m.label}, {"payload", payload_to_json(m.payload)}});
  }
  j["messages"] = msgs;
  if (t.verdict) {
    j["verdict"] = Json{{"accepted", t.verdict->accepted},
                        {"reason", reason_name(t.verdict->reason)},
                        {"subprotocol", t.verdict->subprotocol},
                        {"detail", t.verdict->detail}};
  } else {
    j["verdict"] = nullptr;
  }
  j["soundness_bound"] = t.soundness_bound;
  j["digest"] = transcript_digest(t);
  return j;
}

Transcript transcript_from_json(const Json& j) {
  const Json& fmt = member(j, "format");
  if (!fmt.is_string() || fmt.get<std::string>() != kFormat) throw ParseError("unknown transcript format");
  Transcript t;
  const Json& proto = member(j, "protocol");
  if (!proto.is_string()) throw ParseError("protocol must be a string");
  t.protocol_id = proto.get<std::string>();

  const Json& pj = member(j, "params");
  auto str_of = [](const Json& x, const char* what) {
    if (!x.is_string()) throw ParseError(std::string(what) + " must be a string");
    return x.get<std::string>();
  };
  t.params.p = parse_decimal(str_of(member(pj, "p"), "p"));
  t.params.sigma = parse_decimal(str_of(member(pj, "sigma"), "sigma"));
  const auto mode = mode_from_name(str_of(member(pj, "mode"), "mode"));
  if (!mode) throw ParseError("unknown mode");
  t.params.mode = *mode;
  t.params.seed = parse_decimal(str_of(member(pj, "seed"), "seed"));
  const Json& strict = member(pj, "strict");
  if (!strict.is_boolean()) throw ParseError("strict must be a boolean");
  t.params.strict = strict.get<bool>();

  Modulus m;
  try {
    m = Modulus(t.params.p);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  t.public_inputs = public_inputs_from_json(member(j, "public_inputs"), m);
  const Json& msgs = member(j, "messages");
  if (!msgs.is_array()) throw ParseError("messages must be an array");
  for (const auto& mj : msgs) {
    Message msg;
    const std::string sender = str_of(member(mj, "sender"), "sender");
    if (sender == "prover") msg.sender = Sender::Prover;
    else if (sender == "verifier") msg.sender = Sender::Verifier;
    else if (sender == "marker") msg.sender = Sender::Marker;
    else throw ParseError("unknown sender '" + sender + "'");
    msg.label = str_of(member(mj, "label"), "label");
    msg.payload = payload_from_json(member(mj, "payload"), m);
    t.messages.push_back(std::move(msg));
  }
  const Json& vj = member(j, "verdict");
  if (!vj.is_null()) {
    Verdict v;
    const Json& acc = member(vj, "accepted");
    if (!acc.is_boolean()) throw ParseError("accepted must be a boolean");
    v.accepted = acc.get<bool>();
    const auto r = reason_from_name(str_of(member(vj, "reason"), "reason"));
    if (!r) throw ParseError("unknown verdict reason");
    v.reason = *r;
    v.subprotocol = str_of(member(vj, "subprotocol"), "subprotocol");
    v.detail = str_of(member(vj, "detail"), "detail");
    t.verdict = v;
  }
  if (j.contains("soundness_bound") && j.at("soundness_bound").is_number()) {
    t.soundness_bound = j.at("soundness_bound").get<double>();
  }
  const std::string stored = str_of(member(j, "digest"), "digest");
  const std::string actual = transcript_digest(t);
  if (stored != actual) throw DigestMismatch("stored digest " + stored + " does not match content " + actual);
  return t;
}

std::string dump_transcript(const Transcript& t) { return transcript_to_json(t).dump(2) + "\n"; }

Transcript parse_transcript(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  return transcript_from_json(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace polycert
