#include "polycert/instance_io.hpp"

namespace polycert {

namespace {

constexpr const char* kFormat = "polycert-instance/1";

}  // namespace

Json instance_to_json(const Instance& inst) {
  Json j;
  j["format"] = kFormat;
  j["protocol"] = inst.protocol;
  j["p"] = std::to_string(inst.modulus.value());
  j["inputs"] = public_inputs_to_json(inst.inputs);
  if (!inst.witness.empty()) j["witness"] = public_inputs_to_json(inst.witness);
  return j;
}

Instance instance_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("format") || j["format"] != kFormat) throw ParseError("unknown instance format");
  if (!j.contains("protocol") || !j["protocol"].is_string()) throw ParseError("protocol must be a string");
  if (!j.contains("p") || !j["p"].is_string()) throw ParseError("p must be a decimal string");
  Instance inst;
  inst.protocol = j["protocol"].get<std::string>();
  try {
    inst.modulus = Modulus(parse_decimal(j["p"].get<std::string>()));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  if (!j.contains("inputs")) throw ParseError("missing inputs");
  inst.inputs = public_inputs_from_json(j["inputs"], inst.modulus);
  if (j.contains("witness")) inst.witness = public_inputs_from_json(j["witness"], inst.modulus);
  return inst;
}

std::string dump_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  return instance_from_json(j);
}

}  // namespace polycert
