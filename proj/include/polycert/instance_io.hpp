// Instance files: protocol id, modulus, named public inputs and an optional
// planted witness, in the same JSON conventions as transcripts.
#pragma once

#include "polycert/json_io.hpp"
#include "polycert/protocols.hpp"

namespace polycert {

Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);  // throws ParseError

std::string dump_instance(const Instance& inst);
Instance parse_instance(const std::string& text);

}  // namespace polycert
