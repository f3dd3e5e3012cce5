// Human-readable JSON forms of payloads and transcripts. Field elements are
// decimal strings, coefficient arrays run low-to-high.
#pragma once

#include <string>

#include "json.hpp"
#include "polycert/transcript.hpp"

namespace polycert {

using Json = nlohmann::ordered_json;

Json payload_to_json(const Payload& p);
Payload payload_from_json(const Json& j, const Modulus& m);  // throws ParseError

Json public_inputs_to_json(const PublicInputs& in);
PublicInputs public_inputs_from_json(const Json& j, const Modulus& m);

Json transcript_to_json(const Transcript& t);
// Checks the stored digest against the content; throws DigestMismatch.
Transcript transcript_from_json(const Json& j);

std::string dump_transcript(const Transcript& t);
Transcript parse_transcript(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

u64 parse_decimal(const std::string& s);  // throws ParseError
}  // namespace polycert
