#pragma once

// JSON, text and markdown renderings of transcripts, reports and the matrix.
// Output is a pure function of the input, so identical runs print identical bytes.

#include <string>

#include "json.hpp"
#include "tmis/attacks.hpp"
#include "tmis/protocol.hpp"

namespace tmis::serialize {

using Json = nlohmann::ordered_json;

Json to_json(const protocol::FieldValue& value);
Json to_json(const protocol::OpCounters& counters);
Json to_json(const protocol::Transcript& transcript);
Json to_json(const attacks::AttackReport& report, bool include_transcripts = true);
Json to_json(const attacks::Matrix& matrix, bool include_transcripts = false);

std::string to_text(const protocol::Transcript& transcript);
std::string to_text(const attacks::AttackReport& report);

std::string to_markdown(const protocol::Transcript& transcript);
std::string to_markdown(const attacks::AttackReport& report);
/// Aligned table; cells that disagree with the published mark show both.
std::string to_markdown(const attacks::Matrix& matrix);

}  // namespace tmis::serialize
