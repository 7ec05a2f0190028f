#pragma once

#include "json.hpp"
#include "qprim/ring.hpp"

namespace qprim {

nlohmann::json ring_spec_to_json(const RingSpec& spec);

/// Throws InputError on malformed input.
RingSpec ring_spec_from_json(const nlohmann::json& j);

}  // namespace qprim
