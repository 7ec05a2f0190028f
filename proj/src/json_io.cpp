#include "qprim/json_io.hpp"

namespace qprim {

using nlohmann::json;

json ring_spec_to_json(const RingSpec& spec) {
  switch (spec.kind()) {
    case RingSpec::Kind::ZMod:
      return json{{"type", "zmod"}, {"n", spec.zmod_n()}};
    case RingSpec::Kind::Product: {
      json factors = json::array();
      for (const auto& f : spec.factors()) factors.push_back(ring_spec_to_json(f));
      return json{{"type", "product"}, {"factors", factors}};
    }
    case RingSpec::Kind::PolyQuotient:
      return json{{"type", "poly_quotient"},
                  {"base", json{{"type", "zmod"}, {"n", spec.base_n()}}},
                  {"modulus", spec.modulus()}};
    case RingSpec::Kind::Table:
      return json{{"type", "table"},
                  {"order", spec.table_add().size()},
                  {"add", spec.table_add()},
                  {"mul", spec.table_mul()}};
  }
  throw Error("unreachable spec kind");
}

RingSpec ring_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw InputError("ring spec: expected an object with a \"type\" string");
  const std::string type = j["type"].get<std::string>();
  try {
    if (type == "zmod") {
      // Both "n" and "p" are accepted as the modulus key.
      if (j.contains("n")) return RingSpec::zmod(j["n"].get<int>());
      if (j.contains("p")) return RingSpec::zmod(j["p"].get<int>());
      throw InputError("zmod spec: missing modulus");
    }
    if (type == "product") {
      if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].empty())
        throw InputError("product spec: \"factors\" must be a nonempty array");
      std::vector<RingSpec> factors;
      for (const auto& f : j["factors"]) factors.push_back(ring_spec_from_json(f));
      return RingSpec::product(std::move(factors));
    }
    if (type == "poly_quotient") {
      if (!j.contains("base") || !j.contains("modulus"))
        throw InputError("poly_quotient spec: needs \"base\" and \"modulus\"");
      RingSpec base = ring_spec_from_json(j["base"]);
      std::vector<int> modulus = j["modulus"].get<std::vector<int>>();
      return RingSpec::poly_quotient(base, std::move(modulus));
    }
    if (type == "table") {
      if (!j.contains("add") || !j.contains("mul"))
        throw InputError("table spec: needs \"add\" and \"mul\" matrices");
      auto add = j["add"].get<std::vector<std::vector<int>>>();
      auto mul = j["mul"].get<std::vector<std::vector<int>>>();
      if (j.contains("order") && j["order"].get<size_t>() != add.size())
        throw InputError("table spec: \"order\" does not match matrix size");
      return RingSpec::table(std::move(add), std::move(mul));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("ring spec: ") + e.what());
  }
  throw InputError("ring spec: unknown type \"" + type + "\"");
}

}  // namespace qprim
