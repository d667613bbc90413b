#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "factorix/certificate.hpp"
#include "factorix/group.hpp"

namespace factorix {

using json = nlohmann::json;

/// {"degree": d, "generators": [cycle strings]}
json group_to_json(const GroupTable &g);
/// Regenerates the group; throws ParseError on malformed input.
GroupPtr group_from_json(const json &j);

/// Elements of a factor as cycle strings in canonical (index) order.
json factor_to_json(const GroupTable &g, const FactorSet &f);

/// {"group":…, "pattern":[…], "factors":[[…]], "normalized": bool}
json certificate_to_json(const Certificate &c);

/// Parses a certificate. Throws ParseError, ElementNotInGroup, or
/// InvalidCertificate (duplicates, pattern mismatch, product != |G|).
Certificate certificate_from_json(const json &j);

/// Parses cycle strings against `g`.
std::vector<Elem> elements_from_json(const GroupTable &g, const json &list);

} // namespace factorix
