#include "factorix/json_io.hpp"

#include "factorix/error.hpp"

namespace factorix {

json group_to_json(const GroupTable &g) {
  json gens = json::array();
  for (const auto &p : g.generators())
    gens.push_back(p.to_cycles());
  return json{{"degree", g.degree()}, {"generators", gens}};
}

GroupPtr group_from_json(const json &j) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
    throw Error(ErrorCode::ParseError, "group needs a \"generators\" array");
  int degree = 0;
  if (j.contains("degree")) {
    if (!j["degree"].is_number_integer())
      throw Error(ErrorCode::ParseError, "\"degree\" must be an integer");
    degree = j["degree"].get<int>();
  }
  std::vector<std::string> texts;
  for (const auto &s : j["generators"]) {
    if (!s.is_string())
      throw Error(ErrorCode::ParseError, "generators must be cycle strings");
    texts.push_back(s.get<std::string>());
    if (!j.contains("degree"))
      degree = std::max(degree, Perm::max_point(texts.back()));
  }
  if (degree <= 0)
    degree = 1;
  if (degree > kMaxDegree)
    throw Error(ErrorCode::ParseError, "degree exceeds 16");
  std::vector<Perm> gens;
  for (const auto &t : texts)
    gens.push_back(Perm::parse(t, degree));
  return generate_group(gens, degree);
}

json factor_to_json(const GroupTable &g, const FactorSet &f) {
  json out = json::array();
  for (Elem e : f.elements())
    out.push_back(g.element(e).to_cycles());
  return out;
}

json certificate_to_json(const Certificate &c) {
  const GroupTable &g = *c.group;
  if (!g.has_permutations())
    throw Error(ErrorCode::PreconditionFailed, "abstract groups have no cycle notation");
  json factors = json::array();
  for (const auto &f : c.factors)
    factors.push_back(factor_to_json(g, f));
  return json{{"group", group_to_json(g)},
              {"pattern", c.pattern()},
              {"factors", factors},
              {"normalized", c.normalized()}};
}

std::vector<Elem> elements_from_json(const GroupTable &g, const json &list) {
  if (!list.is_array())
    throw Error(ErrorCode::ParseError, "expected an array of cycle strings");
  std::vector<Elem> out;
  for (const auto &s : list) {
    if (!s.is_string())
      throw Error(ErrorCode::ParseError, "expected a cycle string");
    out.push_back(g.index_of(Perm::parse(s.get<std::string>(), g.degree())));
  }
  return out;
}

Certificate certificate_from_json(const json &j) {
  if (!j.is_object() || !j.contains("group") || !j.contains("factors") ||
      !j["factors"].is_array())
    throw Error(ErrorCode::ParseError, "certificate needs \"group\" and \"factors\"");
  Certificate c{group_from_json(j["group"]), {}};
  for (const auto &f : j["factors"])
    c.factors.emplace_back(c.group->order(), elements_from_json(*c.group, f));
  if (c.factors.empty())
    throw Error(ErrorCode::InvalidCertificate, "certificate has no factors");

  std::size_t product = 1;
  for (const auto &f : c.factors)
    product *= f.size();
  if (j.contains("pattern")) {
    if (!j["pattern"].is_array())
      throw Error(ErrorCode::ParseError, "\"pattern\" must be an array");
    std::vector<std::size_t> stated;
    for (const auto &m : j["pattern"]) {
      if (!m.is_number_integer() || m.get<long long>() < 1)
        throw Error(ErrorCode::ParseError, "pattern entries must be positive integers");
      stated.push_back(m.get<std::size_t>());
    }
    if (stated != c.pattern())
      throw Error(ErrorCode::InvalidCertificate, "stated pattern does not match factor sizes");
  }
  if (product != c.group->order())
    throw Error(ErrorCode::InvalidCertificate, "factor sizes multiply to " +
                                                   std::to_string(product) + ", not |G| = " +
                                                   std::to_string(c.group->order()));
  return c;
}

} // namespace factorix
