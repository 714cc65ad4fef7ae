#include "pqsurf/serialize.hpp"

#include "pqsurf/error.hpp"

#include <cstdio>

namespace pqsurf {

using nlohmann::json;

json minimality_to_json(const MinimalityReport &r) {
  json cands = json::array();
  for (const auto &c : r.search.candidates)
    cands.push_back({{"mu1", c.mu1}, {"mu2", c.mu2}, {"e", c.e}});
  return {{"verdict", to_string(r.verdict)},
          {"applicability", r.search.applicability},
          {"candidates", cands},
          {"e_vectors_visited", r.search.e_vectors_visited},
          {"truncated", r.search.truncated},
          {"filters",
           {{"cap_b_minus_3", r.search.filters.cap_b_minus_3},
            {"minus_two_rule", r.search.filters.minus_two_rule}}}};
}

json surface_to_json(const ProductQuotientSurface &s, const MinimalityReport *minimality) {
  const auto &G = *s.group;
  const auto &inv = s.invariants;
  json j;
  j["schema"] = kSchemaVersion;
  j["group_id"] = G.label();
  j["group"] = {{"order", G.order()}, {"degree", G.degree()}, {"gens", G.generators()}};
  j["t1"] = s.v1.signature.short_str();
  j["t2"] = s.v2.signature.short_str();
  j["v1"] = s.v1.elements;
  j["v2"] = s.v2.elements;
  j["basket"] = s.basket.str();
  j["K2"] = to_string(inv.K2);
  j["chi"] = to_string(inv.chi);
  j["pg"] = inv.pg;
  j["q"] = inv.q;
  j["gamma"] = to_string(inv.gamma);
  j["l"] = inv.l;
  j["mu"] = to_string(inv.mu);
  j["xi"] = to_string(inv.xi);
  j["I"] = inv.index;
  j["tau"] = to_string(inv.tau);
  j["e_top"] = to_string(inv.e_top);
  j["g1"] = inv.g1;
  j["g2"] = inv.g2;
  j["alpha1"] = inv.alpha1;
  j["alpha2"] = inv.alpha2;
  j["h2X"] = inv.h2X;
  j["dedup"] = s.dedup;
  if (minimality)
    j["minimality"] = minimality_to_json(*minimality);
  return j;
}

ProductQuotientSurface surface_from_json(const json &j) {
  try {
    if (j.value("schema", std::string(kSchemaVersion)) != kSchemaVersion)
      throw Error(ErrorKind::ParseError, "unsupported schema " + j.at("schema").get<std::string>());
    const auto &g = j.at("group");
    auto gens = g.at("gens").get<std::vector<Permutation>>();
    auto group = FiniteGroup::from_permutations(gens, g.at("degree").get<int>());
    if (group.order() != g.at("order").get<int>())
      throw Error(ErrorKind::OrderMismatch, "stored group order differs from its closure");
    const auto id = j.at("group_id").get<std::string>();
    try {
      parse_group_id(id);
      group.set_catalog_id(id);
    } catch (const Error &) {
      group.set_label(id);
    }
    GeneratingVector v1{Signature::parse(j.at("t1").get<std::string>()),
                        j.at("v1").get<std::vector<int>>()};
    GeneratingVector v2{Signature::parse(j.at("t2").get<std::string>()),
                        j.at("v2").get<std::vector<int>>()};
    for (const auto *v : {&v1, &v2})
      for (int x : v->elements)
        if (x < 0 || x >= group.order())
          throw Error(ErrorKind::ParseError, "vector entry out of range");
    auto s = make_surface(std::make_shared<const FiniteGroup>(std::move(group)), std::move(v1),
                          std::move(v2));
    s.dedup = j.value("dedup", std::string("full"));
    if (j.contains("basket") && Basket::parse(j["basket"].get<std::string>()) != s.basket)
      throw Error(ErrorKind::InconsistentSurface, "stored basket differs from the recomputed one");
    if (j.contains("K2") && parse_rational(j["K2"].get<std::string>()) != s.invariants.K2)
      throw Error(ErrorKind::InconsistentSurface, "stored K2 differs from the recomputed one");
    return s;
  } catch (const json::exception &e) {
    throw Error(ErrorKind::ParseError, std::string("malformed surface record: ") + e.what());
  }
}

std::vector<ProductQuotientSurface> surfaces_from_document(const json &j) {
  std::vector<ProductQuotientSurface> out;
  if (j.is_object() && j.contains("surfaces")) {
    for (const auto &s : j["surfaces"])
      out.push_back(surface_from_json(s));
  } else if (j.is_array()) {
    for (const auto &s : j)
      out.push_back(surface_from_json(s));
  } else {
    out.push_back(surface_from_json(j));
  }
  return out;
}

json report_to_json(const ClassificationReport &r, bool deterministic) {
  json j;
  j["schema"] = kSchemaVersion;
  j["parameters"] = {{"pg", r.pg},
                     {"q", r.q},
                     {"gamma", r.gamma},
                     {"max_mult", r.max_mult},
                     {"catalog_digest", r.catalog_digest},
                     {"flags", r.flags},
                     {"mult_ceiling", r.mult_ceiling},
                     {"exhaustive_in_mult", r.max_mult >= r.mult_ceiling}};
  j["counts"] = {{"baskets", r.baskets},
                 {"triples", r.triples},
                 {"surfaces", r.surfaces.size()},
                 {"skipped", r.skipped.size()}};
  json surfaces = json::array();
  for (const auto &cs : r.surfaces)
    surfaces.push_back(surface_to_json(cs.surface, cs.minimality ? &*cs.minimality : nullptr));
  j["surfaces"] = surfaces;
  json skipped = json::array();
  for (const auto &sk : r.skipped) {
    json b = json::array();
    for (const auto &x : sk.baskets)
      b.push_back(x.str());
    json item = {{"order", sk.order},
                 {"t1", sk.t1.short_str()},
                 {"t2", sk.t2.short_str()},
                 {"reason", sk.reason},
                 {"baskets", b}};
    if (!sk.group.empty())
      item["group"] = sk.group;
    skipped.push_back(item);
  }
  j["skipped"] = skipped;
  if (!deterministic)
    j["timing"] = {{"seconds", r.seconds}};
  return j;
}

std::string cache_key(int pg, int gamma, int max_mult, const std::string &digest,
                      const std::string &flags) {
  const std::string text = std::string(kSchemaVersion) + "|" + std::to_string(pg) + "|" +
                           std::to_string(gamma) + "|" + std::to_string(max_mult) + "|" + digest +
                           "|" + flags;
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace pqsurf
