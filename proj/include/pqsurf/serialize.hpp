#pragma once

#include "pqsurf/classify.hpp"
#include "pqsurf/minimality.hpp"
#include "pqsurf/surface.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pqsurf {

inline constexpr const char *kSchemaVersion = "pqc-1";

nlohmann::json minimality_to_json(const MinimalityReport &report);

/// Surface record; "group" carries the generating permutations so that the
/// same element numbering can be rebuilt on load.
nlohmann::json surface_to_json(const ProductQuotientSurface &s,
                               const MinimalityReport *minimality = nullptr);

/// Rebuilds the surface, recomputes basket and invariants, and checks them
/// against the stored values (InconsistentSurface on mismatch).
ProductQuotientSurface surface_from_json(const nlohmann::json &j);

/// Surfaces in a document that is either a single surface record or a report.
std::vector<ProductQuotientSurface> surfaces_from_document(const nlohmann::json &j);

/// With deterministic set, run timing is left out.
nlohmann::json report_to_json(const ClassificationReport &report, bool deterministic);

/// Cache key for (pg, gamma, M, catalog digest, flags).
std::string cache_key(int pg, int gamma, int max_mult, const std::string &digest,
                      const std::string &flags);

} // namespace pqsurf
