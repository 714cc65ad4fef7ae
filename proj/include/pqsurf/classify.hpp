#pragma once

#include "pqsurf/basket.hpp"
#include "pqsurf/group.hpp"
#include "pqsurf/minimality.hpp"
#include "pqsurf/signature.hpp"
#include "pqsurf/surface.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pqsurf {

struct ClassifyOptions {
  /// Only these group orders are searched (others are not reported at all).
  std::optional<std::set<long>> orders;
  /// Add the abelian groups of each order that the catalog lacks.
  bool builtin_abelian = false;
  int jobs = 1;
  long aut_budget = 1'000'000;
  /// Backtracking nodes per vector search before the case is skipped.
  long vector_node_budget = 20'000'000;
  bool run_minimality = true;
  MinimalityFilters filters;
};

/// Flags string used in reports and cache keys.
std::string options_flags(const ClassifyOptions &options);

struct SkippedCase {
  long order = 0;
  Signature t1;
  Signature t2;
  /// no-catalog-group, budget-exceeded or g0-positive-unsupported
  std::string reason;
  /// Group concerned, for budget-exceeded.
  std::string group;
  std::vector<Basket> baskets;
  friend auto operator<=>(const SkippedCase &, const SkippedCase &) = default;
};

struct ClassifiedSurface {
  ProductQuotientSurface surface;
  std::optional<MinimalityReport> minimality;
};

struct ClassificationReport {
  int pg = 0;
  int q = 0;
  int gamma = 0;
  int max_mult = 0;
  std::string catalog_digest;
  std::string flags;
  /// Multiplicity ceiling from the basket bounds; the run is exhaustive when max_mult reaches it.
  long mult_ceiling = 0;
  long baskets = 0;
  long triples = 0;
  std::vector<ClassifiedSurface> surfaces;
  std::vector<SkippedCase> skipped;
  double seconds = 0;
};

/// Candidate (order, t1, t2) triples with the baskets they must realize.
struct SearchTriple {
  long order = 0;
  Signature t1;
  Signature t2;
  std::vector<Basket> baskets;
};

/// Every triple passing the numerical filters for p_g = pg, q = 0, optionally
/// only those with group order in `orders`.
std::vector<SearchTriple> candidate_triples(int pg, int gamma, int max_mult,
                                            long *basket_count = nullptr,
                                            const std::set<long> *orders = nullptr);

ClassificationReport existing_surfaces(int pg, int gamma, int max_mult, const GroupCatalog &catalog,
                                       const ClassifyOptions &options = {});

/// Surfaces realizing one triple over one group.
struct GroupSearchResult {
  std::vector<ProductQuotientSurface> surfaces;
  bool budget_exceeded = false;
};

GroupSearchResult search_group(std::shared_ptr<const FiniteGroup> group, const SearchTriple &triple,
                               const ClassifyOptions &options = {});

/// Canonical sort order of surfaces in reports.
bool surface_less(const ProductQuotientSurface &a, const ProductQuotientSurface &b);

// ---------------------------------------------------------------------------
// Table rows

struct TableRow {
  std::string table;
  int gamma = 0;
  std::string K2;
  std::string basket;
  std::string t1;
  std::string t2;
  std::string group;
  /// "pass" or "flagged"
  std::string expected;
  int line = 0;
};

struct RowDiagnostics {
  bool pass = false;
  std::optional<long> order;
  std::vector<std::string> issues;
};

RowDiagnostics verify_table_row(const TableRow &row);

std::vector<TableRow> load_table_fixtures(const std::string &path);

/// One line of CSV, handling double-quoted fields.
std::vector<std::string> split_csv_line(const std::string &line);

/// Rows in the table format: K2,SingX,t1,t2,G.
std::string report_csv(const ClassificationReport &report);

} // namespace pqsurf
