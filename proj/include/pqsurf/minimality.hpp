#pragma once

#include "pqsurf/basket.hpp"
#include "pqsurf/rational.hpp"
#include "pqsurf/surface.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pqsurf {

/// Intersection lattice of the exceptional curves over the basket.
///
/// Blocks follow the basket points by decreasing n, then increasing q; inside
/// a block the curves follow the Hirzebruch-Jung string.
class ExceptionalLattice {
public:
  explicit ExceptionalLattice(const Basket &basket);

  std::size_t dim() const noexcept { return self_.size(); }
  /// Dense intersection matrix.
  std::vector<std::vector<int>> matrix() const;
  /// K.A_i = b_i - 2.
  const std::vector<int> &canonical() const noexcept { return canonical_; }
  /// -A_i^2, i.e. the Hirzebruch-Jung entry b_i.
  const std::vector<int> &self_intersection() const noexcept { return self_; }
  /// Row -> (basket point, position in its string).
  const std::vector<std::pair<int, int>> &index() const noexcept { return index_; }
  const std::vector<SingularityType> &points() const noexcept { return points_; }

  /// Exact solution x of M x = rhs.
  std::vector<Rational> solve(const std::vector<Rational> &rhs) const;
  /// u^T M^-1 v.
  Rational inverse_form(const std::vector<Rational> &u, const std::vector<Rational> &v) const;

private:
  std::vector<SingularityType> points_;
  std::vector<int> self_;
  std::vector<int> canonical_;
  std::vector<std::pair<int, int>> index_;
  std::vector<std::pair<std::size_t, std::size_t>> blocks_; // [begin, end)
};

struct ClassValues {
  Rational KE;
  Rational E2;
  friend bool operator==(const ClassValues &, const ClassValues &) = default;
};

/// K.E and E^2 for E = (mu1/|G|) F1 + (mu2/|G|) F2 - sum a_i A_i with E.A_i = e_i.
ClassValues evaluate_class(const ExceptionalLattice &lat, long mu1, long mu2,
                           const std::vector<int> &e, const Rational &theta1,
                           const Rational &theta2, long order);

struct MinusOneCandidate {
  long mu1 = 0;
  long mu2 = 0;
  std::vector<int> e;
  friend auto operator<=>(const MinusOneCandidate &, const MinusOneCandidate &) = default;
};

/// The two equations solved for one e-vector:
///   mu1 Theta2 + mu2 Theta1 = linear,  mu1 mu2 = product.
struct ClassSystem {
  std::vector<int> e;
  Rational linear;
  Rational product;
  std::vector<std::pair<long, long>> solutions;
};

struct MinimalityFilters {
  /// e_i <= max(1, b_i - 3)
  bool cap_b_minus_3 = true;
  /// at most one incidence with (-2)-curves
  bool minus_two_rule = true;
  /// give up after this many e-vectors (0 = unlimited)
  long max_e_vectors = 5'000'000;
};

struct MinusOneSearch {
  std::vector<MinusOneCandidate> candidates;
  /// "complete" when pg + gamma = 0, otherwise "lattice-only".
  std::string applicability;
  long e_vectors_visited = 0;
  bool truncated = false;
  MinimalityFilters filters;
  /// Filled only when requested.
  std::vector<ClassSystem> systems;
};

MinusOneSearch search_minus_one(const Basket &basket, const Rational &theta1,
                                const Rational &theta2, long order, int pg, const Rational &gamma,
                                const MinimalityFilters &filters = {}, bool record_systems = false);

MinusOneSearch search_minus_one(const ProductQuotientSurface &s, const MinimalityFilters &filters = {},
                                bool record_systems = false);

enum class MinimalityVerdict { MinimalIfGeneralType, HasLatticeMinusOne, Inconclusive };

const char *to_string(MinimalityVerdict v);

/// True when the exceptional curves satisfy the (-2)/(-3) or "at most two (-3)/(-4)" criterion.
bool small_curves_criterion(const Basket &basket);

MinimalityVerdict minimality_verdict(const Basket &basket, const MinusOneSearch &search);
MinimalityVerdict minimality_heuristic(const ProductQuotientSurface &s);

struct MinimalityReport {
  MinimalityVerdict verdict = MinimalityVerdict::Inconclusive;
  MinusOneSearch search;
};

MinimalityReport minimality_report(const ProductQuotientSurface &s,
                                   const MinimalityFilters &filters = {});

} // namespace pqsurf
