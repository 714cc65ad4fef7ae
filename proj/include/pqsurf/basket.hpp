#pragma once

#include "pqsurf/rational.hpp"
#include "pqsurf/singularity.hpp"

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace pqsurf {

/// Multiset of singularity types, kept sorted by (n, q).
class Basket {
public:
  using Entry = std::pair<SingularityType, int>;

  Basket() = default;
  explicit Basket(const std::vector<SingularityType> &points);

  /// Parses the rendering produced by str(), e.g. "2x1/2,1/6,5/6".
  /// Accepts 'x' or the multiplication sign, and "" or "{}" for the empty basket.
  static Basket parse(const std::string &text);

  void add(const SingularityType &t, int multiplicity = 1);

  const std::vector<Entry> &entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  /// Number of points, counted with multiplicity.
  int size() const noexcept;
  int max_n() const noexcept;

  /// Points one by one in canonical order.
  std::vector<SingularityType> points() const;

  /// Entrywise image under dual_type.
  Basket mirror() const;

  /// Comma separated "mult x q/n" tokens ("x" omitted for multiplicity 1).
  std::string str() const;

  friend bool operator==(const Basket &, const Basket &) = default;
  friend std::strong_ordering operator<=>(const Basket &a, const Basket &b);

private:
  std::vector<Entry> entries_;
};

struct BasketInvariants {
  int l = 0;
  Rational gamma;
  Rational mu;
  long index = 1; // I(X), lcm of the local indices
  Rational e_legacy;
  Rational k_legacy;
  Rational B_legacy;
};

BasketInvariants basket_invariants(const Basket &b);

/// A way to split the points of a basket into fibre contributions.
///
/// Each point x contributes r/n to a fibre of the first fibration and r'/n to a
/// fibre of the second, where {r, r'} = {q, q'}. first/second list parts
/// whose contributions sum to a positive integer.
struct AdmissibilityWitness {
  std::vector<std::vector<Rational>> first;
  std::vector<std::vector<Rational>> second;
};

struct Admissibility {
  bool admissible = false;
  AdmissibilityWitness witness;
};

/// Necessary numerical condition for a basket to come from a product-quotient surface.
Admissibility basket_admissible(const Basket &b, bool with_witness = true);

/// Bounds derived from chi and gamma that any basket of a surface of general type obeys.
struct BasketBounds {
  int max_points = 0; // 8 chi + 4 gamma - 1
  Rational max_mu;    // 4 chi + 2 gamma - 1/2
  long max_n = 0;     // multiplicity ceiling for the given gamma
};

BasketBounds basket_bounds(int chi, const Rational &gamma);

/// All admissible baskets with total gamma equal to `gamma`, multiplicities
/// n <= min(max_mult, ceiling), canonically sorted.
///
/// With regular_pipeline set, gamma + chi - 1 must be a nonnegative integer.
std::vector<Basket> enumerate_baskets(int chi, const Rational &gamma, int max_mult,
                                      bool regular_pipeline = false);

} // namespace pqsurf
