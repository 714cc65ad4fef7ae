#pragma once

#include "pqsurf/basket.hpp"
#include "pqsurf/rational.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace pqsurf {

/// Orbifold signature (g0; m1, ..., mr) of a curve action, periods nondecreasing.
class Signature {
public:
  Signature() = default;
  Signature(int g0, std::vector<int> periods);

  /// Accepts "(g0; m1,...,mr)", "(m1,...,mr)" or a bare "m1,...,mr" (g0 = 0).
  static Signature parse(const std::string &text);

  int g0() const noexcept { return g0_; }
  const std::vector<int> &periods() const noexcept { return periods_; }
  int r() const noexcept { return static_cast<int>(periods_.size()); }

  /// "(g0; m1,...,mr)".
  std::string str() const;
  /// Table style: "m1,...,mr" when g0 = 0, otherwise str().
  std::string short_str() const;

  friend auto operator<=>(const Signature &, const Signature &) = default;

private:
  int g0_ = 0;
  std::vector<int> periods_;
};

/// 2 g0 - 2 + sum(1 - 1/mi).
Rational theta(const Signature &s);

/// Genus of a curve with a G-action of the given signature (Hurwitz formula).
int curve_genus(const Signature &s, long order);

/// Largest period allowed for r branch points over a quotient of genus g0.
long period_ceiling(const Rational &xi, int g0, int r);

/// Every signature compatible with xi and the basket for quotient genus g0.
std::vector<Signature> enumerate_signatures(const Rational &xi, const Basket &basket, int g0,
                                            bool gamma_nonzero);

/// Signatures compatible with xi alone (no basket divisibility filter).
std::vector<Signature> signature_candidates(const Rational &xi, int g0);

/// True when for every n in the basket some period is divisible by n.
bool periods_cover_basket(const Signature &s, const Basket &basket);

struct PairCheck {
  bool pass = false;
  std::optional<long> order;
};

/// Numerical compatibility of a signature pair with a basket; yields |G|.
PairCheck robavecchia_filter(const Signature &s1, const Signature &s2, const Rational &xi,
                             long index, int basket_size);

} // namespace pqsurf
