#pragma once

#include "pqsurf/basket.hpp"
#include "pqsurf/genvec.hpp"
#include "pqsurf/group.hpp"
#include "pqsurf/rational.hpp"

#include <memory>
#include <string>

namespace pqsurf {

/// Singularities of (C1 x C2)/G from the stabilizer double cosets of each
/// pair of branch points. Entries act locally by exp(2 pi i / m).
Basket compute_basket(const FiniteGroup &G, const GeneratingVector &v1, const GeneratingVector &v2);

struct SurfaceInvariants {
  int g1 = 0;
  int g2 = 0;
  int q = 0;
  Rational chi;
  int pg = 0;
  Rational K2;
  Rational e_top;
  Rational tau;
  Rational xi;
  long alpha1 = 0;
  long alpha2 = 0;
  long h2X = 0;
  // basket data
  int l = 0;
  Rational gamma;
  Rational mu;
  long index = 1;

  friend bool operator==(const SurfaceInvariants &, const SurfaceInvariants &) = default;
};

/// Invariants of the minimal resolution; throws InconsistentSurface when a
/// cross-check fails (non-integral or non-positive chi, genus below 2, ...).
SurfaceInvariants surface_invariants(long order, const Signature &t1, const Signature &t2,
                                     const Basket &basket);

struct ProductQuotientSurface {
  std::shared_ptr<const FiniteGroup> group;
  GeneratingVector v1;
  GeneratingVector v2;
  Basket basket;
  SurfaceInvariants invariants;
  /// "full" or "coarse", see hurwitz_reduce.
  std::string dedup = "full";
};

ProductQuotientSurface make_surface(std::shared_ptr<const FiniteGroup> group, GeneratingVector v1,
                                    GeneratingVector v2);

/// Replaces (b1, ..., bt) by (bt^-1, ..., b1^-1), then sorts it back into
/// signature order with braid moves.
GeneratingVector dual_vector(const FiniteGroup &G, const GeneratingVector &v);

/// The surface obtained by dualizing the second vector; throws NotRegular if q != 0
/// and InconsistentSurface if a duality identity fails.
ProductQuotientSurface dual_surface(const ProductQuotientSurface &s);

} // namespace pqsurf
