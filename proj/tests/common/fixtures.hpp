#pragma once

// Small surfaces shared by the unit tests and the acceptance binary.

#include "pqsurf/group.hpp"
#include "pqsurf/surface.hpp"

#include <memory>
#include <vector>

namespace fixtures {

// Element x*g0 + y*g1 of an abelian group with two generators.
inline int element(const pqsurf::FiniteGroup &G, int x, int y) {
  return G.mul(G.pow(G.generator_index(0), x), G.pow(G.generator_index(1), y));
}

inline pqsurf::GeneratingVector vec(std::vector<int> periods, std::vector<int> elements) {
  return {pqsurf::Signature(0, std::move(periods)), std::move(elements)};
}

// Z5^2 with ((1,0),(0,1),(4,4)) and ((1,0),(2,1),(2,4)).
inline pqsurf::ProductQuotientSurface godeaux() {
  auto G = std::make_shared<const pqsurf::FiniteGroup>(pqsurf::abelian_group({5, 5}));
  auto e = [&](int x, int y) { return element(*G, x, y); };
  return pqsurf::make_surface(G, vec({5, 5, 5}, {e(1, 0), e(0, 1), e(4, 4)}),
                              vec({5, 5, 5}, {e(1, 0), e(2, 1), e(2, 4)}));
}

// Z5 with (1,1,3) on both factors.
inline pqsurf::ProductQuotientSurface cyclic5() {
  auto G = std::make_shared<const pqsurf::FiniteGroup>(pqsurf::cyclic_group(5));
  return pqsurf::make_surface(G, vec({5, 5, 5}, {1, 1, 3}), vec({5, 5, 5}, {1, 1, 3}));
}

// Z2 with six copies of the involution on both factors.
inline pqsurf::ProductQuotientSurface cyclic2() {
  auto G = std::make_shared<const pqsurf::FiniteGroup>(pqsurf::cyclic_group(2));
  std::vector<int> six(6, 1);
  return pqsurf::make_surface(G, vec(std::vector<int>(6, 2), six), vec(std::vector<int>(6, 2), six));
}

} // namespace fixtures
