#include "pqsurf/surface.hpp"

#include "pqsurf/error.hpp"

#include <algorithm>

namespace pqsurf {

namespace {

int cyclic_power_index(const FiniteGroup &G, int gen, int target) {
  int p = 0;
  for (int k = 0; k < G.element_order(gen); ++k) {
    if (p == target)
      return k;
    p = G.mul(p, gen);
  }
  return -1;
}

std::vector<int> powers(const FiniteGroup &G, int x) {
  std::vector<int> out{0};
  for (int p = x; p != 0; p = G.mul(p, x))
    out.push_back(p);
  return out;
}

} // namespace

Basket compute_basket(const FiniteGroup &G, const GeneratingVector &v1,
                      const GeneratingVector &v2) {
  Basket basket;
  const int N = G.order();
  std::vector<char> in_a(N), done(N);
  for (int a : v1.elements) {
    const int m = G.element_order(a);
    const auto A = powers(G, a);
    std::fill(in_a.begin(), in_a.end(), 0);
    for (int x : A)
      in_a[x] = 1;
    for (int b : v2.elements) {
      const int nb = G.element_order(b);
      const auto B = powers(G, b);
      std::fill(done.begin(), done.end(), 0);
      for (int g = 0; g < N; ++g) {
        if (done[g])
          continue;
        for (int x : A)
          for (int y : B)
            done[G.mul(G.mul(x, g), y)] = 1;
        const int c = G.conjugate(b, g);
        int n = 0;
        for (int p = 0, k = 0; k < nb; ++k, p = G.mul(p, c))
          if (in_a[p])
            ++n;
        if (n < 2)
          continue;
        const int h = G.pow(a, m / n);
        const int beta = cyclic_power_index(G, c, h);
        if (beta < 0)
          throw Error(ErrorKind::InconsistentSurface, "stabilizer generator outside conjugate subgroup");
        basket.add(SingularityType(static_cast<int>((static_cast<long>(beta) * n / nb) % n), n));
      }
    }
  }
  return basket;
}

SurfaceInvariants surface_invariants(long order, const Signature &t1, const Signature &t2,
                                     const Basket &basket) {
  SurfaceInvariants s;
  const auto bi = basket_invariants(basket);
  s.l = bi.l;
  s.gamma = bi.gamma;
  s.mu = bi.mu;
  s.index = bi.index;
  const Rational th1 = theta(t1), th2 = theta(t2);
  const Rational g1 = 1 + order * th1 / 2, g2 = 1 + order * th2 / 2;
  if (!is_integer(g1) || !is_integer(g2))
    throw Error(ErrorKind::InconsistentSurface, "curve genus is not an integer");
  s.g1 = static_cast<int>(g1.get_num().get_si());
  s.g2 = static_cast<int>(g2.get_num().get_si());
  if (s.g1 < 2 || s.g2 < 2)
    throw Error(ErrorKind::InconsistentSurface, "curve genus below 2");
  s.q = t1.g0() + t2.g0();
  s.chi = Rational((s.g1 - 1) * static_cast<long>(s.g2 - 1)) / order + (s.mu - 2 * s.gamma) / 4;
  s.chi.canonicalize();
  if (!is_positive_integer(s.chi))
    throw Error(ErrorKind::InconsistentSurface, "chi = " + to_string(s.chi) + " is not a positive integer");
  const long chi = s.chi.get_num().get_si();
  s.pg = static_cast<int>(chi - 1 + s.q);
  s.K2 = 8 * s.chi - 2 * s.gamma - s.l;
  s.e_top = 4 * s.chi + 2 * s.gamma + s.l;
  s.tau = -2 * s.gamma - s.l;
  s.xi = 4 * s.chi + 2 * s.gamma - s.mu;
  const Rational a1 = s.xi / (2 * th1), a2 = s.xi / (2 * th2);
  if (!is_integer(a1) || !is_integer(a2))
    throw Error(ErrorKind::InconsistentSurface, "alpha is not an integer");
  s.alpha1 = a1.get_num().get_si();
  s.alpha2 = a2.get_num().get_si();
  const Rational pg_gamma = s.pg + s.gamma;
  const Rational h2X = 2 * (s.gamma + 2 * s.pg + 1);

  if (s.K2 + s.e_top != 12 * s.chi)
    throw Error(ErrorKind::InconsistentSurface, "Noether identity fails");
  if (!is_integer(s.K2))
    throw Error(ErrorKind::InconsistentSurface, "K^2 is not an integer");
  if (!is_integer(pg_gamma) || sgn(pg_gamma) < 0)
    throw Error(ErrorKind::InconsistentSurface, "pg + gamma is not a nonnegative integer");
  s.h2X = h2X.get_num().get_si();
  if (s.q == 0 && (s.alpha1 != s.g2 - 1 || s.alpha2 != s.g1 - 1))
    throw Error(ErrorKind::InconsistentSurface, "alpha differs from the complementary genus");
  return s;
}

ProductQuotientSurface make_surface(std::shared_ptr<const FiniteGroup> group, GeneratingVector v1,
                                    GeneratingVector v2) {
  if (!is_generating_vector(*group, v1) || !is_generating_vector(*group, v2))
    throw Error(ErrorKind::InvalidArgument, "not a spherical generating vector of the stated signature");
  ProductQuotientSurface s;
  s.basket = compute_basket(*group, v1, v2);
  s.invariants = surface_invariants(group->order(), v1.signature, v2.signature, s.basket);
  s.group = std::move(group);
  s.v1 = std::move(v1);
  s.v2 = std::move(v2);
  return s;
}

GeneratingVector dual_vector(const FiniteGroup &G, const GeneratingVector &v) {
  GeneratingVector out = v;
  auto &e = out.elements;
  std::reverse(e.begin(), e.end());
  for (int &x : e)
    x = G.inv(x);
  // bubble sort by element order; sigma_i swaps the orders of entries i, i+1
  for (std::size_t pass = 0; pass < e.size(); ++pass)
    for (std::size_t i = 0; i + 1 < e.size(); ++i)
      if (G.element_order(e[i]) > G.element_order(e[i + 1]))
        e = braid_move(G, e, i);
  return out;
}

ProductQuotientSurface dual_surface(const ProductQuotientSurface &s) {
  if (s.invariants.q != 0)
    throw Error(ErrorKind::NotRegular, "dual surface needs q = 0");
  const auto &G = *s.group;
  ProductQuotientSurface d = make_surface(s.group, s.v1, dual_vector(G, s.v2));
  d.dedup = s.dedup;
  const auto &a = s.invariants, &b = d.invariants;
  if (b.gamma != -a.gamma || b.mu != a.mu || b.xi != a.xi || b.pg != a.pg + a.gamma ||
      d.basket != s.basket.mirror())
    throw Error(ErrorKind::InconsistentSurface, "dual surface violates the duality identities");
  return d;
}

} // namespace pqsurf
