#include "pqsurf/basket.hpp"
#include "pqsurf/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

using namespace pqsurf;

TEST_CASE("basket parse and render") {
  auto b = Basket::parse("1/6, 5/6, 2x1/2");
  CHECK(b.str() == "2x1/2,1/6,5/6");
  CHECK(b.size() == 4);
  CHECK(b.max_n() == 6);
  CHECK(Basket::parse("{}").empty());
  CHECK(Basket::parse("").empty());
  CHECK(Basket::parse("5\xC3\x97" "1/5") == Basket::parse("5x1/5"));
  CHECK(Basket::parse("3/5") == Basket::parse("2/5"));
  CHECK_THROWS_AS(Basket::parse("2x"), Error);
  CHECK(Basket::parse("5x1/5").mirror() == Basket::parse("5x4/5"));
}

TEST_CASE("basket_invariants examples") {
  auto e = basket_invariants(Basket{});
  CHECK(e.l == 0);
  CHECK(e.gamma == 0);
  CHECK(e.mu == 0);
  CHECK(e.index == 1);

  auto a = basket_invariants(Basket::parse("1/6,5/6,2x1/2"));
  CHECK(a.l == 8);
  CHECK(a.gamma == 0);
  CHECK(a.mu == make_rational(8, 3));
  CHECK(a.index == 3);
  CHECK(8 * 1 - 2 * a.gamma - a.l == 0);

  auto g = basket_invariants(Basket::parse("5x1/5"));
  CHECK(g.l == 5);
  CHECK(g.gamma == 2);
  CHECK(g.mu == 4);
  CHECK(g.index == 5);
}

TEST_CASE("basket_admissible examples") {
  auto a = basket_admissible(Basket::parse("2x1/2"));
  CHECK(a.admissible);
  REQUIRE(a.witness.first.size() == 1);
  CHECK(a.witness.first[0] == std::vector<Rational>{make_rational(1, 2), make_rational(1, 2)});
  CHECK_FALSE(basket_admissible(Basket::parse("1/5,2/5")).admissible);
  CHECK(basket_admissible(Basket::parse("1/6,5/6,2x1/2")).admissible);
  CHECK(basket_admissible(Basket{}).admissible);
}

TEST_CASE("witness parts sum to positive integers") {
  for (auto text : {"1/6,5/6,2x1/2", "5x1/5,4x2/5", "5x1/5", "3x1/7,6x2/7", "4x1/2,4x1/4"}) {
    auto a = basket_admissible(Basket::parse(text));
    REQUIRE(a.admissible);
    for (const auto *side : {&a.witness.first, &a.witness.second})
      for (const auto &part : *side) {
        Rational s = 0;
        for (const auto &x : part)
          s += x;
        CHECK(is_positive_integer(s));
      }
  }
}

TEST_CASE("enumerate_baskets example") {
  auto got = enumerate_baskets(1, 0, 2);
  std::vector<Basket> want{Basket{}, Basket::parse("2x1/2"), Basket::parse("4x1/2"),
                           Basket::parse("6x1/2")};
  CHECK(got == want);
}

TEST_CASE("enumerated baskets satisfy the bounds and are mirror closed") {
  for (int gamma : {0, 1, 2}) {
    auto list = enumerate_baskets(1, gamma, 6);
    std::set<Basket> seen(list.begin(), list.end());
    CHECK(seen.size() == list.size());
    auto bounds = basket_bounds(1, gamma);
    for (const auto &b : list) {
      auto inv = basket_invariants(b);
      CHECK(inv.gamma == gamma);
      CHECK(b.size() <= bounds.max_points);
      CHECK(inv.mu <= bounds.max_mu);
      CHECK(basket_admissible(b, false).admissible);
      if (gamma == 0)
        CHECK(seen.count(b.mirror()) == 1);
    }
  }
}

TEST_CASE("enumeration agrees with a naive filter on small inputs") {
  // all multisets of types with n <= 4 and at most 6 points, filtered directly
  std::vector<SingularityType> types;
  for (int n = 2; n <= 4; ++n)
    for (int q = 1; q < n; ++q)
      if (std::gcd(q, n) == 1 && q <= mod_inverse(q, n))
        types.emplace_back(q, n);
  std::set<Basket> naive;
  std::vector<int> mult(types.size(), 0);
  auto rec = [&](auto &&self, std::size_t i, int left) -> void {
    if (i == types.size()) {
      Basket b;
      for (std::size_t k = 0; k < types.size(); ++k)
        if (mult[k])
          b.add(types[k], mult[k]);
      auto inv = basket_invariants(b);
      auto bounds = basket_bounds(1, 0);
      if (inv.gamma == 0 && inv.mu <= bounds.max_mu && b.size() <= bounds.max_points &&
          basket_admissible(b, false).admissible)
        naive.insert(b);
      return;
    }
    for (int m = 0; m <= left; ++m) {
      mult[i] = m;
      self(self, i + 1, left - m);
    }
    mult[i] = 0;
  };
  rec(rec, 0, 6);
  std::set<Basket> fast;
  for (auto &b : enumerate_baskets(1, 0, 4))
    if (b.size() <= 6)
      fast.insert(b);
  CHECK(fast == naive);
}

TEST_CASE("basket_bounds") {
  auto b = basket_bounds(1, 0);
  CHECK(b.max_points == 7);
  CHECK(b.max_mu == make_rational(7, 2));
}

TEST_CASE("enumerate_baskets further examples") {
  auto g2 = enumerate_baskets(1, 2, 5);
  CHECK(std::find(g2.begin(), g2.end(), Basket::parse("5x1/5")) != g2.end());
  CHECK(std::find(g2.begin(), g2.end(), Basket::parse("5x1/5,4x2/5")) != g2.end());
  auto g0 = enumerate_baskets(1, 0, 2);
  CHECK(std::find(g0.begin(), g0.end(), Basket::parse("8x1/2")) == g0.end());
}

TEST_CASE("property: mirror of (chi, gamma) baskets are the (chi + gamma, -gamma) baskets") {
  for (auto [chi, gamma] : {std::pair{1, 1}, std::pair{1, 2}}) {
    auto a = enumerate_baskets(chi, gamma, 4);
    auto b = enumerate_baskets(chi + gamma, -gamma, 4);
    std::set<Basket> mirrored;
    for (auto &x : a)
      mirrored.insert(x.mirror());
    CHECK(mirrored == std::set<Basket>(b.begin(), b.end()));
  }
}

TEST_CASE("property: point count at most twice mu, mirror negates gamma") {
  for (auto &b : enumerate_baskets(1, 1, 6)) {
    auto inv = basket_invariants(b);
    CHECK(b.size() <= 2 * inv.mu);
    auto m = basket_invariants(b.mirror());
    CHECK(m.gamma == -inv.gamma);
    CHECK(m.mu == inv.mu);
  }
}
