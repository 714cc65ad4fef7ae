#include "pqsurf/signature.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace pqsurf;

namespace {
bool contains(const std::vector<Signature> &v, const Signature &s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}
} // namespace

TEST_CASE("theta examples") {
  CHECK(theta(Signature(0, {2, 4, 6})) == make_rational(1, 12));
  CHECK(theta(Signature(0, {2, 5, 6})) == make_rational(2, 15));
  CHECK(theta(Signature(1, {})) == 0);
  CHECK(theta(Signature(0, {2, 2, 2})) == make_rational(-1, 2));
}

TEST_CASE("curve_genus examples") {
  CHECK(curve_genus(Signature(0, {5, 5, 5}), 25) == 6);
  CHECK(curve_genus(Signature(0, {2, 4, 6}), 192) == 9);
  CHECK(curve_genus(Signature(0, {5, 5, 5}), 5) == 2);
}

TEST_CASE("signature parse and render") {
  auto s = Signature::parse("(0; 6,2,4)");
  CHECK(s.periods() == std::vector<int>{2, 4, 6});
  CHECK(s.str() == "(0; 2,4,6)");
  CHECK(s.short_str() == "2,4,6");
  CHECK(Signature::parse("2,4,6") == s);
  CHECK(Signature::parse("(2,4,6)") == s);
  CHECK(Signature::parse("(1; 2)").short_str() == "(1; 2)");
}

TEST_CASE("enumerate_signatures examples") {
  auto fake = Basket::parse("1/6,5/6,2x1/2");
  auto a = enumerate_signatures(make_rational(4, 3), fake, 0, false);
  CHECK(contains(a, Signature(0, {2, 4, 6})));
  CHECK_FALSE(contains(a, Signature(0, {2, 3, 7})));
  auto b = enumerate_signatures(make_rational(4, 5), Basket::parse("5x1/5,4x2/5"), 0, true);
  CHECK(contains(b, Signature(0, {5, 5, 5})));
}

TEST_CASE("robavecchia_filter examples") {
  auto r1 = robavecchia_filter(Signature(0, {2, 4, 6}), Signature(0, {2, 4, 6}),
                               make_rational(4, 3), 3, 4);
  CHECK(r1.pass);
  CHECK(r1.order == 192);
  auto r2 = robavecchia_filter(Signature(0, {2, 4, 6}), Signature(0, {2, 5, 6}),
                               make_rational(4, 3), 3, 4);
  CHECK(r2.pass);
  CHECK(r2.order == 120);
  auto r3 = robavecchia_filter(Signature(0, {2, 2, 2}), Signature(0, {2, 4, 6}),
                               make_rational(4, 3), 3, 4);
  CHECK_FALSE(r3.pass);
  CHECK_FALSE(r3.order.has_value());
}

TEST_CASE("property: candidates match a naive search over bounded periods") {
  // all spherical signatures with alpha = xi / (2 Theta) a positive integer and
  // periods under the ceiling, r <= 8 and periods <= 42, compared on the part inside that box
  for (auto xi : {make_rational(4, 3), make_rational(4, 5), make_rational(1, 2), Rational(1)}) {
    std::set<Signature> naive;
    std::vector<int> p;
    auto rec = [&](auto &&self, int lo) -> void {
      const long cap = period_ceiling(xi, 0, static_cast<int>(p.size()));
      if (p.size() >= 3 && p.back() <= cap) {
        Signature s(0, p);
        Rational th = theta(s);
        if (sgn(th) > 0) {
          Rational alpha = xi / (2 * th);
          // the largest period is also bounded through the opposite genus alpha + 1
          if (is_positive_integer(alpha) && p.back() <= 4 * alpha + 6)
            naive.insert(s);
        }
      }
      if (p.size() == 8)
        return;
      // once Theta exceeds xi / 2 no extension can give alpha >= 1
      Signature cur(0, p);
      if (p.size() >= 3 && theta(cur) > xi / 2)
        return;
      for (int m = lo; m <= 42; ++m) {
        p.push_back(m);
        self(self, m);
        p.pop_back();
      }
    };
    rec(rec, 2);
    std::set<Signature> fast;
    for (auto &s : signature_candidates(xi, 0)) {
      CHECK(sgn(theta(s)) > 0);
      CHECK(is_positive_integer(xi / (2 * theta(s))));
      if (s.r() <= 8 && s.periods().back() <= 42)
        fast.insert(s);
    }
    std::vector<Signature> missing, extra;
    std::set_difference(naive.begin(), naive.end(), fast.begin(), fast.end(), std::back_inserter(missing));
    std::set_difference(fast.begin(), fast.end(), naive.begin(), naive.end(), std::back_inserter(extra));
    for (auto &s : missing) MESSAGE("missing " << s.str());
    for (auto &s : extra) MESSAGE("extra " << s.str());
    CHECK(fast == naive);
  }
}

TEST_CASE("property: accepted pairs satisfy the genus identity and the Wiman bound") {
  auto basket = Basket::parse("1/6,5/6,2x1/2");
  Rational xi = make_rational(4, 3);
  auto sigs = enumerate_signatures(xi, basket, 0, false);
  REQUIRE(!sigs.empty());
  int passed = 0;
  for (std::size_t i = 0; i < sigs.size(); ++i)
    for (std::size_t j = i; j < sigs.size(); ++j) {
      auto r = robavecchia_filter(sigs[i], sigs[j], xi, 3, basket.size());
      if (!r.pass)
        continue;
      ++passed;
      long order = *r.order;
      CHECK(order * theta(sigs[i]) * theta(sigs[j]) == xi);
      int g1 = curve_genus(sigs[i], order), g2 = curve_genus(sigs[j], order);
      CHECK(g1 >= 2);
      CHECK(g2 >= 2);
      CHECK(Rational(static_cast<long>(g1 - 1) * (g2 - 1)) == order * xi / 4);
      for (int m : sigs[i].periods())
        CHECK(m <= 4 * std::min(g1, g2) + 2);
      for (int m : sigs[j].periods())
        CHECK(m <= 4 * std::min(g1, g2) + 2);
    }
  CHECK(passed > 0);
}
