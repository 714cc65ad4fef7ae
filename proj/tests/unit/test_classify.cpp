#include "pqsurf/classify.hpp"
#include "pqsurf/serialize.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>

using namespace pqsurf;

namespace {

ClassifyOptions only_orders(std::set<long> orders, bool builtin = true) {
  ClassifyOptions o;
  o.orders = std::move(orders);
  o.builtin_abelian = builtin;
  return o;
}

TableRow row(std::string K2, std::string basket, std::string t1, std::string t2, std::string g,
             int gamma = 0) {
  TableRow r;
  r.table = "test";
  r.gamma = gamma;
  r.K2 = std::move(K2);
  r.basket = std::move(basket);
  r.t1 = std::move(t1);
  r.t2 = std::move(t2);
  r.group = std::move(g);
  return r;
}

} // namespace

TEST_CASE("existing_surfaces: gamma 2 over orders 5 and 25") {
  auto rep = existing_surfaces(0, 2, 5, GroupCatalog{}, only_orders({5, 25}));
  std::map<std::pair<long, std::string>, int> rows;
  for (const auto &c : rep.surfaces) {
    const auto &s = c.surface;
    CHECK(s.v1.signature == Signature(0, {5, 5, 5}));
    CHECK(s.v2.signature == Signature(0, {5, 5, 5}));
    ++rows[{s.group->order(), s.basket.str() + " K2=" + to_string(s.invariants.K2)}];
  }
  std::map<std::pair<long, std::string>, int> want{{{5, "5x1/5,4x2/5 K2=-9"}, 1},
                                                   {{25, "5x1/5 K2=-1"}, 2}};
  CHECK(rows == want);
  CHECK(rep.skipped.empty());
}

TEST_CASE("existing_surfaces: empty catalog only records skips") {
  auto rep = existing_surfaces(0, 0, 2, GroupCatalog{});
  CHECK(rep.surfaces.empty());
  CHECK(!rep.skipped.empty());
  CHECK(static_cast<long>(rep.skipped.size()) == rep.triples);
  for (const auto &s : rep.skipped)
    CHECK(s.reason == "no-catalog-group");
}

TEST_CASE("candidate triples carry their baskets") {
  long count = 0;
  std::set<long> orders{5, 25};
  auto triples = candidate_triples(0, 2, 5, &count, &orders);
  CHECK(count == 28);
  CHECK(triples.size() == 4);
  for (const auto &t : triples) {
    CHECK(orders.count(t.order) == 1);
    CHECK(!t.baskets.empty());
    CHECK(t.t1 <= t.t2);
  }
}

TEST_CASE("verify_table_row examples") {
  auto a = verify_table_row(row("0", "1/6,5/6,2x1/2", "2,4,6", "2,4,6", "192.955"));
  CHECK(a.pass);
  CHECK(a.order == 192);
  auto b = verify_table_row(row("-2", "4x1/2,4x1/4", "4,4,4", "4,4,4", "16.2", 1));
  CHECK(b.pass);
  CHECK(b.order == 16);
  auto c = verify_table_row(row("-13", "5x1/7,4x3/7,5x1/6", "7,7,7", "7,7,7", "7.1", 3));
  CHECK_FALSE(c.pass);
  bool divisibility = false, gamma_sum = false;
  for (const auto &issue : c.issues) {
    divisibility |= issue.find("6 divides no period") != std::string::npos;
    gamma_sum |= issue.find("gamma") != std::string::npos;
  }
  CHECK(divisibility);
  CHECK(gamma_sum);
}

TEST_CASE("shipped table fixtures behave as annotated") {
  auto rows = load_table_fixtures(std::string(PQSURF_DATA_DIR) + "/tables.csv");
  int k2lt1 = 0, gamma1 = 0;
  for (const auto &r : rows) {
    auto d = verify_table_row(r);
    CHECK_MESSAGE(d.pass == (r.expected == "pass"), "line " << r.line);
    k2lt1 += r.table == "K2<1";
    gamma1 += r.table == "gamma1";
  }
  CHECK(k2lt1 == 10);
  CHECK(gamma1 == 14);
}

TEST_CASE("split_csv_line") {
  CHECK(split_csv_line("a,\"b,c\",d") == std::vector<std::string>{"a", "b,c", "d"});
  CHECK(split_csv_line("") == std::vector<std::string>{""});
  CHECK(split_csv_line("x,") == std::vector<std::string>{"x", ""});
}

TEST_CASE("report serialization round-trips surfaces") {
  auto rep = existing_surfaces(0, 2, 5, GroupCatalog{}, only_orders({5, 25}));
  auto j = report_to_json(rep, true);
  CHECK(!j.contains("timing"));
  auto back = surfaces_from_document(j);
  REQUIRE(back.size() == rep.surfaces.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].basket == rep.surfaces[i].surface.basket);
    CHECK(back[i].invariants == rep.surfaces[i].surface.invariants);
    CHECK(back[i].v1 == rep.surfaces[i].surface.v1);
  }
  // a doctored K2 is caught on load
  auto bad = j["surfaces"][0];
  bad["K2"] = "5";
  CHECK_THROWS(surface_from_json(bad));
  CHECK(report_to_json(rep, true).dump() == j.dump());
}

TEST_CASE("cache keys separate parameters") {
  auto a = cache_key(0, 2, 5, "abc", "x");
  CHECK(a == cache_key(0, 2, 5, "abc", "x"));
  CHECK(a != cache_key(0, 2, 6, "abc", "x"));
  CHECK(a != cache_key(0, 2, 5, "abd", "x"));
  CHECK(a != cache_key(0, 2, 5, "abc", "y"));
}
