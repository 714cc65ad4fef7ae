#include "pqsurf/error.hpp"
#include "pqsurf/group.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

using namespace pqsurf;

namespace {

void check_group_law(const FiniteGroup &G) {
  const int N = G.order();
  for (int a = 0; a < N; ++a) {
    REQUIRE(G.mul(0, a) == a);
    REQUIRE(G.mul(a, 0) == a);
    REQUIRE(G.mul(a, G.inv(a)) == 0);
    REQUIRE(G.mul(G.inv(a), a) == 0);
  }
  if (N <= 128) {
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < N; ++c)
          REQUIRE(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick(0, N - 1);
    for (int i = 0; i < 10000; ++i) {
      int a = pick(rng), b = pick(rng), c = pick(rng);
      REQUIRE(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
    }
  }
  // permutation realization agrees with the table, left factor applied first
  for (int a = 0; a < std::min(N, 40); ++a)
    for (int b = 0; b < std::min(N, 40); ++b) {
      const auto &pa = G.permutation(a), &pb = G.permutation(b);
      Permutation ab(pa.size());
      for (std::size_t x = 0; x < pa.size(); ++x)
        ab[x] = pb[pa[x]];
      REQUIRE(G.find(ab) == G.mul(a, b));
    }
}

GroupCatalog parse(const std::string &text) {
  std::istringstream in(text);
  return parse_catalog(in);
}

ErrorKind kind_of(const std::string &text) {
  try {
    parse(text);
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

} // namespace

TEST_CASE("group_from_permutations examples") {
  auto T = FiniteGroup::from_permutations({}, 1, 10);
  CHECK(T.order() == 1);
  auto C5 = FiniteGroup::from_permutations({{1, 2, 3, 4, 0}}, 5, 10);
  CHECK(C5.order() == 5);
  CHECK(C5.is_abelian());
  auto S3 = FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}, 3, 10);
  CHECK(S3.order() == 6);
  CHECK_FALSE(S3.is_abelian());
  CHECK_THROWS_AS(FiniteGroup::from_permutations({{1, 1, 2}}, 3, 10), Error);
  try {
    symmetric_group(4).order();
    FiniteGroup::from_permutations({{1, 0, 2, 3}, {1, 2, 3, 0}}, 4, 10);
    FAIL("expected OrderLimitExceeded");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::OrderLimitExceeded);
  }
}

TEST_CASE("single generator numbering") {
  auto C7 = cyclic_group(7);
  for (int k = 0; k < 7; ++k)
    CHECK(C7.pow(1, k) == k);
  CHECK(C7.element_order(3) == 7);
}

TEST_CASE("built-in groups satisfy the group law") {
  for (const auto &G : {cyclic_group(12), abelian_group({5, 5}), abelian_group({2, 4}),
                        dihedral_group(6), symmetric_group(4), alternating_group(5),
                        symmetric_group(5)})
    check_group_law(G);
  CHECK(alternating_group(5).order() == 60);
  CHECK(symmetric_group(5).order() == 120);
  CHECK(dihedral_group(6).order() == 12);
}

TEST_CASE("cyclic_subgroups examples") {
  auto c5 = cyclic_subgroups(cyclic_group(5));
  REQUIRE(c5.size() == 1);
  CHECK(c5[0].second == 5);
  auto e25 = cyclic_subgroups(abelian_group({5, 5}));
  CHECK(e25.size() == 6);
  for (auto &s : e25)
    CHECK(s.second == 5);
  auto s3 = cyclic_subgroups(symmetric_group(3));
  std::map<int, int> count;
  for (auto &s : s3)
    ++count[s.second];
  CHECK(count == std::map<int, int>{{2, 3}, {3, 1}});
}

TEST_CASE("subgroup_generated examples") {
  auto C5 = cyclic_group(5);
  CHECK(subgroup_generated(C5, {}) == std::vector<int>{0});
  CHECK(subgroup_generated(C5, {3}).size() == 5);
  auto E = abelian_group({5, 5});
  CHECK(subgroup_generated(E, {E.generator_index(0), E.generator_index(1)}).size() == 25);
  CHECK(generates(E, {E.generator_index(0), E.generator_index(1)}));
  CHECK_FALSE(generates(E, {E.generator_index(0)}));
}

TEST_CASE("structure queries") {
  CHECK(abelian_group({2, 6}).abelian_invariants() == std::vector<int>{2, 6});
  CHECK(abelian_group({4, 6}).abelian_invariants() == std::vector<int>{2, 12});
  CHECK(cyclic_group(1).abelian_invariants().empty());
  CHECK(symmetric_group(3).conjugacy_classes().size() == 3);
  CHECK(symmetric_group(4).conjugacy_classes().size() == 5);
  auto aut = abelian_group({5, 5}).automorphisms(1'000'000);
  REQUIRE(aut.has_value());
  CHECK(aut->size() == 480);
  CHECK(symmetric_group(4).automorphisms(1'000'000)->size() == 24);
  CHECK(cyclic_group(12).automorphisms(1'000'000)->size() == 4);
  CHECK(dihedral_group(4).inner_automorphisms().size() == 4);
  CHECK(abelian_invariant_lists(8).size() == 3);
  CHECK(all_groups_abelian(25));
  CHECK(all_groups_abelian(15));
  CHECK_FALSE(all_groups_abelian(6));
  CHECK_FALSE(all_groups_abelian(8));
}

TEST_CASE("automorphisms respect the group law") {
  auto G = dihedral_group(5);
  auto aut = G.automorphisms(1'000'000);
  REQUIRE(aut.has_value());
  CHECK(aut->size() == 20);
  for (const auto &f : *aut)
    for (int a = 0; a < G.order(); ++a)
      for (int b = 0; b < G.order(); ++b)
        REQUIRE(f[G.mul(a, b)] == G.mul(f[a], f[b]));
}

TEST_CASE("catalog parsing examples") {
  auto one = parse("GROUP 5.1 PERMDEG 5\nGEN 1 2 3 4 0\nEND\n");
  CHECK(one.groups().size() == 1);
  REQUIRE(one.get("5.1") != nullptr);
  CHECK(one.get("5.1")->order() == 5);
  CHECK(one.get("5.1")->catalog_id() == std::optional<std::string>("5.1"));

  CHECK(kind_of("GROUP 8.1 PERMDEG 4\nGEN 1 2 3 0\nEND\n") == ErrorKind::OrderMismatch);
  CHECK(kind_of("GROUP 25.2 PERMDEG 10\nGEN 0 1 2 3 4 6 7 8 9 5\nGEN 1 2 3 4 0 5 6 7 8 9\nEND\n"
                "GROUP 25.2 PERMDEG 10\nGEN 0 1 2 3 4 6 7 8 9 5\nGEN 1 2 3 4 0 5 6 7 8 9\nEND\n") ==
        ErrorKind::DuplicateId);
  CHECK(kind_of("GROUP 5.1 PERMDEG 5\nGEN 1 2 3 4 0\n") == ErrorKind::ParseError);
  CHECK(kind_of("GROUP 5 PERMDEG 5\nEND\n") == ErrorKind::ParseError);
  CHECK(kind_of("GROUP 5.1 PERMDEG 5\nGEN 1 2 3 4\nEND\n") == ErrorKind::ParseError);
  CHECK(kind_of("FOO\n") == ErrorKind::ParseError);
  CHECK_THROWS_WITH(parse("# c\n\nGROUP 5.1 PERMDEG 5\nGEN 1 1 3 4 0\nEND\n"),
                    doctest::Contains("catalog line 4"));
}

TEST_CASE("shipped catalog round-trips bit-exactly") {
  auto cat = load_catalog(std::string(PQSURF_DATA_DIR) + "/catalog.txt");
  CHECK(cat.groups().size() >= 100);
  CHECK(cat.order_complete(16));
  CHECK(cat.groups_of_order(16).size() == 14);
  auto text = dump_catalog(cat);
  auto again = parse(text);
  CHECK(again.digest() == cat.digest());
  CHECK(dump_catalog(again) == text);
  for (const auto &[id, G] : cat.groups()) {
    CHECK(G.order() == parse_group_id(id).first);
    if (G.order() <= 32)
      check_group_law(G);
  }
}

TEST_CASE("parse_group_id") {
  CHECK(parse_group_id("192.955") == std::pair<long, long>{192, 955});
  CHECK_THROWS_AS(parse_group_id("192"), Error);
  CHECK_THROWS_AS(parse_group_id("a.b"), Error);
}
