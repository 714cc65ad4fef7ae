#include "pqsurf/genvec.hpp"

#include <doctest.h>

#include <set>

using namespace pqsurf;

namespace {

std::vector<VectorPair> diagonal(const std::vector<GeneratingVector> &vs) {
  std::vector<VectorPair> out;
  for (const auto &v : vs)
    out.push_back({v, v});
  return out;
}

} // namespace

TEST_CASE("search_spherical_vectors examples") {
  auto C5 = cyclic_group(5);
  auto v = search_spherical_vectors(C5, Signature(0, {5, 5, 5}));
  CHECK(v.size() == 12);
  for (const auto &x : v)
    CHECK(is_generating_vector(C5, x));
  CHECK(search_spherical_vectors(C5, Signature(0, {2, 5, 5})).empty());
  auto S3 = symmetric_group(3);
  auto w = search_spherical_vectors(S3, Signature(0, {2, 2, 3}));
  CHECK(w.size() == 6);
}

TEST_CASE("vector search matches brute force") {
  for (const auto &[G, s] :
       {std::pair{dihedral_group(4), Signature(0, {2, 2, 2, 2})},
        std::pair{symmetric_group(4), Signature(0, {2, 3, 4})},
        std::pair{abelian_group({2, 4}), Signature(0, {2, 4, 4})},
        std::pair{alternating_group(4), Signature(0, {3, 3, 3})}}) {
    std::set<std::vector<int>> naive;
    const int N = G.order();
    const std::size_t r = s.periods().size();
    std::vector<int> cur;
    auto rec = [&](auto &&self) -> void {
      if (cur.size() == r) {
        GeneratingVector v{s, cur};
        if (is_generating_vector(G, v))
          naive.insert(cur);
        return;
      }
      for (int x = 0; x < N; ++x) {
        cur.push_back(x);
        self(self);
        cur.pop_back();
      }
    };
    rec(rec);
    std::set<std::vector<int>> fast;
    for (auto &v : search_spherical_vectors(G, s, 2))
      fast.insert(v.elements);
    CHECK(fast == naive);
  }
}

TEST_CASE("node budget gives up") {
  auto r = search_spherical_vectors(symmetric_group(5), Signature(0, {2, 2, 2, 2, 2, 2}), 10, 1);
  CHECK_FALSE(r.has_value());
  auto ok = search_spherical_vectors(cyclic_group(5), Signature(0, {5, 5, 5}), 1000, 1);
  REQUIRE(ok.has_value());
  CHECK(ok->size() == 12);
}

TEST_CASE("braid moves preserve generating vectors and invert each other") {
  auto G = symmetric_group(4);
  auto vs = search_spherical_vectors(G, Signature(0, {2, 2, 2, 3}));
  REQUIRE(!vs.empty());
  for (std::size_t k = 0; k < vs.size(); k += 7) {
    const auto &v = vs[k].elements;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      auto w = braid_move(G, v, i);
      CHECK(braid_move_inverse(G, w, i) == v);
      int p = 0;
      for (int x : w)
        p = G.mul(p, x);
      CHECK(p == 0);
      CHECK(generates(G, w));
    }
  }
}

TEST_CASE("hurwitz_reduce examples") {
  auto C5 = cyclic_group(5);
  auto vs = search_spherical_vectors(C5, Signature(0, {5, 5, 5}));
  auto inner = hurwitz_reduce(C5, diagonal(vs), {false, 1'000'000});
  CHECK(inner.representatives.size() == 4);
  std::set<std::multiset<int>> kinds;
  for (auto &p : inner.representatives)
    kinds.insert(std::multiset<int>(p.first.elements.begin(), p.first.elements.end()));
  CHECK(kinds == std::set<std::multiset<int>>{{1, 1, 3}, {1, 2, 2}, {3, 3, 4}, {2, 4, 4}});
  auto full = hurwitz_reduce(C5, diagonal(vs), {true, 1'000'000});
  CHECK(full.representatives.size() == 1);
  CHECK_FALSE(full.coarse);

  auto S3 = symmetric_group(3);
  auto ws = search_spherical_vectors(S3, Signature(0, {2, 2, 3}));
  CHECK(hurwitz_classes(S3, ws).size() == 1);
  CHECK(hurwitz_reduce(S3, diagonal(ws)).representatives.size() == 1);
}

TEST_CASE("tiny aut budget falls back to inner automorphisms") {
  auto C5 = cyclic_group(5);
  auto vs = search_spherical_vectors(C5, Signature(0, {5, 5, 5}));
  auto r = hurwitz_reduce(C5, diagonal(vs), {true, 0});
  CHECK(r.coarse);
  CHECK(r.representatives.size() == 4);
}

TEST_CASE("canonical forms are orbit invariants") {
  auto G = alternating_group(5);
  auto vs = search_spherical_vectors(G, Signature(0, {2, 5, 5}));
  REQUIRE(!vs.empty());
  HurwitzCanonicalizer canon(G);
  for (std::size_t k = 0; k < vs.size(); k += 37) {
    const auto &c = canon.canonical(vs[k]);
    CHECK(period_sequence(G, c.elements) == std::vector<int>{2, 5, 5});
    // conjugate and braid twice, then come back to the same form
    auto w = vs[k].elements;
    for (auto &x : w)
      x = G.conjugate(x, 7);
    w = braid_move(G, braid_move(G, w, 1), 1);
    if (period_sequence(G, w) == std::vector<int>{2, 5, 5})
      CHECK(canon.canonical({vs[k].signature, w}) == c);
  }
  std::size_t total = 0;
  for (const auto &c : hurwitz_classes(G, vs))
    total += canon.orbit_size(c);
  CHECK(total == vs.size());
}
