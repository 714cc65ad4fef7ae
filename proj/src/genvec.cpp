#include "pqsurf/genvec.hpp"

#include "pqsurf/error.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

namespace pqsurf {

std::string GeneratingVector::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i)
      out += ",";
    out += std::to_string(elements[i]);
  }
  return out + "]";
}

std::vector<int> period_sequence(const FiniteGroup &G, const std::vector<int> &v) {
  std::vector<int> out;
  out.reserve(v.size());
  for (int x : v)
    out.push_back(G.element_order(x));
  return out;
}

bool is_generating_vector(const FiniteGroup &G, const GeneratingVector &v) {
  if (v.signature.g0() != 0 || v.elements.size() != v.signature.periods().size())
    return false;
  int prod = 0;
  for (std::size_t i = 0; i < v.elements.size(); ++i) {
    int x = v.elements[i];
    if (x < 0 || x >= G.order() || G.element_order(x) != v.signature.periods()[i])
      return false;
    prod = G.mul(prod, x);
  }
  return prod == 0 && generates(G, v.elements);
}

namespace {

class VectorSearch {
public:
  VectorSearch(const FiniteGroup &G, const Signature &s, long budget)
      : G_(G), periods_(s.periods()), budget_(budget) {
    for (int m : periods_) {
      auto &list = by_order_[m];
      if (!list.empty())
        continue;
      for (int x = 0; x < G.order(); ++x)
        if (G.element_order(x) == m)
          list.push_back(x);
    }
  }

  // Vectors whose first entry is v1, appended to out. Returns false past budget.
  bool run(int v1, std::vector<std::vector<int>> &out) const {
    const std::size_t r = periods_.size();
    Frame frame(G_.order(), r);
    frame.cur.push_back(v1);
    frame.size[1] = close(frame, 1, v1);
    return extend(frame, G_.mul(0, v1), out);
  }

private:
  // in[k] is the subgroup generated by the first k entries.
  struct Frame {
    Frame(int order, std::size_t r) : in(r + 1, std::vector<char>(order, 0)), size(r + 1, 1) {
      in[0][0] = 1;
    }
    std::vector<int> cur;
    std::vector<std::vector<char>> in;
    std::vector<int> size;
    std::vector<int> queue;
    long nodes = 0;
  };

  // Fills in[k] = <in[k-1], x>; returns its order.
  int close(Frame &f, std::size_t k, int x) const {
    const auto &prev = f.in[k - 1];
    auto &next = f.in[k];
    if (prev[x]) {
      next = prev;
      return f.size[k - 1];
    }
    std::fill(next.begin(), next.end(), 0);
    f.queue.assign(1, 0);
    next[0] = 1;
    for (std::size_t h = 0; h < f.queue.size(); ++h) {
      const int y = f.queue[h];
      for (std::size_t i = 0; i < k; ++i) {
        int z = G_.mul(y, f.cur[i]);
        if (!next[z]) {
          next[z] = 1;
          f.queue.push_back(z);
        }
      }
    }
    return static_cast<int>(f.queue.size());
  }

  bool extend(Frame &f, int prod, std::vector<std::vector<int>> &out) const {
    if (budget_ > 0 && ++f.nodes > budget_)
      return false;
    const std::size_t r = periods_.size();
    const std::size_t k = f.cur.size();
    if (k + 1 == r) {
      int last = G_.inv(prod);
      if (G_.element_order(last) != periods_.back() || f.size[k] != G_.order())
        return true;
      f.cur.push_back(last);
      out.push_back(f.cur);
      f.cur.pop_back();
      return true;
    }
    const bool last_choice = k + 2 == r;
    for (int x : by_order_.at(periods_[k])) {
      const int p = G_.mul(prod, x);
      if (last_choice && G_.element_order(G_.inv(p)) != periods_.back())
        continue;
      f.cur.push_back(x);
      f.size[k + 1] = close(f, k + 1, x);
      bool ok = extend(f, p, out);
      f.cur.pop_back();
      if (!ok)
        return false;
    }
    return true;
  }

  const FiniteGroup &G_;
  std::vector<int> periods_;
  std::map<int, std::vector<int>> by_order_;
  long budget_;
};

} // namespace

std::optional<std::vector<GeneratingVector>>
search_spherical_vectors(const FiniteGroup &G, const Signature &s, long node_budget, int threads) {
  if (s.g0() != 0)
    throw Error(ErrorKind::InvalidArgument, "only spherical signatures (g0 = 0) are searched");
  const auto &periods = s.periods();
  if (periods.empty()) {
    if (G.order() == 1)
      return std::vector<GeneratingVector>{GeneratingVector{s, {}}};
    return std::vector<GeneratingVector>{};
  }
  if (periods.size() == 1) {
    // a single entry must be the identity
    if (periods[0] == 1 && G.order() == 1)
      return std::vector<GeneratingVector>{GeneratingVector{s, {0}}};
    return std::vector<GeneratingVector>{};
  }

  // First entries: conjugacy-class representatives of the right order.
  std::vector<int> firsts;
  for (const auto &cls : G.conjugacy_classes())
    if (G.element_order(cls.front()) == periods[0])
      firsts.push_back(cls.front());

  // the node budget applies to each first entry separately
  VectorSearch search(G, s, node_budget);
  std::vector<std::vector<std::vector<int>>> found(firsts.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> over{false};
  auto worker = [&] {
    for (std::size_t k = next++; k < firsts.size() && !over; k = next++)
      if (!search.run(firsts[k], found[k]))
        over = true;
  };
  threads = std::max(1, std::min<int>(threads, static_cast<int>(firsts.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(worker);
    for (auto &t : pool)
      t.join();
  }
  if (over)
    return std::nullopt;

  // Re-expand by conjugation.
  std::set<std::vector<int>> all;
  for (const auto &bucket : found)
    for (const auto &v : bucket)
      for (int g = 0; g < G.order(); ++g) {
        std::vector<int> w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
          w[i] = G.conjugate(v[i], g);
        all.insert(std::move(w));
      }
  std::vector<GeneratingVector> out;
  out.reserve(all.size());
  for (const auto &v : all)
    out.push_back(GeneratingVector{s, v});
  return out;
}

std::vector<GeneratingVector> search_spherical_vectors(const FiniteGroup &G, const Signature &s,
                                                       int threads) {
  return *search_spherical_vectors(G, s, 0, threads);
}

std::vector<int> braid_move(const FiniteGroup &G, const std::vector<int> &v, std::size_t i) {
  std::vector<int> w = v;
  w[i] = G.conjugate(v[i + 1], v[i]);
  w[i + 1] = v[i];
  return w;
}

std::vector<int> braid_move_inverse(const FiniteGroup &G, const std::vector<int> &v,
                                    std::size_t i) {
  std::vector<int> w = v;
  w[i] = v[i + 1];
  w[i + 1] = G.conjugate(v[i], G.inv(v[i + 1]));
  return w;
}

const HurwitzCanonicalizer::Orbit &HurwitzCanonicalizer::orbit(const GeneratingVector &v) {
  if (auto it = index_.find(v.elements); it != index_.end())
    return orbits_[it->second];
  const auto &target = v.signature.periods();
  std::set<std::vector<int>> seen{v.elements};
  std::vector<std::vector<int>> queue{v.elements};
  std::vector<int> conj_by;
  for (std::size_t k = 0; k < G_.generators().size(); ++k)
    conj_by.push_back(G_.generator_index(k));
  Orbit orb;
  orb.least = v;
  std::vector<const std::vector<int> *> sorted_members;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    std::vector<int> cur = queue[h];
    auto visit = [&](std::vector<int> w) {
      if (seen.insert(w).second)
        queue.push_back(std::move(w));
    };
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      visit(braid_move(G_, cur, i));
      visit(braid_move_inverse(G_, cur, i));
    }
    for (int g : conj_by) {
      std::vector<int> w(cur.size());
      for (std::size_t i = 0; i < cur.size(); ++i)
        w[i] = G_.conjugate(cur[i], g);
      visit(std::move(w));
    }
  }
  const std::size_t id = orbits_.size();
  for (const auto &w : seen) {
    if (period_sequence(G_, w) != target)
      continue;
    if (orb.size == 0 || w < orb.least.elements)
      orb.least.elements = w;
    ++orb.size;
    index_.emplace(w, id);
  }
  orbits_.push_back(std::move(orb));
  return orbits_.back();
}

const GeneratingVector &HurwitzCanonicalizer::canonical(const GeneratingVector &v) {
  return orbit(v).least;
}

std::size_t HurwitzCanonicalizer::orbit_size(const GeneratingVector &v) {
  return orbit(v).size;
}

std::vector<GeneratingVector> hurwitz_classes(const FiniteGroup &G,
                                              const std::vector<GeneratingVector> &vectors) {
  HurwitzCanonicalizer canon(G);
  std::set<GeneratingVector> reps;
  for (const auto &v : vectors)
    reps.insert(canon.canonical(v));
  return {reps.begin(), reps.end()};
}

std::vector<std::vector<int>> automorphism_generators(const std::vector<std::vector<int>> &autos) {
  std::vector<std::vector<int>> gens;
  if (autos.empty())
    return gens;
  const std::size_t n = autos.front().size();
  std::set<std::vector<int>> closure;
  std::vector<int> id(n);
  for (std::size_t i = 0; i < n; ++i)
    id[i] = static_cast<int>(i);
  closure.insert(id);
  for (const auto &phi : autos) {
    if (closure.size() >= autos.size())
      break;
    if (closure.count(phi))
      continue;
    gens.push_back(phi);
    std::vector<std::vector<int>> queue(closure.begin(), closure.end());
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (const auto &g : gens) {
        std::vector<int> c(n);
        for (std::size_t i = 0; i < n; ++i)
          c[i] = g[queue[h][i]];
        if (closure.insert(c).second)
          queue.push_back(std::move(c));
      }
  }
  return gens;
}

std::vector<VectorPair> hurwitz_reduce(HurwitzCanonicalizer &canon,
                                       const std::vector<std::vector<int>> &automorphisms,
                                       const std::vector<VectorPair> &pairs) {
  const auto gens = automorphism_generators(automorphisms);
  auto apply = [](const std::vector<int> &phi, const GeneratingVector &v) {
    GeneratingVector w = v;
    for (int &x : w.elements)
      x = phi[x];
    return w;
  };
  std::set<VectorPair> seen;
  std::set<VectorPair> reps;
  for (const auto &p : pairs) {
    VectorPair start{canon.canonical(p.first), canon.canonical(p.second)};
    if (seen.count(start))
      continue;
    // orbit under the automorphism generators and the swap
    const bool swappable = p.first.signature == p.second.signature;
    std::vector<VectorPair> queue{start};
    seen.insert(start);
    VectorPair least = start;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const VectorPair cur = queue[h];
      if (cur < least)
        least = cur;
      auto visit = [&](VectorPair next) {
        if (seen.insert(next).second)
          queue.push_back(std::move(next));
      };
      for (const auto &phi : gens)
        visit(VectorPair{canon.canonical(apply(phi, cur.first)),
                         canon.canonical(apply(phi, cur.second))});
      if (swappable)
        visit(VectorPair{cur.second, cur.first});
    }
    reps.insert(least);
  }
  return {reps.begin(), reps.end()};
}

HurwitzReduction hurwitz_reduce(const FiniteGroup &G, const std::vector<VectorPair> &pairs,
                                const HurwitzOptions &options) {
  HurwitzReduction out;
  std::vector<std::vector<int>> autos;
  if (options.use_full_aut) {
    if (auto full = G.automorphisms(options.aut_budget))
      autos = std::move(*full);
  }
  if (autos.empty()) {
    autos = G.inner_automorphisms();
    out.coarse = true;
  }
  HurwitzCanonicalizer canon(G);
  out.representatives = hurwitz_reduce(canon, autos, pairs);
  return out;
}

} // namespace pqsurf
