#include "pqsurf/group.hpp"

#include "pqsurf/error.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace pqsurf {

namespace {

Permutation compose(const Permutation &a, const Permutation &b) {
  Permutation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = b[a[i]];
  return out;
}

void check_permutation(const Permutation &p, int degree) {
  if (static_cast<int>(p.size()) != degree)
    throw Error(ErrorKind::NotAPermutation,
                "generator has " + std::to_string(p.size()) + " images, expected " + std::to_string(degree));
  std::vector<char> seen(degree, 0);
  for (int x : p) {
    if (x < 0 || x >= degree || seen[x])
      throw Error(ErrorKind::NotAPermutation, "generator is not a bijection");
    seen[x] = 1;
  }
}

std::vector<int> prime_factors(long n) {
  std::vector<int> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(static_cast<int>(p));
      while (n % p == 0)
        n /= p;
    }
  }
  if (n > 1)
    out.push_back(static_cast<int>(n));
  return out;
}

} // namespace

FiniteGroup FiniteGroup::from_permutations(const std::vector<Permutation> &gens, int degree,
                                           int max_order) {
  if (degree < 1)
    throw Error(ErrorKind::NotAPermutation, "permutation degree must be positive");
  for (const auto &g : gens)
    check_permutation(g, degree);
  max_order = std::min(max_order, kMaxGroupOrder);

  FiniteGroup G;
  G.degree_ = degree;
  G.generators_ = gens;
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  G.perms_.push_back(id);
  G.index_of_.emplace(id, 0);
  // right[z][k] = z * g_k
  std::vector<std::vector<int>> right;
  for (std::size_t head = 0; head < G.perms_.size(); ++head) {
    right.emplace_back(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Permutation next = compose(G.perms_[head], gens[k]);
      auto [it, inserted] = G.index_of_.emplace(next, static_cast<int>(G.perms_.size()));
      if (inserted) {
        if (static_cast<int>(G.perms_.size()) >= max_order)
          throw Error(ErrorKind::OrderLimitExceeded,
                      "group closure exceeds " + std::to_string(max_order) + " elements");
        G.perms_.push_back(std::move(next));
      }
      right[head][k] = it->second;
    }
  }
  const int n = static_cast<int>(G.perms_.size());
  G.order_ = n;
  for (const auto &g : gens)
    G.generator_index_.push_back(G.index_of_.at(g));

  // BFS tree: every y != 0 is parent[y] * g_{via[y]}.
  std::vector<int> parent(n, -1), via(n, -1), bfs_order{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t head = 0; head < bfs_order.size(); ++head) {
    int z = bfs_order[head];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      int y = right[z][k];
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = z;
        via[y] = static_cast<int>(k);
        bfs_order.push_back(y);
      }
    }
  }
  G.table_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int x = 0; x < n; ++x) {
    auto row = G.table_.begin() + static_cast<std::ptrdiff_t>(x) * n;
    row[0] = static_cast<std::uint16_t>(x);
    for (std::size_t h = 1; h < bfs_order.size(); ++h) {
      int y = bfs_order[h];
      row[y] = static_cast<std::uint16_t>(right[row[parent[y]]][via[y]]);
    }
  }
  G.inverse_.assign(n, 0);
  G.element_order_.assign(n, 1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y)
      if (G.mul(x, y) == 0) {
        G.inverse_[x] = y;
        break;
      }
    int k = 1;
    for (int p = x; p != 0; p = G.mul(p, x))
      ++k;
    G.element_order_[x] = k;
  }
  return G;
}

int FiniteGroup::pow(int a, long k) const {
  const int m = element_order_[a];
  long e = ((k % m) + m) % m;
  int out = 0;
  int base = a;
  while (e > 0) {
    if (e & 1)
      out = mul(out, base);
    base = mul(base, base);
    e >>= 1;
  }
  return out;
}

std::optional<int> FiniteGroup::find(const Permutation &p) const {
  auto it = index_of_.find(p);
  if (it == index_of_.end())
    return std::nullopt;
  return it->second;
}

std::string FiniteGroup::label() const {
  if (catalog_id_)
    return *catalog_id_;
  if (!label_.empty())
    return label_;
  return "order" + std::to_string(order_);
}

bool FiniteGroup::is_abelian() const {
  for (int g : generator_index_)
    for (int h : generator_index_)
      if (mul(g, h) != mul(h, g))
        return false;
  return true;
}

std::vector<int> FiniteGroup::abelian_invariants() const {
  if (!is_abelian())
    throw Error(ErrorKind::InvalidArgument, "abelian_invariants needs an abelian group");
  // For each prime p, the number of parts >= k of the p-primary partition is
  // log_p #{x : x^(p^k) = 1} - log_p #{x : x^(p^(k-1)) = 1}.
  std::vector<std::vector<int>> primary; // per prime: prime powers, descending
  for (int p : prime_factors(order_)) {
    std::vector<int> parts_at_least;
    long pk = 1;
    int prev_log = 0;
    while (true) {
      pk *= p;
      long count = 0;
      for (int x = 0; x < order_; ++x)
        if (pk % element_order_[x] == 0)
          ++count;
      int lg = 0;
      for (long c = count; c > 1; c /= p)
        ++lg;
      if (lg == prev_log)
        break;
      parts_at_least.push_back(lg - prev_log);
      prev_log = lg;
    }
    // parts_at_least[k-1] = number of cyclic p-factors of exponent >= k
    std::vector<int> powers;
    for (std::size_t k = 0; k < parts_at_least.size(); ++k) {
      int exact = parts_at_least[k] - (k + 1 < parts_at_least.size() ? parts_at_least[k + 1] : 0);
      int value = 1;
      for (std::size_t j = 0; j <= k; ++j)
        value *= p;
      for (int c = 0; c < exact; ++c)
        powers.push_back(value);
    }
    std::sort(powers.rbegin(), powers.rend());
    primary.push_back(powers);
  }
  std::size_t len = 0;
  for (const auto &v : primary)
    len = std::max(len, v.size());
  std::vector<int> factors(len, 1);
  for (const auto &v : primary)
    for (std::size_t i = 0; i < v.size(); ++i)
      factors[len - 1 - i] *= v[i];
  return factors;
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  std::vector<std::vector<int>> classes;
  std::vector<char> done(order_, 0);
  for (int x = 0; x < order_; ++x) {
    if (done[x])
      continue;
    std::set<int> cls;
    for (int g = 0; g < order_; ++g)
      cls.insert(conjugate(x, g));
    for (int y : cls)
      done[y] = 1;
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

std::vector<std::vector<int>> FiniteGroup::inner_automorphisms() const {
  std::set<std::vector<int>> autos;
  for (int g = 0; g < order_; ++g) {
    std::vector<int> phi(order_);
    for (int x = 0; x < order_; ++x)
      phi[x] = conjugate(x, g);
    autos.insert(std::move(phi));
  }
  return {autos.begin(), autos.end()};
}

std::optional<std::vector<std::vector<int>>> FiniteGroup::automorphisms(long budget) const {
  // Greedy generating tuple: repeatedly add an element of maximal order
  // outside the current subgroup.
  std::vector<int> tuple;
  std::vector<int> sub{0};
  while (static_cast<int>(sub.size()) < order_) {
    std::vector<char> in(order_, 0);
    for (int x : sub)
      in[x] = 1;
    int best = -1;
    for (int x = 0; x < order_; ++x)
      if (!in[x] && (best < 0 || element_order_[x] > element_order_[best]))
        best = x;
    tuple.push_back(best);
    sub = subgroup_generated(*this, tuple);
  }
  if (tuple.empty())
    return std::vector<std::vector<int>>{std::vector<int>{0}};

  std::vector<std::vector<int>> candidates(tuple.size());
  long total = 1;
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    for (int x = 0; x < order_; ++x)
      if (element_order_[x] == element_order_[tuple[k]])
        candidates[k].push_back(x);
    total *= static_cast<long>(candidates[k].size());
    if (total > budget)
      return std::nullopt;
  }

  // Words for every element over the tuple: y = parent[y] * tuple[via[y]].
  std::vector<int> parent(order_, -1), via(order_, -1), bfs{0};
  std::vector<char> seen(order_, 0);
  seen[0] = 1;
  for (std::size_t h = 0; h < bfs.size(); ++h)
    for (std::size_t k = 0; k < tuple.size(); ++k) {
      int y = mul(bfs[h], tuple[k]);
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = bfs[h];
        via[y] = static_cast<int>(k);
        bfs.push_back(y);
      }
    }

  std::vector<std::vector<int>> autos;
  std::vector<std::size_t> pick(tuple.size(), 0);
  std::vector<int> phi(order_);
  std::vector<char> hit(order_);
  while (true) {
    phi[0] = 0;
    for (std::size_t h = 1; h < bfs.size(); ++h) {
      int y = bfs[h];
      phi[y] = mul(phi[parent[y]], candidates[via[y]][pick[via[y]]]);
    }
    bool ok = true;
    std::fill(hit.begin(), hit.end(), 0);
    for (int x = 0; x < order_ && ok; ++x) {
      if (hit[phi[x]])
        ok = false;
      hit[phi[x]] = 1;
    }
    for (int x = 0; x < order_ && ok; ++x)
      for (std::size_t k = 0; k < tuple.size(); ++k)
        if (phi[mul(x, tuple[k])] != mul(phi[x], candidates[k][pick[k]])) {
          ok = false;
          break;
        }
    if (ok)
      autos.push_back(phi);
    std::size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == candidates[pos].size())
      pick[pos++] = 0;
    if (pos == pick.size())
      break;
  }
  std::sort(autos.begin(), autos.end());
  return autos;
}

std::vector<int> FiniteGroup::order_statistics() const {
  std::vector<int> out = element_order_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, int>> cyclic_subgroups(const FiniteGroup &g) {
  std::set<std::pair<int, int>> found;
  for (int x = 1; x < g.order(); ++x) {
    const int m = g.element_order(x);
    int least = x;
    for (int k = 1; k < m; ++k)
      if (std::gcd(k, m) == 1)
        least = std::min(least, g.pow(x, k));
    found.emplace(least, m);
  }
  return {found.begin(), found.end()};
}

std::vector<int> subgroup_generated(const FiniteGroup &g, const std::vector<int> &s) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> elems{0};
  in[0] = 1;
  for (std::size_t h = 0; h < elems.size(); ++h)
    for (int x : s) {
      int y = g.mul(elems[h], x);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

bool generates(const FiniteGroup &g, const std::vector<int> &s) {
  return static_cast<int>(subgroup_generated(g, s).size()) == g.order();
}

FiniteGroup cyclic_group(int n) {
  if (n < 1)
    throw Error(ErrorKind::InvalidArgument, "cyclic group order must be positive");
  auto G = abelian_group({n});
  return G;
}

FiniteGroup abelian_group(const std::vector<int> &factors) {
  std::vector<Permutation> gens;
  int degree = 0;
  for (int f : factors) {
    if (f < 1)
      throw Error(ErrorKind::InvalidArgument, "cyclic factor orders must be positive");
    degree += f;
  }
  degree = std::max(degree, 1);
  int offset = 0;
  std::string label;
  for (int f : factors) {
    if (f > 1) {
      Permutation p(degree);
      std::iota(p.begin(), p.end(), 0);
      for (int i = 0; i < f; ++i)
        p[offset + i] = offset + (i + 1) % f;
      gens.push_back(std::move(p));
    }
    offset += f;
    if (f > 1)
      label += (label.empty() ? "C" : "xC") + std::to_string(f);
  }
  auto G = FiniteGroup::from_permutations(gens, degree);
  G.set_label(label.empty() ? "C1" : label);
  return G;
}

FiniteGroup dihedral_group(int n) {
  if (n < 1)
    throw Error(ErrorKind::InvalidArgument, "dihedral parameter must be positive");
  if (n == 1)
    return abelian_group({2});
  if (n == 2)
    return abelian_group({2, 2});
  Permutation rot(n), refl(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    refl[i] = (n - i) % n;
  }
  auto G = FiniteGroup::from_permutations({rot, refl}, n);
  G.set_label("D" + std::to_string(2 * n));
  return G;
}

FiniteGroup symmetric_group(int k) {
  if (k < 1 || k > 6)
    throw Error(ErrorKind::InvalidArgument, "symmetric group degree out of range");
  std::vector<Permutation> gens;
  if (k >= 2) {
    Permutation cycle(k), swap(k);
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    for (int i = 0; i < k; ++i)
      cycle[i] = (i + 1) % k;
    gens = {swap, cycle};
  }
  auto G = FiniteGroup::from_permutations(gens, k);
  G.set_label("S" + std::to_string(k));
  return G;
}

FiniteGroup alternating_group(int k) {
  if (k < 1 || k > 6)
    throw Error(ErrorKind::InvalidArgument, "alternating group degree out of range");
  std::vector<Permutation> gens;
  // 3-cycles (0 1 i) generate A_k
  for (int i = 2; i < k; ++i) {
    Permutation p(k);
    std::iota(p.begin(), p.end(), 0);
    p[0] = 1;
    p[1] = i;
    p[i] = 0;
    gens.push_back(std::move(p));
  }
  auto G = FiniteGroup::from_permutations(gens, k);
  G.set_label("A" + std::to_string(k));
  return G;
}

namespace {

void partitions(int n, int max_part, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

} // namespace

std::vector<std::vector<int>> abelian_invariant_lists(int n) {
  std::vector<std::vector<int>> result{{}};
  int rest = n;
  for (int p : prime_factors(n)) {
    int a = 0;
    while (rest % p == 0) {
      rest /= p;
      ++a;
    }
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(a, a, cur, parts);
    std::vector<std::vector<int>> next;
    for (const auto &base : result)
      for (const auto &lambda : parts) {
        // combine: largest invariant gets the largest prime power
        std::size_t len = std::max(base.size(), lambda.size());
        std::vector<int> inv(len, 1);
        for (std::size_t i = 0; i < base.size(); ++i)
          inv[len - base.size() + i] *= base[i];
        for (std::size_t i = 0; i < lambda.size(); ++i) {
          int pp = 1;
          for (int j = 0; j < lambda[i]; ++j)
            pp *= p;
          inv[len - 1 - i] *= pp;
        }
        next.push_back(inv);
      }
    result = std::move(next);
  }
  if (n == 1)
    return {{}};
  std::sort(result.begin(), result.end());
  return result;
}

bool all_groups_abelian(long n) {
  if (n < 1)
    return false;
  std::vector<std::pair<long, int>> fac;
  long rest = n;
  for (long p = 2; p * p <= rest; ++p) {
    int a = 0;
    while (rest % p == 0) {
      rest /= p;
      ++a;
    }
    if (a)
      fac.emplace_back(p, a);
  }
  if (rest > 1)
    fac.emplace_back(rest, 1);
  for (const auto &[p, a] : fac)
    if (a >= 3)
      return false;
  for (const auto &[pi, ai] : fac)
    for (const auto &[pj, aj] : fac) {
      if (pi == pj)
        continue;
      long pk = 1;
      for (int k = 1; k <= ai; ++k) {
        pk *= pi;
        if ((pk - 1) % pj == 0)
          return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------------------
// Catalog

std::pair<long, long> parse_group_id(const std::string &id) {
  auto dot = id.find('.');
  auto numeric = [](const std::string &s) {
    return !s.empty() && s.size() < 10 && std::all_of(s.begin(), s.end(), ::isdigit);
  };
  if (dot == std::string::npos || !numeric(id.substr(0, dot)) || !numeric(id.substr(dot + 1)))
    throw Error(ErrorKind::ParseError, "malformed group id '" + id + "'");
  return {std::stol(id.substr(0, dot)), std::stol(id.substr(dot + 1))};
}

const FiniteGroup *GroupCatalog::get(const std::string &id) const {
  auto it = groups_.find(id);
  return it == groups_.end() ? nullptr : &it->second;
}

std::vector<const FiniteGroup *> GroupCatalog::groups_of_order(long order) const {
  std::vector<std::pair<long, const FiniteGroup *>> found;
  for (const auto &[id, g] : groups_) {
    auto [o, idx] = parse_group_id(id);
    if (o == order)
      found.emplace_back(idx, &g);
  }
  std::sort(found.begin(), found.end());
  std::vector<const FiniteGroup *> out;
  for (const auto &[idx, g] : found)
    out.push_back(g);
  return out;
}

bool GroupCatalog::order_complete(long order) const {
  auto it = order_counts_.find(order);
  if (it == order_counts_.end())
    return false;
  return static_cast<long>(groups_of_order(order).size()) == it->second;
}

void GroupCatalog::add(const std::string &id, FiniteGroup group) {
  auto [order, idx] = parse_group_id(id);
  if (groups_.count(id))
    throw Error(ErrorKind::DuplicateId, "duplicate group id " + id);
  if (order != group.order())
    throw Error(ErrorKind::OrderMismatch, "group " + id + " generates " +
                                              std::to_string(group.order()) + " elements");
  group.set_catalog_id(id);
  groups_.emplace(id, std::move(group));
}

void GroupCatalog::declare_order_count(long order, long count) {
  order_counts_[order] = count;
}

void GroupCatalog::refresh_digest() {
  // FNV-1a over the canonical dump
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : dump_catalog(*this)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  digest_ = buf;
}

GroupCatalog parse_catalog(std::istream &in) {
  GroupCatalog catalog;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string &msg) -> Error {
    return Error(ErrorKind::ParseError, "catalog line " + std::to_string(lineno) + ": " + msg);
  };
  std::optional<std::string> open_id;
  int open_degree = 0;
  int open_line = 0;
  std::vector<Permutation> gens;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#')
      continue;
    if (word == "ORDERCOUNT") {
      long order = 0, count = 0;
      if (open_id || !(ls >> order >> count) || order < 1 || count < 1)
        throw fail("malformed ORDERCOUNT");
      catalog.declare_order_count(order, count);
    } else if (word == "GROUP") {
      std::string id, kw;
      int degree = 0;
      if (open_id)
        throw fail("GROUP before END of " + *open_id);
      if (!(ls >> id >> kw >> degree) || kw != "PERMDEG" || degree < 1)
        throw fail("expected 'GROUP <order>.<index> PERMDEG <d>'");
      try {
        parse_group_id(id);
      } catch (const Error &) {
        throw fail("malformed group id '" + id + "'");
      }
      if (catalog.get(id))
        throw Error(ErrorKind::DuplicateId,
                    "catalog line " + std::to_string(lineno) + ": duplicate group id " + id);
      open_id = id;
      open_degree = degree;
      open_line = lineno;
      gens.clear();
    } else if (word == "GEN") {
      if (!open_id)
        throw fail("GEN outside a GROUP record");
      Permutation p;
      int x;
      while (ls >> x)
        p.push_back(x);
      if (!ls.eof())
        throw fail("non-integer image");
      try {
        check_permutation(p, open_degree);
      } catch (const Error &e) {
        throw fail(e.what());
      }
      gens.push_back(std::move(p));
    } else if (word == "END") {
      if (!open_id)
        throw fail("END without GROUP");
      auto [order, idx] = parse_group_id(*open_id);
      if (order > kMaxGroupOrder)
        throw fail("group order above " + std::to_string(kMaxGroupOrder));
      FiniteGroup G;
      try {
        G = FiniteGroup::from_permutations(gens, open_degree, static_cast<int>(order) + 1);
      } catch (const Error &e) {
        if (e.kind() == ErrorKind::OrderLimitExceeded)
          throw Error(ErrorKind::OrderMismatch, "catalog line " + std::to_string(open_line) +
                                                    ": group " + *open_id + " is larger than declared");
        throw;
      }
      if (G.order() != order)
        throw Error(ErrorKind::OrderMismatch,
                    "catalog line " + std::to_string(open_line) + ": group " + *open_id +
                        " declared of order " + std::to_string(order) + " generates " +
                        std::to_string(G.order()) + " elements");
      catalog.add(*open_id, std::move(G));
      open_id.reset();
    } else {
      throw fail("unknown keyword '" + word + "'");
    }
  }
  if (open_id)
    throw Error(ErrorKind::ParseError, "catalog ends inside GROUP " + *open_id);
  catalog.refresh_digest();
  return catalog;
}

GroupCatalog load_catalog(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::ParseError, "cannot open catalog " + path);
  return parse_catalog(in);
}

std::string dump_catalog(const GroupCatalog &catalog) {
  std::ostringstream out;
  for (const auto &[order, count] : catalog.order_counts())
    out << "ORDERCOUNT " << order << " " << count << "\n";
  std::vector<std::pair<std::pair<long, long>, const std::string *>> ids;
  for (const auto &[id, g] : catalog.groups())
    ids.emplace_back(parse_group_id(id), &id);
  std::sort(ids.begin(), ids.end());
  for (const auto &[key, id] : ids) {
    const auto &g = *catalog.get(*id);
    out << "GROUP " << *id << " PERMDEG " << g.degree() << "\n";
    for (const auto &p : g.generators()) {
      out << "GEN";
      for (int x : p)
        out << " " << x;
      out << "\n";
    }
    out << "END\n";
  }
  return out.str();
}

} // namespace pqsurf
