#include "pqsurf/basket.hpp"

#include "pqsurf/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <map>
#include <numeric>
#include <set>

namespace pqsurf {

Basket::Basket(const std::vector<SingularityType> &points) {
  for (const auto &p : points)
    add(p);
}

void Basket::add(const SingularityType &t, int multiplicity) {
  if (multiplicity <= 0)
    throw Error(ErrorKind::InvalidArgument, "basket multiplicities must be positive");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), t,
                             [](const Entry &e, const SingularityType &v) { return e.first < v; });
  if (it != entries_.end() && it->first == t)
    it->second += multiplicity;
  else
    entries_.insert(it, {t, multiplicity});
}

Basket Basket::parse(const std::string &text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    // U+00D7 in UTF-8
    if (c == 0xC3 && i + 1 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x97) {
      s.push_back('x');
      ++i;
    } else if (!std::isspace(c)) {
      s.push_back(static_cast<char>(c));
    }
  }
  Basket b;
  if (s.empty() || s == "{}")
    return b;
  if (s.front() == '{' && s.back() == '}')
    s = s.substr(1, s.size() - 2);
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    std::string token = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    int mult = 1;
    auto x = token.find('x');
    if (x != std::string::npos) {
      std::string m = token.substr(0, x);
      if (m.empty() || m.size() > 6 || !std::all_of(m.begin(), m.end(), ::isdigit))
        throw Error(ErrorKind::ParseError, "malformed basket token '" + token + "'");
      mult = std::stoi(m);
      token = token.substr(x + 1);
    }
    if (mult <= 0)
      throw Error(ErrorKind::ParseError, "zero multiplicity in basket '" + text + "'");
    b.add(SingularityType::parse(token), mult);
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return b;
}

int Basket::size() const noexcept {
  int total = 0;
  for (const auto &[t, m] : entries_)
    total += m;
  return total;
}

int Basket::max_n() const noexcept {
  return entries_.empty() ? 0 : entries_.back().first.n();
}

std::vector<SingularityType> Basket::points() const {
  std::vector<SingularityType> out;
  for (const auto &[t, m] : entries_)
    for (int i = 0; i < m; ++i)
      out.push_back(t);
  return out;
}

Basket Basket::mirror() const {
  Basket out;
  for (const auto &[t, m] : entries_)
    out.add(dual_type(t), m);
  return out;
}

std::string Basket::str() const {
  std::string out;
  for (const auto &[t, m] : entries_) {
    if (!out.empty())
      out += ",";
    if (m > 1)
      out += std::to_string(m) + "x";
    out += t.str();
  }
  return out;
}

std::strong_ordering operator<=>(const Basket &a, const Basket &b) {
  const auto &x = a.entries_;
  const auto &y = b.entries_;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (auto c = x[i].first <=> y[i].first; c != 0)
      return c;
    if (auto c = x[i].second <=> y[i].second; c != 0)
      return c;
  }
  return x.size() <=> y.size();
}

BasketInvariants basket_invariants(const Basket &b) {
  BasketInvariants inv;
  inv.gamma = 0;
  inv.mu = 0;
  for (const auto &[t, m] : b.entries()) {
    auto s = sing_invariants(t);
    inv.l += m * s.l;
    inv.gamma += m * s.gamma;
    inv.mu += m * s.mu;
    inv.index = std::lcm(inv.index, static_cast<long>(s.index));
  }
  inv.gamma.canonicalize();
  inv.mu.canonicalize();
  inv.e_legacy = inv.l + inv.mu;
  inv.k_legacy = 6 * inv.gamma + inv.l - 2 * inv.mu;
  inv.B_legacy = 3 * (2 * inv.gamma + inv.l);
  inv.e_legacy.canonicalize();
  inv.k_legacy.canonicalize();
  inv.B_legacy.canonicalize();
  return inv;
}

namespace {

// Splits fractions (whose total is an integer) into parts with integer sums,
// peeling off the smallest such sub-multisets first.
std::vector<std::vector<Rational>> split_integral(std::vector<Rational> items) {
  std::vector<std::vector<Rational>> parts;
  std::sort(items.begin(), items.end());
  while (!items.empty()) {
    std::vector<std::size_t> best;
    const std::size_t max_k = std::min<std::size_t>(items.size() - 1, 4);
    for (std::size_t k = 1; k <= max_k && best.empty(); ++k) {
      std::vector<std::size_t> idx(k);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        Rational sum = 0;
        for (auto i : idx)
          sum += items[i];
        sum.canonicalize();
        if (is_integer(sum)) {
          best = idx;
          break;
        }
        // next combination
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == items.size() - k + pos - 1)
          --pos;
        if (pos == 0)
          break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < k; ++j)
          idx[j] = idx[j - 1] + 1;
      }
    }
    if (best.empty()) {
      parts.push_back(items);
      break;
    }
    std::vector<Rational> part;
    for (auto it = best.rbegin(); it != best.rend(); ++it) {
      part.push_back(items[*it]);
      items.erase(items.begin() + static_cast<std::ptrdiff_t>(*it));
    }
    std::sort(part.begin(), part.end());
    parts.push_back(std::move(part));
  }
  return parts;
}

} // namespace

Admissibility basket_admissible(const Basket &b, bool with_witness) {
  Admissibility result;
  if (b.empty()) {
    result.admissible = true;
    return result;
  }
  if (b.size() == 2) {
    auto pts = b.points();
    if (!(dual_type(pts[0]) == pts[1]))
      return result;
  }

  // Orientation search: for each entry choose how many of its points
  // contribute q/n (rather than q'/n) to the first fibration. The state is the
  // pair of both fibre sums modulo 1, in units of 1/L.
  long L = 1;
  for (const auto &[t, mult] : b.entries())
    L = std::lcm(L, static_cast<long>(t.n()));
  using State = std::pair<long, long>;
  struct Back {
    State prev;
    int choice;
  };
  const auto &entries = b.entries();
  std::vector<std::map<State, Back>> layers(entries.size() + 1);
  layers[0].emplace(State{0, 0}, Back{{}, -1});
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto &[t, mult] = entries[i];
    const long q = t.q(), qi = t.q_inverse(), unit = L / t.n();
    const int lo = (q == qi) ? mult : 0;
    for (const auto &[state, back] : layers[i]) {
      for (int a = lo; a <= mult; ++a) {
        long s1 = (state.first + (a * q + (mult - a) * qi) * unit) % L;
        long s2 = (state.second + (a * qi + (mult - a) * q) * unit) % L;
        layers[i + 1].try_emplace(State{s1, s2}, Back{state, a});
      }
    }
  }
  const State zero{0, 0};
  auto it = layers.back().find(zero);
  if (it == layers.back().end())
    return result;
  result.admissible = true;
  if (!with_witness)
    return result;

  std::vector<Rational> first, second;
  State cur = zero;
  for (std::size_t i = entries.size(); i-- > 0;) {
    const auto &back = layers[i + 1].at(cur);
    const auto &[t, mult] = entries[i];
    for (int k = 0; k < mult; ++k) {
      bool use_q = k < back.choice;
      first.emplace_back(use_q ? t.q() : t.q_inverse(), t.n());
      second.emplace_back(use_q ? t.q_inverse() : t.q(), t.n());
    }
    cur = back.prev;
  }
  for (auto &r : first)
    r.canonicalize();
  for (auto &r : second)
    r.canonicalize();
  result.witness.first = split_integral(first);
  result.witness.second = split_integral(second);
  return result;
}

BasketBounds basket_bounds(int chi, const Rational &gamma) {
  BasketBounds bounds;
  Rational cap = 8 * chi + 4 * gamma - 1;
  bounds.max_points = static_cast<int>(floor(cap).get_si());
  bounds.max_mu = 4 * chi + 2 * gamma - Rational(1, 2);
  bounds.max_mu.canonicalize();
  Rational mult = gamma == 0 ? Rational(12 * (4 * chi + 2 * gamma - 1))
                             : Rational(12 * (4 * chi + 2 * gamma - Rational(3, 2)));
  bounds.max_n = floor(mult).get_si();
  return bounds;
}

namespace {

struct TypeInfo {
  SingularityType type;
  Rational gamma;
  Rational mu;
};

// Depth-first search over multiplicities of each type, in integer units of
// 1/L where L is a common denominator of every gamma and mu.
//
// Two prunings: infeasible (index, gap, mu budget, points) states are
// memoized, and once no remaining type has n divisible by a prime p, the
// remaining gap must have no p in its denominator.
struct ScaledSearch {
  std::vector<TypeInfo> types;
  std::vector<std::int64_t> gamma;   // scaled
  std::vector<std::int64_t> mu;      // scaled, > 0
  std::vector<std::int64_t> modulus; // gap must be divisible by modulus[i] on entering i
  std::vector<double> suffix_max_ratio, suffix_min_ratio;
  std::vector<int> mults;
  std::vector<Basket> out;

  struct Key {
    std::int64_t gap, mub;
    int pts;
    bool operator==(const Key &) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key &k) const noexcept {
      std::size_t h = std::hash<std::int64_t>()(k.gap);
      h ^= std::hash<std::int64_t>()(k.mub) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return h ^ (static_cast<std::size_t>(k.pts) * 0x100000001b3ULL);
    }
  };
  std::vector<std::unordered_set<Key, KeyHash>> dead;

  // True when some multiset below this node hits the target (admissible or not).
  bool run(std::size_t i, std::int64_t gap, std::int64_t mub, int pts) {
    if (i < modulus.size() && gap % modulus[i] != 0)
      return false;
    if (i == types.size()) {
      if (gap != 0)
        return false;
      Basket b;
      for (std::size_t k = 0; k < i; ++k)
        if (mults[k] > 0)
          b.add(types[k].type, mults[k]);
      if (basket_admissible(b, false).admissible)
        out.push_back(std::move(b));
      return true;
    }
    // the gap must be closable with the remaining mu budget
    const double budget = static_cast<double>(mub), g = static_cast<double>(gap);
    const double slack = 1e-9 * (std::abs(g) + budget + 1);
    if (g > std::max(0.0, suffix_max_ratio[i] * budget) + slack ||
        g < std::min(0.0, suffix_min_ratio[i] * budget) - slack)
      return false;
    Key key{gap, mub, pts};
    if (dead[i].count(key))
      return false;
    bool any = false;
    std::int64_t gp = gap, mb = mub;
    int p = pts;
    for (int mult = 0;; ++mult) {
      if (mult > 0) {
        gp -= gamma[i];
        mb -= mu[i];
        --p;
        if (p < 0 || mb < 0)
          break;
      }
      mults[i] = mult;
      if (run(i + 1, gp, mb, p))
        any = true;
    }
    mults[i] = 0;
    if (!any)
      dead[i].insert(key);
    return any;
  }
};

// Rational fallback when no common denominator fits in 64 bits.
struct BasketSearch {
  std::vector<TypeInfo> types;
  std::vector<double> suffix_max_ratio; // max gamma/mu over types[i..]
  std::vector<double> suffix_min_ratio;
  Rational target;
  double target_d;
  Rational max_mu;
  double max_mu_d;
  int max_points;
  std::vector<int> mults;
  std::vector<Basket> out;

  void run(std::size_t i, const Rational &gamma, const Rational &mu, int points) {
    if (gamma == target) {
      Basket b;
      for (std::size_t k = 0; k < i; ++k)
        if (mults[k] > 0)
          b.add(types[k].type, mults[k]);
      if (basket_admissible(b, false).admissible)
        out.push_back(std::move(b));
    }
    if (i == types.size())
      return;
    const double eps = 1e-9;
    for (std::size_t j = i; j < types.size(); ++j) {
      const double budget = max_mu_d - mu.get_d();
      const double gap = target_d - gamma.get_d();
      const double hi = std::max(0.0, suffix_max_ratio[j] * budget);
      const double lo = std::min(0.0, suffix_min_ratio[j] * budget);
      if (gap > hi + eps || gap < lo - eps)
        return;
      const auto &info = types[j];
      Rational g = gamma, m = mu;
      int p = points;
      for (int mult = 1;; ++mult) {
        g += info.gamma;
        m += info.mu;
        ++p;
        if (p > max_points || m > max_mu)
          break;
        mults[j] = mult;
        run(j + 1, g, m, p);
      }
      mults[j] = 0;
    }
  }
};

void suffix_ratios(const std::vector<TypeInfo> &types, std::vector<double> &hi,
                   std::vector<double> &lo) {
  const std::size_t k = types.size();
  hi.assign(k + 1, 0.0);
  lo.assign(k + 1, 0.0);
  for (std::size_t i = k; i-- > 0;) {
    double r = types[i].gamma.get_d() / types[i].mu.get_d();
    hi[i] = std::max(hi[i + 1], r);
    lo[i] = std::min(lo[i + 1], r);
  }
}

} // namespace

std::vector<Basket> enumerate_baskets(int chi, const Rational &gamma, int max_mult,
                                      bool regular_pipeline) {
  if (chi < 1)
    throw Error(ErrorKind::InvalidArgument, "chi must be at least 1");
  if (max_mult < 2)
    throw Error(ErrorKind::InvalidArgument, "max_mult must be at least 2");
  if (regular_pipeline) {
    Rational shifted = gamma + (chi - 1);
    if (!is_integer(shifted) || sgn(shifted) < 0)
      throw Error(ErrorKind::InvalidArgument,
                  "gamma + p_g must be a nonnegative integer, got gamma=" + to_string(gamma));
  }
  auto bounds = basket_bounds(chi, gamma);
  std::vector<Basket> result;
  if (bounds.max_points < 0 || sgn(bounds.max_mu) < 0)
    return result;

  std::vector<TypeInfo> types;
  const long n_cap = std::min<long>(max_mult, bounds.max_n);
  // largest n first, so that rare primes are settled early
  for (long n = n_cap; n >= 2; --n) {
    for (int q = 1; q < n; ++q) {
      if (std::gcd<long>(q, n) != 1)
        continue;
      SingularityType t(q, static_cast<int>(n));
      if (t.q() != q)
        continue;
      auto inv = sing_invariants(t);
      types.push_back({t, inv.gamma, inv.mu});
    }
  }

  Integer L = 1;
  for (const auto &t : types) {
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), t.gamma.get_den_mpz_t());
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), t.mu.get_den_mpz_t());
  }
  mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), bounds.max_mu.get_den_mpz_t());
  mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), gamma.get_den_mpz_t());
  const Rational limit = Rational(bounds.max_points + 1) * (abs(gamma) + bounds.max_mu + 100);
  if (Rational(L) * limit < Rational(Integer(1) << 62)) {
    ScaledSearch search;
    search.types = types;
    auto scaled = [&](const Rational &r) {
      Rational x = r * L;
      return static_cast<std::int64_t>(x.get_num().get_si());
    };
    for (const auto &t : types) {
      search.gamma.push_back(scaled(t.gamma));
      search.mu.push_back(scaled(t.mu));
    }
    // modulus[i]: prime powers of L for primes dividing no remaining n
    const long Ls = L.get_si();
    std::vector<long> primes;
    for (long p = 2; p <= n_cap; ++p) {
      bool prime = true;
      for (long d = 2; d * d <= p; ++d)
        if (p % d == 0)
          prime = false;
      if (prime)
        primes.push_back(p);
    }
    search.modulus.assign(types.size() + 1, 1);
    for (std::size_t i = 0; i <= types.size(); ++i) {
      std::int64_t mod = 1;
      for (long p : primes) {
        if (p <= 3)
          continue; // the factor 6 in gamma mixes 2 and 3 across all n
        bool remaining = false;
        for (std::size_t j = i; j < types.size(); ++j)
          if (types[j].type.n() % p == 0)
            remaining = true;
        if (remaining)
          continue;
        long pk = 1;
        while (Ls % (pk * p) == 0)
          pk *= p;
        mod *= pk;
      }
      search.modulus[i] = mod;
    }
    suffix_ratios(types, search.suffix_max_ratio, search.suffix_min_ratio);
    search.mults.assign(types.size(), 0);
    search.dead.resize(types.size() + 1);
    search.run(0, scaled(gamma), scaled(bounds.max_mu), bounds.max_points);
    result = std::move(search.out);
  } else {
    BasketSearch search;
    search.types = types;
    suffix_ratios(types, search.suffix_max_ratio, search.suffix_min_ratio);
    search.target = gamma;
    search.target.canonicalize();
    search.target_d = search.target.get_d();
    search.max_mu = bounds.max_mu;
    search.max_mu_d = bounds.max_mu.get_d();
    search.max_points = bounds.max_points;
    search.mults.assign(types.size(), 0);
    search.run(0, Rational(0), Rational(0), 0);
    result = std::move(search.out);
  }
  std::sort(result.begin(), result.end());
  return result;
}

} // namespace pqsurf
