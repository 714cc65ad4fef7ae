#include "pqsurf/classify.hpp"

#include "pqsurf/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace pqsurf {

std::string options_flags(const ClassifyOptions &o) {
  std::ostringstream s;
  s << "builtin-abelian=" << (o.builtin_abelian ? 1 : 0) << ";aut-budget=" << o.aut_budget
    << ";vector-budget=" << o.vector_node_budget << ";minimality=" << (o.run_minimality ? 1 : 0)
    << ";cap-b-3=" << (o.filters.cap_b_minus_3 ? 1 : 0)
    << ";minus-two=" << (o.filters.minus_two_rule ? 1 : 0);
  if (o.orders) {
    s << ";orders=";
    bool first = true;
    for (long n : *o.orders) {
      s << (first ? "" : ",") << n;
      first = false;
    }
  }
  return s.str();
}

std::vector<SearchTriple> candidate_triples(int pg, int gamma, int max_mult, long *basket_count,
                                           const std::set<long> *orders) {
  const int chi = 1 + pg;
  const Rational g(gamma);
  const auto baskets = enumerate_baskets(chi, g, max_mult, true);
  if (basket_count)
    *basket_count = static_cast<long>(baskets.size());
  struct Cand {
    Signature s;
    Rational theta;
  };
  std::map<Rational, std::vector<Cand>> by_xi;
  std::map<std::tuple<long, Signature, Signature>, std::vector<Basket>> triples;
  for (const auto &B : baskets) {
    const auto bi = basket_invariants(B);
    const Rational xi = 4 * chi + 2 * g - bi.mu;
    if (xi < Rational(1, 2))
      continue;
    if (gamma != 0 && B.size() < 3)
      continue;
    auto it = by_xi.find(xi);
    if (it == by_xi.end()) {
      std::vector<Cand> cands;
      for (auto &s : signature_candidates(xi, 0)) {
        Rational th = theta(s);
        cands.push_back(Cand{std::move(s), th});
      }
      it = by_xi.emplace(xi, std::move(cands)).first;
    }
    std::vector<const Cand *> sigs;
    for (const auto &c : it->second)
      if (periods_cover_basket(c.s, B))
        sigs.push_back(&c);
    for (std::size_t i = 0; i < sigs.size(); ++i)
      for (std::size_t j = i; j < sigs.size(); ++j) {
        if (orders) {
          Rational o = xi / (sigs[i]->theta * sigs[j]->theta);
          if (!is_integer(o) || !o.get_num().fits_slong_p() || !orders->count(o.get_num().get_si()))
            continue;
        }
        auto pc = robavecchia_filter(sigs[i]->s, sigs[j]->s, xi, bi.index, B.size());
        if (!pc.pass)
          continue;
        const long order = *pc.order;
        bool lagrange = true;
        for (const auto *c : {sigs[i], sigs[j]})
          for (int m : c->s.periods())
            if (order % m != 0)
              lagrange = false;
        if (lagrange)
          triples[{order, sigs[i]->s, sigs[j]->s}].push_back(B);
      }
  }
  std::vector<SearchTriple> out;
  for (auto &[key, bs] : triples)
    out.push_back(SearchTriple{std::get<0>(key), std::get<1>(key), std::get<2>(key), std::move(bs)});
  return out;
}

bool surface_less(const ProductQuotientSurface &a, const ProductQuotientSurface &b) {
  if (a.invariants.K2 != b.invariants.K2)
    return a.invariants.K2 < b.invariants.K2;
  if (a.basket != b.basket)
    return a.basket < b.basket;
  if (a.group->order() != b.group->order())
    return a.group->order() < b.group->order();
  if (a.group->label() != b.group->label())
    return a.group->label() < b.group->label();
  return std::tie(a.v1, a.v2) < std::tie(b.v1, b.v2);
}

GroupSearchResult search_group(std::shared_ptr<const FiniteGroup> group, const SearchTriple &triple,
                               const ClassifyOptions &options) {
  GroupSearchResult out;
  const FiniteGroup &G = *group;
  const auto orders = G.order_statistics();
  for (const auto *s : {&triple.t1, &triple.t2})
    for (int m : s->periods())
      if (!std::binary_search(orders.begin(), orders.end(), m))
        return out;

  auto vecs1 = search_spherical_vectors(G, triple.t1, options.vector_node_budget, 1);
  if (!vecs1) {
    out.budget_exceeded = true;
    return out;
  }
  std::optional<std::vector<GeneratingVector>> vecs2;
  const bool same = triple.t1 == triple.t2;
  if (!same) {
    vecs2 = search_spherical_vectors(G, triple.t2, options.vector_node_budget, 1);
    if (!vecs2) {
      out.budget_exceeded = true;
      return out;
    }
  }
  if (vecs1->empty() || (!same && vecs2->empty()))
    return out;

  HurwitzCanonicalizer canon(G);
  auto classes = [&](const std::vector<GeneratingVector> &vs) {
    std::set<GeneratingVector> reps;
    for (const auto &v : vs)
      reps.insert(canon.canonical(v));
    return std::vector<GeneratingVector>(reps.begin(), reps.end());
  };
  const auto c1 = classes(*vecs1);
  const auto c2 = same ? c1 : classes(*vecs2);

  std::vector<VectorPair> kept;
  for (std::size_t i = 0; i < c1.size(); ++i)
    for (std::size_t j = same ? i : 0; j < c2.size(); ++j) {
      Basket B = compute_basket(G, c1[i], c2[j]);
      if (std::find(triple.baskets.begin(), triple.baskets.end(), B) != triple.baskets.end())
        kept.push_back(VectorPair{c1[i], c2[j]});
    }
  if (kept.empty())
    return out;

  bool coarse = false;
  std::vector<std::vector<int>> autos;
  if (auto full = G.automorphisms(options.aut_budget))
    autos = std::move(*full);
  else {
    autos = G.inner_automorphisms();
    coarse = true;
  }
  for (auto &rep : hurwitz_reduce(canon, autos, kept)) {
    auto s = make_surface(group, rep.first, rep.second);
    s.dedup = coarse ? "coarse" : "full";
    out.surfaces.push_back(std::move(s));
  }
  return out;
}

namespace {

std::shared_ptr<const FiniteGroup> share(const FiniteGroup &g) {
  return std::make_shared<const FiniteGroup>(g);
}

template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn fn) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error)
            error = std::current_exception();
        }
      }
    });
  for (auto &t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

} // namespace

ClassificationReport existing_surfaces(int pg, int gamma, int max_mult, const GroupCatalog &catalog,
                                       const ClassifyOptions &options) {
  if (pg < 0)
    throw Error(ErrorKind::InvalidArgument, "pg must be nonnegative");
  if (max_mult < 2)
    throw Error(ErrorKind::InvalidArgument, "max-mult must be at least 2");
  if (pg + gamma < 0)
    throw Error(ErrorKind::InvalidArgument, "pg + gamma must be nonnegative");
  const auto start = std::chrono::steady_clock::now();
  ClassificationReport report;
  report.pg = pg;
  report.gamma = gamma;
  report.max_mult = max_mult;
  report.catalog_digest = catalog.digest();
  report.flags = options_flags(options);
  report.mult_ceiling = basket_bounds(1 + pg, Rational(gamma)).max_n;

  auto triples = candidate_triples(pg, gamma, max_mult, &report.baskets,
                                   options.orders ? &*options.orders : nullptr);
  report.triples = static_cast<long>(triples.size());

  // groups per order, shared between triples
  std::map<long, std::vector<std::shared_ptr<const FiniteGroup>>> groups;
  std::map<long, bool> complete;
  for (const auto &t : triples) {
    if (groups.count(t.order))
      continue;
    auto &list = groups[t.order];
    std::set<std::vector<int>> abelian_present;
    for (const auto *g : catalog.groups_of_order(t.order)) {
      list.push_back(share(*g));
      if (g->is_abelian())
        abelian_present.insert(g->abelian_invariants());
    }
    if (options.builtin_abelian && t.order <= kMaxGroupOrder)
      for (const auto &inv : abelian_invariant_lists(static_cast<int>(t.order)))
        if (!abelian_present.count(inv))
          list.push_back(share(abelian_group(inv)));
    complete[t.order] = catalog.order_complete(t.order) ||
                        (options.builtin_abelian && all_groups_abelian(t.order));
  }

  struct Task {
    std::size_t triple;
    std::shared_ptr<const FiniteGroup> group;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto &t = triples[i];
    for (const auto &g : groups[t.order])
      tasks.push_back(Task{i, g});
    if (!complete[t.order])
      report.skipped.push_back(SkippedCase{t.order, t.t1, t.t2, "no-catalog-group", "", t.baskets});
  }

  std::vector<GroupSearchResult> results(tasks.size());
  parallel_for(tasks.size(), options.jobs, [&](std::size_t k) {
    results[k] = search_group(tasks[k].group, triples[tasks[k].triple], options);
  });
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const auto &t = triples[tasks[k].triple];
    if (results[k].budget_exceeded)
      report.skipped.push_back(
          SkippedCase{t.order, t.t1, t.t2, "budget-exceeded", tasks[k].group->label(), t.baskets});
    for (auto &s : results[k].surfaces)
      report.surfaces.push_back(ClassifiedSurface{std::move(s), std::nullopt});
  }
  std::sort(report.surfaces.begin(), report.surfaces.end(),
            [](const ClassifiedSurface &a, const ClassifiedSurface &b) {
              return surface_less(a.surface, b.surface);
            });
  std::sort(report.skipped.begin(), report.skipped.end());

  if (options.run_minimality)
    parallel_for(report.surfaces.size(), options.jobs, [&](std::size_t k) {
      auto &cs = report.surfaces[k];
      cs.minimality = minimality_report(cs.surface, options.filters);
    });

  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------------------
// Table rows

RowDiagnostics verify_table_row(const TableRow &row) {
  RowDiagnostics d;
  auto issue = [&](std::string s) { d.issues.push_back(std::move(s)); };
  Basket B;
  try {
    B = Basket::parse(row.basket);
  } catch (const Error &e) {
    issue(std::string("unparseable basket: ") + e.what());
    return d;
  }
  Signature t1, t2;
  try {
    t1 = Signature::parse(row.t1);
    t2 = Signature::parse(row.t2);
  } catch (const Error &e) {
    issue(std::string("unparseable signature: ") + e.what());
    return d;
  }
  const auto bi = basket_invariants(B);
  const Rational chi(1);
  if (bi.gamma != row.gamma)
    issue("gamma-sum is " + to_string(bi.gamma) + ", table gamma is " + std::to_string(row.gamma));
  const Rational K2 = 8 * chi - 2 * bi.gamma - bi.l;
  try {
    if (parse_rational(row.K2) != K2)
      issue("K2 column " + row.K2 + " differs from 8chi-2gamma-l = " + to_string(K2));
  } catch (const Error &) {
    issue("unparseable K2 '" + row.K2 + "'");
  }
  const Rational xi = 4 * chi + 2 * bi.gamma - bi.mu;
  const Rational th1 = theta(t1), th2 = theta(t2);
  if (sgn(th1) <= 0 || sgn(th2) <= 0) {
    issue("signature with nonpositive Theta");
    return d;
  }
  Rational order = xi / (th1 * th2);
  order.canonicalize();
  if (is_integer(order))
    d.order = order.get_num().get_si();
  try {
    const long group_order = parse_group_id(row.group).first;
    if (order != group_order)
      issue("xi/(Theta1 Theta2) = " + to_string(order) + ", group order is " +
            std::to_string(group_order));
  } catch (const Error &) {
    issue("unparseable group id '" + row.group + "'");
  }
  for (const auto &[t, mult] : B.entries()) {
    for (int side = 1; side <= 2; ++side) {
      const Signature &s = side == 1 ? t1 : t2;
      bool divides = false;
      for (int m : s.periods())
        if (m % t.n() == 0)
          divides = true;
      if (!divides)
        issue(std::to_string(t.n()) + " divides no period of t" + std::to_string(side) + "=(" +
              s.short_str() + ")");
    }
  }
  Rational a1 = xi / (2 * th1), a2 = xi / (2 * th2);
  a1.canonicalize();
  a2.canonicalize();
  if (!is_positive_integer(a1))
    issue("alpha1 = " + to_string(a1) + " is not a positive integer");
  if (!is_positive_integer(a2))
    issue("alpha2 = " + to_string(a2) + " is not a positive integer");
  d.pass = d.issues.empty();
  return d;
}

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted)
    throw Error(ErrorKind::ParseError, "unterminated quote");
  out.push_back(cur);
  return out;
}

std::vector<TableRow> load_table_fixtures(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::ParseError, "cannot open fixtures " + path);
  std::vector<TableRow> rows;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#')
      continue;
    std::vector<std::string> f;
    try {
      f = split_csv_line(line);
    } catch (const Error &e) {
      throw Error(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!header) {
      if (f.size() < 8 || f[0] != "table")
        throw Error(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": missing header");
      header = true;
      continue;
    }
    if (f.size() != 8)
      throw Error(ErrorKind::ParseError,
                  path + ":" + std::to_string(lineno) + ": expected 8 fields, got " + std::to_string(f.size()));
    TableRow r;
    r.table = f[0];
    try {
      r.gamma = std::stoi(f[1]);
    } catch (const std::exception &) {
      throw Error(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": bad gamma");
    }
    r.K2 = f[2];
    r.basket = f[3];
    r.t1 = f[4];
    r.t2 = f[5];
    r.group = f[6];
    r.expected = f[7];
    r.line = lineno;
    if (r.expected != "pass" && r.expected != "flagged")
      throw Error(ErrorKind::ParseError,
                  path + ":" + std::to_string(lineno) + ": expected must be pass or flagged");
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace

std::string report_csv(const ClassificationReport &report) {
  std::ostringstream out;
  out << "K2,SingX,t1,t2,G\n";
  for (const auto &cs : report.surfaces) {
    const auto &s = cs.surface;
    out << to_string(s.invariants.K2) << "," << csv_field(s.basket.str()) << ","
        << csv_field(s.v1.signature.short_str()) << "," << csv_field(s.v2.signature.short_str()) << ","
        << csv_field(s.group->label()) << "\n";
  }
  return out.str();
}

} // namespace pqsurf
