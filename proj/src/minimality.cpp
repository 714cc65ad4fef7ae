#include "pqsurf/minimality.hpp"

#include "pqsurf/error.hpp"
#include "pqsurf/signature.hpp"

#include <algorithm>
#include <numeric>

namespace pqsurf {

ExceptionalLattice::ExceptionalLattice(const Basket &basket) {
  points_ = basket.points();
  std::stable_sort(points_.begin(), points_.end(), [](const SingularityType &a, const SingularityType &b) {
    return a.n() != b.n() ? a.n() > b.n() : a.q() < b.q();
  });
  for (std::size_t p = 0; p < points_.size(); ++p) {
    const std::size_t begin = self_.size();
    const auto hj = hj_expand(points_[p].q(), points_[p].n());
    for (std::size_t k = 0; k < hj.size(); ++k) {
      self_.push_back(hj[k]);
      canonical_.push_back(hj[k] - 2);
      index_.emplace_back(static_cast<int>(p), static_cast<int>(k));
    }
    blocks_.emplace_back(begin, self_.size());
  }
}

std::vector<std::vector<int>> ExceptionalLattice::matrix() const {
  std::vector<std::vector<int>> M(dim(), std::vector<int>(dim(), 0));
  for (const auto &[begin, end] : blocks_)
    for (std::size_t i = begin; i < end; ++i) {
      M[i][i] = -self_[i];
      if (i + 1 < end)
        M[i][i + 1] = M[i + 1][i] = 1;
    }
  return M;
}

std::vector<Rational> ExceptionalLattice::solve(const std::vector<Rational> &rhs) const {
  if (rhs.size() != dim())
    throw Error(ErrorKind::DimensionMismatch, "right-hand side has wrong length");
  std::vector<Rational> x(dim());
  // each block is tridiagonal: forward elimination, back substitution
  for (const auto &[begin, end] : blocks_) {
    const std::size_t len = end - begin;
    std::vector<Rational> diag(len), y(len);
    for (std::size_t k = 0; k < len; ++k) {
      diag[k] = -self_[begin + k];
      y[k] = rhs[begin + k];
      if (k > 0) {
        Rational f = Rational(1) / diag[k - 1];
        diag[k] -= f;
        y[k] -= f * y[k - 1];
      }
    }
    for (std::size_t k = len; k-- > 0;) {
      Rational v = y[k];
      if (k + 1 < len)
        v -= x[begin + k + 1];
      x[begin + k] = v / diag[k];
    }
  }
  return x;
}

Rational ExceptionalLattice::inverse_form(const std::vector<Rational> &u,
                                          const std::vector<Rational> &v) const {
  if (u.size() != dim())
    throw Error(ErrorKind::DimensionMismatch, "vector has wrong length");
  const auto x = solve(v);
  Rational s = 0;
  for (std::size_t i = 0; i < dim(); ++i)
    s += u[i] * x[i];
  return s;
}

ClassValues evaluate_class(const ExceptionalLattice &lat, long mu1, long mu2,
                           const std::vector<int> &e, const Rational &theta1,
                           const Rational &theta2, long order) {
  if (e.size() != lat.dim())
    throw Error(ErrorKind::DimensionMismatch, "e has " + std::to_string(e.size()) +
                                                  " entries, lattice has rank " +
                                                  std::to_string(lat.dim()));
  std::vector<Rational> ev(e.begin(), e.end());
  std::vector<Rational> bv(lat.canonical().begin(), lat.canonical().end());
  ClassValues out;
  out.KE = mu1 * theta2 + mu2 * theta1 + lat.inverse_form(ev, bv);
  out.E2 = make_rational(2 * mu1 * mu2, order) + lat.inverse_form(ev, ev);
  out.KE.canonicalize();
  out.E2.canonicalize();
  return out;
}

namespace {

// Nonnegative integer solutions of mu1 t2 + mu2 t1 = L, mu1 mu2 = P, not both zero.
std::vector<std::pair<long, long>> solve_mu(const Rational &L, const Rational &P,
                                            const Rational &t1, const Rational &t2) {
  std::vector<std::pair<long, long>> out;
  if (sgn(L) <= 0 || sgn(P) < 0 || !is_integer(P) || sgn(t1) <= 0 || sgn(t2) <= 0)
    return out;
  const long hi = floor(L / t2).get_si();
  for (long m1 = 0; m1 <= hi; ++m1) {
    Rational m2 = (L - m1 * t2) / t1;
    if (!is_integer(m2) || sgn(m2) < 0)
      continue;
    if (m1 * m2 == P)
      out.emplace_back(m1, m2.get_num().get_si());
  }
  return out;
}

} // namespace

MinusOneSearch search_minus_one(const Basket &basket, const Rational &theta1,
                                const Rational &theta2, long order, int pg, const Rational &gamma,
                                const MinimalityFilters &filters, bool record_systems) {
  MinusOneSearch out;
  out.filters = filters;
  out.applicability = (pg + gamma == 0) ? "complete" : "lattice-only";
  ExceptionalLattice lat(basket);
  const std::size_t d = lat.dim();
  if (d == 0)
    return out;

  // D * M^-1 as an integer matrix, D = lcm of the block determinants.
  long D = 1;
  for (const auto &p : lat.points())
    D = std::lcm(D, static_cast<long>(p.n()));
  std::vector<std::vector<long>> W(d, std::vector<long>(d, 0));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Rational> unit(d, 0);
    unit[j] = 1;
    auto col = lat.solve(unit);
    for (std::size_t i = 0; i < d; ++i) {
      Rational s = col[i] * D;
      W[i][j] = s.get_num().get_si();
    }
  }
  std::vector<long> y(d, 0); // D * M^-1 b
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      y[i] += W[i][j] * lat.canonical()[j];

  std::vector<int> cap(d);
  for (std::size_t i = 0; i < d; ++i) {
    const int b = lat.self_intersection()[i];
    cap[i] = filters.cap_b_minus_3 ? std::max(1, b - 3) : std::max(1, b);
  }

  std::vector<int> e(d, 0);
  std::vector<std::size_t> support;
  auto visit = [&] {
    ++out.e_vectors_visited;
    long eb = 0, ee = 0;
    for (std::size_t i : support) {
      eb += e[i] * y[i];
      for (std::size_t j : support)
        ee += static_cast<long>(e[i]) * e[j] * W[i][j];
    }
    // L = -1 - e.M^-1.b, P = |G| (-1 - e.M^-1.e) / 2
    Rational L(-D - eb, D), P(order * (-D - ee), 2 * D);
    L.canonicalize();
    P.canonicalize();
    auto sol = solve_mu(L, P, theta1, theta2);
    for (const auto &[m1, m2] : sol)
      out.candidates.push_back(MinusOneCandidate{m1, m2, e});
    if (record_systems)
      out.systems.push_back(ClassSystem{e, L, P, sol});
  };
  // depth-first over curves, larger values first
  auto rec = [&](auto &&self, std::size_t i, int sum, int minus_two) -> bool {
    if (filters.max_e_vectors > 0 && out.e_vectors_visited >= filters.max_e_vectors) {
      out.truncated = true;
      return false;
    }
    if (i == d) {
      if (sum >= 3)
        visit();
      return true;
    }
    const bool is_minus_two = lat.self_intersection()[i] == 2;
    for (int v = cap[i]; v >= 0; --v) {
      if (v > 0 && is_minus_two && filters.minus_two_rule && minus_two + v > 1)
        continue;
      e[i] = v;
      if (v > 0)
        support.push_back(i);
      bool go = self(self, i + 1, sum + v, minus_two + (is_minus_two ? v : 0));
      if (v > 0)
        support.pop_back();
      e[i] = 0;
      if (!go)
        return false;
    }
    return true;
  };
  rec(rec, 0, 0, 0);
  std::sort(out.candidates.begin(), out.candidates.end());
  return out;
}

MinusOneSearch search_minus_one(const ProductQuotientSurface &s, const MinimalityFilters &filters,
                                bool record_systems) {
  return search_minus_one(s.basket, theta(s.v1.signature), theta(s.v2.signature), s.group->order(),
                          s.invariants.pg, s.invariants.gamma, filters, record_systems);
}

const char *to_string(MinimalityVerdict v) {
  switch (v) {
  case MinimalityVerdict::MinimalIfGeneralType:
    return "minimal-if-general-type";
  case MinimalityVerdict::HasLatticeMinusOne:
    return "has-lattice-minus-one";
  case MinimalityVerdict::Inconclusive:
    return "inconclusive";
  }
  return "inconclusive";
}

bool small_curves_criterion(const Basket &basket) {
  int minus_three_or_four = 0;
  bool all_two_three = true;
  for (const auto &[t, mult] : basket.entries())
    for (int b : hj_expand(t.q(), t.n())) {
      if (b > 3)
        all_two_three = false;
      if (b == 3 || b == 4)
        minus_three_or_four += mult;
      else if (b != 2)
        minus_three_or_four = 1000;
    }
  return all_two_three || minus_three_or_four <= 2;
}

MinimalityVerdict minimality_verdict(const Basket &basket, const MinusOneSearch &search) {
  if (small_curves_criterion(basket))
    return MinimalityVerdict::MinimalIfGeneralType;
  if (!search.candidates.empty())
    return MinimalityVerdict::HasLatticeMinusOne;
  if (search.applicability == "complete" && !search.truncated)
    return MinimalityVerdict::MinimalIfGeneralType;
  return MinimalityVerdict::Inconclusive;
}

MinimalityVerdict minimality_heuristic(const ProductQuotientSurface &s) {
  return minimality_report(s).verdict;
}

MinimalityReport minimality_report(const ProductQuotientSurface &s, const MinimalityFilters &filters) {
  MinimalityReport r;
  r.search = search_minus_one(s, filters);
  r.verdict = minimality_verdict(s.basket, r.search);
  return r;
}

} // namespace pqsurf
