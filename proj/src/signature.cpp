#include "pqsurf/signature.hpp"

#include "pqsurf/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace pqsurf {

Signature::Signature(int g0, std::vector<int> periods) : g0_(g0), periods_(std::move(periods)) {
  if (g0_ < 0)
    throw Error(ErrorKind::InvalidArgument, "signature genus must be nonnegative");
  for (int m : periods_)
    if (m < 2)
      throw Error(ErrorKind::InvalidArgument, "signature periods must be at least 2");
  std::sort(periods_.begin(), periods_.end());
}

Signature Signature::parse(const std::string &text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s.push_back(c);
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')')
      throw Error(ErrorKind::ParseError, "malformed signature '" + text + "'");
    s = s.substr(1, s.size() - 2);
  }
  int g0 = 0;
  if (auto semi = s.find(';'); semi != std::string::npos) {
    std::string g = s.substr(0, semi);
    if (g.empty() || !std::all_of(g.begin(), g.end(), ::isdigit))
      throw Error(ErrorKind::ParseError, "malformed signature genus in '" + text + "'");
    g0 = std::stoi(g);
    s = s.substr(semi + 1);
  }
  std::vector<int> periods;
  std::size_t start = 0;
  while (start < s.size()) {
    auto comma = s.find(',', start);
    std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (tok.empty() || tok.size() > 6 || !std::all_of(tok.begin(), tok.end(), ::isdigit))
      throw Error(ErrorKind::ParseError, "malformed signature period in '" + text + "'");
    periods.push_back(std::stoi(tok));
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  try {
    return Signature(g0, std::move(periods));
  } catch (const Error &e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::string Signature::str() const {
  std::string out = "(" + std::to_string(g0_) + ";";
  for (std::size_t i = 0; i < periods_.size(); ++i)
    out += (i ? "," : " ") + std::to_string(periods_[i]);
  return out + ")";
}

std::string Signature::short_str() const {
  if (g0_ != 0)
    return str();
  std::string out;
  for (std::size_t i = 0; i < periods_.size(); ++i)
    out += (i ? "," : "") + std::to_string(periods_[i]);
  return out;
}

Rational theta(const Signature &s) {
  Rational t = 2 * s.g0() - 2;
  for (int m : s.periods())
    t += Rational(m - 1, m);
  t.canonicalize();
  return t;
}

int curve_genus(const Signature &s, long order) {
  Rational twice = order * theta(s);
  twice.canonicalize();
  if (!is_integer(twice) || twice.get_num() % 2 != 0)
    throw Error(ErrorKind::NonIntegralGenus,
                "order * theta = " + to_string(twice) + " is not an even integer");
  long g = 1 + twice.get_num().get_si() / 2;
  if (g < 2)
    throw Error(ErrorKind::GenusTooSmall, "curve genus " + std::to_string(g) + " < 2");
  return static_cast<int>(g);
}

namespace {

// m <= 3 + (2 xi + 1 + sqrt((3D + 2 xi + 1)^2 - 12 D)) / D, with D = 4 g0 + r - 3 > 0.
bool within_bound_b(long m, const Rational &xi, long D) {
  Rational a = 3 + (2 * xi + 1) / D;
  Rational y = m - a;
  if (sgn(y) <= 0)
    return true;
  Rational s = 3 * D + 2 * xi + 1;
  Rational x = s * s - 12 * D;
  return y * y * D * D <= x;
}

// m <= 6 (xi + 1 + sqrt(xi (xi + 2))).
bool within_bound_c(long m, const Rational &xi) {
  Rational y = m - 6 * (xi + 1);
  if (sgn(y) <= 0)
    return true;
  return y * y <= 36 * xi * (xi + 2);
}

} // namespace

long period_ceiling(const Rational &xi, int g0, int r) {
  if (r <= 0)
    return 0;
  const long D = 4L * g0 + r - 3;
  auto ok = [&](long m) { return D > 0 ? within_bound_b(m, xi, D) : within_bound_c(m, xi); };
  // Both bounds are of the form m <= root; start from a float estimate and adjust.
  double x = xi.get_d();
  double est = D > 0 ? 3 + (2 * x + 1 + std::sqrt(std::max(0.0, (3 * D + 2 * x + 1) * (3 * D + 2 * x + 1) - 12.0 * D))) / D
                     : 6 * (x + 1 + std::sqrt(x * (x + 2)));
  long m = std::max(1L, static_cast<long>(est));
  while (m > 1 && !ok(m))
    --m;
  while (ok(m + 1))
    ++m;
  return m;
}

namespace {

struct SignatureSearch {
  Rational xi;
  Rational half_xi;
  int g0;
  int r;
  long ceiling;
  std::vector<int> periods;
  std::vector<Signature> out;

  void accept(const Rational &th) {
    // Wiman-type bound against the same curve
    Rational wiman = 2 * (xi / th + 3);
    for (int m : periods)
      if (m > wiman)
        return;
    out.emplace_back(g0, periods);
  }

  void run(int k, int min_m, const Rational &partial) {
    if (k == r) {
      Rational th = partial;
      th.canonicalize();
      if (sgn(th) <= 0)
        return;
      Rational alpha = xi / (2 * th);
      if (is_positive_integer(alpha))
        accept(th);
      return;
    }
    if (k + 1 == r && sgn(partial + make_rational(min_m - 1, min_m)) > 0) {
      // Last period: Theta = xi / (2 alpha) for a positive integer alpha, so
      // solve 1 - 1/m = xi / (2 alpha) - partial for each admissible alpha.
      const Rational th_lo = partial + make_rational(min_m - 1, min_m);
      const Rational th_hi = partial + make_rational(ceiling - 1, ceiling);
      if (sgn(th_hi) <= 0 || th_lo > half_xi)
        return;
      Integer a_lo = floor(xi / (2 * th_hi));
      if (a_lo < 1)
        a_lo = 1;
      const Integer a_hi = floor(xi / (2 * th_lo)) + 1;
      for (Integer a = a_lo; a <= a_hi; ++a) {
        Rational th = xi / (2 * Rational(a));
        if (th < th_lo)
          break;
        if (th > th_hi)
          continue;
        Rational inv_m = partial + 1 - th; // 1/m
        if (sgn(inv_m) <= 0 || inv_m.get_num() != 1)
          continue;
        const Integer &m = inv_m.get_den();
        if (m < min_m || m > ceiling)
          continue;
        periods[k] = static_cast<int>(m.get_si());
        accept(th);
      }
      return;
    }
    for (long m = min_m; m <= ceiling; ++m) {
      Rational lowest = partial + (r - k) * Rational(m - 1, m);
      if (lowest > half_xi)
        break;
      periods[k] = static_cast<int>(m);
      run(k + 1, static_cast<int>(m), partial + Rational(m - 1, m));
    }
  }
};

} // namespace

std::vector<Signature> signature_candidates(const Rational &xi, int g0) {
  if (xi < Rational(1, 2))
    throw Error(ErrorKind::InvalidArgument, "xi must be at least 1/2");
  std::vector<Signature> out;
  Rational rmax = xi + 4 - 2 * g0;
  const long r_cap = floor(rmax).get_si();
  for (long r = 0; r <= r_cap; ++r) {
    if (g0 == 0 && r < 3)
      continue;
    SignatureSearch search;
    search.xi = xi;
    search.half_xi = xi / 2;
    search.g0 = g0;
    search.r = static_cast<int>(r);
    search.ceiling = period_ceiling(xi, g0, static_cast<int>(r));
    search.periods.assign(r, 0);
    search.run(0, 2, Rational(2 * g0 - 2));
    out.insert(out.end(), search.out.begin(), search.out.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool periods_cover_basket(const Signature &s, const Basket &basket) {
  for (const auto &[t, mult] : basket.entries()) {
    bool hit = std::any_of(s.periods().begin(), s.periods().end(),
                           [n = t.n()](int m) { return m % n == 0; });
    if (!hit)
      return false;
  }
  return true;
}

std::vector<Signature> enumerate_signatures(const Rational &xi, const Basket &basket, int g0,
                                            bool gamma_nonzero) {
  // Nonzero gamma needs at least three singular points.
  if (gamma_nonzero && basket.size() < 3)
    return {};
  std::vector<Signature> out;
  for (auto &s : signature_candidates(xi, g0))
    if (periods_cover_basket(s, basket))
      out.push_back(std::move(s));
  return out;
}

namespace {

bool side_passes(const Signature &s, const Rational &th, const Rational &xi, long index,
                 int basket_size) {
  const int r = s.r();
  Rational f = std::max(Rational(1, 6), make_rational(r - 3, 2));
  Rational ixi = index * xi;
  int odd = 0;
  int large = 0;
  for (int m : s.periods()) {
    Rational b = ixi / (th * m);
    b.canonicalize();
    if (!is_positive_integer(b))
      return false;
    Rational c = b / 2;
    c.canonicalize();
    if (!is_integer(c))
      ++odd;
    if (m > (1 + ixi) / f)
      return false;
    if (m > (2 + ixi) / (2 * f))
      ++large;
  }
  return 2 * odd <= basket_size && 2 * large <= basket_size;
}

} // namespace

PairCheck robavecchia_filter(const Signature &s1, const Signature &s2, const Rational &xi,
                             long index, int basket_size) {
  PairCheck out;
  Rational t1 = theta(s1), t2 = theta(s2);
  if (sgn(t1) <= 0 || sgn(t2) <= 0)
    return out;
  Rational order = xi / (t1 * t2);
  order.canonicalize();
  if (!is_positive_integer(order) || !order.get_num().fits_slong_p())
    return out;
  if (!side_passes(s1, t1, xi, index, basket_size) || !side_passes(s2, t2, xi, index, basket_size))
    return out;
  // integral genera, and Wiman's bound on each curve itself
  for (const auto &[s, t] : {std::pair{&s1, &t1}, std::pair{&s2, &t2}}) {
    Rational g = 1 + order * *t / 2;
    if (!is_integer(g) || g < 2)
      return out;
    if (s->periods().back() > 4 * g + 2)
      return out;
  }
  out.pass = true;
  out.order = order.get_num().get_si();
  return out;
}

} // namespace pqsurf
