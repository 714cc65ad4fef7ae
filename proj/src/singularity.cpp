#include "pqsurf/singularity.hpp"

#include "pqsurf/error.hpp"

#include <cctype>
#include <numeric>

namespace pqsurf {

namespace {

void check_type(int q, int n) {
  if (n < 2 || q <= 0 || q >= n)
    throw Error(ErrorKind::InvalidType,
                "invalid type: need 0 < q < n, got " + std::to_string(q) + "/" + std::to_string(n));
  if (std::gcd(q, n) != 1)
    throw Error(ErrorKind::InvalidType, "invalid type: gcd(q,n) must be 1");
}

} // namespace

int mod_inverse(int a, int n) {
  // extended Euclid on (a, n)
  long long r0 = n, r1 = ((a % n) + n) % n, t0 = 0, t1 = 1;
  while (r1 != 0) {
    long long quot = r0 / r1;
    long long r2 = r0 - quot * r1;
    r0 = r1;
    r1 = r2;
    long long t2 = t0 - quot * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1)
    throw Error(ErrorKind::InvalidArgument, "no inverse modulo " + std::to_string(n));
  return static_cast<int>(((t0 % n) + n) % n);
}

SingularityType::SingularityType(int q, int n) : raw_q_(q) {
  check_type(q, n);
  n_ = n;
  int qi = mod_inverse(q, n);
  q_ = std::min(q, qi);
  q_inv_ = std::max(q, qi);
}

SingularityType SingularityType::parse(const std::string &text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s.push_back(c);
  auto slash = s.find('/');
  auto all_digits = [](const std::string &t) {
    if (t.empty() || t.size() > 9)
      return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        return false;
    return true;
  };
  if (slash == std::string::npos || !all_digits(s.substr(0, slash)) ||
      !all_digits(s.substr(slash + 1)))
    throw Error(ErrorKind::ParseError, "malformed singularity type '" + text + "'");
  return SingularityType(std::stoi(s.substr(0, slash)), std::stoi(s.substr(slash + 1)));
}

std::string SingularityType::str() const {
  return std::to_string(q_) + "/" + std::to_string(n_);
}

std::vector<int> hj_expand(int q, int n) {
  check_type(q, n);
  std::vector<int> out;
  long long num = n, den = q;
  while (den != 0) {
    long long b = (num + den - 1) / den;
    out.push_back(static_cast<int>(b));
    long long next = b * den - num;
    num = den;
    den = next;
  }
  return out;
}

SingularityInvariants sing_invariants(const SingularityType &t) {
  SingularityInvariants inv;
  inv.hj = hj_expand(t.q(), t.n());
  inv.l = static_cast<int>(inv.hj.size());
  long long excess = 0;
  for (int b : inv.hj)
    excess += b - 3;
  inv.gamma = (make_rational(t.q() + t.q_inverse(), t.n()) + Rational(static_cast<long>(excess))) / 6;
  inv.gamma.canonicalize();
  inv.mu = Rational(1) - Rational(1, t.n());
  inv.mu.canonicalize();
  inv.index = t.n() / std::gcd(t.n(), t.q() + 1);
  return inv;
}

SingularityType dual_type(const SingularityType &t) {
  return SingularityType(t.n() - t.q(), t.n());
}

HJBlock hj_block(const SingularityType &t) {
  auto hj = hj_expand(t.q(), t.n());
  const std::size_t l = hj.size();
  HJBlock block;
  block.matrix.assign(l, std::vector<int>(l, 0));
  block.canonical.resize(l);
  for (std::size_t i = 0; i < l; ++i) {
    block.matrix[i][i] = -hj[i];
    if (i + 1 < l)
      block.matrix[i][i + 1] = block.matrix[i + 1][i] = 1;
    block.canonical[i] = hj[i] - 2;
  }
  return block;
}

} // namespace pqsurf
