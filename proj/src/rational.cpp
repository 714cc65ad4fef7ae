#include "pqsurf/rational.hpp"

#include "pqsurf/error.hpp"

#include <cctype>

namespace pqsurf {

const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::InvalidType: return "invalid-type";
  case ErrorKind::InvalidArgument: return "invalid-argument";
  case ErrorKind::NonIntegralGenus: return "non-integral-genus";
  case ErrorKind::GenusTooSmall: return "genus-too-small";
  case ErrorKind::OrderLimitExceeded: return "order-limit-exceeded";
  case ErrorKind::NotAPermutation: return "not-a-permutation";
  case ErrorKind::ParseError: return "parse-error";
  case ErrorKind::DuplicateId: return "duplicate-id";
  case ErrorKind::OrderMismatch: return "order-mismatch";
  case ErrorKind::DimensionMismatch: return "dimension-mismatch";
  case ErrorKind::InconsistentSurface: return "inconsistent-surface";
  case ErrorKind::NotRegular: return "not-regular";
  }
  return "unknown";
}

std::optional<std::int64_t> to_int64(const Rational &r) {
  if (!is_integer(r) || !r.get_num().fits_slong_p())
    return std::nullopt;
  return static_cast<std::int64_t>(r.get_num().get_si());
}

Integer floor(const Rational &r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

std::string to_string(const Rational &r) {
  if (r.get_den() == 1)
    return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string &text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s.push_back(c);
  auto digits = [](const std::string &t, bool allow_sign) {
    if (t.empty())
      return false;
    std::size_t i = (allow_sign && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size())
      return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i])))
        return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false))
    throw Error(ErrorKind::ParseError, "malformed rational '" + text + "'");
  if (num[0] == '+')
    num.erase(0, 1);
  Integer d(den);
  if (d == 0)
    throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
  Rational r(Integer(num), d);
  r.canonicalize();
  return r;
}

} // namespace pqsurf
