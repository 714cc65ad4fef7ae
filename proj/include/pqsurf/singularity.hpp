#pragma once

#include "pqsurf/rational.hpp"

#include <compare>
#include <string>
#include <vector>

namespace pqsurf {

/// Cyclic quotient singularity of type q/n, i.e. 1/n(1,q).
///
/// Types q/n and q'/n (q' the inverse of q mod n) describe the same
/// singularity; the stored q is the smaller of the two. The q given at
/// construction is kept as raw_q().
class SingularityType {
public:
  /// Throws Error(InvalidType) unless 0 < q < n and gcd(q, n) = 1.
  SingularityType(int q, int n);

  static SingularityType parse(const std::string &text);

  int q() const noexcept { return q_; }
  int n() const noexcept { return n_; }
  int raw_q() const noexcept { return raw_q_; }
  /// Multiplicative inverse of q modulo n, in [1, n-1].
  int q_inverse() const noexcept { return q_inv_; }

  std::string str() const;

  /// Ordered by n, then canonical q.
  friend std::strong_ordering operator<=>(const SingularityType &a, const SingularityType &b) {
    if (auto c = a.n_ <=> b.n_; c != 0)
      return c;
    return a.q_ <=> b.q_;
  }
  friend bool operator==(const SingularityType &a, const SingularityType &b) {
    return a.n_ == b.n_ && a.q_ == b.q_;
  }

private:
  int q_;
  int n_;
  int raw_q_;
  int q_inv_;
};

struct SingularityInvariants {
  std::vector<int> hj;
  int l = 0;
  Rational gamma;
  Rational mu;
  int index = 1; // I(q/n)
};

/// Hirzebruch-Jung expansion n/q = [b1, ..., bl], every bi >= 2.
std::vector<int> hj_expand(int q, int n);

SingularityInvariants sing_invariants(const SingularityType &t);

/// The mirrored type (n-q)/n.
SingularityType dual_type(const SingularityType &t);

/// Intersection data of the resolution string of one singularity.
struct HJBlock {
  std::vector<std::vector<int>> matrix; // l x l, diagonal -bi, off-diagonal 1
  std::vector<int> canonical;           // K.Ai = bi - 2
};

HJBlock hj_block(const SingularityType &t);

int mod_inverse(int a, int n);

} // namespace pqsurf
