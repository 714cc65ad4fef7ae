#pragma once

#include "pqsurf/group.hpp"
#include "pqsurf/signature.hpp"

#include <compare>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pqsurf {

/// Spherical generating vector: elements v1..vr of G with order(vi) = mi,
/// v1 * ... * vr = 1, generating G. Entries are element indices.
struct GeneratingVector {
  Signature signature;
  std::vector<int> elements;

  /// "[e1,e2,...]"
  std::string str() const;
  friend auto operator<=>(const GeneratingVector &, const GeneratingVector &) = default;
};

bool is_generating_vector(const FiniteGroup &G, const GeneratingVector &v);

/// Complete list of generating vectors of signature s (g0 = 0), sorted.
std::vector<GeneratingVector> search_spherical_vectors(const FiniteGroup &G, const Signature &s,
                                                       int threads = 1);

/// Same, giving up (nullopt) once the backtracking visits more than node_budget nodes.
std::optional<std::vector<GeneratingVector>>
search_spherical_vectors(const FiniteGroup &G, const Signature &s, long node_budget, int threads);

/// Braid move sigma_i (0-based i) and its inverse.
std::vector<int> braid_move(const FiniteGroup &G, const std::vector<int> &v, std::size_t i);
std::vector<int> braid_move_inverse(const FiniteGroup &G, const std::vector<int> &v, std::size_t i);

/// Canonical forms of vectors up to braid moves and conjugation, memoized per group.
///
/// The canonical form is the least vector in the orbit whose element orders
/// follow the (sorted) period sequence of the signature.
class HurwitzCanonicalizer {
public:
  explicit HurwitzCanonicalizer(const FiniteGroup &G) : G_(G) {}
  const GeneratingVector &canonical(const GeneratingVector &v);
  /// Number of sorted-order vectors in the orbit of v.
  std::size_t orbit_size(const GeneratingVector &v);

private:
  struct Orbit {
    GeneratingVector least;
    std::size_t size = 0;
  };
  const Orbit &orbit(const GeneratingVector &v);

  const FiniteGroup &G_;
  std::deque<Orbit> orbits_;
  std::map<std::vector<int>, std::size_t> index_;
};

/// One canonical representative per braid/conjugation class, sorted.
std::vector<GeneratingVector> hurwitz_classes(const FiniteGroup &G,
                                              const std::vector<GeneratingVector> &vectors);

struct VectorPair {
  GeneratingVector first;
  GeneratingVector second;
  friend auto operator<=>(const VectorPair &, const VectorPair &) = default;
};

struct HurwitzOptions {
  bool use_full_aut = true;
  long aut_budget = 1'000'000;
};

struct HurwitzReduction {
  std::vector<VectorPair> representatives;
  /// Only inner automorphisms were used.
  bool coarse = false;
};

/// Orbits of pairs under braid moves and conjugation on each factor, a common
/// automorphism of G, and the factor swap when both signatures coincide.
HurwitzReduction hurwitz_reduce(const FiniteGroup &G, const std::vector<VectorPair> &pairs,
                                const HurwitzOptions &options = {});

/// Same, reusing a canonicalizer and an already computed automorphism list.
std::vector<VectorPair> hurwitz_reduce(HurwitzCanonicalizer &canon,
                                       const std::vector<std::vector<int>> &automorphisms,
                                       const std::vector<VectorPair> &pairs);

/// A generating subset of a group of automorphisms given by its full element list.
std::vector<std::vector<int>> automorphism_generators(const std::vector<std::vector<int>> &autos);

/// Element orders of v in sequence.
std::vector<int> period_sequence(const FiniteGroup &G, const std::vector<int> &v);

} // namespace pqsurf
