#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pqsurf {

/// Permutation of {0, ..., degree-1} given by its images.
using Permutation = std::vector<int>;

/// Hard cap on the order of groups handled with dense tables.
inline constexpr int kMaxGroupOrder = 2048;

/// Finite group stored as a dense Cayley table.
///
/// Elements are numbered 0..order-1 in breadth-first order of the closure of
/// the generating permutations, so 0 is the identity and, for a single
/// generator g, element k is g^k. Products follow the permutation convention
/// "apply the left factor first": (a*b)(x) = b(a(x)).
class FiniteGroup {
public:
  /// Closes the group generated by gens; throws OrderLimitExceeded past max_order.
  static FiniteGroup from_permutations(const std::vector<Permutation> &gens, int degree,
                                       int max_order = kMaxGroupOrder);

  int order() const noexcept { return order_; }
  int mul(int a, int b) const noexcept { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const noexcept { return inverse_[a]; }
  int element_order(int a) const noexcept { return element_order_[a]; }
  int pow(int a, long k) const;
  /// g a g^-1
  int conjugate(int a, int g) const noexcept { return mul(mul(g, a), inverse_[g]); }

  int degree() const noexcept { return degree_; }
  const std::vector<Permutation> &generators() const noexcept { return generators_; }
  /// Element index of the k-th generating permutation.
  int generator_index(std::size_t k) const { return generator_index_.at(k); }
  /// Permutation realizing element a.
  const Permutation &permutation(int a) const { return perms_.at(a); }
  /// Index of the element realized by p, if it belongs to the group.
  std::optional<int> find(const Permutation &p) const;

  const std::optional<std::string> &catalog_id() const noexcept { return catalog_id_; }
  void set_catalog_id(std::string id) { catalog_id_ = std::move(id); }
  /// catalog id if present, otherwise a structural label.
  std::string label() const;
  void set_label(std::string label) { label_ = std::move(label); }

  bool is_abelian() const;
  /// Invariant factors d1 | d2 | ... of an abelian group; empty for the trivial group.
  std::vector<int> abelian_invariants() const;

  std::vector<std::vector<int>> conjugacy_classes() const;

  /// Full automorphism group as permutations of element indices, or nullopt
  /// when the number of candidate generator images exceeds budget.
  std::optional<std::vector<std::vector<int>>> automorphisms(long budget) const;
  std::vector<std::vector<int>> inner_automorphisms() const;

  /// Sorted multiset of element orders.
  std::vector<int> order_statistics() const;

private:
  int order_ = 0;
  int degree_ = 0;
  std::vector<std::uint16_t> table_;
  std::vector<int> inverse_;
  std::vector<int> element_order_;
  std::vector<Permutation> perms_;
  std::map<Permutation, int> index_of_;
  std::vector<Permutation> generators_;
  std::vector<int> generator_index_;
  std::optional<std::string> catalog_id_;
  std::string label_;
};

/// Cyclic subgroups of order >= 2 as (least generating element, order).
std::vector<std::pair<int, int>> cyclic_subgroups(const FiniteGroup &g);

/// Sorted element indices of the subgroup generated by s.
std::vector<int> subgroup_generated(const FiniteGroup &g, const std::vector<int> &s);

bool generates(const FiniteGroup &g, const std::vector<int> &s);

// Built-in constructors.
FiniteGroup cyclic_group(int n);
/// Direct product of cyclic groups of the given orders.
FiniteGroup abelian_group(const std::vector<int> &factors);
/// Dihedral group of order 2n.
FiniteGroup dihedral_group(int n);
FiniteGroup symmetric_group(int k);
FiniteGroup alternating_group(int k);

/// Invariant-factor lists of all abelian groups of order n.
std::vector<std::vector<int>> abelian_invariant_lists(int n);

/// True when every group of order n is abelian.
bool all_groups_abelian(long n);

/// Groups keyed by "order.index", standing in for a small-groups database.
class GroupCatalog {
public:
  const std::map<std::string, FiniteGroup> &groups() const noexcept { return groups_; }
  const FiniteGroup *get(const std::string &id) const;
  std::vector<const FiniteGroup *> groups_of_order(long order) const;
  /// True when the catalog declares the number of groups of this order and holds all of them.
  bool order_complete(long order) const;
  const std::map<long, long> &order_counts() const noexcept { return order_counts_; }

  /// Hex digest of the canonical dump.
  const std::string &digest() const noexcept { return digest_; }

  void add(const std::string &id, FiniteGroup group);
  void declare_order_count(long order, long count);
  void refresh_digest();

private:
  std::map<std::string, FiniteGroup> groups_;
  std::map<long, long> order_counts_;
  std::string digest_;
};

GroupCatalog load_catalog(const std::string &path);
GroupCatalog parse_catalog(std::istream &in);
/// Canonical text form; load(dump(c)) reproduces c and its digest.
std::string dump_catalog(const GroupCatalog &catalog);

/// Splits "order.index" into its parts; throws ParseError when malformed.
std::pair<long, long> parse_group_id(const std::string &id);

} // namespace pqsurf
