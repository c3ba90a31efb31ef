#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpsets/perm.hpp"

namespace fpsets {

/// A finite nonempty set of finitary permutations, not equal to {identity}.
class PermSet {
 public:
  explicit PermSet(std::vector<Permutation> elements);
  static PermSet parse(std::string_view text);  // "{ (1 2)(3 4), (1 3)(2 4) }"

  const std::vector<Permutation>& elements() const { return elems_; }
  const std::vector<int>& support() const { return supp_; }
  int degree() const { return static_cast<int>(supp_.size()); }
  std::size_t size() const { return elems_.size(); }
  bool contains(const Permutation& x) const;
  std::string str() const;

  bool operator==(const PermSet&) const = default;

 private:
  std::vector<Permutation> elems_;  // sorted, unique
  std::vector<int> supp_;           // sorted union of supports
};

/// A PermSet whose members are fixed-point-free products of q-cycles on the
/// common support.
class SqSet {
 public:
  SqSet(PermSet set, int q);
  const PermSet& set() const { return set_; }
  int q() const { return q_; }
  const std::vector<Permutation>& elements() const { return set_.elements(); }
  const std::vector<int>& support() const { return set_.support(); }
  int degree() const { return set_.degree(); }
  std::string str() const { return set_.str(); }

  bool operator==(const SqSet&) const = default;

 private:
  PermSet set_;
  int q_;
};

/// Disjoint-support product: Y is relabeled onto fresh points above X's
/// support and all pairwise products are taken.
PermSet star(const PermSet& X, const PermSet& Y);
SqSet star(const SqSet& X, const SqSet& Y);
PermSet star_power(const PermSet& X, int s);
SqSet star_power(const SqSet& X, int s);

/// Diagonal of the s-fold product.
PermSet delta(const PermSet& X, int s);
SqSet delta(const SqSet& X, int s);

/// Lexicographically least relabeling of X onto {1..degree}.
PermSet canonical_form(const PermSet& X, int support_cap);
std::string canonical_key(const PermSet& X, int support_cap);
bool equivalent(const PermSet& X, const PermSet& Y, int support_cap);

/// The unique multiset of irreducible factors, in deterministic order.
std::vector<PermSet> irreducible_factors(const PermSet& X, int support_cap);
bool is_irreducible(const PermSet& X, int support_cap);

/// True iff no irreducible factor of X is equivalent to one of Y.
bool coprime(const SqSet& X, const SqSet& Y, int support_cap);

/// True iff <X> has a single orbit on the support.
bool is_transitive_set(const SqSet& X);

}  // namespace fpsets
