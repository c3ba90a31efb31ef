#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "fpsets/perm.hpp"

namespace fpsets {

/// A finite permutation group given by generators, with on-demand element
/// enumeration.  Handles are cheap to copy; the underlying data is shared
/// and immutable once enumerated.
class GroupHandle {
 public:
  GroupHandle();  // trivial group on an empty domain

  static GroupHandle from_generators(std::vector<Permutation> gens,
                                     std::vector<int> domain = {});
  /// Wraps an element list that is already closed under the group operations.
  static GroupHandle from_elements(std::vector<Permutation> elements,
                                   std::vector<int> domain = {});
  static GroupHandle symmetric(const std::vector<int>& domain);
  static GroupHandle trivial(std::vector<int> domain = {});

  const std::vector<Permutation>& generators() const;
  const std::vector<int>& domain() const;

  /// Breadth-first closure of the generators; deterministic sorted order.
  /// Throws CapExceeded when the group has more than `cap` elements.
  const std::vector<Permutation>& elements(std::uint64_t cap) const;
  std::uint64_t order(std::uint64_t cap) const;
  bool contains(const Permutation& g, std::uint64_t cap) const;
  bool is_trivial() const;

 private:
  struct Data;
  std::shared_ptr<Data> d_;
};

std::uint64_t p_part(std::uint64_t n, int p);
bool is_p_power(std::uint64_t n, int p);
bool is_prime(int n);

/// Picks a short generating sequence out of an enumerated element list.
std::vector<Permutation> small_generating_set(const std::vector<Permutation>& elements);

/// Subgroup of elements of G commuting with every target, by element filter.
GroupHandle centralizer(const GroupHandle& G, const std::vector<Permutation>& targets,
                        std::uint64_t cap);

/// Subgroup of elements of G mapping the set X onto itself under conjugation.
GroupHandle set_stabilizer(const GroupHandle& G, const std::vector<Permutation>& X,
                           std::uint64_t cap);

/// Subgroup of elements of G conjugating the subgroup Q onto itself.
GroupHandle normalizer_of_subgroup(const GroupHandle& G, const GroupHandle& Q,
                                   std::uint64_t cap);

/// A Sylow p-subgroup of G, grown from a p-element by repeated extension
/// inside normalizers.  Deterministic given the element ordering.
GroupHandle sylow_p(const GroupHandle& G, int p, std::uint64_t cap);

/// Sylow p-subgroup of Sym({1..n}) built from the base-p digits of n via
/// iterated wreath products.
GroupHandle sylow_sym(int n, int p);

/// Orbits of G on its domain.
std::vector<std::vector<int>> point_orbits(const GroupHandle& G);
std::vector<std::vector<int>> point_orbits(const std::vector<Permutation>& gens,
                                           const std::vector<int>& domain);

/// Orbits of G acting on the given permutations by conjugation.
std::vector<std::vector<Permutation>> conjugation_orbits(const GroupHandle& G,
                                                         const std::vector<Permutation>& X,
                                                         std::uint64_t cap);

/// One representative per ambient-conjugacy class of subgroups of the
/// p-group P, found by bottom-up lattice extension.
std::vector<GroupHandle> subgroups_up_to_conjugacy(const GroupHandle& P,
                                                   const GroupHandle& ambient,
                                                   int p, std::uint64_t cap);

bool subgroups_conjugate(const GroupHandle& ambient, const GroupHandle& H,
                         const GroupHandle& K, std::uint64_t cap);

/// All elements of Sym(domain) commuting with every target, by backtracking
/// over one image per orbit of the group the targets generate.  Exact at
/// degrees far beyond what element filtering reaches; `solution_cap` bounds
/// the size of the resulting centralizer.
GroupHandle centralizer_in_sym(const std::vector<int>& domain,
                               const std::vector<Permutation>& targets,
                               std::uint64_t solution_cap);

}  // namespace fpsets
