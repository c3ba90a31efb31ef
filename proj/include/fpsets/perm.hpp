#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fpsets {

/// A finitary permutation of the positive integers, stored by its moved
/// points only.  Values are immutable; composition is left to right, so
/// (a * b)(p) = b(a(p)) and x^g = g_inv * x * g.
class Permutation {
 public:
  Permutation() = default;

  /// Builds from (point, image) pairs covering exactly the non-fixed points.
  static Permutation from_moved(std::vector<std::pair<int, int>> moved);
  static Permutation from_cycle(const std::vector<int>& cycle);
  static Permutation from_cycles(const std::vector<std::vector<int>>& cycles);

  /// Parses cycle notation: "(1 2)(3 4)"; "()" or "" is the identity.
  static Permutation parse(std::string_view text);

  int operator()(int point) const;
  bool is_identity() const { return moved_.empty(); }
  const std::vector<std::pair<int, int>>& moved() const { return moved_; }

  Permutation inverse() const;
  Permutation power(long long e) const;
  Permutation conjugated_by(const Permutation& g) const;

  /// Relabels every point through the given strictly increasing pair list.
  Permutation relabeled(const std::vector<std::pair<int, int>>& point_map) const;

  std::vector<int> support() const;
  std::vector<std::vector<int>> cycles() const;
  std::uint64_t order() const;

  /// Canonical text: disjoint cycles, each starting at its least point,
  /// sorted by least point.
  std::string str() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<std::pair<int, int>> moved_;  // sorted by point, no fixed points
};

struct PermutationHash {
  std::size_t operator()(const Permutation& x) const;
};

/// Multiset of cycle lengths >= 2, sorted ascending.
using CycleType = std::vector<int>;

CycleType cycle_type(const Permutation& x);

/// True iff every cycle has length exactly q and the support is the whole
/// domain.
bool is_q_regular(const Permutation& x, int q, const std::vector<int>& domain);

}  // namespace fpsets
