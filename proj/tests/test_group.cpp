#include "doctest.h"

#include <algorithm>
#include <set>

#include "fpsets/errors.hpp"
#include "fpsets/group.hpp"

using namespace fpsets;

namespace {
constexpr std::uint64_t kCap = 1'000'000;

std::vector<int> iota_domain(int n) {
  std::vector<int> d(n);
  for (int i = 0; i < n; ++i) d[i] = i + 1;
  return d;
}
}  // namespace

TEST_CASE("enumeration of small groups") {
  GroupHandle s4 = GroupHandle::from_generators(
      {Permutation::parse("(1 2)"), Permutation::parse("(1 2 3 4)")});
  CHECK(s4.order(kCap) == 24);
  CHECK(GroupHandle::trivial().order(kCap) == 1);
  GroupHandle s10 = GroupHandle::symmetric(iota_domain(10));
  CHECK_THROWS_AS(s10.elements(kCap), CapExceeded);
}

TEST_CASE("centralizers by element filter") {
  GroupHandle s6 = GroupHandle::symmetric(iota_domain(6));
  GroupHandle c = centralizer(s6, {Permutation::parse("(1 2)(3 4)(5 6)")}, kCap);
  CHECK(c.order(kCap) == 48);  // wreath of order 2^3 * 3!
  GroupHandle s4 = GroupHandle::symmetric(iota_domain(4));
  CHECK(centralizer(s4, {Permutation{}}, kCap).order(kCap) == 24);
  GroupHandle c2 = centralizer(
      s4, {Permutation::parse("(1 2)(3 4)"), Permutation::parse("(1 3)(2 4)")}, kCap);
  CHECK(c2.order(kCap) == 4);
}

TEST_CASE("set stabilizers") {
  GroupHandle s4 = GroupHandle::symmetric(iota_domain(4));
  std::vector<Permutation> klass{Permutation::parse("(1 2)(3 4)"),
                                 Permutation::parse("(1 3)(2 4)"),
                                 Permutation::parse("(1 4)(2 3)")};
  CHECK(set_stabilizer(s4, klass, kCap).order(kCap) == 24);
  CHECK(set_stabilizer(s4, {Permutation::parse("(1 2)(3 4)")}, kCap).order(kCap) == 8);
  // the centralizer always sits inside the set stabilizer
  GroupHandle cen = centralizer(s4, klass, kCap);
  GroupHandle stab = set_stabilizer(s4, klass, kCap);
  for (const auto& g : cen.elements(kCap)) CHECK(stab.contains(g, kCap));
}

TEST_CASE("sylow subgroups of small groups") {
  GroupHandle s4 = GroupHandle::symmetric(iota_domain(4));
  CHECK(sylow_p(s4, 2, kCap).order(kCap) == 8);
  CHECK(sylow_p(s4, 3, kCap).order(kCap) == 3);
  CHECK(sylow_p(GroupHandle::trivial(), 5, kCap).order(kCap) == 1);
}

TEST_CASE("wreath tower sylow subgroups of symmetric groups") {
  CHECK(sylow_sym(4, 2).order(kCap) == 8);
  CHECK(sylow_sym(6, 2).order(kCap) == 16);
  CHECK(sylow_sym(9, 3).order(kCap) == 81);
  for (int n = 2; n <= 8; ++n) {
    GroupHandle sym = GroupHandle::symmetric(iota_domain(n));
    for (int p : {2, 3}) {
      CHECK(sylow_sym(n, p).order(kCap) == sylow_p(sym, p, kCap).order(kCap));
      CHECK(sylow_sym(n, p).order(kCap) == p_part(sym.order(kCap), p));
    }
  }
}

TEST_CASE("orbits") {
  GroupHandle g = GroupHandle::from_generators({Permutation::parse("(1 2)(3 4)")},
                                               iota_domain(4));
  auto orb = point_orbits(g);
  CHECK(orb == std::vector<std::vector<int>>{{1, 2}, {3, 4}});
  CHECK(point_orbits(GroupHandle::trivial(iota_domain(3))).size() == 3);
  GroupHandle v4 = GroupHandle::from_generators(
      {Permutation::parse("(1 2)(3 4)"), Permutation::parse("(1 3)(2 4)"),
       Permutation::parse("(1 4)(2 3)")});
  CHECK(point_orbits(v4).size() == 1);
}

TEST_CASE("orbit stabilizer product") {
  GroupHandle s4 = GroupHandle::symmetric(iota_domain(4));
  GroupHandle d8 = sylow_p(s4, 2, kCap);
  for (const GroupHandle& G : {s4, d8}) {
    auto orbits = point_orbits(G);
    for (const auto& orb : orbits) {
      int pt = orb[0];
      std::uint64_t stab = 0;
      for (const auto& g : G.elements(kCap))
        if (g(pt) == pt) ++stab;
      CHECK(orb.size() * stab == G.order(kCap));
    }
  }
}

TEST_CASE("subgroup representatives up to conjugacy") {
  GroupHandle amb2 = GroupHandle::symmetric(iota_domain(2));
  GroupHandle c2 = GroupHandle::from_generators({Permutation::parse("(1 2)")});
  CHECK(subgroups_up_to_conjugacy(c2, amb2, 2, kCap).size() == 2);

  GroupHandle s4 = GroupHandle::symmetric(iota_domain(4));
  GroupHandle v4prime = GroupHandle::from_generators(
      {Permutation::parse("(1 2)"), Permutation::parse("(3 4)")});
  // 1, a transposition class, the double transposition class, and the whole
  CHECK(subgroups_up_to_conjugacy(v4prime, s4, 2, kCap).size() == 4);
}

TEST_CASE("subgroup walk matches a brute force lattice") {
  GroupHandle s4 = GroupHandle::symmetric(iota_domain(4));
  GroupHandle d8 = sylow_sym(4, 2);
  auto reps = subgroups_up_to_conjugacy(d8, s4, 2, kCap);

  // independent: all subsets of the eight elements that form subgroups
  const auto& elems = d8.elements(kCap);
  std::set<std::vector<Permutation>> lattice;
  for (std::uint64_t mask = 1; mask < (1ULL << elems.size()); ++mask) {
    std::vector<Permutation> subset;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if ((mask >> i) & 1) subset.push_back(elems[i]);
    bool closed = true;
    for (const auto& a : subset) {
      for (const auto& b : subset)
        if (!std::binary_search(subset.begin(), subset.end(), a * b)) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    if (closed && std::binary_search(subset.begin(), subset.end(), Permutation{}))
      lattice.insert(subset);
  }
  CHECK(lattice.size() == 10);

  std::vector<GroupHandle> groups;
  for (const auto& s : lattice) groups.push_back(GroupHandle::from_elements(s));
  std::vector<bool> used(groups.size(), false);
  int classes = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (used[i]) continue;
    ++classes;
    for (std::size_t j = i; j < groups.size(); ++j)
      if (!used[j] && subgroups_conjugate(s4, groups[i], groups[j], kCap)) used[j] = true;
  }
  CHECK(reps.size() == static_cast<std::size_t>(classes));
  CHECK(reps.size() == 7);
}

TEST_CASE("centralizer backtracking agrees with the filter") {
  GroupHandle s6 = GroupHandle::symmetric(iota_domain(6));
  std::vector<std::vector<Permutation>> cases{
      {Permutation::parse("(1 2)(3 4)(5 6)")},
      {Permutation::parse("(1 2 3)(4 5 6)")},
      {Permutation::parse("(1 2)(3 4)"), Permutation::parse("(1 3)(2 4)")},
      {Permutation::parse("(1 2 3 4 5 6)")},
  };
  for (const auto& targets : cases) {
    GroupHandle a = centralizer(s6, targets, kCap);
    GroupHandle b = centralizer_in_sym(iota_domain(6), targets, kCap);
    CHECK(a.elements(kCap) == b.elements(kCap));
  }
  // trivial target list gives the whole symmetric group
  CHECK(centralizer_in_sym(iota_domain(4), {}, kCap).order(kCap) == 24);
}
