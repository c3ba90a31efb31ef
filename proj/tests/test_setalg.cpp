#include "doctest.h"

#include <random>
#include <set>

#include "fpsets/errors.hpp"
#include "fpsets/fps.hpp"
#include "fpsets/group.hpp"
#include "fpsets/permset.hpp"

using namespace fpsets;

namespace {
constexpr int kSupportCap = 12;
constexpr std::uint64_t kCap = 1'000'000;

SqSet parse_sq(const std::string& s, int q) { return SqSet(PermSet::parse(s), q); }

std::vector<int> iota_domain(int n) {
  std::vector<int> d(n);
  for (int i = 0; i < n; ++i) d[i] = i + 1;
  return d;
}

// random irreducible member of one of the small classes
SqSet random_irreducible(std::mt19937_64& rng) {
  struct Shape {
    int q, degree;
  };
  static const std::vector<Shape> shapes{{2, 2}, {2, 4}, {3, 3}, {2, 6}, {3, 6}, {4, 4}};
  for (;;) {
    const Shape& sh = shapes[rng() % shapes.size()];
    auto cls = ambient_class(sh.q, iota_domain(sh.degree), kCap);
    int want = 1 + static_cast<int>(rng() % std::min<std::size_t>(cls.size(), 4));
    std::set<Permutation> pick;
    while (static_cast<int>(pick.size()) < want) pick.insert(cls[rng() % cls.size()]);
    SqSet X(PermSet(std::vector<Permutation>(pick.begin(), pick.end())), sh.q);
    if (is_irreducible(X.set(), kSupportCap)) return X;
  }
}

}  // namespace

TEST_CASE("star products") {
  PermSet a = PermSet::parse("{(1 2)}");
  CHECK(star(a, a).str() == "{ (1 2)(3 4) }");
  SqSet xi = parse_sq("{(1 2)(3 4),(1 3)(2 4),(1 4)(2 3)}", 2);
  CHECK(star(xi, xi).elements().size() == 9);
  CHECK(star(xi, xi).degree() == 8);
}

TEST_CASE("star is commutative and associative up to equivalence") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 12; ++t) {
    PermSet a = random_irreducible(rng).set();
    PermSet b = random_irreducible(rng).set();
    PermSet c = random_irreducible(rng).set();
    if (a.degree() + b.degree() + c.degree() > kSupportCap) continue;
    CHECK(equivalent(star(a, b), star(b, a), kSupportCap));
    CHECK(equivalent(star(star(a, b), c), star(a, star(b, c)), kSupportCap));
  }
}

TEST_CASE("diagonals") {
  PermSet a = PermSet::parse("{(1 2)}");
  CHECK(delta(a, 2).str() == "{ (1 2)(3 4) }");
  CHECK(delta(a, 1) == a);
  SqSet xi = parse_sq("{(1 2)(3 4),(1 3)(2 4),(1 4)(2 3)}", 2);
  SqSet d3 = delta(xi, 3);
  CHECK(d3.elements().size() == 3);
  CHECK(d3.degree() == 12);
}

TEST_CASE("degree identities") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 10; ++t) {
    SqSet a = random_irreducible(rng);
    SqSet b = random_irreducible(rng);
    if (a.q() == b.q() && a.degree() + b.degree() <= kSupportCap)
      CHECK(star(a, b).degree() == a.degree() + b.degree());
    if (2 * a.degree() <= kSupportCap) CHECK(delta(a, 2).degree() == 2 * a.degree());
  }
}

TEST_CASE("equivalence") {
  CHECK(equivalent(PermSet::parse("{(1 2)(3 4)}"), PermSet::parse("{(1 3)(2 4)}"), kSupportCap));
  PermSet x = PermSet::parse("{(1 2)(3 4),(1 3)(2 4)}");
  CHECK(equivalent(x, x, kSupportCap));
  CHECK_FALSE(equivalent(x, PermSet::parse("{(1 2)(3 4)}"), kSupportCap));
  CHECK_THROWS_AS(
      canonical_form(PermSet::parse("{(1 2 3 4 5 6 7 8 9 10 11 12 13)}"), kSupportCap),
      CapExceeded);
}

TEST_CASE("canonical forms are relabeling invariant") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 25; ++t) {
    SqSet a = random_irreducible(rng);
    // random injection of the support into 1..15
    std::vector<int> big(15);
    for (int i = 0; i < 15; ++i) big[i] = i + 1;
    for (int i = 14; i > 0; --i) std::swap(big[i], big[rng() % (i + 1)]);
    std::vector<std::pair<int, int>> map;
    for (std::size_t i = 0; i < a.support().size(); ++i)
      map.emplace_back(a.support()[i], big[i]);
    std::vector<Permutation> relabeled;
    for (const auto& x : a.elements()) relabeled.push_back(x.relabeled(map));
    PermSet b(relabeled);
    CHECK(canonical_form(a.set(), kSupportCap) == canonical_form(b, kSupportCap));
    CHECK(equivalent(a.set(), b, kSupportCap));
  }
}

TEST_CASE("irreducible factorization of simple products") {
  auto f = irreducible_factors(PermSet::parse("{(1 2)(3 4)}"), kSupportCap);
  REQUIRE(f.size() == 2);
  CHECK(f[0].str() == "{ (1 2) }");
  CHECK(f[1].str() == "{ (3 4) }");
  CHECK(is_irreducible(PermSet::parse("{(1 2)(3 4),(1 3)(2 4),(1 4)(2 3)}"), kSupportCap));
}

TEST_CASE("factorization recovers random product inputs") {
  std::mt19937_64 rng(24);
  int done = 0;
  while (done < 60) {
    int parts = 1 + static_cast<int>(rng() % 4);
    std::vector<PermSet> inputs;
    std::optional<PermSet> prod;
    int degree = 0;
    for (int i = 0; i < parts; ++i) {
      PermSet f = random_irreducible(rng).set();
      if (degree + f.degree() > kSupportCap) break;
      degree += f.degree();
      inputs.push_back(f);
      prod = prod ? star(*prod, f) : f;
    }
    if (!prod || static_cast<int>(inputs.size()) != parts) continue;
    ++done;
    auto factors = irreducible_factors(*prod, kSupportCap);
    REQUIRE(factors.size() == inputs.size());
    std::multiset<std::string> want, got;
    for (const auto& f : inputs) want.insert(canonical_key(f, kSupportCap));
    for (const auto& f : factors) got.insert(canonical_key(f, kSupportCap));
    CHECK(want == got);
  }
}

TEST_CASE("diagonals of irreducibles with several elements stay irreducible") {
  std::mt19937_64 rng(25);
  int done = 0;
  while (done < 8) {
    SqSet a = random_irreducible(rng);
    if (a.elements().size() < 2) continue;
    for (int i = 2; i <= 3; ++i) {
      if (i * a.degree() > kSupportCap) continue;
      CHECK(is_irreducible(delta(a.set(), i), kSupportCap));
    }
    ++done;
  }
}

TEST_CASE("coprimality by factor comparison") {
  SqSet two = parse_sq("{(1 2)}", 2);
  SqSet xi = parse_sq("{(1 2)(3 4),(1 3)(2 4),(1 4)(2 3)}", 2);
  CHECK(coprime(two, xi, kSupportCap));
  CHECK_FALSE(coprime(two, two, kSupportCap));
  CHECK_FALSE(coprime(parse_sq("{(1 2)}", 2), parse_sq("{(3 4)}", 2), kSupportCap));
}

TEST_CASE("coprimality matches the stabilizer product law") {
  // N_{X*Y} = N_X * N_Y exactly for coprime pairs
  std::mt19937_64 rng(26);
  FpsOptions opt;
  int done = 0;
  while (done < 8) {
    SqSet a = random_irreducible(rng);
    SqSet b = random_irreducible(rng);
    if (a.q() != b.q() || a.degree() + b.degree() > 8) continue;
    ++done;
    SqSet ab = star(a, b);
    std::uint64_t na = normalizer_N(a, opt).order(kCap);
    std::uint64_t nb = normalizer_N(b, opt).order(kCap);
    std::uint64_t nab = normalizer_N(ab, opt).order(kCap);
    CHECK((nab == na * nb) == coprime(a, b, kSupportCap));
  }
}

TEST_CASE("the set stabilizer permutes the irreducible factors") {
  FpsOptions opt;
  SqSet two = parse_sq("{(1 2)}", 2);
  SqSet xi = parse_sq("{(1 2)(3 4),(1 3)(2 4),(1 4)(2 3)}", 2);
  SqSet y = star(star(two, two), xi);  // degree 8
  auto factors = irreducible_factors(y.set(), kSupportCap);
  std::set<std::vector<Permutation>> factor_sets;
  for (const auto& f : factors) factor_sets.insert(f.elements());
  GroupHandle N = normalizer_N(y, opt);
  for (const auto& g : N.generators()) {
    for (const auto& f : factors) {
      std::vector<Permutation> image;
      for (const auto& x : f.elements()) image.push_back(x.conjugated_by(g));
      std::sort(image.begin(), image.end());
      CHECK(factor_sets.count(image) == 1);
    }
  }
}

TEST_CASE("transitive sets") {
  CHECK(is_transitive_set(parse_sq("{(1 2)(3 4),(1 3)(2 4),(1 4)(2 3)}", 2)));
  CHECK_FALSE(is_transitive_set(parse_sq("{(1 2)(3 4)}", 2)));
  CHECK(is_transitive_set(parse_sq("{(1 2)}", 2)));
}

TEST_CASE("set literal validation") {
  CHECK_THROWS_AS(PermSet::parse("{}"), ParseError);
  CHECK_THROWS_AS(PermSet(std::vector<Permutation>{Permutation{}}), InvalidInput);
  CHECK_THROWS_AS(SqSet(PermSet::parse("{(1 2)}"), 3), InvalidInput);
  CHECK_THROWS_AS(SqSet(PermSet::parse("{(1 2),(1 2)(3 4)}"), 2), InvalidInput);
  // identity may sit inside a larger set
  PermSet with_id(std::vector<Permutation>{Permutation{}, Permutation::parse("(1 2)")});
  CHECK(with_id.size() == 2);
}
