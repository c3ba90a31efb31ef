#include "fpsets/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "fpsets/errors.hpp"

namespace fpsets {

struct GroupHandle::Data {
  std::vector<Permutation> generators;
  std::vector<int> domain;
  mutable std::mutex mu;
  mutable std::vector<Permutation> elems;
  mutable bool enumerated = false;
};

namespace {

std::vector<int> union_of_supports(const std::vector<Permutation>& gens,
                                   std::vector<int> domain) {
  std::set<int> pts(domain.begin(), domain.end());
  for (const auto& g : gens)
    for (int p : g.support()) pts.insert(p);
  return {pts.begin(), pts.end()};
}

std::vector<Permutation> bfs_closure(const std::vector<Permutation>& gens,
                                     std::uint64_t cap) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::deque<Permutation> queue;
  seen.insert(Permutation{});
  queue.push_back(Permutation{});
  while (!queue.empty()) {
    Permutation g = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      Permutation h = g * s;
      if (seen.insert(h).second) {
        if (seen.size() > cap) throw CapExceeded("group enumeration exceeds cap");
        queue.push_back(std::move(h));
      }
    }
  }
  std::vector<Permutation> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

GroupHandle::GroupHandle() : d_(std::make_shared<Data>()) {
  d_->elems = {Permutation{}};
  d_->enumerated = true;
}

GroupHandle GroupHandle::from_generators(std::vector<Permutation> gens,
                                         std::vector<int> domain) {
  GroupHandle G;
  G.d_ = std::make_shared<Data>();
  std::erase_if(gens, [](const Permutation& g) { return g.is_identity(); });
  G.d_->domain = union_of_supports(gens, std::move(domain));
  G.d_->generators = std::move(gens);
  if (G.d_->generators.empty()) {
    G.d_->elems = {Permutation{}};
    G.d_->enumerated = true;
  }
  return G;
}

GroupHandle GroupHandle::from_elements(std::vector<Permutation> elements,
                                       std::vector<int> domain) {
  GroupHandle G;
  G.d_ = std::make_shared<Data>();
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() ||
      !std::binary_search(elements.begin(), elements.end(), Permutation{}))
    elements.insert(elements.begin(), Permutation{});
  std::sort(elements.begin(), elements.end());
  G.d_->domain = union_of_supports(elements, std::move(domain));
  G.d_->generators = small_generating_set(elements);
  G.d_->elems = std::move(elements);
  G.d_->enumerated = true;
  return G;
}

GroupHandle GroupHandle::symmetric(const std::vector<int>& domain) {
  std::vector<int> pts(domain);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) return trivial(pts);
  std::vector<Permutation> gens;
  gens.push_back(Permutation::from_cycle({pts[0], pts[1]}));
  if (pts.size() > 2) gens.push_back(Permutation::from_cycle(pts));
  return from_generators(std::move(gens), pts);
}

GroupHandle GroupHandle::trivial(std::vector<int> domain) {
  GroupHandle G;
  G.d_ = std::make_shared<Data>();
  G.d_->domain = std::move(domain);
  G.d_->elems = {Permutation{}};
  G.d_->enumerated = true;
  return G;
}

const std::vector<Permutation>& GroupHandle::generators() const { return d_->generators; }
const std::vector<int>& GroupHandle::domain() const { return d_->domain; }

const std::vector<Permutation>& GroupHandle::elements(std::uint64_t cap) const {
  std::lock_guard<std::mutex> lock(d_->mu);
  if (!d_->enumerated) {
    d_->elems = bfs_closure(d_->generators, cap);
    d_->enumerated = true;
  }
  return d_->elems;
}

std::uint64_t GroupHandle::order(std::uint64_t cap) const { return elements(cap).size(); }

bool GroupHandle::contains(const Permutation& g, std::uint64_t cap) const {
  const auto& e = elements(cap);
  return std::binary_search(e.begin(), e.end(), g);
}

bool GroupHandle::is_trivial() const {
  return d_->generators.empty();
}

std::uint64_t p_part(std::uint64_t n, int p) {
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

bool is_p_power(std::uint64_t n, int p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<Permutation> small_generating_set(const std::vector<Permutation>& elements) {
  std::vector<Permutation> gens;
  std::unordered_set<Permutation, PermutationHash> sub;
  sub.insert(Permutation{});
  for (const auto& e : elements) {
    if (sub.count(e)) continue;
    gens.push_back(e);
    // close the current subgroup
    std::deque<Permutation> queue(sub.begin(), sub.end());
    while (!queue.empty()) {
      Permutation g = queue.front();
      queue.pop_front();
      for (const auto& s : gens) {
        Permutation h = g * s;
        if (sub.insert(h).second) queue.push_back(std::move(h));
      }
    }
    if (sub.size() == elements.size()) break;
  }
  return gens;
}

GroupHandle centralizer(const GroupHandle& G, const std::vector<Permutation>& targets,
                        std::uint64_t cap) {
  std::vector<Permutation> found;
  for (const auto& g : G.elements(cap)) {
    bool ok = true;
    for (const auto& t : targets)
      if (t.conjugated_by(g) != t) {
        ok = false;
        break;
      }
    if (ok) found.push_back(g);
  }
  return GroupHandle::from_elements(std::move(found), G.domain());
}

GroupHandle set_stabilizer(const GroupHandle& G, const std::vector<Permutation>& X,
                           std::uint64_t cap) {
  std::vector<Permutation> sortedX(X);
  std::sort(sortedX.begin(), sortedX.end());
  std::vector<Permutation> found;
  for (const auto& g : G.elements(cap)) {
    bool ok = true;
    for (const auto& x : sortedX) {
      if (!std::binary_search(sortedX.begin(), sortedX.end(), x.conjugated_by(g))) {
        ok = false;
        break;
      }
    }
    if (ok) found.push_back(g);
  }
  return GroupHandle::from_elements(std::move(found), G.domain());
}

GroupHandle normalizer_of_subgroup(const GroupHandle& G, const GroupHandle& Q,
                                   std::uint64_t cap) {
  const auto& qelems = Q.elements(cap);
  std::unordered_set<Permutation, PermutationHash> qset(qelems.begin(), qelems.end());
  std::vector<Permutation> found;
  for (const auto& g : G.elements(cap)) {
    bool ok = true;
    for (const auto& s : Q.generators())
      if (!qset.count(s.conjugated_by(g))) {
        ok = false;
        break;
      }
    if (ok) found.push_back(g);
  }
  return GroupHandle::from_elements(std::move(found), G.domain());
}

GroupHandle sylow_p(const GroupHandle& G, int p, std::uint64_t cap) {
  const auto& elems = G.elements(cap);
  std::uint64_t target = p_part(elems.size(), p);
  if (target == 1) return GroupHandle::trivial(G.domain());

  auto p_element_of = [&](const Permutation& g) {
    // largest p-power-order power of g
    std::uint64_t n = g.order();
    std::uint64_t pk = p_part(n, p);
    return g.power(static_cast<long long>(n / pk));
  };

  std::vector<Permutation> gens;
  std::unordered_set<Permutation, PermutationHash> cur;
  cur.insert(Permutation{});
  for (const auto& g : elems) {
    if (g.order() % p == 0) {
      Permutation u = p_element_of(g);
      gens.push_back(u);
      for (const auto& e : bfs_closure(gens, cap)) cur.insert(e);
      break;
    }
  }

  while (cur.size() < target) {
    bool extended = false;
    for (const auto& g : elems) {
      if (cur.count(g)) continue;
      if (!is_p_power(g.order(), p)) continue;
      bool normalizes = true;
      for (const auto& s : gens)
        if (!cur.count(s.conjugated_by(g))) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;
      gens.push_back(g);
      cur.clear();
      for (const auto& e : bfs_closure(gens, cap)) cur.insert(e);
      extended = true;
      break;
    }
    if (!extended) throw TheoremViolation("sylow extension stalled below the p-part");
  }
  std::vector<Permutation> out(cur.begin(), cur.end());
  return GroupHandle::from_elements(std::move(out), G.domain());
}

GroupHandle sylow_sym(int n, int p) {
  if (n < 1) throw InvalidInput("sylow_sym needs n >= 1");
  // Generators of the Sylow p-subgroup of Sym(p^k) on points base+1..base+p^k.
  auto tower = [&](int k, int base) {
    std::vector<Permutation> gens;
    int blk = 1;
    for (int level = 0; level < k; ++level) {
      // p-cycle of blocks of size blk starting at base+1
      std::vector<std::pair<int, int>> moved;
      for (int b = 0; b < p; ++b)
        for (int i = 1; i <= blk; ++i)
          moved.emplace_back(base + b * blk + i, base + ((b + 1) % p) * blk + i);
      gens.push_back(Permutation::from_moved(std::move(moved)));
      blk *= p;
    }
    return gens;
  };

  std::vector<Permutation> gens;
  int base = 0;
  int rest = n;
  // consume digits of n in base p, largest power first
  std::vector<int> powers;
  for (std::uint64_t q = 1; q <= static_cast<std::uint64_t>(n); q *= p) powers.push_back(static_cast<int>(q));
  for (int idx = static_cast<int>(powers.size()) - 1; idx >= 0; --idx) {
    int q = powers[idx];
    while (rest >= q) {
      auto t = tower(idx, base);
      gens.insert(gens.end(), t.begin(), t.end());
      base += q;
      rest -= q;
    }
  }
  std::vector<int> domain(n);
  for (int i = 0; i < n; ++i) domain[i] = i + 1;
  return GroupHandle::from_generators(std::move(gens), domain);
}

std::vector<std::vector<int>> point_orbits(const std::vector<Permutation>& gens,
                                           const std::vector<int>& domain) {
  std::set<int> left(domain.begin(), domain.end());
  std::vector<std::vector<int>> orbits;
  while (!left.empty()) {
    int start = *left.begin();
    std::vector<int> orbit{start};
    left.erase(start);
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto& g : gens) {
        int img = g(orbit[i]);
        if (left.erase(img)) orbit.push_back(img);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::vector<std::vector<int>> point_orbits(const GroupHandle& G) {
  return point_orbits(G.generators(), G.domain());
}

std::vector<std::vector<Permutation>> conjugation_orbits(const GroupHandle& G,
                                                         const std::vector<Permutation>& X,
                                                         std::uint64_t cap) {
  (void)cap;
  std::set<Permutation> left(X.begin(), X.end());
  std::vector<std::vector<Permutation>> orbits;
  while (!left.empty()) {
    Permutation start = *left.begin();
    std::vector<Permutation> orbit{start};
    left.erase(start);
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto& g : G.generators()) {
        Permutation img = orbit[i].conjugated_by(g);
        if (left.erase(img)) orbit.push_back(img);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

namespace {

using ElementKey = std::vector<Permutation>;

ElementKey key_of(const std::vector<Permutation>& elems) {
  ElementKey k(elems);
  std::sort(k.begin(), k.end());
  return k;
}

}  // namespace

std::vector<GroupHandle> subgroups_up_to_conjugacy(const GroupHandle& P,
                                                   const GroupHandle& ambient,
                                                   int p, std::uint64_t cap) {
  const auto& pel = P.elements(cap);
  if (pel.size() > 1 && !is_p_power(pel.size(), p))
    throw NotPGroup("subgroup lattice enumeration expects a p-group");
  if (pel.size() > cap) throw CapExceeded("subgroup lattice base too large");

  std::set<ElementKey> all;
  std::vector<ElementKey> frontier;
  ElementKey triv{Permutation{}};
  all.insert(triv);
  frontier.push_back(triv);

  while (!frontier.empty()) {
    std::vector<ElementKey> next;
    for (const auto& H : frontier) {
      std::unordered_set<Permutation, PermutationHash> hset(H.begin(), H.end());
      auto hgens = small_generating_set(H);
      for (const auto& x : pel) {
        if (hset.count(x)) continue;
        // extend only by normalizing elements with x^p inside H
        if (!hset.count(x.power(p))) continue;
        bool normalizes = true;
        for (const auto& s : hgens)
          if (!hset.count(s.conjugated_by(x))) {
            normalizes = false;
            break;
          }
        if (!normalizes) continue;
        auto gens2 = hgens;
        gens2.push_back(x);
        auto closure = bfs_closure(gens2, cap);
        auto key = key_of(closure);
        if (all.insert(key).second) next.push_back(std::move(key));
      }
    }
    frontier = std::move(next);
  }

  // Deduplicate by ambient conjugacy.
  const auto& amb = ambient.elements(cap);
  std::set<ElementKey> covered;
  std::vector<GroupHandle> reps;
  for (const auto& H : all) {  // std::set iterates deterministically
    if (covered.count(H)) continue;
    reps.push_back(GroupHandle::from_elements(H, P.domain()));
    for (const auto& g : amb) {
      ElementKey K;
      K.reserve(H.size());
      for (const auto& h : H) K.push_back(h.conjugated_by(g));
      std::sort(K.begin(), K.end());
      if (all.count(K)) covered.insert(K);
    }
  }
  std::sort(reps.begin(), reps.end(), [&](const GroupHandle& a, const GroupHandle& b) {
    auto na = a.elements(cap).size(), nb = b.elements(cap).size();
    if (na != nb) return na < nb;
    return a.elements(cap) < b.elements(cap);
  });
  return reps;
}

bool subgroups_conjugate(const GroupHandle& ambient, const GroupHandle& H,
                         const GroupHandle& K, std::uint64_t cap) {
  const auto& he = H.elements(cap);
  const auto& ke = K.elements(cap);
  if (he.size() != ke.size()) return false;
  for (const auto& g : ambient.elements(cap)) {
    bool ok = true;
    for (const auto& h : H.generators())
      if (!std::binary_search(ke.begin(), ke.end(), h.conjugated_by(g))) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

namespace {

// Backtracking state for centralizer_in_sym.
struct CentSearch {
  const std::vector<int>& pts;                    // sorted domain
  const std::vector<Permutation>& targets;
  std::vector<std::vector<int>> target_images;    // [t][i] image index of pts[i]
  std::vector<std::vector<int>> profiles;         // per point: cycle length in each target
  std::vector<std::vector<int>> orbits;           // index orbits of <targets>
  std::vector<int> assign;                        // image index per point index, -1 unknown
  std::vector<char> used;
  std::vector<Permutation> solutions;
  std::uint64_t cap;

  CentSearch(const std::vector<int>& pts_, const std::vector<Permutation>& targets_,
             std::uint64_t cap_)
      : pts(pts_), targets(targets_), cap(cap_) {
    int n = static_cast<int>(pts.size());
    std::unordered_map<int, int> index;
    for (int i = 0; i < n; ++i) index[pts[i]] = i;
    for (const auto& t : targets) {
      std::vector<int> img(n);
      for (int i = 0; i < n; ++i) img[i] = index.at(t(pts[i]));
      target_images.push_back(std::move(img));
    }
    profiles.assign(n, {});
    for (int i = 0; i < n; ++i)
      for (const auto& t : targets) {
        int len = 1, cur = t(pts[i]);
        while (cur != pts[i]) {
          cur = t(cur);
          ++len;
        }
        profiles[i].push_back(len);
      }
    // orbits of the generated group on indices
    std::vector<char> seen(n, 0);
    for (int i = 0; i < n; ++i) {
      if (seen[i]) continue;
      std::vector<int> orbit{i};
      seen[i] = 1;
      for (std::size_t k = 0; k < orbit.size(); ++k)
        for (const auto& img : target_images) {
          int j = img[orbit[k]];
          if (!seen[j]) {
            seen[j] = 1;
            orbit.push_back(j);
          }
        }
      orbits.push_back(std::move(orbit));
    }
    assign.assign(n, -1);
    used.assign(n, 0);
  }

  // Propagates g(x(p)) = x(g(p)) across the orbit containing root; returns the
  // list of newly assigned indices, or nullopt on conflict.
  bool propagate(int root, int image, std::vector<int>& touched) {
    std::deque<int> queue;
    assign[root] = image;
    used[image] = 1;
    touched.push_back(root);
    queue.push_back(root);
    while (!queue.empty()) {
      int i = queue.front();
      queue.pop_front();
      for (std::size_t t = 0; t < target_images.size(); ++t) {
        int from = target_images[t][i];
        int to = target_images[t][assign[i]];
        if (assign[from] == -1) {
          if (used[to]) return false;
          assign[from] = to;
          used[to] = 1;
          touched.push_back(from);
          queue.push_back(from);
        } else if (assign[from] != to) {
          return false;
        }
      }
    }
    return true;
  }

  void undo(const std::vector<int>& touched) {
    for (int i : touched) {
      used[assign[i]] = 0;
      assign[i] = -1;
    }
  }

  void search(std::size_t orbit_idx) {
    if (orbit_idx == orbits.size()) {
      std::vector<std::pair<int, int>> moved;
      for (std::size_t i = 0; i < assign.size(); ++i)
        if (assign[i] != static_cast<int>(i)) moved.emplace_back(pts[i], pts[assign[i]]);
      solutions.push_back(Permutation::from_moved(std::move(moved)));
      if (solutions.size() > cap) throw CapExceeded("centralizer larger than cap");
      return;
    }
    int root = orbits[orbit_idx][0];
    for (std::size_t c = 0; c < assign.size(); ++c) {
      if (used[c] || profiles[c] != profiles[root]) continue;
      std::vector<int> touched;
      if (propagate(root, static_cast<int>(c), touched)) search(orbit_idx + 1);
      undo(touched);
    }
  }
};

}  // namespace

GroupHandle centralizer_in_sym(const std::vector<int>& domain,
                               const std::vector<Permutation>& targets,
                               std::uint64_t solution_cap) {
  std::vector<int> pts(domain);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (targets.empty()) return GroupHandle::symmetric(pts);
  for (const auto& t : targets)
    for (int p : t.support())
      if (!std::binary_search(pts.begin(), pts.end(), p))
        throw InvalidInput("target moves a point outside the domain");
  CentSearch s(pts, targets, solution_cap);
  s.search(0);
  return GroupHandle::from_elements(std::move(s.solutions), pts);
}

}  // namespace fpsets
