#include "fpsets/permset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "fpsets/errors.hpp"
#include "fpsets/group.hpp"

namespace fpsets {

namespace {

std::vector<int> union_support(const std::vector<Permutation>& elems) {
  std::set<int> pts;
  for (const auto& x : elems)
    for (int p : x.support()) pts.insert(p);
  return {pts.begin(), pts.end()};
}

// Order-preserving relabeling sending the i-th point of `from` to `to[i]`.
std::vector<std::pair<int, int>> point_map(const std::vector<int>& from,
                                           const std::vector<int>& to) {
  std::vector<std::pair<int, int>> m;
  for (std::size_t i = 0; i < from.size(); ++i)
    if (from[i] != to[i]) m.emplace_back(from[i], to[i]);
  return m;
}

std::vector<Permutation> sorted_unique(std::vector<Permutation> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

PermSet::PermSet(std::vector<Permutation> elements) {
  elems_ = sorted_unique(std::move(elements));
  if (elems_.empty()) throw InvalidInput("permutation set is empty");
  if (elems_.size() == 1 && elems_[0].is_identity())
    throw InvalidInput("the set {identity} is excluded");
  supp_ = union_support(elems_);
}

PermSet PermSet::parse(std::string_view text) {
  std::string s(text);
  auto first = s.find_first_not_of(" \t\n");
  auto last = s.find_last_not_of(" \t\n");
  if (first == std::string::npos) throw ParseError("empty permutation set");
  s = s.substr(first, last - first + 1);
  if (!s.empty() && s.front() == '{') {
    if (s.back() != '}') throw ParseError("unbalanced braces in set literal");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<Permutation> elems;
  int depth = 0;
  std::string cur;
  auto flush = [&] {
    auto b = cur.find_first_not_of(" \t\n");
    if (b == std::string::npos) {
      cur.clear();
      return;
    }
    elems.push_back(Permutation::parse(cur));
    cur.clear();
  };
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      flush();
      continue;
    }
    cur.push_back(c);
  }
  flush();
  if (elems.empty()) throw ParseError("permutation set has no elements");
  return PermSet(std::move(elems));
}

bool PermSet::contains(const Permutation& x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

std::string PermSet::str() const {
  std::ostringstream os;
  os << "{ ";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) os << ", ";
    os << elems_[i].str();
  }
  os << " }";
  return os.str();
}

SqSet::SqSet(PermSet set, int q) : set_(std::move(set)), q_(q) {
  if (q < 2) throw InvalidInput("q must be at least 2");
  const auto& supp = set_.support();
  if (supp.size() % q != 0) throw InvalidInput("q does not divide the support size");
  for (const auto& x : set_.elements())
    if (!is_q_regular(x, q, supp))
      throw InvalidInput("set member is not a fixed point free product of q-cycles");
}

PermSet star(const PermSet& X, const PermSet& Y) {
  int shift_base = X.support().empty() ? 0 : X.support().back();
  std::vector<int> fresh(Y.support().size());
  std::iota(fresh.begin(), fresh.end(), shift_base + 1);
  auto map = point_map(Y.support(), fresh);
  std::vector<Permutation> out;
  out.reserve(X.size() * Y.size());
  for (const auto& x : X.elements())
    for (const auto& y : Y.elements()) out.push_back(x * y.relabeled(map));
  PermSet P(std::move(out));
  if (P.size() != X.size() * Y.size())
    throw TheoremViolation("star product lost elements");
  return P;
}

SqSet star(const SqSet& X, const SqSet& Y) {
  if (X.q() != Y.q()) throw InvalidInput("star of sets with different q");
  return SqSet(star(X.set(), Y.set()), X.q());
}

PermSet star_power(const PermSet& X, int s) {
  if (s < 1) throw InvalidInput("star power needs s >= 1");
  PermSet acc = X;
  for (int i = 1; i < s; ++i) acc = star(acc, X);
  return acc;
}

SqSet star_power(const SqSet& X, int s) { return SqSet(star_power(X.set(), s), X.q()); }

PermSet delta(const PermSet& X, int s) {
  if (s < 1) throw InvalidInput("delta needs s >= 1");
  if (s == 1) return X;
  const auto& supp = X.support();
  int d = static_cast<int>(supp.size());
  int base = supp.back();
  std::vector<std::vector<std::pair<int, int>>> maps;
  for (int i = 1; i < s; ++i) {
    std::vector<int> fresh(d);
    std::iota(fresh.begin(), fresh.end(), base + (i - 1) * d + 1);
    maps.push_back(point_map(supp, fresh));
  }
  std::vector<Permutation> out;
  out.reserve(X.size());
  for (const auto& x : X.elements()) {
    Permutation prod = x;
    for (const auto& m : maps) prod = prod * x.relabeled(m);
    out.push_back(std::move(prod));
  }
  return PermSet(std::move(out));
}

SqSet delta(const SqSet& X, int s) { return SqSet(delta(X.set(), s), X.q()); }

// ---------------------------------------------------------------------------
// Canonical form

namespace {

// Count of full-support permutations on d points with m_l cycles of length l.
std::uint64_t count_with_cycle_type(const CycleType& type, int d) {
  std::uint64_t total = 1;
  for (int i = 2; i <= d; ++i) total *= static_cast<std::uint64_t>(i);
  std::map<int, int> mult;
  for (int l : type) ++mult[l];
  for (const auto& [l, m] : mult) {
    for (int i = 0; i < m; ++i) total /= static_cast<std::uint64_t>(l);
    for (int i = 1; i <= m; ++i) total /= static_cast<std::uint64_t>(i);
  }
  return total;
}

using Row = std::vector<int>;

Row row_of(const Permutation& x, int d) {
  Row r(d);
  for (int j = 0; j < d; ++j) r[j] = x(j + 1);
  return r;
}

// Cycle lengths including fixed points relative to {1..d}, sorted ascending.
std::vector<int> full_type(const Permutation& x, int d) {
  std::vector<int> t(static_cast<std::size_t>(d) - x.support().size(), 1);
  for (const auto& c : x.cycles()) t.push_back(static_cast<int>(c.size()));
  std::sort(t.begin(), t.end());
  return t;
}

// The permutation of this type on {1..d} whose row vector is lexicographically
// least: cycles laid out consecutively, shortest first.
Permutation type_canonical(const std::vector<int>& type) {
  std::vector<std::vector<int>> cycles;
  int next = 1;
  for (int len : type) {
    if (len > 1) {
      std::vector<int> c(len);
      std::iota(c.begin(), c.end(), next);
      cycles.push_back(std::move(c));
    }
    next += len;
  }
  return Permutation::from_cycles(cycles);
}

// One relabeling of {1..d} sending x to the type-canonical permutation.
Permutation align_to_canonical(const Permutation& x, int d) {
  std::vector<std::vector<int>> slots;  // fixed points, then cycles by length
  {
    auto supp = x.support();
    for (int pt = 1; pt <= d; ++pt)
      if (!std::binary_search(supp.begin(), supp.end(), pt)) slots.push_back({pt});
  }
  for (auto& c : x.cycles()) slots.push_back(c);
  std::stable_sort(slots.begin(), slots.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<std::pair<int, int>> moved;
  int next = 1;
  for (const auto& slot : slots)
    for (int v : slot) {
      if (v != next) moved.emplace_back(v, next);
      ++next;
    }
  return Permutation::from_moved(std::move(moved));
}

PermSet from_rows(const std::vector<Row>& rows, int d) {
  std::vector<Permutation> elems;
  for (const auto& r : rows) {
    std::vector<std::pair<int, int>> moved;
    for (int j = 0; j < d; ++j)
      if (r[j] != j + 1) moved.emplace_back(j + 1, r[j]);
    elems.push_back(Permutation::from_moved(std::move(moved)));
  }
  return PermSet(std::move(elems));
}

std::vector<Row> key_rows(const std::vector<Permutation>& elems, const Permutation& sigma,
                          int d) {
  std::vector<Row> rows;
  rows.reserve(elems.size());
  for (const auto& x : elems) rows.push_back(row_of(x.conjugated_by(sigma), d));
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

namespace {

std::vector<Permutation> normalized_elements(const PermSet& X) {
  int d = X.degree();
  std::vector<int> target(d);
  std::iota(target.begin(), target.end(), 1);
  auto map = point_map(X.support(), target);
  std::vector<Permutation> normalized;
  for (const auto& x : X.elements()) normalized.push_back(x.relabeled(map));
  return sorted_unique(std::move(normalized));
}

// True when the set holds every full-support element of one cycle type, so
// that each relabeling of {1..d} fixes it.
bool relabeling_invariant(const std::vector<Permutation>& normalized, int d) {
  CycleType t0 = cycle_type(normalized.front());
  for (const auto& x : normalized)
    if (static_cast<int>(x.support().size()) != d || cycle_type(x) != t0) return false;
  return count_with_cycle_type(t0, d) == normalized.size();
}

std::uint64_t centralizer_order_of_type(const std::vector<int>& type) {
  std::map<int, int> mult;
  for (int l : type) ++mult[l];
  std::uint64_t n = 1;
  for (const auto& [l, m] : mult) {
    for (int i = 0; i < m; ++i) n *= static_cast<std::uint64_t>(l);
    for (int i = 1; i <= m; ++i) n *= static_cast<std::uint64_t>(i);
  }
  return n;
}

constexpr std::uint64_t kCentCap = 1'000'000;

}  // namespace

PermSet canonical_form(const PermSet& X, int support_cap) {
  int d = X.degree();
  if (d > support_cap) throw CapExceeded("support size exceeds the equivalence cap");

  std::vector<Permutation> normalized = normalized_elements(X);
  if (relabeling_invariant(normalized, d)) return PermSet(std::move(normalized));

  // The identity row is insensitive to the relabeling; canonicalize the rest.
  if (normalized.front().is_identity()) {
    std::vector<Permutation> rest(normalized.begin() + 1, normalized.end());
    PermSet inner = canonical_form(PermSet(std::move(rest)), support_cap);
    std::vector<Permutation> out{Permutation{}};
    out.insert(out.end(), inner.elements().begin(), inner.elements().end());
    return PermSet(std::move(out));
  }

  // The first row of the canonical key is the least row any element can be
  // relabeled to, which depends only on its cycle type.  Every optimal
  // relabeling therefore lies in align(x) * C(type canonical) for one of the
  // elements x realizing that least type.
  std::vector<int> best_type;
  for (const auto& x : normalized) {
    auto t = full_type(x, d);
    if (best_type.empty() || row_of(type_canonical(t), d) < row_of(type_canonical(best_type), d))
      best_type = t;
  }
  Permutation c0 = type_canonical(best_type);
  std::vector<int> dom(d);
  std::iota(dom.begin(), dom.end(), 1);
  GroupHandle cent = centralizer_in_sym(dom, {c0}, kCentCap);

  std::optional<std::vector<Row>> best;
  for (const auto& x : normalized) {
    if (full_type(x, d) != best_type) continue;
    Permutation sigma0 = align_to_canonical(x, d);
    for (const auto& c : cent.elements(kCentCap)) {
      Permutation sigma = sigma0 * c;
      auto rows = key_rows(normalized, sigma, d);
      if (!best || rows < *best) best = std::move(rows);
    }
  }
  return from_rows(*best, d);
}

std::string canonical_key(const PermSet& X, int support_cap) {
  return canonical_form(X, support_cap).str();
}

bool equivalent(const PermSet& X, const PermSet& Y, int support_cap) {
  if (X.size() != Y.size() || X.degree() != Y.degree()) return false;
  int d = X.degree();
  if (d > support_cap) throw CapExceeded("support size exceeds the equivalence cap");
  std::multiset<CycleType> tx, ty;
  for (const auto& x : X.elements()) tx.insert(cycle_type(x));
  for (const auto& y : Y.elements()) ty.insert(cycle_type(y));
  if (tx != ty) return false;

  std::vector<Permutation> xs = normalized_elements(X);
  std::vector<Permutation> ys = normalized_elements(Y);
  if (xs == ys) return true;
  if (relabeling_invariant(xs, d)) return ys == xs;

  // Direct search: a witness must send a pivot of X to a member of Y with
  // the same full type, and is then determined up to the centralizer.
  std::vector<int> dom(d);
  std::iota(dom.begin(), dom.end(), 1);
  // pivot: smallest centralizer, then fewest same-type partners
  Permutation pivot = xs.front();
  {
    std::map<std::vector<int>, int> counts;
    for (const auto& x : xs) ++counts[full_type(x, d)];
    std::optional<std::pair<std::uint64_t, int>> best_cost;
    for (const auto& x : xs) {
      auto t = full_type(x, d);
      std::pair<std::uint64_t, int> cost{centralizer_order_of_type(t), counts[t]};
      if (!best_cost || cost < *best_cost) {
        best_cost = cost;
        pivot = x;
      }
    }
  }
  auto pivot_type = full_type(pivot, d);
  Permutation cpiv = type_canonical(pivot_type);
  GroupHandle cent = centralizer_in_sym(dom, {cpiv}, kCentCap);
  Permutation to_canon = align_to_canonical(pivot, d);

  std::set<Permutation> yset(ys.begin(), ys.end());
  for (const auto& y : ys) {
    if (full_type(y, d) != pivot_type) continue;
    // sigma = align(pivot) * c * align(y)^-1 sends pivot to y
    Permutation back = align_to_canonical(y, d).inverse();
    for (const auto& c : cent.elements(kCentCap)) {
      Permutation sigma = to_canon * c * back;
      bool ok = true;
      for (const auto& x : xs)
        if (!yset.count(x.conjugated_by(sigma))) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Factorization

namespace {

std::vector<Permutation> restrict_all(const std::vector<Permutation>& elems,
                                      const std::vector<int>& pts) {
  std::vector<Permutation> out;
  out.reserve(elems.size());
  for (const auto& x : elems) {
    std::vector<std::pair<int, int>> moved;
    for (const auto& [k, v] : x.moved())
      if (std::binary_search(pts.begin(), pts.end(), k)) moved.emplace_back(k, v);
    out.push_back(Permutation::from_moved(std::move(moved)));
  }
  return sorted_unique(std::move(out));
}

void factor_recursive(const std::vector<Permutation>& elems, const std::vector<int>& supp,
                      std::vector<std::vector<Permutation>>& out) {
  auto blocks = point_orbits(elems, supp);
  int t = static_cast<int>(blocks.size());
  if (t > 1) {
    for (std::uint64_t mask = 1; mask < (1ULL << (t - 1)); ++mask) {
      std::vector<int> alpha, beta;
      for (int b = 0; b < t; ++b) {
        bool in_beta = b > 0 && (mask >> (b - 1)) & 1;
        auto& side = in_beta ? beta : alpha;
        side.insert(side.end(), blocks[b].begin(), blocks[b].end());
      }
      std::sort(alpha.begin(), alpha.end());
      std::sort(beta.begin(), beta.end());
      auto A = restrict_all(elems, alpha);
      auto B = restrict_all(elems, beta);
      if (A.size() * B.size() != elems.size()) continue;
      std::vector<Permutation> prod;
      prod.reserve(elems.size());
      for (const auto& a : A)
        for (const auto& b : B) prod.push_back(a * b);
      std::sort(prod.begin(), prod.end());
      if (prod == elems) {
        factor_recursive(A, alpha, out);
        factor_recursive(B, beta, out);
        return;
      }
    }
  }
  out.push_back(elems);
}

}  // namespace

std::vector<PermSet> irreducible_factors(const PermSet& X, int support_cap) {
  if (X.degree() > support_cap) throw CapExceeded("support size exceeds the factor cap");
  std::vector<std::vector<Permutation>> raw;
  factor_recursive(X.elements(), X.support(), raw);
  std::vector<PermSet> out;
  out.reserve(raw.size());
  for (auto& v : raw) out.push_back(PermSet(std::move(v)));
  std::sort(out.begin(), out.end(), [&](const PermSet& a, const PermSet& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.size() != b.size()) return a.size() < b.size();
    return canonical_key(a, support_cap) < canonical_key(b, support_cap);
  });
  return out;
}

bool is_irreducible(const PermSet& X, int support_cap) {
  return irreducible_factors(X, support_cap).size() == 1;
}

bool coprime(const SqSet& X, const SqSet& Y, int support_cap) {
  auto fx = irreducible_factors(X.set(), support_cap);
  auto fy = irreducible_factors(Y.set(), support_cap);
  std::set<std::string> keys;
  for (const auto& f : fx) keys.insert(canonical_key(f, support_cap));
  for (const auto& f : fy)
    if (keys.count(canonical_key(f, support_cap))) return false;
  return true;
}

bool is_transitive_set(const SqSet& X) {
  return point_orbits(X.elements(), X.support()).size() == 1;
}

}  // namespace fpsets
