#include "fpsets/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "fpsets/errors.hpp"

namespace fpsets {

namespace {

int lookup(const std::vector<std::pair<int, int>>& moved, int point) {
  auto it = std::lower_bound(moved.begin(), moved.end(),
                             std::make_pair(point, 0),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it != moved.end() && it->first == point) return it->second;
  return point;
}

}  // namespace

Permutation Permutation::from_moved(std::vector<std::pair<int, int>> moved) {
  std::erase_if(moved, [](const auto& pr) { return pr.first == pr.second; });
  std::sort(moved.begin(), moved.end());
  std::set<int> keys, values;
  for (const auto& [k, v] : moved) {
    if (k <= 0 || v <= 0) throw InvalidInput("permutation points must be positive");
    keys.insert(k);
    values.insert(v);
  }
  if (keys.size() != moved.size()) throw InvalidInput("duplicate point in permutation map");
  if (keys != values) throw InvalidInput("permutation map is not a bijection on its key set");
  Permutation x;
  x.moved_ = std::move(moved);
  return x;
}

Permutation Permutation::from_cycle(const std::vector<int>& cycle) {
  if (cycle.size() < 2) return Permutation{};
  std::vector<std::pair<int, int>> moved;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    moved.emplace_back(cycle[i], cycle[(i + 1) % cycle.size()]);
  return from_moved(std::move(moved));
}

Permutation Permutation::from_cycles(const std::vector<std::vector<int>>& cycles) {
  Permutation x;
  for (const auto& c : cycles) x = x * from_cycle(c);
  return x;
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation");
    ++i;
    std::vector<int> cycle;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("expected point or ')' in cycle notation");
      long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > 1'000'000'000) throw ParseError("point out of range");
        ++i;
      }
      cycle.push_back(static_cast<int>(v));
      skip_ws();
      if (i < text.size() && text[i] == ',') { ++i; skip_ws(); }
    }
    if (i == text.size()) throw ParseError("unterminated cycle");
    ++i;  // ')'
    if (cycle.size() == 1) throw ParseError("singleton cycle is not allowed");
    if (!cycle.empty()) {
      std::set<int> pts(cycle.begin(), cycle.end());
      if (pts.size() != cycle.size()) throw ParseError("repeated point within a cycle");
      cycles.push_back(std::move(cycle));
    }
    skip_ws();
  }
  // Cycles of one permutation must be disjoint.
  std::set<int> seen;
  for (const auto& c : cycles)
    for (int p : c)
      if (!seen.insert(p).second) throw ParseError("cycles are not disjoint");
  return from_cycles(cycles);
}

int Permutation::operator()(int point) const { return lookup(moved_, point); }

Permutation Permutation::inverse() const {
  std::vector<std::pair<int, int>> inv;
  inv.reserve(moved_.size());
  for (const auto& [k, v] : moved_) inv.emplace_back(v, k);
  std::sort(inv.begin(), inv.end());
  Permutation x;
  x.moved_ = std::move(inv);
  return x;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  std::vector<std::pair<int, int>> moved;
  std::set<int> keys;
  for (const auto& [k, _] : a.moved_) keys.insert(k);
  for (const auto& [k, _] : b.moved_) keys.insert(k);
  for (int k : keys) {
    int img = b(a(k));
    if (img != k) moved.emplace_back(k, img);
  }
  Permutation x;
  x.moved_ = std::move(moved);  // already sorted, no fixed points
  return x;
}

Permutation Permutation::power(long long e) const {
  std::uint64_t n = order();
  long long r = e % static_cast<long long>(n);
  if (r < 0) r += static_cast<long long>(n);
  Permutation acc, base = *this;
  while (r > 0) {
    if (r & 1) acc = acc * base;
    base = base * base;
    r >>= 1;
  }
  return acc;
}

Permutation Permutation::conjugated_by(const Permutation& g) const {
  std::vector<std::pair<int, int>> moved;
  moved.reserve(moved_.size());
  for (const auto& [k, v] : moved_) moved.emplace_back(g(k), g(v));
  std::sort(moved.begin(), moved.end());
  Permutation x;
  x.moved_ = std::move(moved);
  return x;
}

Permutation Permutation::relabeled(const std::vector<std::pair<int, int>>& point_map) const {
  auto map = [&](int p) {
    for (const auto& [from, to] : point_map)
      if (from == p) return to;
    return p;
  };
  std::vector<std::pair<int, int>> moved;
  moved.reserve(moved_.size());
  for (const auto& [k, v] : moved_) moved.emplace_back(map(k), map(v));
  std::sort(moved.begin(), moved.end());
  Permutation x;
  x.moved_ = std::move(moved);
  return x;
}

std::vector<int> Permutation::support() const {
  std::vector<int> s;
  s.reserve(moved_.size());
  for (const auto& [k, _] : moved_) s.push_back(k);
  return s;  // sorted by construction
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::set<int> left;
  for (const auto& [k, _] : moved_) left.insert(k);
  while (!left.empty()) {
    int start = *left.begin();
    std::vector<int> cyc;
    int cur = start;
    do {
      cyc.push_back(cur);
      left.erase(cur);
      cur = (*this)(cur);
    } while (cur != start);
    out.push_back(std::move(cyc));
  }
  return out;  // least points ascending because std::set iterates in order
}

std::uint64_t Permutation::order() const {
  std::uint64_t n = 1;
  for (const auto& c : cycles()) n = std::lcm<std::uint64_t>(n, c.size());
  return n;
}

std::string Permutation::str() const {
  if (is_identity()) return "()";
  std::ostringstream os;
  for (const auto& c : cycles()) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << ' ';
      os << c[i];
    }
    os << ')';
  }
  return os.str();
}

std::size_t PermutationHash::operator()(const Permutation& x) const {
  std::size_t h = 1469598103934665603ULL;
  for (const auto& [k, v] : x.moved()) {
    h = (h ^ static_cast<std::size_t>(k)) * 1099511628211ULL;
    h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
  }
  return h;
}

CycleType cycle_type(const Permutation& x) {
  CycleType t;
  for (const auto& c : x.cycles()) t.push_back(static_cast<int>(c.size()));
  std::sort(t.begin(), t.end());
  return t;
}

bool is_q_regular(const Permutation& x, int q, const std::vector<int>& domain) {
  if (q < 2) return false;
  auto supp = x.support();
  if (supp != domain) return false;
  for (const auto& c : x.cycles())
    if (static_cast<int>(c.size()) != q) return false;
  return true;
}

}  // namespace fpsets
