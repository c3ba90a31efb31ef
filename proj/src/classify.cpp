#include "fpsets/classify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "fpsets/errors.hpp"
#include "fpsets/parallel.hpp"

namespace fpsets {

namespace {

std::string key_of(const SqSet& X, const FpsOptions& opt) {
  return canonical_key(X.set(), std::max(opt.support_cap, X.degree()));
}

SqSet q_cycle_class(int q, int degree, const FpsOptions& opt) {
  std::vector<int> supp(degree);
  std::iota(supp.begin(), supp.end(), 1);
  return SqSet(PermSet(ambient_class(q, supp, opt.ambient_cap)), q);
}

// x with p rows of q-cycles laid out on {1..pq}; row i is ((i-1)q+1 ... iq).
Permutation row_element(int p, int q) {
  std::vector<std::vector<int>> cycles;
  for (int i = 0; i < p; ++i) {
    std::vector<int> c(q);
    std::iota(c.begin(), c.end(), i * q + 1);
    cycles.push_back(std::move(c));
  }
  return Permutation::from_cycles(cycles);
}

// z with q columns of p-cycles through the same layout.
Permutation column_element(int p, int q) {
  std::vector<std::vector<int>> cycles;
  for (int j = 1; j <= q; ++j) {
    std::vector<int> c;
    for (int i = 0; i < p; ++i) c.push_back(i * q + j);
    cycles.push_back(std::move(c));
  }
  return Permutation::from_cycles(cycles);
}

std::vector<Permutation> fix_in_class(const std::vector<Permutation>& cls,
                                      const std::vector<Permutation>& gens) {
  std::vector<Permutation> out;
  for (const auto& xi : cls) {
    bool ok = true;
    for (const auto& g : gens)
      if (xi.conjugated_by(g) != xi) {
        ok = false;
        break;
      }
    if (ok) out.push_back(xi);
  }
  return out;
}

}  // namespace

std::vector<CandidateEntry> transitive_candidates(int p, int q, int max_degree,
                                                  const FpsOptions& opt,
                                                  std::vector<std::string>* notes) {
  if (!is_prime(p)) throw InvalidInput("p must be prime");
  if (!is_prime(q)) throw InvalidInput("classification requires prime q");
  auto note = [&](const std::string& s) {
    if (notes) notes->push_back(s);
  };

  std::vector<std::pair<SqSet, std::string>> raw;

  if (q <= max_degree) {
    raw.emplace_back(q_cycle_class(q, q, opt), "class of q-cycles at degree q");
  }

  if (p != q && p * q <= max_degree) {
    Permutation z = column_element(p, q);
    std::vector<int> supp(p * q);
    std::iota(supp.begin(), supp.end(), 1);
    auto cls = ambient_class(q, supp, opt.ambient_cap);
    auto fix = fix_in_class(cls, {z});
    if (!fix.empty())
      raw.emplace_back(SqSet(PermSet(fix), q), "centralizer of the interleaved p-element");
  }

  if (p == q && p * p <= max_degree) {
    Permutation x = row_element(p, q);
    std::vector<int> supp(p * p);
    std::iota(supp.begin(), supp.end(), 1);
    auto cls = ambient_class(q, supp, opt.ambient_cap);

    auto fix_x = fix_in_class(cls, {x});
    if (!fix_x.empty()) raw.emplace_back(SqSet(PermSet(fix_x), q), "fix of <x>");

    // blocks of x, for the transitivity condition on y
    auto blocks = x.cycles();
    auto block_of = [&](int pt) {
      for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int v : blocks[b])
          if (v == pt) return static_cast<int>(b);
      return -1;
    };
    std::vector<Permutation> t_elements;
    for (const auto& y : fix_x) {
      if (y == x) continue;
      std::vector<int> imgs(blocks.size());
      for (std::size_t b = 0; b < blocks.size(); ++b) imgs[b] = block_of(y(blocks[b][0]));
      // induced block permutation must be a single p-cycle
      std::vector<char> seen(blocks.size(), 0);
      int len = 0, cur = 0;
      while (!seen[cur]) {
        seen[cur] = 1;
        ++len;
        cur = imgs[cur];
      }
      if (len == static_cast<int>(blocks.size()) && cur == 0) t_elements.push_back(y);
    }
    if (!t_elements.empty()) {
      GroupHandle Cx = centralizer_in_sym(supp, {x}, opt.group_cap);
      // all transitivity witnesses should be one conjugacy orbit of C_x
      std::set<Permutation> orbit;
      std::vector<Permutation> frontier{t_elements.front()};
      orbit.insert(t_elements.front());
      while (!frontier.empty()) {
        Permutation y = frontier.back();
        frontier.pop_back();
        for (const auto& g : Cx.generators()) {
          Permutation img = y.conjugated_by(g);
          if (orbit.insert(img).second) frontier.push_back(img);
        }
      }
      bool one_orbit = true;
      for (const auto& y : t_elements)
        if (!orbit.count(y)) one_orbit = false;
      note(one_orbit ? "all transitivity witnesses y are conjugate under the centralizer of x"
                     : "transitivity witnesses y fall into several centralizer orbits");

      const Permutation& y0 = t_elements.front();
      // stabilizer claim: the centralizer of y inside C_x is <x, y>
      std::vector<Permutation> staby;
      for (const auto& g : Cx.elements(opt.group_cap))
        if (y0.conjugated_by(g) == y0) staby.push_back(g);
      GroupHandle gen_xy = GroupHandle::from_generators({x, y0});
      bool stab_matches = gen_xy.order(opt.group_cap) == staby.size();
      if (stab_matches) {
        for (const auto& g : staby)
          if (!gen_xy.contains(g, opt.group_cap)) stab_matches = false;
      }
      note(stab_matches ? "stabilizer of y in the centralizer of x equals <x, y>"
                        : "stabilizer of y in the centralizer of x differs from <x, y>");

      auto fix_xy = fix_in_class(cls, {x, y0});
      if (!fix_xy.empty()) raw.emplace_back(SqSet(PermSet(fix_xy), q), "fix of <x, y>");
    }
  }

  std::vector<CandidateEntry> out;
  std::set<std::string> keys;
  for (auto& [set, origin] : raw) {
    if (!keys.insert(key_of(set, opt)).second) continue;
    CandidateEntry e{set, analyze(set, p, opt), origin, std::nullopt, false};
    bool transitive = is_transitive_set(set);
    bool irreducible = is_irreducible(set.set(), std::max(opt.support_cap, set.degree()));
    e.kept = e.report.fixed_point_set == Verdict::yes && e.report.exact && transitive &&
             irreducible;
    if (e.kept && e.set.degree() != q && e.set.degree() != p * q)
      throw TheoremViolation("verified transitive candidate with impossible degree");
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

std::vector<CandidateEntry> delta_tower(const std::vector<CandidateEntry>& transitive,
                                        int p, int max_degree, const FpsOptions& opt) {
  std::vector<CandidateEntry> out;
  std::set<std::string> keys;
  for (const auto& t : transitive) {
    if (!t.kept) continue;
    std::uint64_t power = 1;
    for (int i = 0;; ++i) {
      std::uint64_t deg = power * t.set.degree();
      if (deg > static_cast<std::uint64_t>(max_degree)) break;
      SqSet d = delta(t.set, static_cast<int>(power));
      std::string key = key_of(d, opt);
      if (keys.insert(key).second) {
        CandidateEntry e{d, analyze(d, p, opt), std::string{}, std::nullopt, false};
        std::ostringstream os;
        os << "delta power p^" << i << " of " << t.origin;
        e.origin = os.str();
        e.kept = e.report.fixed_point_set == Verdict::yes;
        if (e.kept && t.set.elements().size() > 1 &&
            !is_irreducible(d.set(), std::max(opt.support_cap, d.degree())))
          throw TheoremViolation("delta power of an irreducible set factored");
        if (e.kept) e.kappa_info = kappa(d, p, opt);
        out.push_back(std::move(e));
      }
      power *= p;
    }
  }
  return out;
}

}  // namespace

ClassificationReport classify_all(int p, int q, int max_degree, const FpsOptions& opt) {
  ClassificationReport rep;
  rep.p = p;
  rep.q = q;
  rep.max_degree = max_degree;

  rep.transitive = transitive_candidates(p, q, max_degree, opt, &rep.notes);
  rep.irreducible_exact = delta_tower(rep.transitive, p, max_degree, opt);

  // Exponent-bounded products of the pairwise-inequivalent atoms.
  std::vector<const CandidateEntry*> atoms;
  for (const auto& e : rep.irreducible_exact)
    if (e.kept) atoms.push_back(&e);

  std::vector<std::pair<SqSet, std::string>> products;
  std::vector<int> exponents(atoms.size(), 0);
  std::function<void(std::size_t, int)> enumerate = [&](std::size_t idx, int degree_used) {
    if (idx == atoms.size()) {
      int total = 0;
      for (int e : exponents) total += e;
      if (total == 0) return;
      std::optional<SqSet> prod;
      std::ostringstream origin;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!exponents[i]) continue;
        SqSet powered = star_power(atoms[i]->set, exponents[i]);
        prod = prod ? star(*prod, powered) : powered;
        if (origin.tellp() > 0) origin << " * ";
        origin << "(" << atoms[i]->set.str() << ")^" << exponents[i];
      }
      products.emplace_back(std::move(*prod), origin.str());
      return;
    }
    const auto& atom = *atoms[idx];
    int d = atom.set.degree();
    int max_exp = max_degree;  // degree bound dominates below
    if (atom.kappa_info && atom.kappa_info->value)
      max_exp = *atom.kappa_info->value - 1;
    else if (atom.kappa_info)
      max_exp = atom.kappa_info->tested_up_to;  // known-valid range under an exhausted budget
    for (int e = 0; e <= max_exp; ++e) {
      if (degree_used + e * d > max_degree) break;
      exponents[idx] = e;
      enumerate(idx + 1, degree_used + e * d);
    }
    exponents[idx] = 0;
  };
  enumerate(0, 0);

  {
    std::set<std::string> keys;
    std::function<CandidateEntry(int)> verify_one = [&](int i) {
      const auto& [set, origin] = products[i];
      CandidateEntry e{set, analyze(set, p, opt), origin, std::nullopt, false};
      e.kept = e.report.fixed_point_set == Verdict::yes;
      return e;
    };
    auto verified = parallel_map<CandidateEntry>(static_cast<int>(products.size()), opt.jobs,
                                                 verify_one);
    for (auto& e : verified) {
      if (!keys.insert(key_of(e.set, opt)).second) continue;
      if (!e.kept) rep.notes.push_back("projective-free candidate failed verification: " + e.origin);
      rep.projective_free.push_back(std::move(e));
    }
  }

  // Projective irreducible classes: full classes with trivial vertex.
  for (int deg = q; deg <= max_degree; deg += q) {
    SqSet cls = q_cycle_class(q, deg, opt);
    CandidateEntry e{cls, analyze(cls, p, opt), "full class at degree " + std::to_string(deg),
                     std::nullopt, false};
    if (!e.report.closed) throw TheoremViolation("a full class reported as not closed");
    e.kept = e.report.projective && e.report.fixed_point_set == Verdict::yes;
    rep.projective_classes.push_back(std::move(e));
  }

  // Assemble W, V and W * V.
  std::set<std::string> all_keys;
  auto push_all = [&](const SqSet& s, const FpsReport& r, const std::string& origin) {
    if (!all_keys.insert(key_of(s, opt)).second) return;
    rep.all.push_back(CandidateEntry{s, r, origin, std::nullopt, true});
  };
  for (const auto& w : rep.projective_free)
    if (w.kept) push_all(w.set, w.report, w.origin);
  for (const auto& v : rep.projective_classes)
    if (v.kept) push_all(v.set, v.report, v.origin);
  for (const auto& w : rep.projective_free) {
    if (!w.kept) continue;
    for (const auto& v : rep.projective_classes) {
      if (!v.kept) continue;
      if (w.set.degree() + v.set.degree() > max_degree) continue;
      SqSet prod = star(w.set, v.set);
      FpsReport r = analyze(prod, p, opt);
      if (r.fixed_point_set != Verdict::yes)
        rep.notes.push_back("product with a projective class failed verification: " + w.origin +
                            " * " + v.origin);
      else
        push_all(prod, r, w.origin + " * " + v.origin);
    }
  }

  // No fixed point set carries two projective irreducible factors.
  for (const auto& e : rep.all) {
    auto factors = irreducible_factors(e.set.set(), std::max(opt.support_cap, e.set.degree()));
    int projective_factors = 0;
    for (const auto& f : factors)
      if (is_projective_set(SqSet(f, q), p, opt)) ++projective_factors;
    if (projective_factors > 1)
      throw TheoremViolation("emitted set has two projective irreducible factors");
  }

  std::sort(rep.all.begin(), rep.all.end(), [&](const CandidateEntry& a, const CandidateEntry& b) {
    if (a.set.degree() != b.set.degree()) return a.set.degree() < b.set.degree();
    return key_of(a.set, opt) < key_of(b.set, opt);
  });
  return rep;
}

VerifyResult verify_against_oracle(int p, int q, int n, const FpsOptions& opt) {
  VerifyResult res;
  res.p = p;
  res.q = q;
  res.n = n;
  const int d = q * n;

  OracleResult oracle = broue_oracle(p, q, n, opt);
  ClassificationReport cls = classify_all(p, q, d, opt);

  std::map<std::string, std::string> oracle_keys, class_keys;
  for (const auto& e : oracle.kept)
    oracle_keys[key_of(e.set, opt)] = e.set.str();
  for (const auto& e : cls.all)
    if (e.set.degree() == d) class_keys[key_of(e.set, opt)] = e.set.str();

  for (const auto& [k, disp] : oracle_keys) {
    if (class_keys.count(k))
      res.matched.push_back(disp);
    else
      res.missing.push_back(disp);
  }
  for (const auto& [k, disp] : class_keys)
    if (!oracle_keys.count(k)) res.extra.push_back(disp);

  res.conclusive = oracle.conclusive;
  res.total_class_summands = oracle.total_class_summands;
  res.np_sum = oracle.np_sum();
  res.multiplicity_ok = oracle.conclusive && res.total_class_summands == res.np_sum;
  res.agree = res.missing.empty() && res.extra.empty() && res.multiplicity_ok && res.conclusive;
  return res;
}

}  // namespace fpsets
