#include "fpsets/fps.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "fpsets/errors.hpp"
#include "fpsets/parallel.hpp"

namespace fpsets {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "true";
    case Verdict::no: return "false";
    default: return "unknown";
  }
}

std::uint64_t ambient_class_size(int q, int d) {
  if (q < 2 || d <= 0 || d % q != 0) return 0;
  // d!/(q^(d/q) (d/q)!) equals prod over blocks of (qi-1)(qi-2)..(qi-q+1)
  std::uint64_t total = 1;
  for (int i = 1; i <= d / q; ++i)
    for (int j = 1; j < q; ++j) total *= static_cast<std::uint64_t>(q * i - j);
  return total;
}

namespace {

void gen_class(const std::vector<int>& left, int q, Permutation acc,
               std::vector<Permutation>& out, std::uint64_t cap) {
  if (left.empty()) {
    out.push_back(std::move(acc));
    if (out.size() > cap) throw CapExceeded("ambient class larger than cap");
    return;
  }
  int a = left[0];
  std::vector<int> rest(left.begin() + 1, left.end());
  // choose an ordered (q-1)-tuple from rest to complete the cycle of a
  std::vector<int> tuple;
  std::vector<char> used(rest.size(), 0);
  std::function<void()> rec = [&] {
    if (static_cast<int>(tuple.size()) == q - 1) {
      std::vector<int> cycle{a};
      cycle.insert(cycle.end(), tuple.begin(), tuple.end());
      std::vector<int> remaining;
      for (std::size_t i = 0; i < rest.size(); ++i)
        if (!used[i]) remaining.push_back(rest[i]);
      gen_class(remaining, q, acc * Permutation::from_cycle(cycle), out, cap);
      return;
    }
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (used[i]) continue;
      used[i] = 1;
      tuple.push_back(rest[i]);
      rec();
      tuple.pop_back();
      used[i] = 0;
    }
  };
  rec();
}

}  // namespace

std::vector<Permutation> ambient_class(int q, const std::vector<int>& support,
                                       std::uint64_t cap) {
  if (q < 2 || support.empty() || support.size() % q != 0)
    throw InvalidInput("ambient class needs q >= 2 dividing the support size");
  std::uint64_t size = ambient_class_size(q, static_cast<int>(support.size()));
  if (size > cap) throw CapExceeded("ambient class larger than cap");
  std::vector<int> pts(support);
  std::sort(pts.begin(), pts.end());
  std::vector<Permutation> out;
  out.reserve(size);
  gen_class(pts, q, Permutation{}, out, cap);
  std::sort(out.begin(), out.end());
  return out;
}

GroupHandle stab_S(const SqSet& X, const FpsOptions& opt) {
  return centralizer_in_sym(X.support(), X.elements(), opt.group_cap);
}

GroupHandle vertex_Q(const SqSet& X, int p, const FpsOptions& opt) {
  return sylow_p(stab_S(X, opt), p, opt.group_cap);
}

GroupHandle normalizer_N(const SqSet& X, const FpsOptions& opt) {
  GroupHandle sym = GroupHandle::symmetric(X.support());
  return set_stabilizer(sym, X.elements(), opt.group_cap);
}

GroupHandle action_image_on(const std::vector<Permutation>& group_elements,
                            const std::vector<Permutation>& X) {
  std::vector<Permutation> sortedX(X);
  std::sort(sortedX.begin(), sortedX.end());
  std::vector<Permutation> image;
  image.reserve(group_elements.size());
  for (const auto& g : group_elements) {
    std::vector<std::pair<int, int>> moved;
    for (std::size_t i = 0; i < sortedX.size(); ++i) {
      Permutation img = sortedX[i].conjugated_by(g);
      auto it = std::lower_bound(sortedX.begin(), sortedX.end(), img);
      if (it == sortedX.end() || *it != img)
        throw ActionNotClosed("element does not stabilize the set");
      int j = static_cast<int>(it - sortedX.begin());
      if (j != static_cast<int>(i)) moved.emplace_back(static_cast<int>(i) + 1, j + 1);
    }
    image.push_back(Permutation::from_moved(std::move(moved)));
  }
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  std::vector<int> dom(sortedX.size());
  std::iota(dom.begin(), dom.end(), 1);
  return GroupHandle::from_elements(std::move(image), dom);
}

GroupHandle quotient_M(const SqSet& X, const FpsOptions& opt) {
  GroupHandle N = normalizer_N(X, opt);
  return action_image_on(N.elements(opt.group_cap), X.elements());
}

SqSet closure(const SqSet& X, int p, const FpsOptions& opt) {
  GroupHandle Q = vertex_Q(X, p, opt);
  std::vector<Permutation> fix;
  if (Q.is_trivial()) {
    fix = ambient_class(X.q(), X.support(), opt.ambient_cap);
  } else {
    GroupHandle C = centralizer_in_sym(X.support(), Q.generators(), opt.group_cap);
    for (const auto& g : C.elements(opt.group_cap))
      if (is_q_regular(g, X.q(), X.support())) fix.push_back(g);
  }
  SqSet out(PermSet(std::move(fix)), X.q());
  for (const auto& x : X.elements())
    if (!out.set().contains(x)) throw TheoremViolation("closure does not contain the set");
  return out;
}

bool is_closed(const SqSet& X, int p, const FpsOptions& opt) {
  return closure(X, p, opt).elements() == X.elements();
}

bool is_exact(const SqSet& X, int p, const FpsOptions& opt) {
  GroupHandle Q = vertex_Q(X, p, opt);
  std::set<int> moved;
  for (const auto& g : Q.generators())
    for (int pt : g.support()) moved.insert(pt);
  return std::vector<int>(moved.begin(), moved.end()) == X.support();
}

bool is_projective_set(const SqSet& X, int p, const FpsOptions& opt) {
  return vertex_Q(X, p, opt).is_trivial();
}

FpsReport analyze(const SqSet& X, int p, const FpsOptions& opt) {
  FpsReport r{.set = X, .p = p};
  GroupHandle S = stab_S(X, opt);
  GroupHandle Q = sylow_p(S, p, opt.group_cap);
  r.S_order = S.order(opt.group_cap);
  r.Q_order = Q.order(opt.group_cap);
  r.Q_gens = Q.generators();
  r.projective = Q.is_trivial();

  std::vector<Permutation> fix;
  if (Q.is_trivial()) {
    fix = ambient_class(X.q(), X.support(), opt.ambient_cap);
  } else {
    GroupHandle C = centralizer_in_sym(X.support(), Q.generators(), opt.group_cap);
    for (const auto& g : C.elements(opt.group_cap))
      if (is_q_regular(g, X.q(), X.support())) fix.push_back(g);
    std::sort(fix.begin(), fix.end());
  }
  r.closed = fix == X.elements();

  std::set<int> qmoved;
  for (const auto& g : Q.generators())
    for (int pt : g.support()) qmoved.insert(pt);
  r.exact = std::vector<int>(qmoved.begin(), qmoved.end()) == X.support();

  try {
    GroupHandle N = normalizer_N(X, opt);
    r.N_order = N.order(opt.group_cap);
    GroupHandle M = action_image_on(N.elements(opt.group_cap), X.elements());
    r.M_order = M.order(opt.group_cap);

    std::vector<int> idx(X.elements().size());
    std::iota(idx.begin(), idx.end(), 1);
    ModuleRep kX = ModuleRep::point_module(M, idx, p);
    r.module_summary = decompose(kX, opt.seed, opt.decomp);
    r.np = r.module_summary.np;
    r.np_exact = !r.module_summary.inconclusive;
  } catch (const CapExceeded&) {
    // a set that is not closed is settled without its module
    if (r.closed) throw;
    r.notes.push_back("set stabilizer beyond cap; verdict rests on closedness");
    r.fixed_point_set = Verdict::no;
    return r;
  }

  bool any_projective = false;
  for (const auto& s : r.module_summary.summands)
    if (s.projective) any_projective = true;

  if (!r.closed) {
    r.fixed_point_set = Verdict::no;
  } else if (any_projective) {
    r.fixed_point_set = Verdict::yes;
  } else if (r.module_summary.inconclusive) {
    r.fixed_point_set = Verdict::unknown;
    r.notes.push_back("module decomposition inconclusive");
  } else {
    r.fixed_point_set = Verdict::no;
  }
  return r;
}

OrbitFactorization q_tilde_factorization(const SqSet& X, int p, const FpsOptions& opt) {
  GroupHandle S = stab_S(X, opt);
  GroupHandle Q = sylow_p(S, p, opt.group_cap);

  std::vector<Permutation> gens = Q.generators();
  gens.insert(gens.end(), X.elements().begin(), X.elements().end());
  OrbitFactorization out;
  out.orbits = point_orbits(gens, X.support());
  out.transitive = out.orbits.size() == 1;

  auto restrict_set = [](const std::vector<Permutation>& elems, const std::vector<int>& pts) {
    std::set<Permutation> res;
    for (const auto& x : elems) {
      std::vector<std::pair<int, int>> moved;
      for (const auto& [k, v] : x.moved())
        if (std::binary_search(pts.begin(), pts.end(), k)) moved.emplace_back(k, v);
      res.insert(Permutation::from_moved(std::move(moved)));
    }
    return std::vector<Permutation>(res.begin(), res.end());
  };

  std::vector<std::vector<Permutation>> xparts, qparts;
  for (const auto& orb : out.orbits) {
    xparts.push_back(restrict_set(X.elements(), orb));
    qparts.push_back(restrict_set(Q.elements(opt.group_cap), orb));
  }

  // X must be the full product of its projections.
  std::uint64_t xcount = 1;
  for (const auto& part : xparts) xcount *= part.size();
  if (xcount != X.elements().size())
    throw TheoremViolation("orbit projections of X do not multiply back");
  std::vector<Permutation> combos{Permutation{}};
  for (const auto& part : xparts) {
    std::vector<Permutation> next;
    next.reserve(combos.size() * part.size());
    for (const auto& c : combos)
      for (const auto& e : part) next.push_back(c * e);
    combos = std::move(next);
  }
  std::sort(combos.begin(), combos.end());
  if (combos != X.elements())
    throw TheoremViolation("X is not the product of its orbit factors");

  // Q must be the direct product of its projections.
  std::uint64_t qcount = 1;
  for (const auto& part : qparts) qcount *= part.size();
  if (qcount != Q.order(opt.group_cap))
    throw TheoremViolation("vertex does not split along the orbits");

  for (std::size_t i = 0; i < out.orbits.size(); ++i) {
    SqSet Xi(PermSet(xparts[i]), X.q());
    if (!is_closed(Xi, p, opt) || !is_exact(Xi, p, opt))
      throw TheoremViolation("orbit factor is not closed exact");
    out.set_factors.push_back(std::move(Xi));
    out.q_factor_orders.push_back(qparts[i].size());
  }
  return out;
}

KappaResult kappa(const SqSet& X, int p, const FpsOptions& opt, bool full_trajectory) {
  GroupHandle M = quotient_M(X, opt);
  std::vector<int> idx(X.elements().size());
  std::iota(idx.begin(), idx.end(), 1);
  ModuleRep base = ModuleRep::point_module(M, idx, p);
  if (!has_projective_summand(base, opt.seed, opt.decomp))
    throw InvalidInput("kappa needs a base module with a projective summand");

  KappaResult res;
  std::uint64_t dim = 1;
  for (int u = 1; u <= opt.kappa_budget; ++u) {
    dim *= X.elements().size();
    if (dim > static_cast<std::uint64_t>(opt.kappa_dim_cap)) break;
    ModuleRep W = ModuleRep::wreath_power(base, u, opt.group_cap);
    bool has = has_projective_summand(W, opt.seed, opt.decomp);
    res.trajectory.emplace_back(u, has);
    res.tested_up_to = u;
    if (!has && !res.value) {
      res.value = u;
      if (!full_trajectory) break;
    }
  }
  return res;
}

int OracleResult::np_sum() const {
  int s = 0;
  for (const auto& e : kept) s += e.np_broue;
  return s;
}

OracleResult broue_oracle(int p, int q, int n, const FpsOptions& opt) {
  OracleResult result;
  result.p = p;
  result.q = q;
  result.n = n;
  const int d = q * n;
  std::vector<int> supp(d);
  std::iota(supp.begin(), supp.end(), 1);

  auto class_elems = ambient_class(q, supp, opt.ambient_cap);
  GroupHandle G = GroupHandle::symmetric(supp);
  G.elements(opt.group_cap);  // warm before any parallel use
  GroupHandle P = sylow_sym(d, p);
  auto reps = subgroups_up_to_conjugacy(P, G, p, opt.group_cap);

  struct Step {
    bool kept = false;
    bool inconclusive = false;
    GroupHandle vertex;
    std::vector<Permutation> fix;
    int np = 0;
  };

  std::function<Step(int)> run_q = [&](int qi) -> Step {
    Step st;
    const GroupHandle& Q = reps[qi];
    std::vector<Permutation> fix;
    for (const auto& xi : class_elems) {
      bool ok = true;
      for (const auto& g : Q.generators())
        if (xi.conjugated_by(g) != xi) {
          ok = false;
          break;
        }
      if (ok) fix.push_back(xi);
    }
    if (fix.empty()) return st;
    GroupHandle S = centralizer_in_sym(supp, fix, opt.group_cap);
    if (Q.order(opt.group_cap) != p_part(S.order(opt.group_cap), p)) return st;

    GroupHandle NQ = normalizer_of_subgroup(G, Q, opt.group_cap);
    GroupHandle img = action_image_on(NQ.elements(opt.group_cap), fix);
    std::vector<int> idx(fix.size());
    std::iota(idx.begin(), idx.end(), 1);
    ModuleRep kFix = ModuleRep::point_module(img, idx, p);
    auto rep = decompose(kFix, opt.seed, opt.decomp);
    if (rep.inconclusive) {
      st.inconclusive = true;
      return st;
    }
    if (rep.np >= 1) {
      st.kept = true;
      st.vertex = Q;
      st.fix = std::move(fix);
      st.np = rep.np;
    }
    return st;
  };

  auto steps = parallel_map<Step>(static_cast<int>(reps.size()), opt.jobs, run_q);

  std::set<std::string> seen_keys;
  for (auto& st : steps) {
    if (st.inconclusive) {
      result.conclusive = false;
      result.notes.push_back("a vertex candidate had an inconclusive module decomposition");
      continue;
    }
    if (!st.kept) continue;
    SqSet XX(PermSet(st.fix), q);
    FpsReport report = analyze(XX, p, opt);
    if (report.np_exact && report.np != st.np)
      throw TheoremViolation("projective counts over M_X and over N(Q)/Q disagree");
    std::string key = canonical_key(XX.set(), std::max(opt.support_cap, d));
    if (!seen_keys.insert(key).second)
      throw TheoremViolation("two vertex classes produced one fixed point set");
    OracleEntry entry{st.vertex, XX, st.np, std::move(report)};
    result.kept.push_back(std::move(entry));
  }

  // Full decomposition of the class module for the multiplicity ledger.
  ModuleRep kXi = ModuleRep::conjugation_module(G, class_elems, p);
  auto classrep = decompose(kXi, opt.seed, opt.decomp);
  if (classrep.inconclusive) {
    result.conclusive = false;
    result.notes.push_back("class module decomposition inconclusive");
  }
  result.total_class_summands = static_cast<int>(classrep.summands.size());
  return result;
}

}  // namespace fpsets
