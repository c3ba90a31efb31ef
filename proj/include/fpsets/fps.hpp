#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpsets/group.hpp"
#include "fpsets/module.hpp"
#include "fpsets/permset.hpp"

namespace fpsets {

struct FpsOptions {
  int support_cap = 12;
  std::uint64_t group_cap = 1'000'000;
  std::uint64_t ambient_cap = 1'000'000;
  DecompOptions decomp;
  int kappa_budget = 4;
  int kappa_dim_cap = 300;
  std::uint64_t seed = 0;
  int jobs = 1;
};

enum class Verdict { yes, no, unknown };
std::string to_string(Verdict v);

/// Number of fixed point free products of q-cycles on d points.
std::uint64_t ambient_class_size(int q, int d);
/// All of them, on the given support.
std::vector<Permutation> ambient_class(int q, const std::vector<int>& support,
                                       std::uint64_t cap);

/// Pointwise stabilizer S_X, the centralizer of X in Sym(supp X).
GroupHandle stab_S(const SqSet& X, const FpsOptions& opt);
/// A Sylow p-subgroup Q_X of S_X.
GroupHandle vertex_Q(const SqSet& X, int p, const FpsOptions& opt);
/// Set stabilizer N_X in Sym(supp X).
GroupHandle normalizer_N(const SqSet& X, const FpsOptions& opt);
/// The faithful image of N_X in Sym(X), acting on basis indices 1..|X|.
GroupHandle quotient_M(const SqSet& X, const FpsOptions& opt);
GroupHandle action_image_on(const std::vector<Permutation>& group_elements,
                            const std::vector<Permutation>& X);

/// Fix of Q_X on the ambient class: all class members centralizing Q_X.
SqSet closure(const SqSet& X, int p, const FpsOptions& opt);
bool is_closed(const SqSet& X, int p, const FpsOptions& opt);
/// Q_X moves every support point.
bool is_exact(const SqSet& X, int p, const FpsOptions& opt);
/// Q_X = 1.
bool is_projective_set(const SqSet& X, int p, const FpsOptions& opt);

struct FpsReport {
  SqSet set;
  int p = 2;
  std::uint64_t S_order = 0, N_order = 0, M_order = 0, Q_order = 0;
  std::vector<Permutation> Q_gens;
  bool closed = false, exact = false, projective = false;
  Verdict fixed_point_set = Verdict::unknown;
  DecompReport module_summary;
  int np = 0;        // projective summand count of kX over M_X
  bool np_exact = false;
  std::optional<int> kappa_value;
  std::vector<std::string> notes;
};

/// Full analysis: stabilizers, closure, flags and the module verdict.
FpsReport analyze(const SqSet& X, int p, const FpsOptions& opt);

struct OrbitFactorization {
  std::vector<std::vector<int>> orbits;  // of <Q_X, X> on the support
  std::vector<SqSet> set_factors;
  std::vector<std::uint64_t> q_factor_orders;
  bool transitive = false;
};

/// Orbits of <Q_X, X> with the induced factorizations of X and Q_X;
/// throws TheoremViolation when the proven conclusions fail.
OrbitFactorization q_tilde_factorization(const SqSet& X, int p, const FpsOptions& opt);

struct KappaResult {
  std::optional<int> value;  // empty: budget exhausted, all tested u succeeded
  int tested_up_to = 0;
  std::vector<std::pair<int, bool>> trajectory;  // u -> wreath power has projective summand
};

/// Least u such that (kX)^(wr u) over M_X wr Sym(u) has no projective
/// summand, within the configured budget.
KappaResult kappa(const SqSet& X, int p, const FpsOptions& opt, bool full_trajectory = false);

struct OracleEntry {
  GroupHandle vertex;
  SqSet set;
  int np_broue = 0;  // projective summand count over N_G(Q)/Q
  FpsReport report;
};

struct OracleResult {
  int p = 2, q = 2, n = 1;
  std::vector<OracleEntry> kept;
  int total_class_summands = 0;  // indecomposable summands of the full class module
  bool conclusive = true;
  std::vector<std::string> notes;
  int np_sum() const;
};

/// Definitional ground truth: walks every vertex candidate Q inside a Sylow
/// p-subgroup of Sym(qn) and keeps the fixed point sets the correspondence
/// admits.
OracleResult broue_oracle(int p, int q, int n, const FpsOptions& opt);

}  // namespace fpsets
