#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fpsets/gfp.hpp"
#include "fpsets/group.hpp"
#include "fpsets/perm.hpp"

namespace fpsets {

/// A permutation module over GF(p): a group acting on a labeled basis.
/// Matrices act on row vectors from the right, so matrix_of(g * h) equals
/// matrix_of(g) * matrix_of(h).
class ModuleRep {
 public:
  int p() const;
  int dim() const;
  const GroupHandle& group() const;

  /// Image of each basis index under g; throws ActionNotClosed when g does
  /// not act on the basis.
  std::vector<int> basis_image(const Permutation& g) const;
  MatGFp matrix_of(const Permutation& g) const;
  std::string basis_label(int i) const;

  /// A Sylow p-subgroup of the acting group, as permutations of the
  /// group's domain.  Uses a precomputed subgroup when the module was
  /// built with one (wreath powers), otherwise derives it from the group.
  GroupHandle sylow(std::uint64_t cap) const;

  static ModuleRep point_module(GroupHandle G, std::vector<int> points, int p);
  static ModuleRep conjugation_module(GroupHandle G, std::vector<Permutation> basis, int p);
  /// kA (x) kB as a module for the direct product acting on disjoint copies
  /// of the two domains.
  static ModuleRep tensor(const ModuleRep& A, const ModuleRep& B);
  /// M^(wr u): the wreath product G wr Sym(u) acting on u-tuples of the
  /// basis, base acting coordinatewise and the top permuting places.
  static ModuleRep wreath_power(const ModuleRep& M, int u, std::uint64_t group_cap);

  struct Impl;
  explicit ModuleRep(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<const Impl> impl_;
};

struct DecompOptions {
  int random_tries = 48;
  std::uint64_t exhaust_elems = 4096;  // max commutant elements to test exhaustively
  int dim_cap = 400;
  std::uint64_t group_cap = 1'000'000;
};

struct SummandInfo {
  int dim = 0;
  bool projective = false;
  bool confirmed = false;  // indecomposability established
  MatGFp basis_rows;       // rows spanning the summand in the original basis
};

struct DecompReport {
  int dim = 0;
  int p = 0;
  bool inconclusive = false;
  int np = 0;  // projective summand count; meaningful only when !inconclusive
  std::vector<SummandInfo> summands;
};

/// Complete decomposition into indecomposables by random Fitting splits with
/// a deterministic exhaustive-idempotent confirmation.  Never guesses: a
/// piece that cannot be confirmed is reported with confirmed = false and the
/// report marked inconclusive.
DecompReport decompose(const ModuleRep& M, std::uint64_t seed, const DecompOptions& opt = {});

/// True / false on conclusive evidence; throws DecompositionInconclusive
/// when the decomposition cannot settle the question.
bool has_projective_summand(const ModuleRep& M, std::uint64_t seed, const DecompOptions& opt = {});
int np_count(const ModuleRep& M, std::uint64_t seed, const DecompOptions& opt = {});

/// Rank of the sum of the action matrices over P; counts the free
/// kP-summands of the restriction.
int norm_rank(const ModuleRep& M, const GroupHandle& P, std::uint64_t cap);
bool is_projective_over_pgroup(const ModuleRep& M, const GroupHandle& P, std::uint64_t cap);

}  // namespace fpsets
