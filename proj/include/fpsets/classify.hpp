#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpsets/fps.hpp"
#include "fpsets/permset.hpp"

namespace fpsets {

struct CandidateEntry {
  SqSet set;
  FpsReport report;
  std::string origin;
  std::optional<KappaResult> kappa_info;
  bool kept = false;  // verified member of its list
};

struct ClassificationReport {
  int p = 2, q = 2, max_degree = 0;
  std::vector<CandidateEntry> transitive;        // construction candidates, with verdicts
  std::vector<CandidateEntry> irreducible_exact; // delta powers of the kept transitives
  std::vector<CandidateEntry> projective_free;   // exponent-bounded products
  std::vector<CandidateEntry> projective_classes;  // full classes with trivial vertex
  std::vector<CandidateEntry> all;               // every fixed point set up to max_degree
  std::vector<std::string> notes;
};

/// Candidate transitive irreducible exact fixed point sets for prime p, q,
/// each verified by the engine rather than assumed.
std::vector<CandidateEntry> transitive_candidates(int p, int q, int max_degree,
                                                  const FpsOptions& opt,
                                                  std::vector<std::string>* notes = nullptr);

ClassificationReport classify_all(int p, int q, int max_degree, const FpsOptions& opt);

struct VerifyResult {
  int p = 2, q = 2, n = 1;
  bool agree = false;
  bool conclusive = true;
  std::vector<std::string> matched, missing, extra;  // canonical set keys
  bool multiplicity_ok = false;
  int total_class_summands = 0;
  int np_sum = 0;
};

/// Compares the classification at degree qn against the definitional oracle.
VerifyResult verify_against_oracle(int p, int q, int n, const FpsOptions& opt);

}  // namespace fpsets
