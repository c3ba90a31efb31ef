#pragma once

#include <cstdint>
#include <string>

#include "fpsets/fps.hpp"

namespace fpsets {

struct RunConfig {
  int p = 2;
  int q = 2;
  int n = 1;
  int max_degree = 8;
  std::uint64_t group_cap = 1'000'000;
  int dim_cap = 400;
  int kappa_budget = 4;
  std::uint64_t seed = 0;
  std::string format = "text";  // "text" or "json"
  int jobs = 1;
  int support_cap = 12;

  void validate() const;
  FpsOptions fps_options() const;
};

}  // namespace fpsets
