#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mamlab/fan.hpp"
#include "mamlab/structure.hpp"

namespace mamlab {

/// One input file: fan data, optionally Ψ, polytope offsets b, and explicit
/// rational subspaces to test in place of the bounded-height search.
struct Problem {
  std::string name;
  FanData fan;
  std::optional<PsiMap> psi;
  std::optional<ScalarVector> offsets;
  std::vector<std::vector<QVector>> candidates;
};

}  // namespace mamlab
