#pragma once

// Analytic-versus-exact-diagonalisation comparison on random parameter points.

#include <cstdint>
#include <string>
#include <vector>

#include "clusterchain/model.hpp"

namespace clusterchain {

struct ValidationOptions {
  std::vector<int> sizes{8, 10, 12};
  int pointsPerSize = 50;
  double jx = 1.0;
  double jyMin = -2.0, jyMax = 2.0;
  double hMin = -3.0, hMax = 3.0;
  std::uint64_t seed = 20240611;
  double degTol = 1e-9;
};

struct Deviation {
  std::string quantity;
  double maxAbs = 0.0;
  ModelParams worst;
};

struct ValidationSummary {
  std::vector<Deviation> deviations;  // fixed order, one entry per quantity
  int pointsCompared = 0;
  int pointsSkipped = 0;  // degenerate on either side, redrawn

  double max_overall() const;
};

/// Draws points uniformly in the window, skipping (and redrawing) any point
/// where the analytic report is flagged degenerate or the exact ground level
/// is not simple, and records the largest absolute difference per quantity.
ValidationSummary validate_against_oracle(const ValidationOptions& opt = {});

}  // namespace clusterchain
