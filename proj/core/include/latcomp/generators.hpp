#pragma once

#include <utility>
#include <vector>

#include "latcomp/lattice.hpp"

namespace latcomp {

struct CircuitInstance {
  Mask mask;
  Walk circuit;
};

struct WalkFamily {
  Mask mask;
  std::vector<Walk> walks;      // outermost first
  std::vector<Walk> auxiliary;  // extra walks restoring non-occlusion
  int separation = 0;
};

/// Staircase cell: lattice points along a horizontal run (width) and a vertical run (height).
struct StepCell {
  int width = 0;
  int height = 0;
};

/// Joins consecutive corners by straight runs. For a closed walk the last
/// corner may repeat the first. Throws InvalidWalk on a diagonal pair.
[[nodiscard]] Walk walk_from_corners(const std::vector<LatticePoint>& corners, bool closed);

/// Boundary circuit of the m x n region. DimensionTooSmall unless m, n >= 3.
[[nodiscard]] CircuitInstance gen_boundary_cycle(int m, int n);

/// Region under a staircase running from (1,1) to (m,n): each cell goes
/// right width-1 then down height-1. The circuit closes along row m and
/// column 1. ProfileMismatch unless the widths and heights add up to the
/// region and every cell has at least 3 points each way.
[[nodiscard]] CircuitInstance gen_staircase_cycle(int m, int n, const std::vector<StepCell>& profile);

/// r+1 nested one-step staircases spaced `min_cell` apart (defaults to r+1),
/// the outermost being column 1 followed by row m, plus the auxiliary runs
/// between neighbouring walks. DimensionTooSmall if they do not fit.
[[nodiscard]] WalkFamily gen_nested_staircase_family(int m, int n, int r, int min_cell = 0);

/// Circuit with notches on the top and bottom sides whose reflex corners
/// cannot be closed. DimensionTooSmall unless m, n >= 6.
[[nodiscard]] CircuitInstance gen_nonremovable_counterexample(int m, int n);

}  // namespace latcomp
