#pragma once

// Reference grid drawings encoded on the lattice. Drawing coordinates (x, y)
// with y pointing up map to (row, col) = (top - y, x + 1).

#include <vector>

#include "latcomp/generators.hpp"
#include "latcomp/lattice.hpp"

namespace latcomp::testing {

struct Figure {
  int m;
  int n;
  Walk circuit;
  Mask mask;
};

inline Figure circuit_figure(int m, int n, const std::vector<LatticePoint>& corners) {
  Walk c = normalize_circuit(walk_from_corners(corners, true));
  Mask mask(m, n);
  for (auto p : c.points) mask.insert(p);
  return {m, n, c, mask};
}

// Removable panel: six reflex corners, shaded by removal level.
inline Figure left_panel() {
  return circuit_figure(7, 7, {{6, 1}, {6, 2}, {7, 2}, {7, 6}, {6, 6}, {6, 7}, {3, 7}, {3, 5}, {2, 5},
                               {2, 4}, {1, 4}, {1, 3}, {2, 3}, {2, 2}, {3, 2}, {3, 1}, {6, 1}});
}

inline std::vector<LatticePoint> left_panel_reflex() {
  return {{2, 3}, {2, 4}, {3, 2}, {3, 5}, {6, 2}, {6, 6}};
}

// Non-removable panel: the top notch is two columns wide.
inline Figure right_panel() {
  return circuit_figure(7, 7, {{6, 1}, {6, 3}, {7, 3}, {7, 6}, {6, 6}, {6, 7}, {3, 7}, {3, 5}, {1, 5},
                               {1, 2}, {3, 2}, {3, 1}, {6, 1}});
}

// Staircase band covering every row and column of an 11 x 11 region.
inline Figure polyomino() {
  return circuit_figure(11, 11, {{2, 1},  {3, 1},  {3, 3},  {4, 3},  {4, 6},  {5, 6},  {5, 7},  {7, 7},
                                 {7, 8},  {9, 8},  {9, 9},  {10, 9}, {10, 10}, {11, 10}, {11, 11}, {9, 11},
                                 {9, 10}, {8, 10}, {8, 9},  {6, 9},  {6, 8},  {4, 8},  {4, 7},  {3, 7},
                                 {3, 4},  {2, 4},  {2, 2},  {1, 2},  {1, 1},  {2, 1}});
}

// Three walks of the nested-structure figure on 11 x 11, outermost first.
inline std::vector<Walk> nested_figure_walks() {
  return {walk_from_corners({{1, 1}, {11, 1}, {11, 11}}, false),
          walk_from_corners({{1, 1}, {1, 3}, {5, 3}, {5, 7}, {9, 7}, {9, 11}, {11, 11}}, false),
          walk_from_corners({{1, 1}, {1, 5}, {3, 5}, {3, 7}, {4, 7}, {4, 9}, {7, 9}, {7, 10}, {8, 10}, {8, 11}, {11, 11}},
                            false)};
}

// Walks and red segments of the inner-path-region figure on 11 x 11. The last
// walk ends on the previous walk's final run and follows it to the corner.
inline std::vector<Walk> inner_region_walks() {
  return {walk_from_corners({{1, 1}, {11, 1}, {11, 11}}, false),
          walk_from_corners({{1, 1}, {1, 3}, {5, 3}, {5, 7}, {9, 7}, {9, 11}, {11, 11}}, false),
          walk_from_corners({{1, 1}, {1, 5}, {3, 5}, {3, 9}, {7, 9}, {7, 11}, {11, 11}}, false)};
}

inline std::vector<Walk> inner_region_red_segments() {
  return {walk_from_corners({{3, 1}, {3, 3}}, false), walk_from_corners({{11, 9}, {9, 9}}, false)};
}

// Stretches every lattice step by `s`, so an 11 x 11 figure becomes 10s+1 square.
inline std::vector<Walk> scaled(const std::vector<Walk>& walks, int s) {
  std::vector<Walk> out;
  for (const auto& w : walks) {
    std::vector<LatticePoint> corners;
    for (auto p : w.points) corners.push_back({s * (p.row - 1) + 1, s * (p.col - 1) + 1});
    out.push_back(walk_from_corners(corners, w.closed));
  }
  return out;
}

inline Mask support_of(int m, int n, const std::vector<Walk>& a, const std::vector<Walk>& b = {}) {
  Mask mask(m, n);
  for (const auto* list : {&a, &b})
    for (const auto& w : *list)
      for (auto p : w.points) mask.insert(p);
  return mask;
}

}  // namespace latcomp::testing
