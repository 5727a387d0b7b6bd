#include "latcomp/generators.hpp"

#include <string>

#include "latcomp/errors.hpp"

namespace latcomp {

namespace {

Mask mask_of(int m, int n, const std::vector<const Walk*>& walks) {
  Mask mask(m, n);
  for (const auto* w : walks)
    for (auto p : w->points) mask.insert(p);
  return mask;
}

}  // namespace

Walk walk_from_corners(const std::vector<LatticePoint>& corners, bool closed) {
  Walk w;
  w.closed = closed;
  if (corners.empty()) return w;
  w.points.push_back(corners.front());
  for (std::size_t k = 1; k < corners.size(); ++k) {
    const auto a = corners[k - 1], b = corners[k];
    if (a.row != b.row && a.col != b.col) throw InvalidWalk("corners are not axis-aligned");
    const Direction d{(b.row > a.row) - (b.row < a.row), (b.col > a.col) - (b.col < a.col)};
    for (auto p = a; p != b;) {
      p = p + d;
      w.points.push_back(p);
    }
  }
  if (closed && w.points.size() > 1 && w.points.back() == w.points.front()) w.points.pop_back();
  return w;
}

CircuitInstance gen_boundary_cycle(int m, int n) {
  if (m < 3 || n < 3) throw DimensionTooSmall("boundary cycle needs m, n >= 3");
  auto c = walk_from_corners({{1, 1}, {m, 1}, {m, n}, {1, n}, {1, 1}}, true);
  c = normalize_circuit(std::move(c));
  return {mask_of(m, n, {&c}), c};
}

CircuitInstance gen_staircase_cycle(int m, int n, const std::vector<StepCell>& profile) {
  if (m < 3 || n < 3) throw DimensionTooSmall("staircase needs m, n >= 3");
  if (profile.empty()) throw ProfileMismatch("empty step profile");
  int sw = 0, sh = 0;
  for (const auto& c : profile) {
    if (c.width < 3 || c.height < 3) throw ProfileMismatch("every cell needs at least 3 points each way");
    sw += c.width - 1;
    sh += c.height - 1;
  }
  if (sw != n - 1 || sh != m - 1)
    throw ProfileMismatch("profile covers " + std::to_string(sh + 1) + "x" + std::to_string(sw + 1) +
                          ", region is " + std::to_string(m) + "x" + std::to_string(n));
  std::vector<LatticePoint> corners{{1, 1}};
  LatticePoint p{1, 1};
  for (const auto& c : profile) {
    p.col += c.width - 1;
    corners.push_back(p);
    p.row += c.height - 1;
    corners.push_back(p);
  }
  corners.push_back({m, 1});
  corners.push_back({1, 1});
  auto c = normalize_circuit(walk_from_corners(corners, true));
  return {mask_of(m, n, {&c}), c};
}

WalkFamily gen_nested_staircase_family(int m, int n, int r, int min_cell) {
  if (r < 2) throw InvalidParameter("nested family needs r >= 2");
  const int g = min_cell == 0 ? r + 1 : min_cell;
  if (g < r + 1) throw InvalidParameter("min_cell must be at least r+1");
  const int a_r = 1 + r * g;
  const int b_r = m - r * g;
  if (a_r + g > n || b_r - g < 1) throw DimensionTooSmall("region too small for the nested family");

  WalkFamily fam{Mask(m, n), {}, {}, g};
  auto a = [g](int t) { return 1 + t * g; };
  auto b = [g, m](int t) { return m - t * g; };
  fam.walks.push_back(walk_from_corners({{1, 1}, {m, 1}, {m, n}}, false));
  for (int t = 1; t <= r; ++t)
    fam.walks.push_back(walk_from_corners({{1, 1}, {1, a(t)}, {b(t), a(t)}, {b(t), n}, {m, n}}, false));
  for (int t = 1; t <= r; ++t)
    for (int k = 0; k <= r - t; ++k) {
      const int y = 1 + 2 * (k + 1);
      const int x = n - 2 * (k + 1);
      fam.auxiliary.push_back(walk_from_corners({{y, a(t - 1)}, {y, a(t)}}, false));
      fam.auxiliary.push_back(walk_from_corners({{b(t), x}, {b(t - 1), x}}, false));
    }
  std::vector<const Walk*> all;
  for (const auto& w : fam.walks) all.push_back(&w);
  for (const auto& w : fam.auxiliary) all.push_back(&w);
  fam.mask = mask_of(m, n, all);
  return fam;
}

CircuitInstance gen_nonremovable_counterexample(int m, int n) {
  if (m < 6 || n < 6) throw DimensionTooSmall("counterexample needs m, n >= 6");
  auto c = walk_from_corners({{3, 1},
                              {3, 2},
                              {1, 2},
                              {1, n - 2},
                              {3, n - 2},
                              {3, n},
                              {m - 1, n},
                              {m - 1, n - 1},
                              {m, n - 1},
                              {m, 3},
                              {m - 1, 3},
                              {m - 1, 1},
                              {3, 1}},
                             true);
  c = normalize_circuit(std::move(c));
  return {mask_of(m, n, {&c}), c};
}

}  // namespace latcomp
