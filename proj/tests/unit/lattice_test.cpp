#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "latcomp/errors.hpp"
#include "latcomp/generators.hpp"
#include "latcomp/lattice.hpp"
#include "support/figures.hpp"
#include "support/oracles.hpp"

namespace latcomp {
namespace {

using testing::circuit_figure;
using testing::DoubledGrid;
using testing::for_each_grid_cycle;

Mask full_mask(int m, int n) {
  Mask mask(m, n);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) mask.insert({i, j});
  return mask;
}

std::vector<std::pair<LatticePoint, LatticePoint>> brute_edges(const Mask& mask) {
  const auto s = mask.support();
  std::vector<std::pair<LatticePoint, LatticePoint>> e;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      if (s[a] < s[b] && manhattan(s[a], s[b]) == 1) e.emplace_back(s[a], s[b]);
  std::sort(e.begin(), e.end());
  return e;
}

TEST(Subgraph, Singleton) {
  Mask mask(1, 1);
  mask.insert({1, 1});
  const auto g = build_lattice_subgraph(mask);
  EXPECT_EQ(g.vertices.size(), 1U);
  EXPECT_TRUE(g.edges.empty());
}

TEST(Subgraph, FullTwoByTwo) {
  const auto g = build_lattice_subgraph(full_mask(2, 2));
  EXPECT_EQ(g.vertices.size(), 4U);
  EXPECT_EQ(g.edges.size(), 4U);
}

TEST(Subgraph, RingOfThreeByThree) {
  const auto g = build_lattice_subgraph(gen_boundary_cycle(3, 3).mask);
  EXPECT_EQ(g.vertices.size(), 8U);
  EXPECT_EQ(g.edges.size(), 8U);
  for (auto v : g.vertices) EXPECT_EQ(g.degree(v), 2);
}

TEST(Subgraph, EmptySupport) {
  const auto g = build_lattice_subgraph(Mask(4, 5));
  EXPECT_TRUE(g.vertices.empty());
  EXPECT_TRUE(g.edges.empty());
}

TEST(Subgraph, MatchesPairScanOnRandomMasks) {
  std::mt19937_64 rng(7);
  std::bernoulli_distribution coin(0.55);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 8), n = 1 + static_cast<int>(rng() % 8);
    Mask mask(m, n);
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= n; ++j)
        if (coin(rng)) mask.insert({i, j});
    const auto g = build_lattice_subgraph(mask);
    EXPECT_EQ(g.vertices, mask.support());
    EXPECT_EQ(g.edges, brute_edges(mask));
    const auto again = build_lattice_subgraph(Mask(m, n, g.vertices));
    EXPECT_EQ(again.edges, g.edges);
  }
}

TEST(ExtractCircuits, SingleRing) {
  const auto walks = extract_circuits(build_lattice_subgraph(gen_boundary_cycle(3, 3).mask));
  ASSERT_EQ(walks.size(), 1U);
  EXPECT_TRUE(walks[0].closed);
  EXPECT_EQ(walks[0].size(), 8U);
  EXPECT_GT(signed_area2(walks[0]), 0);
}

TEST(ExtractCircuits, TwoDisjointRings) {
  Mask mask(3, 7);
  for (auto p : gen_boundary_cycle(3, 3).mask.support()) {
    mask.insert(p);
    mask.insert({p.row, p.col + 4});
  }
  const auto walks = extract_circuits(build_lattice_subgraph(mask));
  ASSERT_EQ(walks.size(), 2U);
  for (const auto& w : walks) {
    EXPECT_TRUE(w.closed);
    EXPECT_EQ(w.size(), 8U);
    EXPECT_TRUE(is_self_avoiding(w));
    EXPECT_TRUE(has_unit_steps(w));
  }
}

TEST(ExtractCircuits, OpenWalk) {
  Mask mask(3, 3);
  for (auto p : {LatticePoint{1, 1}, {1, 2}, {1, 3}, {2, 3}}) mask.insert(p);
  const auto walks = extract_circuits(build_lattice_subgraph(mask));
  ASSERT_EQ(walks.size(), 1U);
  EXPECT_FALSE(walks[0].closed);
  EXPECT_EQ(walks[0].size(), 4U);
}

TEST(ExtractCircuits, PlusShapeIsAmbiguous) {
  Mask mask(3, 3);
  for (auto p : {LatticePoint{1, 2}, {2, 1}, {2, 2}, {2, 3}, {3, 2}}) mask.insert(p);
  try {
    (void)extract_circuits(build_lattice_subgraph(mask));
    FAIL() << "expected AmbiguousDecomposition";
  } catch (const AmbiguousDecomposition& e) {
    EXPECT_EQ(e.branching(), (std::vector<LatticePoint>{{2, 2}}));
  }
}

TEST(ExtractCircuits, FullTwoByThreeHasUniqueHamiltonianCircuit) {
  const auto walks = extract_circuits(build_lattice_subgraph(full_mask(2, 3)));
  ASSERT_EQ(walks.size(), 1U);
  EXPECT_EQ(walks[0].size(), 6U);
}

int count(const std::vector<TurnInfo>& turns, TurnKind k) {
  return static_cast<int>(std::count_if(turns.begin(), turns.end(), [k](const TurnInfo& t) { return t.kind == k; }));
}

TEST(Classify, Rectangle) {
  const auto turns = classify_vertices(gen_boundary_cycle(4, 6).circuit);
  EXPECT_EQ(count(turns, TurnKind::convex), 4);
  EXPECT_EQ(count(turns, TurnKind::reflex), 0);
}

TEST(Classify, LShapedHexagon) {
  const auto f = circuit_figure(5, 5, {{1, 1}, {1, 3}, {3, 3}, {3, 5}, {5, 5}, {5, 1}, {1, 1}});
  const auto turns = classify_vertices(f.circuit);
  EXPECT_EQ(count(turns, TurnKind::convex), 5);
  ASSERT_EQ(count(turns, TurnKind::reflex), 1);
  for (const auto& t : turns)
    if (t.kind == TurnKind::reflex) EXPECT_EQ(f.circuit.points[t.index], (LatticePoint{3, 3}));
}

TEST(Classify, OrientationDoesNotMatter) {
  const auto f = testing::left_panel();
  Walk rev = f.circuit;
  std::reverse(rev.points.begin(), rev.points.end());
  auto reflex_points = [](const Walk& w) {
    std::vector<LatticePoint> out;
    for (const auto& t : classify_vertices(w))
      if (t.kind == TurnKind::reflex) out.push_back(w.points[t.index]);
    std::sort(out.begin(), out.end());
    return out;
  };
  EXPECT_EQ(reflex_points(f.circuit), testing::left_panel_reflex());
  EXPECT_EQ(reflex_points(rev), testing::left_panel_reflex());
}

TEST(Classify, RejectsOpenWalk) {
  Walk w = walk_from_corners({{1, 1}, {1, 4}, {3, 4}}, false);
  EXPECT_THROW((void)classify_vertices(w), NotACircuit);
}

TEST(Classify, RejectsSelfIntersection) {
  Walk w;
  w.closed = true;
  w.points = {{1, 1}, {1, 2}, {2, 2}, {2, 1}, {1, 1}, {1, 2}};
  EXPECT_THROW((void)classify_vertices(w), NotACircuit);
}

TEST(Interior, RingOfThreeByThree) {
  const auto c = gen_boundary_cycle(3, 3).circuit;
  EXPECT_EQ(interior_points(c, 3, 3).size(), 9U);
  EXPECT_EQ(strict_interior_points(c, 3, 3), (PointSet{{2, 2}}));
}

TEST(Interior, UnitSquare) {
  Walk c;
  c.closed = true;
  c.points = {{1, 1}, {1, 2}, {2, 2}, {2, 1}};
  EXPECT_EQ(interior_points(c, 2, 2).size(), 4U);
  EXPECT_TRUE(strict_interior_points(c, 2, 2).empty());
}

TEST(Interior, StaircaseMatchesFloodFill) {
  const auto inst = gen_staircase_cycle(10, 10, {{4, 4}, {4, 4}, {4, 4}});
  EXPECT_EQ(interior_points(inst.circuit, 10, 10), DoubledGrid(inst.circuit, 10, 10).interior());
  const auto poly = testing::polyomino();
  EXPECT_EQ(interior_points(poly.circuit, 11, 11), DoubledGrid(poly.circuit, 11, 11).interior());
}

TEST(Interior, CircuitInsideLargerRegion) {
  const auto c = walk_from_corners({{3, 3}, {3, 6}, {5, 6}, {5, 3}, {3, 3}}, true);
  const auto in = interior_points(c, 8, 9);
  EXPECT_EQ(in.size(), 12U);
  EXPECT_EQ(exterior_points(c, 8, 9).size(), 72U - 12U);
}

TEST(Spans, Examples) {
  EXPECT_TRUE(spans_all_indices(gen_boundary_cycle(5, 7).circuit, 5, 7));
  EXPECT_FALSE(spans_all_indices(walk_from_corners({{2, 2}, {2, 4}, {4, 4}, {4, 2}, {2, 2}}, true), 5, 5));
  EXPECT_TRUE(spans_all_indices(gen_staircase_cycle(10, 10, {{4, 4}, {4, 4}, {4, 4}}).circuit, 10, 10));
}

TEST(FormsRectangle, CornersWithWraparound) {
  Walk c = normalize_circuit(walk_from_corners({{1, 1}, {4, 1}, {4, 5}, {1, 5}, {1, 1}}, true));
  // normalized start (1,1) is followed by the run down column 1
  const std::size_t len = c.size();
  std::array<std::size_t, 5> idx{0, 3, 7, 10, len};
  EXPECT_TRUE(forms_rectangle(c, idx));
}

TEST(FormsRectangle, StaircaseIsNot) {
  Walk w = walk_from_corners({{1, 1}, {3, 1}, {3, 3}, {5, 3}, {5, 5}}, false);
  EXPECT_FALSE(forms_rectangle(w, {0, 2, 4, 6, 8}));
}

TEST(FormsRectangle, DetourInsideSide) {
  // corners (1,1),(5,1),(5,5),(1,5) but the right side bulges into column 6
  Walk w = walk_from_corners({{1, 1}, {5, 1}, {5, 5}, {4, 5}, {4, 6}, {2, 6}, {2, 5}, {1, 5}, {1, 1}}, true);
  const auto at = [&](LatticePoint p) {
    return static_cast<std::size_t>(std::find(w.points.begin(), w.points.end(), p) - w.points.begin());
  };
  EXPECT_FALSE(forms_rectangle(w, {at({1, 1}), at({5, 1}), at({5, 5}), at({1, 5}), w.size()}));
}

TEST(FormsRectangle, IndexOutOfRange) {
  Walk w = walk_from_corners({{1, 1}, {1, 4}}, false);
  EXPECT_THROW((void)forms_rectangle(w, {0, 1, 2, 3, 40}), IndexOutOfRange);
}

// Exhaustive over every simple cycle of the grid graph.
TEST(ExhaustiveCycles, TurnCountsAndInteriorUpToFiveByFive) {
  for (int m = 2; m <= 5; ++m)
    for (int n = m; n <= 5; ++n) {
      int cycles = 0;
      for_each_grid_cycle(m, n, [&](const Walk& w) {
        ++cycles;
        const auto turns = classify_vertices(w);
        ASSERT_EQ(count(turns, TurnKind::convex) - count(turns, TurnKind::reflex), 4);
        const DoubledGrid oracle(w, m, n);
        const std::size_t len = w.size();
        for (const auto& t : turns)
          if (t.kind != TurnKind::straight)
            ASSERT_EQ(t.kind == TurnKind::reflex,
                      oracle.reflex(w.points[(t.index + len - 1) % len], w.points[t.index], w.points[(t.index + 1) % len]));
        const auto in = interior_points(w, m, n);
        ASSERT_EQ(in, oracle.interior());
        const auto out = exterior_points(w, m, n);
        for (auto p : out) ASSERT_FALSE(in.count(p));
        ASSERT_EQ(in.size() + out.size(), static_cast<std::size_t>(m * n));
        for (auto p : w.points) ASSERT_TRUE(in.count(p));
      });
      if (m == n) {
        // cycle counts of the n x n grid graph
        const int expected[] = {0, 0, 1, 13, 213, 9349};
        EXPECT_EQ(cycles, expected[m]);
      }
    }
}

TEST(Normalize, StartsAtSmallestAndCounterclockwise) {
  Walk w = walk_from_corners({{4, 4}, {4, 2}, {2, 2}, {2, 4}, {4, 4}}, true);
  const Walk c = normalize_circuit(w);
  EXPECT_EQ(c.points.front(), (LatticePoint{2, 2}));
  EXPECT_GT(signed_area2(c), 0);
  EXPECT_EQ(normalize_circuit(c), c);
}

}  // namespace
}  // namespace latcomp
