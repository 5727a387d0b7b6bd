#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latcomp/lattice.hpp"

namespace latcomp {

/// Connected acyclic nearest-neighbour graph on lattice points.
struct LatticeTree {
  std::vector<LatticePoint> points;  // row-major
  std::vector<std::pair<LatticePoint, LatticePoint>> edges;

  /// Tree of a self-avoiding walk (consecutive points joined). Throws InvalidWalk.
  static LatticeTree from_walk(const Walk& walk);
  [[nodiscard]] bool contains(LatticePoint p) const;
};

/// One staircase step (j, j', j''): a vertical run starting at the anchor j
/// followed by a horizontal run. The box is rows [row(j), row(j')] x
/// cols [col(j'), col(j'')].
struct StepTriple {
  std::size_t j = 0;
  std::size_t j_prime = 0;
  std::size_t j_dprime = 0;
  int top = 0;
  int bottom = 0;
  int left = 0;
  int right = 0;

  [[nodiscard]] bool encloses(const StepTriple& other) const {
    return top <= other.top && other.bottom <= bottom && left <= other.left && other.right <= right;
  }
  friend bool operator==(const StepTriple&, const StepTriple&) = default;
};

enum class OcclusionReading {
  per_index,  // each index of P is spanned again outside P
  joint,      // each pair (k, l) is spanned by one connected piece outside P
};

struct OcclusionFailure {
  std::size_t i = 0;
  std::size_t j = 0;
  int k = 0;  // row index of S1(P), 0 for a column-only failure
  int l = 0;  // column index of S2(P), 0 for a row-only failure
};

struct OcclusionReport {
  bool passed = true;
  std::vector<OcclusionFailure> failures;
};

struct ConnectionWitness {
  StepTriple inner;
  std::size_t outer_step = 0;  // index into the outer walk's step list; uses steps outer_step, outer_step+1
  std::array<std::size_t, 5> turns{};  // k1..k5 on the outer walk
};

struct ConditionVerdict {
  std::string name;
  bool passed = false;
  std::vector<std::string> witnesses;
};

struct CGraphReport {
  int rank = 0;
  int m = 0;
  int n = 0;
  std::vector<Walk> walks;
  std::vector<Walk> auxiliary_walks;
  std::vector<ConditionVerdict> verdicts;
  int kappa = 0;
  std::optional<int> min_separation;  // empty when no two walks have off-boundary points
  bool strictly_nested = false;       // every consecutive pair nests without the connection fallback
  bool joint_non_occlusion = false;   // informational, see OcclusionReading::joint
  bool is_c_graph = false;

  [[nodiscard]] const ConditionVerdict* verdict(const std::string& name) const;
};

/// Row and column indices touched by a point set (S1, S2).
[[nodiscard]] std::pair<std::set<int>, std::set<int>> tree_index_spans(const PointSet& points);

/// Pairwise non-occlusion. For every overlapping pair (i, j) with overlap P,
/// the graph G = T(i) + T(j) + auxiliary trees with P removed must span every
/// row of S1(P) and every column of S2(P). The joint reading further asks one
/// connected piece of G per pair (k, l) in S1(P) x S2(P).
[[nodiscard]] OcclusionReport check_non_occlusion(const std::vector<LatticeTree>& trees,
                                                  const std::vector<LatticeTree>& auxiliary = {},
                                                  OcclusionReading reading = OcclusionReading::per_index);

/// Throws NotAStepAnchor unless ω(j) is entered by e1 and left by e2, or j = 0
/// and the walk starts with an e2 move.
[[nodiscard]] StepTriple nested_step_indices(const Walk& walk, std::size_t j);
/// Every step of the walk, in walk order.
[[nodiscard]] std::vector<StepTriple> step_triples(const Walk& walk);

/// Inner steps not enclosed by any outer step box. Steps lying entirely on the
/// region boundary are skipped. Throws SpanViolation.
[[nodiscard]] std::vector<StepTriple> unenclosed_steps(const Walk& outer, const Walk& inner, int m, int n);
[[nodiscard]] bool check_nested_steps(const Walk& outer, const Walk& inner, int m, int n);

/// Every unenclosed step of `cur` must fit in the joint box of two consecutive
/// steps of `prev`. Returns the witnesses, or nullopt when some step fails.
[[nodiscard]] std::optional<std::vector<ConnectionWitness>> connection_witnesses(const Walk& prev, const Walk& cur,
                                                                                 int m, int n);
[[nodiscard]] bool check_connection(const Walk& prev, const Walk& cur, int m, int n);

/// Smallest Chebyshev distance between points of distinct walks, ignoring
/// points on the region boundary.
[[nodiscard]] std::optional<int> min_separation(const std::vector<Walk>& walks, int m, int n);
[[nodiscard]] bool check_separation(const std::vector<Walk>& walks, int r, int m, int n);

/// Walks are ordered outermost first. Throws CoverMismatch unless walks and
/// auxiliary walks together cover the support exactly, InvalidWalk on a
/// malformed walk.
[[nodiscard]] CGraphReport verify_c_graph(const Mask& mask, int r, const std::vector<Walk>& walks,
                                          const std::vector<Walk>& auxiliary);

}  // namespace latcomp
