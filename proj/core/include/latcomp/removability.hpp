#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "latcomp/lattice.hpp"

namespace latcomp {

enum class Axis { horizontal, vertical };

/// Evidence that a reflex vertex is 1-removable.
///
/// The chord runs from the vertex, through the interior, to the facing circuit
/// point. `condition` (1..4) names which of the four listed alternatives held:
/// 1/2 use the horizontal chord with the arc ω[v, v^x] / ω[v^x, v], 3/4 the
/// vertical chord with ω[v, v^y] / ω[v^y, v].
struct RectangleWitness {
  Axis axis = Axis::horizontal;
  int condition = 0;
  std::size_t vertex_index = 0;
  std::size_t facing_index = 0;
  LatticePoint vertex;
  LatticePoint facing;
  std::array<LatticePoint, 4> corners{};  // (a,c), (b,c), (b,d), (a,d)
  std::vector<LatticePoint> chord;         // vertex .. facing, inclusive
  std::vector<LatticePoint> companion_line;
  int K = 0;

  [[nodiscard]] int top() const { return corners[0].row; }
  [[nodiscard]] int bottom() const { return corners[1].row; }
  [[nodiscard]] int left() const { return corners[0].col; }
  [[nodiscard]] int right() const { return corners[2].col; }
  /// Every lattice point of the closed rectangle.
  [[nodiscard]] std::vector<LatticePoint> rectangle_points() const;
};

struct Removal {
  LatticePoint vertex;
  RectangleWitness witness;
};

struct RemovalRound {
  int level = 0;
  std::vector<Removal> removals;
  Walk circuit;  // C_level
};

struct VertexLevel {
  LatticePoint vertex;
  std::optional<int> level;  // empty = not removable
};

struct RemovabilityReport {
  Walk initial;                     // C_0, normalized
  std::vector<VertexLevel> levels;  // reflex vertices of C_0, row-major
  int L = 0;
  int N_r = 0;
  std::vector<RemovalRound> schedule;

  [[nodiscard]] bool all_removable() const;
  [[nodiscard]] std::vector<LatticePoint> not_removable() const;
  [[nodiscard]] const Walk& final_circuit() const {
    return schedule.empty() ? initial : schedule.back().circuit;
  }
};

/// Witness for the first of the four 1-removability alternatives that holds,
/// with the companion line inside the support. Throws NotReflex if the vertex
/// is not reflex.
[[nodiscard]] std::optional<RectangleWitness> is_1_removable(const Walk& circuit, const Mask& mask,
                                                             std::size_t vertex);

/// Cuts the witness rectangle off the circuit by replacing its arc with the
/// chord. Throws InvalidWitness if the witness does not match `circuit`.
[[nodiscard]] Walk remove_and_close(const Walk& circuit, std::size_t vertex, const RectangleWitness& witness);

/// Removal rounds C_0 -> C_1 -> ... . Round l removes, in row-major order,
/// the vertices that are 1-removable in C_{l-1}; each witness is recomputed
/// on the circuit as closed so far. Companion lines must lie in the support.
[[nodiscard]] RemovabilityReport removability_analysis(const Walk& circuit, const Mask& mask);

/// Index of `p` on the walk, if present.
[[nodiscard]] std::optional<std::size_t> index_of(const Walk& walk, LatticePoint p);

}  // namespace latcomp
