#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace latcomp {

/// A position (row, col) of the m x n index region, 1-based.
///
/// The default ordering is row-major, which is the scan order used for
/// every deterministic tie-break in the library.
struct LatticePoint {
  int row = 0;
  int col = 0;

  friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// Unit displacement between consecutive walk points.
struct Direction {
  int drow = 0;
  int dcol = 0;

  friend constexpr bool operator==(const Direction&, const Direction&) = default;
  [[nodiscard]] constexpr Direction reversed() const { return {-drow, -dcol}; }
  [[nodiscard]] constexpr bool horizontal() const { return drow == 0 && dcol != 0; }
  [[nodiscard]] constexpr bool vertical() const { return dcol == 0 && drow != 0; }
};

constexpr LatticePoint operator+(LatticePoint p, Direction d) { return {p.row + d.drow, p.col + d.dcol}; }
constexpr Direction operator-(LatticePoint a, LatticePoint b) { return {a.row - b.row, a.col - b.col}; }

constexpr int manhattan(LatticePoint a, LatticePoint b) {
  const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  return dr + dc;
}

constexpr int chebyshev(LatticePoint a, LatticePoint b) {
  const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  return dr > dc ? dr : dc;
}

using PointSet = std::set<LatticePoint>;

/// Boolean support pattern of an m x n matrix. All completability analysis
/// consumes only this object, never entry values.
class Mask {
 public:
  Mask(int m, int n);
  Mask(int m, int n, std::span<const LatticePoint> support);

  [[nodiscard]] int rows() const { return m_; }
  [[nodiscard]] int cols() const { return n_; }

  [[nodiscard]] bool in_region(LatticePoint p) const {
    return p.row >= 1 && p.row <= m_ && p.col >= 1 && p.col <= n_;
  }
  [[nodiscard]] bool contains(LatticePoint p) const {
    return in_region(p) && bits_[index(p)] != 0;
  }

  void insert(LatticePoint p);
  void erase(LatticePoint p);

  /// Support points in row-major order.
  [[nodiscard]] std::vector<LatticePoint> support() const;
  [[nodiscard]] std::size_t size() const;

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  [[nodiscard]] std::size_t index(LatticePoint p) const {
    return static_cast<std::size_t>(p.row - 1) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(p.col - 1);
  }

  int m_;
  int n_;
  std::vector<std::uint8_t> bits_;
};

/// Induced nearest-neighbour subgraph of the square lattice on a support set.
struct LatticeSubgraph {
  int m = 0;
  int n = 0;
  std::vector<LatticePoint> vertices;                         // row-major
  std::vector<std::pair<LatticePoint, LatticePoint>> edges;   // first < second, sorted

  [[nodiscard]] bool has_vertex(LatticePoint p) const;
  [[nodiscard]] std::vector<LatticePoint> neighbours(LatticePoint p) const;
  [[nodiscard]] int degree(LatticePoint p) const;
};

/// Ordered lattice path. A closed walk (circuit) stores each point once; the
/// step from the last point back to the first is implicit.
struct Walk {
  std::vector<LatticePoint> points;
  bool closed = false;

  [[nodiscard]] std::size_t size() const { return points.size(); }
  [[nodiscard]] bool empty() const { return points.empty(); }

  /// Index access; closed walks wrap around.
  [[nodiscard]] LatticePoint at(std::size_t k) const {
    return closed ? points[k % points.size()] : points.at(k);
  }

  friend bool operator==(const Walk&, const Walk&) = default;
};

enum class TurnKind { convex, reflex, straight };

struct TurnInfo {
  std::size_t index = 0;
  TurnKind kind = TurnKind::straight;
  Direction incoming;
  Direction outgoing;
};

[[nodiscard]] std::string to_string(TurnKind kind);

// -- walk predicates -------------------------------------------------------

/// Consecutive points (including the closing step of a circuit) differ by a unit step.
[[nodiscard]] bool has_unit_steps(const Walk& walk);
/// No point is visited twice.
[[nodiscard]] bool is_self_avoiding(const Walk& walk);
/// Throws NotACircuit unless `walk` is a closed self-avoiding unit-step walk
/// with at least four points.
void require_circuit(const Walk& walk);

/// Twice the signed area enclosed by a circuit; positive when the circuit is
/// counterclockwise as drawn (row 1 at the top).
[[nodiscard]] long long signed_area2(const Walk& circuit);

/// Counterclockwise orientation, starting at the row-major smallest point.
[[nodiscard]] Walk normalize_circuit(Walk circuit);

// -- lattice-core operations -----------------------------------------------

[[nodiscard]] LatticeSubgraph build_lattice_subgraph(const Mask& mask);

/// Decomposes each connected component into a circuit or an open walk.
///
/// Components with a vertex of degree >= 3 are accepted only when they carry
/// exactly one Hamiltonian circuit; otherwise AmbiguousDecomposition is thrown
/// listing the branching vertices. Circuits come back normalized.
[[nodiscard]] std::vector<Walk> extract_circuits(const LatticeSubgraph& graph);

[[nodiscard]] std::vector<TurnInfo> classify_vertices(const Walk& circuit);

/// Closed interior Int(w): lattice points of the m x n region inside or on the
/// polygonal curve through the circuit.
[[nodiscard]] PointSet interior_points(const Walk& circuit, int m, int n);
/// Int(w) minus the circuit's own points.
[[nodiscard]] PointSet strict_interior_points(const Walk& circuit, int m, int n);
/// Region points outside the closed interior.
[[nodiscard]] PointSet exterior_points(const Walk& circuit, int m, int n);

[[nodiscard]] bool spans_all_indices(const Walk& walk, int m, int n);

/// True iff walk points at the five indices are (a,c),(b,c),(b,d),(a,d),(a,c)
/// with a < b, c < d, and each of the four index ranges is a straight lattice
/// segment. Indices must be strictly increasing; closed walks wrap.
[[nodiscard]] bool forms_rectangle(const Walk& walk, const std::array<std::size_t, 5>& idx);

}  // namespace latcomp
