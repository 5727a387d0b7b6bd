#include "latcomp/removability.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "latcomp/errors.hpp"

namespace latcomp {

namespace {

struct Prolongation {
  Direction dir;
  std::size_t facing = 0;
  std::vector<LatticePoint> chord;
};

/// Circuit index of every region point, -1 off the circuit.
class PointIndex {
 public:
  PointIndex(const Walk& c, int m, int n) : n_(n), at_(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), -1) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      const auto p = c.points[k];
      if (p.row < 1 || p.row > m || p.col < 1 || p.col > n) throw IndexOutOfRange("circuit leaves the mask region");
      at_[slot(p)] = static_cast<long>(k);
    }
  }
  [[nodiscard]] long at(LatticePoint p) const { return at_[slot(p)]; }

 private:
  [[nodiscard]] std::size_t slot(LatticePoint p) const {
    return static_cast<std::size_t>(p.row - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(p.col - 1);
  }
  int n_;
  std::vector<long> at_;
};

std::optional<Prolongation> prolong(const Walk& c, const PointIndex& index, std::size_t v, Direction dir, int m,
                                    int n) {
  Prolongation pr{dir, 0, {c.at(v)}};
  LatticePoint p = c.at(v);
  while (true) {
    p = p + dir;
    if (p.row < 1 || p.row > m || p.col < 1 || p.col > n) return std::nullopt;
    pr.chord.push_back(p);
    const long k = index.at(p);
    if (k >= 0) {
      pr.facing = static_cast<std::size_t>(k);
      return pr;
    }
  }
}

// Closed loop: arc from s forward to e, then the chord interior back to s.
// Returns the rectangle corners if it is one.
std::optional<std::array<LatticePoint, 4>> arc_rectangle(const Walk& c, std::size_t s, std::size_t e,
                                                         const std::vector<LatticePoint>& chord_s_to_e) {
  const std::size_t n = c.size();
  // cheap rejection: every point on the bounding box, as many points as the box boundary
  {
    int a = chord_s_to_e.front().row, b = a, l = chord_s_to_e.front().col, r = l;
    std::size_t count = chord_s_to_e.size() - 2;
    for (std::size_t k = s;; k = (k + 1) % n) {
      const auto p = c.at(k);
      a = std::min(a, p.row);
      b = std::max(b, p.row);
      l = std::min(l, p.col);
      r = std::max(r, p.col);
      ++count;
      if (k == e) break;
    }
    for (auto p : chord_s_to_e) {
      a = std::min(a, p.row);
      b = std::max(b, p.row);
      l = std::min(l, p.col);
      r = std::max(r, p.col);
    }
    if (a == b || l == r || count != static_cast<std::size_t>(2 * (b - a + r - l))) return std::nullopt;
    auto on_box = [&](LatticePoint p) { return p.row == a || p.row == b || p.col == l || p.col == r; };
    if (!std::all_of(chord_s_to_e.begin(), chord_s_to_e.end(), on_box)) return std::nullopt;
    for (std::size_t k = s;; k = (k + 1) % n) {
      if (!on_box(c.at(k))) return std::nullopt;
      if (k == e) break;
    }
  }
  Walk loop;
  loop.closed = true;
  for (std::size_t k = s;; k = (k + 1) % n) {
    loop.points.push_back(c.at(k));
    if (k == e) break;
  }
  for (std::size_t k = chord_s_to_e.size() - 2; k >= 1; --k) loop.points.push_back(chord_s_to_e[k]);
  if (loop.size() < 4 || !is_self_avoiding(loop)) return std::nullopt;
  loop = normalize_circuit(std::move(loop));
  int a = loop.points[0].row, b = a, cl = loop.points[0].col, d = cl;
  for (auto p : loop.points) {
    a = std::min(a, p.row);
    b = std::max(b, p.row);
    cl = std::min(cl, p.col);
    d = std::max(d, p.col);
  }
  const auto h = static_cast<std::size_t>(b - a);
  const auto w = static_cast<std::size_t>(d - cl);
  if (h == 0 || w == 0 || loop.size() != 2 * (h + w)) return std::nullopt;
  if (!forms_rectangle(loop, {0, h, h + w, 2 * h + w, 2 * (h + w)})) return std::nullopt;
  return std::array<LatticePoint, 4>{{{a, cl}, {b, cl}, {b, d}, {a, d}}};
}

std::optional<std::pair<int, std::vector<LatticePoint>>> find_companion(
    const Mask& omega, Axis axis, const std::vector<LatticePoint>& chord, const std::array<LatticePoint, 4>& rect) {
  const auto v = chord.front();
  const auto f = chord.back();
  const bool horiz = axis == Axis::horizontal;
  const int base = horiz ? v.row : v.col;
  const int lo = horiz ? std::min(v.col, f.col) : std::min(v.row, f.row);
  const int hi = horiz ? std::max(v.col, f.col) : std::max(v.row, f.row);
  const int near_side = horiz ? rect[0].row : rect[0].col;
  const int far_side_alt = horiz ? rect[1].row : rect[2].col;
  const int far = base == near_side ? far_side_alt : near_side;
  const int limit = horiz ? omega.rows() : omega.cols();
  for (int dist = 1; dist < limit; ++dist) {
    for (int K : {-dist, dist}) {
      const int line = base + K;
      if (line < 1 || line > limit || line == far) continue;
      std::vector<LatticePoint> pts;
      bool ok = true;
      for (int t = lo; t <= hi && ok; ++t) {
        const LatticePoint p = horiz ? LatticePoint{line, t} : LatticePoint{t, line};
        ok = omega.contains(p);
        pts.push_back(p);
      }
      if (ok) return std::make_pair(K, std::move(pts));
    }
  }
  return std::nullopt;
}

std::string point_str(LatticePoint p) {
  std::ostringstream os;
  os << '(' << p.row << ',' << p.col << ')';
  return os.str();
}

}  // namespace

std::vector<LatticePoint> RectangleWitness::rectangle_points() const {
  std::vector<LatticePoint> out;
  for (int i = top(); i <= bottom(); ++i)
    for (int j = left(); j <= right(); ++j) out.push_back({i, j});
  return out;
}

bool RemovabilityReport::all_removable() const {
  return std::all_of(levels.begin(), levels.end(), [](const VertexLevel& v) { return v.level.has_value(); });
}

std::vector<LatticePoint> RemovabilityReport::not_removable() const {
  std::vector<LatticePoint> out;
  for (const auto& v : levels)
    if (!v.level) out.push_back(v.vertex);
  return out;
}

std::optional<std::size_t> index_of(const Walk& walk, LatticePoint p) {
  auto it = std::find(walk.points.begin(), walk.points.end(), p);
  if (it == walk.points.end()) return std::nullopt;
  return static_cast<std::size_t>(it - walk.points.begin());
}

std::optional<RectangleWitness> is_1_removable(const Walk& circuit, const Mask& omega, std::size_t vertex) {
  require_circuit(circuit);
  if (vertex >= circuit.size()) throw IndexOutOfRange("vertex index past the end of the circuit");
  const auto in = circuit.at(vertex) - circuit.at(vertex + circuit.size() - 1);
  const auto out = circuit.at(vertex + 1) - circuit.at(vertex);
  // same rule as classify_vertices, for one vertex
  const int cross = in.dcol * (-out.drow) - (-in.drow) * out.dcol;
  const int orient = signed_area2(circuit) > 0 ? 1 : -1;
  if (cross * orient >= 0) throw NotReflex("vertex " + point_str(circuit.at(vertex)) + " is not reflex");

  const Direction hdir = in.horizontal() ? in : out.reversed();
  const Direction vdir = in.vertical() ? in : out.reversed();

  const int m = omega.rows();
  const int n = omega.cols();
  const PointIndex index(circuit, m, n);
  const auto px = prolong(circuit, index, vertex, hdir, m, n);
  const auto py = prolong(circuit, index, vertex, vdir, m, n);

  struct Candidate {
    const std::optional<Prolongation>& pr;
    Axis axis;
    bool vertex_first;
  };
  const std::array<Candidate, 4> cands{{{px, Axis::horizontal, true},
                                        {px, Axis::horizontal, false},
                                        {py, Axis::vertical, true},
                                        {py, Axis::vertical, false}}};

  for (std::size_t c = 0; c < cands.size(); ++c) {
    const auto& cand = cands[c];
    if (!cand.pr) continue;
    const auto& chord = cand.pr->chord;
    std::optional<std::array<LatticePoint, 4>> rect;
    if (cand.vertex_first) {
      rect = arc_rectangle(circuit, vertex, cand.pr->facing, chord);
    } else {
      std::vector<LatticePoint> rev(chord.rbegin(), chord.rend());
      rect = arc_rectangle(circuit, cand.pr->facing, vertex, rev);
    }
    if (!rect) continue;
    auto comp = find_companion(omega, cand.axis, chord, *rect);
    if (!comp) continue;
    RectangleWitness w;
    w.axis = cand.axis;
    w.condition = static_cast<int>(c) + 1;
    w.vertex_index = vertex;
    w.facing_index = cand.pr->facing;
    w.vertex = circuit.at(vertex);
    w.facing = circuit.at(cand.pr->facing);
    w.corners = *rect;
    w.chord = chord;
    w.K = comp->first;
    w.companion_line = std::move(comp->second);
    return w;
  }
  return std::nullopt;
}

Walk remove_and_close(const Walk& circuit, std::size_t vertex, const RectangleWitness& w) {
  require_circuit(circuit);
  const std::size_t n = circuit.size();
  if (vertex >= n || w.facing_index >= n || circuit.at(vertex) != w.vertex ||
      circuit.at(w.facing_index) != w.facing || w.chord.size() < 2 || w.chord.front() != w.vertex ||
      w.chord.back() != w.facing)
    throw InvalidWitness("witness does not match the circuit");
  for (std::size_t k = 1; k + 1 < w.chord.size(); ++k)
    if (index_of(circuit, w.chord[k])) throw InvalidWitness("chord crosses the circuit");

  const bool vertex_first = w.condition == 1 || w.condition == 3;
  const std::size_t s = vertex_first ? vertex : w.facing_index;
  const std::size_t e = vertex_first ? w.facing_index : vertex;
  std::vector<LatticePoint> chord_s_to_e = w.chord;
  if (!vertex_first) std::reverse(chord_s_to_e.begin(), chord_s_to_e.end());
  const auto rect = arc_rectangle(circuit, s, e, chord_s_to_e);
  if (!rect || *rect != w.corners) throw InvalidWitness("witness arc no longer forms its rectangle");

  // keep the complementary arc e -> s, then walk the chord s -> e
  Walk out;
  out.closed = true;
  for (std::size_t k = e;; k = (k + 1) % n) {
    out.points.push_back(circuit.at(k));
    if (k == s) break;
  }
  for (std::size_t k = 1; k + 1 < chord_s_to_e.size(); ++k) out.points.push_back(chord_s_to_e[k]);
  return normalize_circuit(std::move(out));
}

RemovabilityReport removability_analysis(const Walk& circuit, const Mask& mask) {
  RemovabilityReport rep;
  rep.initial = normalize_circuit(circuit);
  Walk cur = rep.initial;

  std::map<LatticePoint, std::optional<int>> level;
  for (const auto& t : classify_vertices(cur))
    if (t.kind == TurnKind::reflex) level[cur.at(t.index)] = std::nullopt;
  rep.N_r = static_cast<int>(level.size());

  int round = 0;
  while (true) {
    std::vector<LatticePoint> reflex;
    for (const auto& t : classify_vertices(cur))
      if (t.kind == TurnKind::reflex) reflex.push_back(cur.at(t.index));
    if (reflex.empty()) break;
    std::sort(reflex.begin(), reflex.end());

    // the round removes what is 1-removable in C_{l-1}; witnesses are
    // recomputed on the partially closed circuit
    std::vector<LatticePoint> removable;
    for (auto p : reflex)
      if (is_1_removable(cur, mask, *index_of(cur, p))) removable.push_back(p);

    RemovalRound rr;
    rr.level = round + 1;
    for (auto p : removable) {
      const auto idx = index_of(cur, p);
      if (!idx) continue;
      if (classify_vertices(cur)[*idx].kind != TurnKind::reflex) continue;
      auto w = is_1_removable(cur, mask, *idx);
      if (!w) continue;
      cur = remove_and_close(cur, *idx, *w);
      rr.removals.push_back({p, std::move(*w)});
    }
    if (rr.removals.empty()) break;
    ++round;

    PointSet still;
    for (const auto& t : classify_vertices(cur))
      if (t.kind == TurnKind::reflex) still.insert(cur.at(t.index));
    for (auto p : reflex) {
      auto it = level.find(p);
      if (it != level.end() && !it->second && !still.count(p)) it->second = round;
    }
    rr.circuit = cur;
    rep.schedule.push_back(std::move(rr));
  }

  for (const auto& [p, l] : level) {
    rep.levels.push_back({p, l});
    if (l) rep.L = std::max(rep.L, *l);
  }
  return rep;
}

}  // namespace latcomp
