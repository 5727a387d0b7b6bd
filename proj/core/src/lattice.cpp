#include "latcomp/lattice.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "latcomp/errors.hpp"

namespace latcomp {

namespace {

std::string point_str(LatticePoint p) {
  std::ostringstream os;
  os << '(' << p.row << ',' << p.col << ')';
  return os.str();
}

constexpr std::array<Direction, 4> kSteps{{{0, 1}, {1, 0}, {0, -1}, {-1, 0}}};

// Backtracking Hamiltonian-circuit counter, stops once two are found or the
// node budget runs out.
class HamiltonSearch {
 public:
  explicit HamiltonSearch(const std::vector<LatticePoint>& comp) : comp_(comp) {
    for (std::size_t i = 0; i < comp.size(); ++i) id_[comp[i]] = static_cast<int>(i);
    adj_.resize(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (auto d : kSteps) {
        auto it = id_.find(comp[i] + d);
        if (it != id_.end()) adj_[i].push_back(it->second);
      }
  }

  // Returns the number of distinct undirected circuits found (0, 1 or 2 meaning "many").
  int run() {
    if (comp_.size() < 4) return 0;
    for (const auto& a : adj_)
      if (a.size() < 2) return 0;
    visited_.assign(comp_.size(), 0);
    path_.clear();
    path_.push_back(0);
    visited_[0] = 1;
    dfs(0);
    if (budget_exhausted_) return 2;
    return found_ >= 4 ? 2 : found_ / 2;
  }

  [[nodiscard]] const std::vector<int>& circuit() const { return first_; }

 private:
  bool feasible() const {
    const int start = path_.front();
    const int end = path_.back();
    for (std::size_t v = 0; v < comp_.size(); ++v) {
      if (visited_[v]) continue;
      int avail = 0;
      for (int w : adj_[v])
        if (!visited_[w] || w == start || w == end) ++avail;
      if (avail < 2) return false;
    }
    return true;
  }

  void dfs(int v) {
    if (found_ >= 4 || budget_exhausted_) return;
    if (++nodes_ > kBudget) {
      budget_exhausted_ = true;
      return;
    }
    if (path_.size() == comp_.size()) {
      if (std::find(adj_[v].begin(), adj_[v].end(), 0) != adj_[v].end()) {
        if (found_ == 0) first_ = path_;
        ++found_;
      }
      return;
    }
    if (!feasible()) return;
    for (int w : adj_[v]) {
      if (visited_[w]) continue;
      visited_[w] = 1;
      path_.push_back(w);
      dfs(w);
      path_.pop_back();
      visited_[w] = 0;
    }
  }

  static constexpr long kBudget = 4'000'000;
  const std::vector<LatticePoint>& comp_;
  std::map<LatticePoint, int> id_;
  std::vector<std::vector<int>> adj_;
  std::vector<char> visited_;
  std::vector<int> path_;
  std::vector<int> first_;
  int found_ = 0;
  long nodes_ = 0;
  bool budget_exhausted_ = false;
};

}  // namespace

bool MinorSpec::contains(LatticePoint p) const {
  return std::binary_search(rows.begin(), rows.end(), p.row) &&
         std::binary_search(cols.begin(), cols.end(), p.col);
}

// -- Mask ------------------------------------------------------------------

Mask::Mask(int m, int n) : m_(m), n_(n) {
  if (m < 1 || n < 1) throw InvalidParameter("mask dimensions must be positive");
  bits_.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), 0);
}

Mask::Mask(int m, int n, std::span<const LatticePoint> support) : Mask(m, n) {
  for (auto p : support) insert(p);
}

void Mask::insert(LatticePoint p) {
  if (!in_region(p)) throw IndexOutOfRange("point " + point_str(p) + " outside the index region");
  bits_[index(p)] = 1;
}

void Mask::erase(LatticePoint p) {
  if (!in_region(p)) throw IndexOutOfRange("point " + point_str(p) + " outside the index region");
  bits_[index(p)] = 0;
}

std::vector<LatticePoint> Mask::support() const {
  std::vector<LatticePoint> out;
  for (int i = 1; i <= m_; ++i)
    for (int j = 1; j <= n_; ++j)
      if (bits_[index({i, j})]) out.push_back({i, j});
  return out;
}

std::size_t Mask::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

// -- LatticeSubgraph -------------------------------------------------------

bool LatticeSubgraph::has_vertex(LatticePoint p) const {
  return std::binary_search(vertices.begin(), vertices.end(), p);
}

std::vector<LatticePoint> LatticeSubgraph::neighbours(LatticePoint p) const {
  std::vector<LatticePoint> out;
  if (!has_vertex(p)) return out;
  for (auto d : kSteps)
    if (has_vertex(p + d)) out.push_back(p + d);
  std::sort(out.begin(), out.end());
  return out;
}

int LatticeSubgraph::degree(LatticePoint p) const { return static_cast<int>(neighbours(p).size()); }

std::string to_string(TurnKind kind) {
  switch (kind) {
    case TurnKind::convex: return "convex";
    case TurnKind::reflex: return "reflex";
    case TurnKind::straight: return "straight";
  }
  return "?";
}

// -- walk predicates -------------------------------------------------------

bool has_unit_steps(const Walk& walk) {
  const auto& p = walk.points;
  for (std::size_t k = 1; k < p.size(); ++k)
    if (manhattan(p[k - 1], p[k]) != 1) return false;
  if (walk.closed && p.size() > 1 && manhattan(p.back(), p.front()) != 1) return false;
  return true;
}

bool is_self_avoiding(const Walk& walk) {
  auto pts = walk.points;
  std::sort(pts.begin(), pts.end());
  return std::adjacent_find(pts.begin(), pts.end()) == pts.end();
}

void require_circuit(const Walk& walk) {
  if (!walk.closed) throw NotACircuit("walk is not closed");
  if (walk.size() < 4) throw NotACircuit("circuit needs at least four points");
  if (!has_unit_steps(walk)) throw NotACircuit("circuit has a non-unit step");
  if (!is_self_avoiding(walk)) throw NotACircuit("circuit revisits a point");
}

long long signed_area2(const Walk& c) {
  long long a = 0;
  const std::size_t n = c.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto p = c.points[k];
    const auto q = c.points[(k + 1) % n];
    // x = col, y = -row
    a += static_cast<long long>(p.col) * (-q.row) - static_cast<long long>(q.col) * (-p.row);
  }
  return a;
}

Walk normalize_circuit(Walk c) {
  require_circuit(c);
  if (signed_area2(c) < 0) std::reverse(c.points.begin(), c.points.end());
  auto it = std::min_element(c.points.begin(), c.points.end());
  std::rotate(c.points.begin(), it, c.points.end());
  return c;
}

// -- lattice-core ----------------------------------------------------------

LatticeSubgraph build_lattice_subgraph(const Mask& mask) {
  LatticeSubgraph g;
  g.m = mask.rows();
  g.n = mask.cols();
  g.vertices = mask.support();
  for (auto p : g.vertices) {
    if (mask.contains({p.row, p.col + 1})) g.edges.push_back({p, {p.row, p.col + 1}});
    if (mask.contains({p.row + 1, p.col})) g.edges.push_back({p, {p.row + 1, p.col}});
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::vector<Walk> extract_circuits(const LatticeSubgraph& g) {
  std::vector<Walk> out;
  PointSet seen;
  for (auto start : g.vertices) {
    if (seen.count(start)) continue;
    std::vector<LatticePoint> comp;
    std::queue<LatticePoint> q;
    q.push(start);
    seen.insert(start);
    while (!q.empty()) {
      auto p = q.front();
      q.pop();
      comp.push_back(p);
      for (auto w : g.neighbours(p))
        if (seen.insert(w).second) q.push(w);
    }
    std::sort(comp.begin(), comp.end());

    std::size_t edge_count2 = 0;
    int max_deg = 0;
    for (auto p : comp) {
      const int d = g.degree(p);
      edge_count2 += static_cast<std::size_t>(d);
      max_deg = std::max(max_deg, d);
    }

    if (comp.size() == 1) {
      out.push_back(Walk{{comp.front()}, false});
      continue;
    }

    if (max_deg <= 2) {
      const bool cyclic = edge_count2 / 2 == comp.size();
      LatticePoint first = comp.front();
      if (!cyclic) {
        for (auto p : comp)
          if (g.degree(p) == 1) {
            first = p;
            break;
          }
      }
      Walk w{{first}, cyclic};
      LatticePoint prev = first;
      LatticePoint cur = first;
      while (true) {
        bool advanced = false;
        for (auto nb : g.neighbours(cur)) {
          if (nb == prev || nb == first) continue;
          prev = cur;
          cur = nb;
          w.points.push_back(cur);
          advanced = true;
          break;
        }
        if (!advanced || w.points.size() == comp.size()) break;
      }
      out.push_back(cyclic ? normalize_circuit(std::move(w)) : std::move(w));
      continue;
    }

    HamiltonSearch hs(comp);
    if (hs.run() == 1) {
      Walk w;
      w.closed = true;
      for (int i : hs.circuit()) w.points.push_back(comp[static_cast<std::size_t>(i)]);
      out.push_back(normalize_circuit(std::move(w)));
      continue;
    }
    std::vector<LatticePoint> branching;
    for (auto p : comp)
      if (g.degree(p) >= 3) branching.push_back(p);
    throw AmbiguousDecomposition(std::move(branching));
  }
  return out;
}

std::vector<TurnInfo> classify_vertices(const Walk& circuit) {
  require_circuit(circuit);
  const int orient = signed_area2(circuit) > 0 ? 1 : -1;
  const std::size_t n = circuit.size();
  std::vector<TurnInfo> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto in = circuit.at(k) - circuit.at(k + n - 1);
    const auto outd = circuit.at(k + 1) - circuit.at(k);
    // display coordinates: dx = dcol, dy = -drow
    const int cross = in.dcol * (-outd.drow) - (-in.drow) * outd.dcol;
    TurnKind kind = TurnKind::straight;
    if (cross * orient > 0) kind = TurnKind::convex;
    if (cross * orient < 0) kind = TurnKind::reflex;
    out.push_back({k, kind, in, outd});
  }
  return out;
}

PointSet interior_points(const Walk& circuit, int m, int n) {
  require_circuit(circuit);
  for (auto p : circuit.points)
    if (p.row < 1 || p.row > m || p.col < 1 || p.col > n)
      throw IndexOutOfRange("circuit point " + point_str(p) + " outside the index region");
  // vertical edges crossing the horizontal line row + 1/2, grouped by row
  std::vector<std::vector<int>> crossings(static_cast<std::size_t>(m) + 1);
  const std::size_t len = circuit.size();
  for (std::size_t k = 0; k < len; ++k) {
    const auto a = circuit.at(k);
    const auto b = circuit.at(k + 1);
    if (a.col == b.col) crossings[static_cast<std::size_t>(std::min(a.row, b.row))].push_back(a.col);
  }
  PointSet on(circuit.points.begin(), circuit.points.end());
  PointSet out;
  for (int i = 1; i <= m; ++i) {
    const auto& cr = crossings[static_cast<std::size_t>(i)];
    for (int j = 1; j <= n; ++j) {
      if (on.count({i, j})) {
        out.insert({i, j});
        continue;
      }
      const auto right = std::count_if(cr.begin(), cr.end(), [j](int c) { return c > j; });
      if (right % 2 == 1) out.insert({i, j});
    }
  }
  return out;
}

PointSet strict_interior_points(const Walk& circuit, int m, int n) {
  auto all = interior_points(circuit, m, n);
  for (auto p : circuit.points) all.erase(p);
  return all;
}

PointSet exterior_points(const Walk& circuit, int m, int n) {
  const auto in = interior_points(circuit, m, n);
  PointSet out;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j)
      if (!in.count({i, j})) out.insert({i, j});
  return out;
}

bool spans_all_indices(const Walk& walk, int m, int n) {
  std::vector<char> r(static_cast<std::size_t>(m) + 1, 0), c(static_cast<std::size_t>(n) + 1, 0);
  for (auto p : walk.points) {
    if (p.row >= 1 && p.row <= m) r[static_cast<std::size_t>(p.row)] = 1;
    if (p.col >= 1 && p.col <= n) c[static_cast<std::size_t>(p.col)] = 1;
  }
  return std::all_of(r.begin() + 1, r.end(), [](char x) { return x != 0; }) &&
         std::all_of(c.begin() + 1, c.end(), [](char x) { return x != 0; });
}

bool forms_rectangle(const Walk& walk, const std::array<std::size_t, 5>& idx) {
  for (std::size_t j = 1; j < 5; ++j)
    if (idx[j] <= idx[j - 1]) throw IndexOutOfRange("rectangle indices must be strictly increasing");
  if (walk.empty()) throw IndexOutOfRange("empty walk");
  if (walk.closed) {
    if (idx[4] - idx[0] > walk.size()) throw IndexOutOfRange("rectangle indices wrap more than once");
  } else if (idx[4] >= walk.size()) {
    throw IndexOutOfRange("rectangle index past the end of the walk");
  }
  const auto p1 = walk.at(idx[0]);
  const auto p2 = walk.at(idx[1]);
  const auto p3 = walk.at(idx[2]);
  const auto p4 = walk.at(idx[3]);
  const auto p5 = walk.at(idx[4]);
  const int a = p1.row, c = p1.col, b = p2.row, d = p3.col;
  if (!(a < b && c < d)) return false;
  if (p2 != LatticePoint{b, c} || p3 != LatticePoint{b, d} || p4 != LatticePoint{a, d} || p5 != p1)
    return false;
  for (std::size_t j = 0; j < 4; ++j) {
    const auto s = walk.at(idx[j]);
    const auto e = walk.at(idx[j + 1]);
    if (static_cast<std::size_t>(manhattan(s, e)) != idx[j + 1] - idx[j]) return false;
    const Direction u{(e.row > s.row) - (e.row < s.row), (e.col > s.col) - (e.col < s.col)};
    for (std::size_t k = idx[j]; k <= idx[j + 1]; ++k) {
      const auto off = static_cast<int>(k - idx[j]);
      if (walk.at(k) != LatticePoint{s.row + off * u.drow, s.col + off * u.dcol}) return false;
    }
  }
  return true;
}

// -- errors ----------------------------------------------------------------

namespace {
std::string list_points(const std::vector<LatticePoint>& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ' ';
    s += point_str(pts[i]);
  }
  return s;
}
}  // namespace

AmbiguousDecomposition::AmbiguousDecomposition(std::vector<LatticePoint> branching)
    : Error("ambiguous decomposition at branching points " + list_points(branching)),
      branching_(std::move(branching)) {}

GenericityViolation::GenericityViolation(LatticePoint entry, MinorSpec minor, double alpha, double scale)
    : Error("genericity violation at entry " + point_str(entry)),
      entry_(entry),
      minor_(std::move(minor)),
      alpha_(alpha),
      scale_(scale) {}

ScheduleGap::ScheduleGap(std::string what, std::vector<LatticePoint> entries)
    : Error(std::move(what) + ": " + list_points(entries)), entries_(std::move(entries)) {}

}  // namespace latcomp
