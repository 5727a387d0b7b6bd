#include "latcomp/rank_conditions.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "latcomp/errors.hpp"

namespace latcomp {

namespace {

constexpr Direction kE1{0, 1};  // +column
constexpr Direction kE2{1, 0};  // +row

std::string pstr(LatticePoint p) {
  std::ostringstream os;
  os << '(' << p.row << ',' << p.col << ')';
  return os.str();
}

void require_walk(const Walk& w) {
  if (w.empty()) throw InvalidWalk("empty walk");
  if (!has_unit_steps(w)) throw InvalidWalk("walk has a non-unit step");
  if (!is_self_avoiding(w)) throw InvalidWalk("walk revisits a point");
}

bool on_boundary(LatticePoint p, int m, int n) {
  return p.row == 1 || p.row == m || p.col == 1 || p.col == n;
}

bool step_on_boundary(const Walk& w, const StepTriple& s, int m, int n) {
  for (std::size_t k = s.j; k <= s.j_dprime; ++k)
    if (!on_boundary(w.at(k), m, n)) return false;
  return true;
}

void require_span(const Walk& w, int m, int n) {
  if (!spans_all_indices(w, m, n)) throw SpanViolation("walk does not span all row and column indices");
}

std::string step_str(const Walk& w, const StepTriple& s) {
  return pstr(w.at(s.j)) + "-" + pstr(w.at(s.j_prime)) + "-" + pstr(w.at(s.j_dprime));
}

}  // namespace

LatticeTree LatticeTree::from_walk(const Walk& walk) {
  require_walk(walk);
  LatticeTree t;
  t.points = walk.points;
  std::sort(t.points.begin(), t.points.end());
  for (std::size_t k = 1; k < walk.size(); ++k) {
    auto a = walk.points[k - 1], b = walk.points[k];
    t.edges.push_back(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
  }
  std::sort(t.edges.begin(), t.edges.end());
  return t;
}

bool LatticeTree::contains(LatticePoint p) const { return std::binary_search(points.begin(), points.end(), p); }

const ConditionVerdict* CGraphReport::verdict(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

std::pair<std::set<int>, std::set<int>> tree_index_spans(const PointSet& points) {
  std::pair<std::set<int>, std::set<int>> out;
  for (auto p : points) {
    out.first.insert(p.row);
    out.second.insert(p.col);
  }
  return out;
}

OcclusionReport check_non_occlusion(const std::vector<LatticeTree>& trees, const std::vector<LatticeTree>& auxiliary,
                                    OcclusionReading reading) {
  OcclusionReport rep;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (std::size_t j = i + 1; j < trees.size(); ++j) {
      PointSet P;
      for (auto p : trees[i].points)
        if (trees[j].contains(p)) P.insert(p);
      if (P.empty()) continue;

      // adjacency over T(i), T(j) and the auxiliary trees, minus P
      std::map<LatticePoint, std::vector<LatticePoint>> adj;
      auto add_tree = [&](const LatticeTree& t) {
        for (auto p : t.points)
          if (!P.count(p)) adj[p];
        for (const auto& [a, b] : t.edges)
          if (!P.count(a) && !P.count(b)) {
            adj[a].push_back(b);
            adj[b].push_back(a);
          }
      };
      add_tree(trees[i]);
      add_tree(trees[j]);
      for (const auto& t : auxiliary) add_tree(t);

      const auto [S1, S2] = tree_index_spans(P);
      auto fail = [&](int k, int l) {
        rep.passed = false;
        rep.failures.push_back({i, j, k, l});
      };

      if (reading == OcclusionReading::per_index) {
        std::set<int> rows, cols;
        for (const auto& [p, _] : adj) {
          rows.insert(p.row);
          cols.insert(p.col);
        }
        for (int k : S1)
          if (!rows.count(k)) fail(k, 0);
        for (int l : S2)
          if (!cols.count(l)) fail(0, l);
        continue;
      }

      std::vector<std::pair<std::set<int>, std::set<int>>> comps;
      PointSet seen;
      for (const auto& [start, _] : adj) {
        if (seen.count(start)) continue;
        PointSet comp;
        std::queue<LatticePoint> q;
        q.push(start);
        seen.insert(start);
        while (!q.empty()) {
          auto p = q.front();
          q.pop();
          comp.insert(p);
          for (auto w : adj[p])
            if (seen.insert(w).second) q.push(w);
        }
        comps.push_back(tree_index_spans(comp));
      }
      for (int k : S1)
        for (int l : S2) {
          const bool covered = std::any_of(comps.begin(), comps.end(), [&](const auto& c) {
            return c.first.count(k) && c.second.count(l);
          });
          if (!covered) fail(k, l);
        }
    }
  }
  return rep;
}

StepTriple nested_step_indices(const Walk& w, std::size_t j) {
  require_walk(w);
  if (j + 1 >= w.size()) throw NotAStepAnchor("anchor index past the last move");
  const bool starts_down = j == 0 && w.at(1) - w.at(0) == kE2;
  const bool turn = j > 0 && w.at(j) - w.at(j - 1) == kE1 && w.at(j + 1) - w.at(j) == kE2;
  if (!starts_down && !turn) throw NotAStepAnchor("index " + std::to_string(j) + " is not a step anchor");

  StepTriple s;
  s.j = j;
  // j': last index with the column of ω(j)
  std::size_t k = j;
  while (k + 1 < w.size() && w.at(k + 1).col == w.at(j).col) ++k;
  s.j_prime = k;
  // j'': last index with the row of ω(j')
  while (k + 1 < w.size() && w.at(k + 1).row == w.at(s.j_prime).row) ++k;
  s.j_dprime = k;

  const auto a = w.at(s.j), b = w.at(s.j_prime), c = w.at(s.j_dprime);
  s.top = std::min(a.row, b.row);
  s.bottom = std::max(a.row, b.row);
  s.left = std::min(b.col, c.col);
  s.right = std::max(b.col, c.col);
  return s;
}

std::vector<StepTriple> step_triples(const Walk& w) {
  require_walk(w);
  std::vector<StepTriple> out;
  if (w.size() < 2) return out;
  if (w.at(1) - w.at(0) == kE2) out.push_back(nested_step_indices(w, 0));
  for (std::size_t j = 1; j + 1 < w.size(); ++j)
    if (w.at(j) - w.at(j - 1) == kE1 && w.at(j + 1) - w.at(j) == kE2) out.push_back(nested_step_indices(w, j));
  return out;
}

std::vector<StepTriple> unenclosed_steps(const Walk& outer, const Walk& inner, int m, int n) {
  require_span(outer, m, n);
  require_span(inner, m, n);
  const auto outer_steps = step_triples(outer);
  std::vector<StepTriple> out;
  for (const auto& s : step_triples(inner)) {
    if (step_on_boundary(inner, s, m, n)) continue;
    const bool enclosed =
        std::any_of(outer_steps.begin(), outer_steps.end(), [&](const StepTriple& o) { return o.encloses(s); });
    if (!enclosed) out.push_back(s);
  }
  return out;
}

bool check_nested_steps(const Walk& outer, const Walk& inner, int m, int n) {
  return unenclosed_steps(outer, inner, m, n).empty();
}

std::optional<std::vector<ConnectionWitness>> connection_witnesses(const Walk& prev, const Walk& cur, int m, int n) {
  const auto failing = unenclosed_steps(prev, cur, m, n);
  const auto outer = step_triples(prev);
  std::vector<ConnectionWitness> out;
  for (const auto& s : failing) {
    bool found = false;
    for (std::size_t t = 0; t + 1 < outer.size() && !found; ++t) {
      const auto& a = outer[t];
      const auto& b = outer[t + 1];
      // k1..k5: vertical, horizontal, vertical, horizontal runs through two steps
      if (a.j_dprime != b.j) continue;
      const StepTriple joint{a.j, b.j_prime, b.j_dprime, std::min(a.top, b.top), std::max(a.bottom, b.bottom),
                             std::min(a.left, b.left), std::max(a.right, b.right)};
      if (joint.encloses(s)) {
        out.push_back({s, t, {a.j, a.j_prime, b.j, b.j_prime, b.j_dprime}});
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return out;
}

bool check_connection(const Walk& prev, const Walk& cur, int m, int n) {
  return connection_witnesses(prev, cur, m, n).has_value();
}

std::optional<int> min_separation(const std::vector<Walk>& walks, int m, int n) {
  std::optional<int> best;
  for (std::size_t i = 0; i < walks.size(); ++i)
    for (std::size_t j = i + 1; j < walks.size(); ++j)
      for (auto p : walks[i].points) {
        if (on_boundary(p, m, n)) continue;
        for (auto q : walks[j].points) {
          if (on_boundary(q, m, n)) continue;
          const int d = chebyshev(p, q);
          if (!best || d < *best) best = d;
        }
      }
  return best;
}

bool check_separation(const std::vector<Walk>& walks, int r, int m, int n) {
  const auto d = min_separation(walks, m, n);
  return !d || *d > r;
}

CGraphReport verify_c_graph(const Mask& mask, int r, const std::vector<Walk>& walks, const std::vector<Walk>& auxiliary) {
  if (r < 1) throw InvalidParameter("rank must be positive");
  const int m = mask.rows();
  const int n = mask.cols();
  CGraphReport rep;
  rep.rank = r;
  rep.m = m;
  rep.n = n;
  rep.walks = walks;
  rep.auxiliary_walks = auxiliary;

  PointSet covered;
  for (const auto* list : {&walks, &auxiliary})
    for (const auto& w : *list) {
      require_walk(w);
      for (auto p : w.points) {
        if (!mask.in_region(p)) throw CoverMismatch("walk point " + pstr(p) + " outside the index region");
        covered.insert(p);
      }
    }
  const auto support = mask.support();
  const PointSet sup(support.begin(), support.end());
  if (covered != sup) {
    std::vector<LatticePoint> diff;
    std::set_symmetric_difference(covered.begin(), covered.end(), sup.begin(), sup.end(), std::back_inserter(diff));
    throw CoverMismatch("walks do not cover the support exactly, first difference at " + pstr(diff.front()));
  }

  ConditionVerdict count{"walk_count", static_cast<int>(walks.size()) >= r, {}};
  if (!count.passed)
    count.witnesses.push_back(std::to_string(walks.size()) + " walks for rank " + std::to_string(r));

  ConditionVerdict span{"spanning", true, {}};
  for (std::size_t i = 0; i < walks.size(); ++i)
    if (!spans_all_indices(walks[i], m, n)) {
      span.passed = false;
      span.witnesses.push_back("walk " + std::to_string(i));
    }

  // a step that is not enclosed is acceptable when it straddles two consecutive outer steps
  ConditionVerdict steps{"nested_steps", span.passed, {}};
  rep.strictly_nested = span.passed;
  if (span.passed) {
    for (std::size_t i = 0; i + 1 < walks.size(); ++i) {
      if (!unenclosed_steps(walks[i], walks[i + 1], m, n).empty()) rep.strictly_nested = false;
      if (!connection_witnesses(walks[i], walks[i + 1], m, n)) {
        steps.passed = false;
        for (const auto& s : unenclosed_steps(walks[i], walks[i + 1], m, n))
          steps.witnesses.push_back("walk " + std::to_string(i + 1) + " step " + step_str(walks[i + 1], s));
      }
    }
  }

  std::vector<LatticeTree> trees, aux;
  for (const auto& w : walks) trees.push_back(LatticeTree::from_walk(w));
  for (const auto& w : auxiliary) aux.push_back(LatticeTree::from_walk(w));
  const auto occ = check_non_occlusion(trees, aux);
  ConditionVerdict occlusion{"non_occlusion", occ.passed, {}};
  for (const auto& f : occ.failures)
    occlusion.witnesses.push_back("trees " + std::to_string(f.i) + "," + std::to_string(f.j) +
                                  (f.k ? " row " + std::to_string(f.k) : " col " + std::to_string(f.l)));
  rep.joint_non_occlusion = check_non_occlusion(trees, aux, OcclusionReading::joint).passed;

  rep.min_separation = min_separation(walks, m, n);
  ConditionVerdict separation{"separation", check_separation(walks, r, m, n), {}};
  if (!separation.passed) separation.witnesses.push_back("min distance " + std::to_string(*rep.min_separation));

  for (const auto& w : walks) rep.kappa += static_cast<int>(step_triples(w).size());

  rep.verdicts = {count, span, steps, occlusion, separation};
  rep.is_c_graph = std::all_of(rep.verdicts.begin(), rep.verdicts.end(), [](const ConditionVerdict& v) { return v.passed; });
  return rep;
}

}  // namespace latcomp
