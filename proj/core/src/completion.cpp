#include "latcomp/completion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <type_traits>

#include "latcomp/errors.hpp"
#include "latcomp/polynomial.hpp"

namespace latcomp {

namespace {

// -- bit rows ----------------------------------------------------------------

class Bits {
 public:
  explicit Bits(int n = 0) : w_((static_cast<std::size_t>(n) + 63) / 64, 0) {}
  void set(int i) { w_[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(int i) { w_[static_cast<std::size_t>(i) / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  [[nodiscard]] bool test(int i) const { return (w_[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1u; }
  Bits& operator&=(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  [[nodiscard]] int count() const {
    int c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }
  /// Indices of the first k set bits.
  [[nodiscard]] std::vector<int> first(int k) const {
    std::vector<int> out;
    for (std::size_t b = 0; b < w_.size() && static_cast<int>(out.size()) < k; ++b) {
      auto x = w_[b];
      while (x && static_cast<int>(out.size()) < k) {
        out.push_back(static_cast<int>(b * 64) + std::countr_zero(x));
        x &= x - 1;
      }
    }
    return out;
  }

 private:
  std::vector<std::uint64_t> w_;
};

using KnownRows = std::vector<Bits>;  // index row-1, bit col-1

// Lexicographically first r rows (then first r common columns) giving a
// minor whose only gap is the target.
std::optional<MinorSpec> find_minor(const KnownRows& K, LatticePoint t, int r) {
  const int m = static_cast<int>(K.size());
  Bits cand = K[static_cast<std::size_t>(t.row - 1)];
  cand.reset(t.col - 1);
  if (cand.count() < r) return std::nullopt;
  std::vector<int> rows;
  for (int i = 0; i < m; ++i)
    if (i != t.row - 1 && K[static_cast<std::size_t>(i)].test(t.col - 1)) rows.push_back(i);
  if (static_cast<int>(rows.size()) < r) return std::nullopt;

  std::vector<int> chosen;
  std::vector<Bits> acc{cand};
  std::optional<MinorSpec> found;
  auto dfs = [&](auto&& self, std::size_t from) -> bool {
    if (static_cast<int>(chosen.size()) == r) {
      MinorSpec spec;
      spec.target = t;
      spec.rows = {t.row};
      for (int i : chosen) spec.rows.push_back(i + 1);
      spec.cols = {t.col};
      for (int c : acc.back().first(r)) spec.cols.push_back(c + 1);
      std::sort(spec.rows.begin(), spec.rows.end());
      std::sort(spec.cols.begin(), spec.cols.end());
      found = std::move(spec);
      return true;
    }
    const std::size_t need = static_cast<std::size_t>(r) - chosen.size();
    for (std::size_t k = from; k + need <= rows.size(); ++k) {
      Bits next = acc.back();
      next &= K[static_cast<std::size_t>(rows[k])];
      if (next.count() < r) continue;
      chosen.push_back(rows[k]);
      acc.push_back(std::move(next));
      if (self(self, k + 1)) return true;
      acc.pop_back();
      chosen.pop_back();
    }
    return false;
  };
  dfs(dfs, 0);
  return found;
}

// -- planner state -------------------------------------------------------------

class Planner {
 public:
  Planner(const Mask& mask, int r) : mask_(mask), m_(mask.rows()), n_(mask.cols()), r_(r) {
    if (r < 1 || r > 4) throw InvalidParameter("rank must lie in [1, 4]");
    degree_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(n_), -1);
    owner_.assign(degree_.size(), 0);
    levels_[0] = KnownRows(static_cast<std::size_t>(m_), Bits(n_));
    for (auto p : mask.support()) {
      degree_[idx(p)] = 0;
      levels_[0][static_cast<std::size_t>(p.row - 1)].set(p.col - 1);
    }
    plan_.m = m_;
    plan_.n = n_;
    plan_.rank = r;
  }

  [[nodiscard]] bool known(LatticePoint p) const { return degree_[idx(p)] >= 0; }
  [[nodiscard]] const KnownRows& all_known() const { return levels_.rbegin()->second; }

  std::size_t record(const MinorSpec& spec, const std::string& phase) {
    PlanStep step;
    step.minor = spec;
    step.phase = phase;
    int dep_deg = 0;
    for (int i : spec.rows)
      for (int c : spec.cols) {
        const LatticePoint p{i, c};
        if (p == spec.target || degree_[idx(p)] == 0) continue;
        step.dependencies.push_back(owner_[idx(p)]);
        dep_deg = std::max(dep_deg, degree_[idx(p)]);
      }
    std::sort(step.dependencies.begin(), step.dependencies.end());
    step.degree = step.dependencies.empty() ? r_ + 1 : dep_deg + 1;
    plan_.steps.push_back(std::move(step));
    return plan_.steps.size() - 1;
  }

  void mark(LatticePoint p, std::size_t step) {
    const int d = plan_.steps[step].degree;
    degree_[idx(p)] = d;
    owner_[idx(p)] = step;
    if (!levels_.count(d)) {
      auto below = std::prev(levels_.lower_bound(d));
      levels_[d] = below->second;
    }
    for (auto it = levels_.lower_bound(d); it != levels_.end(); ++it)
      it->second[static_cast<std::size_t>(p.row - 1)].set(p.col - 1);
  }

  // Smallest degree threshold that admits a minor.
  bool try_fill(LatticePoint p, const std::string& phase) {
    for (const auto& [level, rows] : levels_) {
      if (auto spec = find_minor(rows, p, r_)) {
        mark(p, record(*spec, phase));
        return true;
      }
    }
    return false;
  }

  // Gauss-Seidel sweeps over the targets until nothing changes; returns leftovers.
  std::vector<LatticePoint> fill_phase(std::vector<LatticePoint> targets, const std::string& phase) {
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    bool progress = true;
    while (progress) {
      progress = false;
      for (auto p : targets)
        if (!known(p) && try_fill(p, phase)) progress = true;
    }
    std::vector<LatticePoint> left;
    for (auto p : targets)
      if (!known(p)) left.push_back(p);
    return left;
  }

  FillPlan finish() {
    plan_.unfilled.clear();
    for (int i = 1; i <= m_; ++i)
      for (int j = 1; j <= n_; ++j)
        if (!known({i, j})) plan_.unfilled.push_back({i, j});
    return std::move(plan_);
  }

  [[nodiscard]] int rank() const { return r_; }

 private:
  [[nodiscard]] std::size_t idx(LatticePoint p) const {
    return static_cast<std::size_t>(p.row - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(p.col - 1);
  }

  const Mask& mask_;
  int m_, n_, r_;
  std::vector<int> degree_;
  std::vector<std::size_t> owner_;
  std::map<int, KnownRows> levels_;
  FillPlan plan_;
};

std::vector<LatticePoint> all_points(int m, int n) {
  std::vector<LatticePoint> out;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) out.push_back({i, j});
  return out;
}

// -- numeric solve -------------------------------------------------------------

mpq_class to_mpq(double v) { return mpq_class(v); }
const mpq_class& to_mpq(const mpq_class& v) { return v; }
double to_double(double v) { return v; }
double to_double(const mpq_class& v) { return v.get_d(); }

template <class T>
MultilinearPoly<mpq_class> to_mpq_poly(const MultilinearPoly<T>& p) {
  MultilinearPoly<mpq_class> out;
  for (const auto& [mono, c] : p.terms) out.terms.emplace(mono, to_mpq(c));
  return out;
}

template <class T>
struct BlockSolve {
  T value;
  T alpha;
  T beta;
  std::vector<MultilinearPoly<T>> eliminators;
};

// Cells of the block: var 0 = target, var i = i-th dependency. `dep_values`
// holds d_i*, `constant` the values of every other cell (row-major).
template <class T>
BlockSolve<T> solve_block(const MinorSpec& spec, const std::vector<BlockCell<T>>& cells, const std::vector<T>& dep_values) {
  const std::size_t k = spec.order();
  MultilinearPoly<T> cur = expand_determinant(cells, k);
  BlockSolve<T> out;
  for (std::size_t i = 0; i < dep_values.size(); ++i) {
    const auto v = static_cast<unsigned>(i + 1);
    auto q = cur.coefficient_of(v);
    q.prune();
    out.eliminators.push_back(std::move(q));
    cur = cur.substitute(v, dep_values[i]);
    cur.prune();
  }
  out.alpha = cur.coefficient(1);
  out.beta = cur.coefficient(0);

  // scale of the target row's cofactors, target entry irrelevant
  std::vector<T> numeric(k * k);
  std::size_t trow = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const auto& cell = cells[a * k + b];
      if (cell.var == 0) {
        trow = a;
        numeric[a * k + b] = T(0);
      } else if (cell.var > 0) {
        numeric[a * k + b] = dep_values[static_cast<std::size_t>(cell.var - 1)];
      } else {
        numeric[a * k + b] = cell.value;
      }
    }
  if constexpr (std::is_same_v<T, double>) {
    double scale = 0.0;
    for (double c : row_cofactors(numeric, k, trow)) scale = std::max(scale, std::abs(c));
    if (!(std::abs(out.alpha) > kGenericityTolerance * scale))
      throw GenericityViolation(spec.target, spec, out.alpha, scale);
  } else {
    if (out.alpha == 0) {
      double scale = 0.0;
      for (const auto& c : row_cofactors(numeric, k, trow)) scale = std::max(scale, std::abs(c.get_d()));
      throw GenericityViolation(spec.target, spec, 0.0, scale);
    }
  }
  out.value = T(0) - out.beta;
  out.value /= out.alpha;
  return out;
}

template <class T>
CertStep make_step(const MinorSpec& spec, std::vector<std::size_t> deps, int degree, const BlockSolve<T>& s) {
  CertStep st;
  st.target = spec.target;
  st.kind = deps.empty() ? StepKind::one_unknown : StepKind::elimination;
  st.minor = spec;
  st.dependencies = std::move(deps);
  for (const auto& q : s.eliminators) st.eliminators.push_back(to_mpq_poly(q));
  st.alpha = to_mpq(s.alpha);
  st.beta = to_mpq(s.beta);
  st.value = to_mpq(s.value);
  st.degree = degree;
  return st;
}

void check_spec(const PartialMatrix& partial, const MinorSpec& spec) {
  const auto k = static_cast<std::size_t>(partial.rank() + 1);
  if (spec.rows.size() != k || spec.cols.size() != k) throw PreconditionViolation("minor must be (r+1)x(r+1)");
  for (std::size_t a = 0; a < k; ++a) {
    if (a && (spec.rows[a] <= spec.rows[a - 1] || spec.cols[a] <= spec.cols[a - 1]))
      throw PreconditionViolation("minor indices must be strictly increasing");
    if (!partial.mask().in_region({spec.rows[a], 1}) || !partial.mask().in_region({1, spec.cols[a]}))
      throw PreconditionViolation("minor index outside the matrix");
  }
  if (!spec.contains(spec.target)) throw PreconditionViolation("target outside the minor");
}

template <class T>
Completion run_plan(const FillPlan& plan, const PartialMatrix& partial) {
  const int m = plan.m, n = plan.n;
  auto idx = [n](LatticePoint p) {
    return static_cast<std::size_t>(p.row - 1) * static_cast<std::size_t>(n) + static_cast<std::size_t>(p.col - 1);
  };
  std::vector<T> val(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), T(0));
  std::vector<char> have(val.size(), 0);
  for (auto p : partial.mask().support()) {
    if constexpr (std::is_same_v<T, double>) {
      val[idx(p)] = partial.value(p);
    } else {
      val[idx(p)] = mpq_class(partial.value(p));
    }
    have[idx(p)] = 1;
  }

  Completion out;
  out.m = m;
  out.n = n;
  out.certificate.rank = plan.rank;
  out.certificate.exact = !std::is_same_v<T, double>;
  const auto k = static_cast<std::size_t>(plan.rank + 1);

  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    const auto& ps = plan.steps[s];
    const auto& spec = ps.minor;
    std::vector<BlockCell<T>> cells(k * k);
    std::vector<T> dep_values;
    for (std::size_t d : ps.dependencies) dep_values.push_back(val[idx(plan.steps[d].minor.target)]);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        const LatticePoint p{spec.rows[a], spec.cols[b]};
        auto& cell = cells[a * k + b];
        if (p == spec.target) {
          cell.var = 0;
        } else if (partial.observed(p)) {
          cell.value = val[idx(p)];
        } else {
          const auto owner = out.certificate.per_entry.at(p);
          const auto pos = std::lower_bound(ps.dependencies.begin(), ps.dependencies.end(), owner);
          cell.var = static_cast<int>(pos - ps.dependencies.begin()) + 1;
        }
      }
    const auto solved = solve_block<T>(spec, cells, dep_values);
    val[idx(spec.target)] = solved.value;
    have[idx(spec.target)] = 1;
    out.certificate.steps.push_back(make_step(spec, ps.dependencies, ps.degree, solved));
    out.certificate.per_entry[spec.target] = s;
    out.fill_order.push_back({spec.target, spec});
  }
  out.certificate.total_degree = certificate_degree(out.certificate);

  out.matrix.assign(val.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t q = 0; q < val.size(); ++q)
    if (have[q]) out.matrix[q] = to_double(val[q]);
  for (auto p : partial.mask().support()) out.matrix[idx(p)] = partial.value(p);
  out.unfilled = plan.unfilled;
  out.status = plan.unfilled.empty() ? CompletionStatus::complete : CompletionStatus::partial;
  return out;
}

}  // namespace

// -- PartialMatrix ---------------------------------------------------------------

PartialMatrix::PartialMatrix(Mask mask, int rank)
    : mask_(std::move(mask)),
      rank_(rank),
      values_(static_cast<std::size_t>(mask_.rows()) * static_cast<std::size_t>(mask_.cols()), 0.0) {
  if (rank < 1) throw InvalidParameter("rank must be positive");
}

PartialMatrix::PartialMatrix(Mask mask, int rank, const std::vector<double>& dense) : PartialMatrix(std::move(mask), rank) {
  if (dense.size() != values_.size()) throw InvalidParameter("dense matrix has the wrong size");
  for (auto p : mask_.support()) values_[index(p)] = dense[index(p)];
}

void PartialMatrix::set(LatticePoint p, double v) {
  if (!mask_.contains(p)) throw IndexOutOfRange("entry is not observed");
  values_[index(p)] = v;
}

bool PartialMatrix::finite() const {
  for (auto p : mask_.support())
    if (!std::isfinite(values_[index(p)])) return false;
  return true;
}

// -- single solves ---------------------------------------------------------------

MinorSolution solve_minor_one_unknown(const PartialMatrix& partial, const MinorSpec& spec) {
  check_spec(partial, spec);
  for (int i : spec.rows)
    for (int c : spec.cols)
      if (LatticePoint{i, c} != spec.target && !partial.observed({i, c}))
        throw PreconditionViolation("minor has more than one unknown");
  FillPlan plan{partial.rows(), partial.cols(), partial.rank(), {PlanStep{spec, {}, "single", partial.rank() + 1}}, {}};
  auto c = run_plan<double>(plan, partial);
  return {c.at(spec.target), std::move(c.certificate.steps.front())};
}

EliminationResult eliminate_second_unknown(const PartialMatrix& partial, const MinorSpec& spec2, const CertStep& resolved) {
  check_spec(partial, spec2);
  const LatticePoint x1 = resolved.target;
  if (!spec2.contains(x1) || x1 == spec2.target) throw PreconditionViolation("resolved entry is not the second unknown");
  const std::size_t k = spec2.order();
  std::vector<BlockCell<double>> cells(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const LatticePoint p{spec2.rows[a], spec2.cols[b]};
      auto& cell = cells[a * k + b];
      if (p == spec2.target) {
        cell.var = 0;
      } else if (p == x1) {
        cell.var = 1;
      } else if (partial.observed(p)) {
        cell.value = partial.value(p);
      } else {
        throw PreconditionViolation("minor has more than two unknowns");
      }
    }
  const auto solved = solve_block<double>(spec2, cells, {resolved.value.get_d()});
  EliminationResult out;
  out.alpha = solved.alpha;
  out.beta = solved.beta;
  out.value = solved.value;
  out.step = make_step(spec2, {0}, resolved.degree + 1, solved);
  return out;
}

// -- planners --------------------------------------------------------------------

FillPlan plan_greedy(const Mask& mask, int r) {
  Planner pl(mask, r);
  while (true) {
    const KnownRows snapshot = pl.all_known();
    std::vector<std::pair<LatticePoint, std::size_t>> fresh;
    for (int i = 1; i <= mask.rows(); ++i)
      for (int j = 1; j <= mask.cols(); ++j) {
        const LatticePoint p{i, j};
        if (pl.known(p)) continue;
        if (auto spec = find_minor(snapshot, p, r)) fresh.push_back({p, pl.record(*spec, "greedy")});
      }
    if (fresh.empty()) break;
    for (const auto& [p, s] : fresh) pl.mark(p, s);
  }
  return pl.finish();
}

FillPlan plan_rank2(const Mask& mask, const RemovabilityReport& report) {
  if (!report.all_removable())
    throw ScheduleGap("reflex vertices are not removable", report.not_removable());
  const int m = mask.rows(), n = mask.cols();
  const Walk& c0 = report.initial;
  for (auto p : c0.points)
    if (!mask.contains(p)) throw PreconditionViolation("circuit leaves the support");
  if (!spans_all_indices(c0, m, n)) throw PreconditionViolation("circuit does not span all indices");

  Planner pl(mask, 2);
  std::vector<LatticePoint> carry;
  for (const auto& round : report.schedule)
    for (const auto& rem : round.removals) {
      auto targets = rem.witness.rectangle_points();
      targets.insert(targets.end(), carry.begin(), carry.end());
      carry = pl.fill_phase(std::move(targets), "level " + std::to_string(round.level));
    }
  const auto interior = interior_points(c0, m, n);
  std::vector<LatticePoint> targets(interior.begin(), interior.end());
  targets.insert(targets.end(), carry.begin(), carry.end());
  pl.fill_phase(std::move(targets), "interior");
  const auto left = pl.fill_phase(all_points(m, n), "exterior");
  if (!left.empty()) throw ScheduleGap("no minor available for scheduled entries", left);
  return pl.finish();
}

FillPlan plan_rank_r(const Mask& mask, const CGraphReport& report) {
  if (!report.is_c_graph) throw PreconditionViolation("walks do not form a C-graph");
  const int m = mask.rows(), n = mask.cols();
  Planner pl(mask, report.rank);

  // column range of each walk per row
  const auto& walks = report.walks;
  std::vector<std::vector<std::pair<int, int>>> span(walks.size(),
                                                     std::vector<std::pair<int, int>>(static_cast<std::size_t>(m) + 1, {0, -1}));
  for (std::size_t t = 0; t < walks.size(); ++t)
    for (auto p : walks[t].points) {
      auto& s = span[t][static_cast<std::size_t>(p.row)];
      if (s.second < s.first) {
        s = {p.col, p.col};
      } else {
        s.first = std::min(s.first, p.col);
        s.second = std::max(s.second, p.col);
      }
    }

  std::vector<LatticePoint> carry;
  for (std::size_t t = walks.size(); t-- > 1;) {
    std::vector<LatticePoint> targets = carry;
    for (int i = 1; i <= m; ++i) {
      const auto a = span[t - 1][static_cast<std::size_t>(i)];
      const auto b = span[t][static_cast<std::size_t>(i)];
      if (a.second < a.first || b.second < b.first) continue;
      for (int j = std::min(a.first, b.first); j <= std::max(a.second, b.second); ++j) targets.push_back({i, j});
    }
    carry = pl.fill_phase(std::move(targets), "band " + std::to_string(t));
  }
  const auto left = pl.fill_phase(all_points(m, n), "exterior");
  if (!left.empty()) throw ScheduleGap("no minor available for scheduled entries", left);
  return pl.finish();
}

Completion execute_plan(const FillPlan& plan, const PartialMatrix& partial, Arithmetic arithmetic) {
  if (plan.m != partial.rows() || plan.n != partial.cols() || plan.rank != partial.rank())
    throw PreconditionViolation("plan does not match the partial matrix");
  if (!partial.finite()) {
    if (arithmetic == Arithmetic::exact) throw InexactInput("observed entries must be finite");
    throw InvalidParameter("observed entries must be finite");
  }
  return arithmetic == Arithmetic::exact ? run_plan<mpq_class>(plan, partial) : run_plan<double>(plan, partial);
}

// -- engines ---------------------------------------------------------------------

Completion complete_rank2(const PartialMatrix& partial, const RemovabilityReport& report, const Walk& circuit,
                          Arithmetic arithmetic) {
  if (partial.rank() != 2) throw PreconditionViolation("rank-2 engine needs a rank-2 instance");
  if (normalize_circuit(circuit) != report.initial) throw PreconditionViolation("report does not describe this circuit");
  return execute_plan(plan_rank2(partial.mask(), report), partial, arithmetic);
}

Completion complete_rank_r(const PartialMatrix& partial, const CGraphReport& report, Arithmetic arithmetic) {
  if (!report.is_c_graph) throw PreconditionViolation("walks do not form a C-graph");
  if (partial.rank() != report.rank) throw PreconditionViolation("instance rank differs from the report");
  if (partial.rows() != report.m || partial.cols() != report.n) throw PreconditionViolation("report is for another region");
  return execute_plan(plan_rank_r(partial.mask(), report), partial, arithmetic);
}

Completion propagate_greedy(const PartialMatrix& partial, int r, Arithmetic arithmetic) {
  if (r != partial.rank()) throw PreconditionViolation("rank differs from the instance");
  return execute_plan(plan_greedy(partial.mask(), r), partial, arithmetic);
}

}  // namespace latcomp
