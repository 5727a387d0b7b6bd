#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "latcomp/certificate.hpp"
#include "latcomp/lattice.hpp"
#include "latcomp/minor.hpp"
#include "latcomp/rank_conditions.hpp"
#include "latcomp/removability.hpp"

namespace latcomp {

/// Observed entries of an m x n matrix to be completed at rank r.
class PartialMatrix {
 public:
  PartialMatrix(Mask mask, int rank);
  PartialMatrix(Mask mask, int rank, const std::vector<double>& dense);  // row-major, read on the mask only

  [[nodiscard]] int rows() const { return mask_.rows(); }
  [[nodiscard]] int cols() const { return mask_.cols(); }
  [[nodiscard]] int rank() const { return rank_; }
  [[nodiscard]] const Mask& mask() const { return mask_; }

  [[nodiscard]] bool observed(LatticePoint p) const { return mask_.contains(p); }
  [[nodiscard]] double value(LatticePoint p) const { return values_[index(p)]; }
  void set(LatticePoint p, double v);  // p must be in the mask

  /// True iff every observed value is finite.
  [[nodiscard]] bool finite() const;

 private:
  [[nodiscard]] std::size_t index(LatticePoint p) const {
    return static_cast<std::size_t>(p.row - 1) * static_cast<std::size_t>(cols()) + static_cast<std::size_t>(p.col - 1);
  }
  Mask mask_;
  int rank_;
  std::vector<double> values_;
};

/// One scheduled solve, decided from the mask alone.
struct PlanStep {
  MinorSpec minor;
  std::vector<std::size_t> dependencies;  // earlier plan steps, ascending
  std::string phase;
  int degree = 0;
};

struct FillPlan {
  int m = 0;
  int n = 0;
  int rank = 0;
  std::vector<PlanStep> steps;
  std::vector<LatticePoint> unfilled;  // row-major
};

enum class CompletionStatus { complete, partial };
enum class Arithmetic { floating, exact };

struct FillEntry {
  LatticePoint point;
  MinorSpec minor;
  friend bool operator==(const FillEntry&, const FillEntry&) = default;
};

struct Completion {
  int m = 0;
  int n = 0;
  std::vector<double> matrix;  // row-major; NaN where unfilled
  std::vector<FillEntry> fill_order;
  Certificate certificate;
  CompletionStatus status = CompletionStatus::partial;
  std::vector<LatticePoint> unfilled;

  [[nodiscard]] double at(LatticePoint p) const {
    return matrix[static_cast<std::size_t>(p.row - 1) * static_cast<std::size_t>(n) + static_cast<std::size_t>(p.col - 1)];
  }
};

/// Relative cofactor threshold below which a solve is declared non-generic.
inline constexpr double kGenericityTolerance = 1e-10;

// -- single solves ---------------------------------------------------------

struct MinorSolution {
  double value = 0.0;
  CertStep step;
};

/// `spec.target` must be the only unobserved position of the minor.
[[nodiscard]] MinorSolution solve_minor_one_unknown(const PartialMatrix& partial, const MinorSpec& spec);

struct EliminationResult {
  double alpha = 0.0;  // alpha' * x2 + beta'
  double beta = 0.0;
  double value = 0.0;
  CertStep step;
};

/// Minor with two unobserved positions: `spec2.target` (x2) and
/// `resolved.target` (x1, value taken from `resolved`).
[[nodiscard]] EliminationResult eliminate_second_unknown(const PartialMatrix& partial, const MinorSpec& spec2,
                                                         const CertStep& resolved);

// -- planning (mask only) --------------------------------------------------

/// Jacobi passes: every pass fills each unknown that has a minor among the
/// entries known when the pass starts. Minors are the lexicographically first.
[[nodiscard]] FillPlan plan_greedy(const Mask& mask, int r);
[[nodiscard]] FillPlan plan_rank2(const Mask& mask, const RemovabilityReport& report);
[[nodiscard]] FillPlan plan_rank_r(const Mask& mask, const CGraphReport& report);

/// Runs a plan on values. Floating runs record double-derived coefficients;
/// exact runs carry every value as a rational and yield a verifiable certificate.
[[nodiscard]] Completion execute_plan(const FillPlan& plan, const PartialMatrix& partial,
                                      Arithmetic arithmetic = Arithmetic::floating);

// -- engines ---------------------------------------------------------------

/// Removal rectangles level by level, then the rest of Int(C_0), then the
/// exterior. Throws ScheduleGap if the report has non-removable vertices or
/// an entry finds no minor, PreconditionViolation if the circuit does not
/// span all indices.
[[nodiscard]] Completion complete_rank2(const PartialMatrix& partial, const RemovabilityReport& report,
                                        const Walk& circuit, Arithmetic arithmetic = Arithmetic::floating);

/// Bands between consecutive walks from the innermost outwards, then the
/// remainder. Throws PreconditionViolation unless the report is a C-graph of
/// the partial's rank.
[[nodiscard]] Completion complete_rank_r(const PartialMatrix& partial, const CGraphReport& report,
                                         Arithmetic arithmetic = Arithmetic::floating);

[[nodiscard]] Completion propagate_greedy(const PartialMatrix& partial, int r,
                                          Arithmetic arithmetic = Arithmetic::floating);

}  // namespace latcomp
