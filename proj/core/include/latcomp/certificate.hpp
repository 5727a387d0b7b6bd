#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <vector>

#include "latcomp/lattice.hpp"
#include "latcomp/minor.hpp"
#include "latcomp/polynomial.hpp"
#include "latcomp/rank_conditions.hpp"
#include "latcomp/removability.hpp"

namespace latcomp {

class PartialMatrix;

enum class StepKind { one_unknown, elimination };

[[nodiscard]] const char* to_string(StepKind kind);

/// One minor equation solved for `target`.
///
/// Variables of the minor polynomial P: index 0 is the target x, index i >= 1
/// is the entry filled by `dependencies[i-1]`. The step asserts the identity
///
///   P - sum_i (d_i - d_i*) Q_i  ==  alpha * x + beta,   alpha != 0,
///
/// where d_i* is the value recorded by the dependency. Q_i is
/// `eliminators[i-1]` and only involves x and d_{i+1}, d_{i+2}, ...
struct CertStep {
  LatticePoint target;
  StepKind kind = StepKind::one_unknown;
  MinorSpec minor;
  std::vector<std::size_t> dependencies;
  std::vector<MultilinearPoly<mpq_class>> eliminators;
  mpq_class alpha;
  mpq_class beta;
  mpq_class value;
  int degree = 0;

  /// With exactly one dependency Q_1 = C1 * x + C2.
  [[nodiscard]] mpq_class C1() const;
  [[nodiscard]] mpq_class C2() const;
};

struct Certificate {
  int rank = 0;
  bool exact = false;  // coefficients computed in rational arithmetic
  std::vector<CertStep> steps;
  int total_degree = 0;
  std::map<LatticePoint, std::size_t> per_entry;
};

/// Degree constant c in the bounds c*max(L, N_r)*(r+1) + (r+1) and c*kappa*(r+1) + (r+1).
inline constexpr int kDegreeConstant = 1;

/// Step degree: r+1 without dependencies, otherwise one more than the deepest dependency.
[[nodiscard]] int certificate_degree(const Certificate& cert);

/// Exact replay against the instance. Throws MalformedCertificate for forward
/// or inconsistent dependencies and InexactInput for non-finite entries.
[[nodiscard]] bool verify_certificate_exact(const Certificate& cert, const PartialMatrix& instance);

[[nodiscard]] int degree_bound(const RemovabilityReport& report, int r);
[[nodiscard]] int degree_bound(const CGraphReport& report, int r);
[[nodiscard]] bool check_degree_bound(const Certificate& cert, const RemovabilityReport& report, int r);
[[nodiscard]] bool check_degree_bound(const Certificate& cert, const CGraphReport& report, int r);

}  // namespace latcomp
