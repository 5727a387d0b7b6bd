#include "latcomp/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "latcomp/completion.hpp"
#include "latcomp/errors.hpp"

namespace latcomp {

const char* to_string(StepKind kind) { return kind == StepKind::one_unknown ? "one_unknown" : "elimination"; }

mpq_class CertStep::C1() const {
  if (eliminators.size() != 1) return 0;
  return eliminators.front().coefficient(1);
}

mpq_class CertStep::C2() const {
  if (eliminators.size() != 1) return 0;
  return eliminators.front().coefficient(0);
}

int certificate_degree(const Certificate& cert) {
  std::vector<int> deg(cert.steps.size(), 0);
  int total = 0;
  for (std::size_t s = 0; s < cert.steps.size(); ++s) {
    const auto& st = cert.steps[s];
    if (st.dependencies.empty()) {
      deg[s] = cert.rank + 1;
    } else {
      for (auto d : st.dependencies) {
        if (d >= s) throw MalformedCertificate("dependency does not point backwards");
        deg[s] = std::max(deg[s], deg[d] + 1);
      }
    }
    total = std::max(total, deg[s]);
  }
  return total;
}

namespace {

void check_structure(const Certificate& cert, const PartialMatrix& inst) {
  const auto k = static_cast<std::size_t>(cert.rank + 1);
  if (cert.rank != inst.rank()) throw MalformedCertificate("certificate rank differs from the instance");
  std::set<LatticePoint> owned;
  for (std::size_t s = 0; s < cert.steps.size(); ++s) {
    const auto& st = cert.steps[s];
    const auto& mn = st.minor;
    if (mn.target != st.target) throw MalformedCertificate("minor target differs from the step target");
    if (mn.rows.size() != k || mn.cols.size() != k) throw MalformedCertificate("minor has the wrong order");
    for (std::size_t a = 0; a < k; ++a) {
      if (a && (mn.rows[a] <= mn.rows[a - 1] || mn.cols[a] <= mn.cols[a - 1]))
        throw MalformedCertificate("minor indices are not increasing");
      if (mn.rows[a] < 1 || mn.rows[a] > inst.rows() || mn.cols[a] < 1 || mn.cols[a] > inst.cols())
        throw MalformedCertificate("minor index outside the matrix");
    }
    if (!mn.contains(st.target)) throw MalformedCertificate("target outside its minor");
    if (inst.observed(st.target)) throw MalformedCertificate("step targets an observed entry");
    if (!owned.insert(st.target).second) throw MalformedCertificate("entry filled twice");
    if (st.eliminators.size() != st.dependencies.size()) throw MalformedCertificate("eliminator count mismatch");

    std::set<LatticePoint> dep_targets;
    for (std::size_t i = 0; i < st.dependencies.size(); ++i) {
      const auto d = st.dependencies[i];
      if (d >= s) throw MalformedCertificate("forward dependency in step " + std::to_string(s));
      if (i && d <= st.dependencies[i - 1]) throw MalformedCertificate("dependencies are not increasing");
      dep_targets.insert(cert.steps[d].target);
    }
    for (int i : mn.rows)
      for (int c : mn.cols) {
        const LatticePoint p{i, c};
        if (p == st.target || inst.observed(p)) continue;
        if (!dep_targets.erase(p)) throw MalformedCertificate("minor uses an entry without a dependency");
      }
    if (!dep_targets.empty()) throw MalformedCertificate("dependency outside the minor");
  }
}

}  // namespace

bool verify_certificate_exact(const Certificate& cert, const PartialMatrix& inst) {
  if (!inst.finite()) throw InexactInput("instance has non-finite entries");
  check_structure(cert, inst);
  const auto k = static_cast<std::size_t>(cert.rank + 1);

  for (std::size_t s = 0; s < cert.steps.size(); ++s) {
    const auto& st = cert.steps[s];
    const auto& mn = st.minor;
    std::vector<BlockCell<mpq_class>> cells(k * k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        const LatticePoint p{mn.rows[a], mn.cols[b]};
        auto& cell = cells[a * k + b];
        if (p == st.target) {
          cell.var = 0;
        } else if (inst.observed(p)) {
          cell.value = mpq_class(inst.value(p));
        } else {
          for (std::size_t i = 0; i < st.dependencies.size(); ++i)
            if (cert.steps[st.dependencies[i]].target == p) cell.var = static_cast<int>(i) + 1;
        }
      }
    // P - sum (d_i - d_i*) Q_i must equal alpha x + beta
    auto lhs = expand_determinant(cells, k);
    for (std::size_t i = 0; i < st.dependencies.size(); ++i) {
      const auto v = static_cast<unsigned>(i + 1);
      for (const auto& [mono, c] : st.eliminators[i].terms)
        if (mono & ((2u << i) - 1u) & ~1u) return false;  // Q_i may not involve d_1..d_i
      lhs -= st.eliminators[i].times_shifted(v, cert.steps[st.dependencies[i]].value);
    }
    MultilinearPoly<mpq_class> rhs;
    rhs.add(1, st.alpha);
    rhs.add(0, st.beta);
    if (!(lhs == rhs)) return false;
    if (st.alpha == 0) return false;
    if (st.alpha * st.value + st.beta != 0) return false;
  }
  return true;
}

int degree_bound(const RemovabilityReport& report, int r) {
  return kDegreeConstant * std::max(report.L, report.N_r) * (r + 1) + (r + 1);
}

int degree_bound(const CGraphReport& report, int r) { return kDegreeConstant * report.kappa * (r + 1) + (r + 1); }

bool check_degree_bound(const Certificate& cert, const RemovabilityReport& report, int r) {
  return certificate_degree(cert) <= degree_bound(report, r);
}

bool check_degree_bound(const Certificate& cert, const CGraphReport& report, int r) {
  return certificate_degree(cert) <= degree_bound(report, r);
}

}  // namespace latcomp
