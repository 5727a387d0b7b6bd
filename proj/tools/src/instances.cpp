#include "latcomp_cli/instances.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace latcomp::cli {

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* s = std::getenv("LATCOMP_SEED");
  if (s == nullptr || *s == '\0') return fallback;
  char* end = nullptr;
  const auto v = std::strtoull(s, &end, 10);
  return *end == '\0' ? static_cast<std::uint64_t>(v) : fallback;
}

namespace {

std::vector<double> product(int m, int n, int r, const std::vector<double>& u, const std::vector<double>& v) {
  std::vector<double> x(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < r; ++k) s += u[static_cast<std::size_t>(i * r + k)] * v[static_cast<std::size_t>(j * r + k)];
      x[static_cast<std::size_t>(i * n + j)] = s;
    }
  return x;
}

}  // namespace

std::vector<double> random_low_rank(int m, int n, int r, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> u(static_cast<std::size_t>(m * r)), v(static_cast<std::size_t>(n * r));
  for (auto& x : u) x = g(rng);
  for (auto& x : v) x = g(rng);
  return product(m, n, r, u, v);
}

std::vector<double> random_integer_low_rank(int m, int n, int r, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<double> u(static_cast<std::size_t>(m * r)), v(static_cast<std::size_t>(n * r));
  for (auto& x : u) x = d(rng);
  for (auto& x : v) x = d(rng);
  return product(m, n, r, u, v);
}

PartialMatrix observe(const Mask& mask, int r, const std::vector<double>& truth, double noise, std::mt19937_64* rng) {
  PartialMatrix pm(mask, r);
  std::normal_distribution<double> g;
  for (auto p : mask.support()) {
    double v = truth[static_cast<std::size_t>((p.row - 1) * mask.cols() + (p.col - 1))];
    if (noise != 0.0 && rng != nullptr) v += noise * g(*rng);
    pm.set(p, v);
  }
  return pm;
}

double relative_error(const Completion& c, const std::vector<double>& truth) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    if (!std::isfinite(c.matrix[k])) return std::numeric_limits<double>::infinity();
    num += (c.matrix[k] - truth[k]) * (c.matrix[k] - truth[k]);
    den += truth[k] * truth[k];
  }
  return std::sqrt(num / den);
}

double relative_error_unobserved(const Completion& c, const std::vector<double>& truth, const Mask& mask) {
  double num = 0.0, den = 0.0;
  for (int i = 1; i <= c.m; ++i)
    for (int j = 1; j <= c.n; ++j) {
      if (mask.contains({i, j})) continue;
      const auto k = static_cast<std::size_t>((i - 1) * c.n + (j - 1));
      if (!std::isfinite(c.matrix[k])) return std::numeric_limits<double>::infinity();
      num += (c.matrix[k] - truth[k]) * (c.matrix[k] - truth[k]);
      den += truth[k] * truth[k];
    }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

double singular_ratio(const std::vector<double>& matrix, int m, int n, int r) {
  if (r >= std::min(m, n)) return 0.0;
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(matrix.data(), m, n);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  return s(0) == 0.0 ? 0.0 : s(r) / s(0);
}

}  // namespace latcomp::cli
