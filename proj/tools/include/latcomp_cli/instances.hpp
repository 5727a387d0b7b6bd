#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "latcomp/completion.hpp"
#include "latcomp/lattice.hpp"

namespace latcomp::cli {

/// Seed from LATCOMP_SEED when set and numeric, `fallback` otherwise.
[[nodiscard]] std::uint64_t seed_from_env(std::uint64_t fallback = 1);

/// Dense row-major m x n matrix U V^T with standard-normal factors.
[[nodiscard]] std::vector<double> random_low_rank(int m, int n, int r, std::mt19937_64& rng);

/// Observed entries of `truth` on the mask, each shifted by noise * N(0,1).
[[nodiscard]] PartialMatrix observe(const Mask& mask, int r, const std::vector<double>& truth, double noise = 0.0,
                                    std::mt19937_64* rng = nullptr);

/// Integer factors in [-3, 3]; used where exact replay needs small rationals.
[[nodiscard]] std::vector<double> random_integer_low_rank(int m, int n, int r, std::mt19937_64& rng);

/// ||A - truth||_F / ||truth||_F over all entries; infinity if A has unfilled entries.
[[nodiscard]] double relative_error(const Completion& c, const std::vector<double>& truth);

/// Same norm restricted to positions outside the mask.
[[nodiscard]] double relative_error_unobserved(const Completion& c, const std::vector<double>& truth, const Mask& mask);

/// sigma_{r+1} / sigma_1 of a dense row-major matrix; 0 when r >= min(m, n).
[[nodiscard]] double singular_ratio(const std::vector<double>& matrix, int m, int n, int r);

}  // namespace latcomp::cli
