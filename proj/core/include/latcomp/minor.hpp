#pragma once

#include <vector>

#include "latcomp/lattice.hpp"

namespace latcomp {

/// An (r+1)x(r+1) submatrix selected to determine one entry.
///
/// `rows` and `cols` are kept in ascending order; `target` lies in
/// rows x cols. Every other position of the block is either observed or
/// was filled by an earlier step.
struct MinorSpec {
  std::vector<int> rows;
  std::vector<int> cols;
  LatticePoint target;

  friend bool operator==(const MinorSpec&, const MinorSpec&) = default;

  [[nodiscard]] std::size_t order() const { return rows.size(); }
  [[nodiscard]] bool contains(LatticePoint p) const;
};

}  // namespace latcomp
