#pragma once

#include <string>

#include "latcomp/io.hpp"
#include "latcomp/lattice.hpp"
#include "latcomp/removability.hpp"

namespace latcomp {

struct RenderOptions {
  const RemovabilityReport* report = nullptr;  // shades removal rectangles by level
  const WalkSet* walks = nullptr;              // walks in black, auxiliary walks in red
  int cell = 24;                               // pixels between lattice lines
};

/// Grid lines, support points, the circuit(s) in bold. Byte-identical for identical input.
[[nodiscard]] std::string render_svg(const Mask& mask, const RenderOptions& options = {});

/// ASCII grid: '#' support, a digit for the removal level of a closed
/// rectangle, '.' elsewhere.
[[nodiscard]] std::string render_text(const Mask& mask, const RenderOptions& options = {});

}  // namespace latcomp
