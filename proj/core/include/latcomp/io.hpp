#pragma once

#include <gmpxx.h>

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "latcomp/certificate.hpp"
#include "latcomp/completion.hpp"
#include "latcomp/lattice.hpp"
#include "latcomp/rank_conditions.hpp"
#include "latcomp/removability.hpp"

namespace latcomp {

using json = nlohmann::ordered_json;

struct WalkSet {
  std::vector<Walk> walks;
  std::vector<Walk> auxiliary;
};

// Every reader throws ParseError on malformed input.

[[nodiscard]] json to_json(LatticePoint p);
[[nodiscard]] json to_json(const Mask& mask);
[[nodiscard]] json to_json(const Walk& walk);
[[nodiscard]] json to_json(const WalkSet& set);
[[nodiscard]] json to_json(const RemovabilityReport& report);
[[nodiscard]] json to_json(const CGraphReport& report);
[[nodiscard]] json to_json(const PartialMatrix& partial);
[[nodiscard]] json to_json(const Completion& completion);
[[nodiscard]] json to_json(const Certificate& cert);
[[nodiscard]] json to_json(const MinorSpec& minor);

/// Certificate without coefficients or values: minors, dependencies, degrees.
[[nodiscard]] json certificate_structure(const Certificate& cert);

[[nodiscard]] Mask mask_from_json(const json& j);
[[nodiscard]] Walk walk_from_json(const json& j);
[[nodiscard]] WalkSet walks_from_json(const json& j);
/// Entries may be numbers or numeric strings ("nan" included, so callers can
/// reject it explicitly).
[[nodiscard]] PartialMatrix partial_from_json(const json& j);

/// '#' marks support, '.' absence, one line per row.
[[nodiscard]] Mask mask_from_ascii(const std::string& text);
[[nodiscard]] std::string mask_to_ascii(const Mask& mask);

/// Reads JSON when the first non-blank character is '{', ASCII otherwise.
[[nodiscard]] Mask parse_mask(const std::string& text);

/// Exact decimal when the denominator has no prime factor besides 2 and 5, "p/q" otherwise.
[[nodiscard]] std::string exact_string(const mpq_class& q);

/// Indented JSON with arrays of scalars and of points kept on one line.
[[nodiscard]] std::string dump_pretty(const json& j);

[[nodiscard]] std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace latcomp
