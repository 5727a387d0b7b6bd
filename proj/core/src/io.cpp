#include "latcomp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "latcomp/errors.hpp"

namespace latcomp {

namespace {

LatticePoint point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ParseError("point must be [row, col]");
  return {j[0].get<int>(), j[1].get<int>()};
}

json points_json(const std::vector<LatticePoint>& pts) {
  json a = json::array();
  for (auto p : pts) a.push_back(to_json(p));
  return a;
}

json poly_json(const MultilinearPoly<mpq_class>& p) {
  json a = json::array();
  for (const auto& [mono, c] : p.terms) a.push_back({mono, exact_string(c)});
  return a;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

json to_json(LatticePoint p) { return json::array({p.row, p.col}); }

json to_json(const Mask& mask) {
  return json{{"m", mask.rows()}, {"n", mask.cols()}, {"support", points_json(mask.support())}};
}

json to_json(const Walk& walk) { return json{{"closed", walk.closed}, {"points", points_json(walk.points)}}; }

json to_json(const WalkSet& set) {
  json w = json::array(), a = json::array();
  for (const auto& x : set.walks) w.push_back(to_json(x));
  for (const auto& x : set.auxiliary) a.push_back(to_json(x));
  return json{{"walks", w}, {"auxiliary", a}};
}

json to_json(const MinorSpec& minor) {
  return json{{"rows", minor.rows}, {"cols", minor.cols}, {"target", to_json(minor.target)}};
}

json to_json(const RemovabilityReport& rep) {
  json levels = json::array();
  for (const auto& v : rep.levels) {
    json l = v.level ? json(*v.level) : json("none");
    levels.push_back({v.vertex.row, v.vertex.col, l});
  }
  json schedule = json::array();
  for (const auto& round : rep.schedule) {
    json removals = json::array();
    for (const auto& r : round.removals) {
      const auto& w = r.witness;
      removals.push_back({{"vertex", to_json(r.vertex)},
                          {"condition", w.condition},
                          {"axis", w.axis == Axis::horizontal ? "horizontal" : "vertical"},
                          {"facing", to_json(w.facing)},
                          {"corners", points_json({w.corners.begin(), w.corners.end()})},
                          {"K", w.K},
                          {"companion_line", points_json(w.companion_line)}});
    }
    schedule.push_back({{"level", round.level}, {"removals", removals}, {"circuit", points_json(round.circuit.points)}});
  }
  return json{{"kind", "removability"},
              {"completable", rep.all_removable()},
              {"L", rep.L},
              {"N_r", rep.N_r},
              {"levels", levels},
              {"not_removable", points_json(rep.not_removable())},
              {"initial", points_json(rep.initial.points)},
              {"schedule", schedule}};
}

json to_json(const CGraphReport& rep) {
  json verdicts = json::array();
  for (const auto& v : rep.verdicts) verdicts.push_back({{"name", v.name}, {"passed", v.passed}, {"witnesses", v.witnesses}});
  return json{{"kind", "c_graph"},
              {"rank", rep.rank},
              {"m", rep.m},
              {"n", rep.n},
              {"is_c_graph", rep.is_c_graph},
              {"kappa", rep.kappa},
              {"strictly_nested", rep.strictly_nested},
              {"joint_non_occlusion", rep.joint_non_occlusion},
              {"min_separation", rep.min_separation ? json(*rep.min_separation) : json(nullptr)},
              {"verdicts", verdicts},
              {"walks", to_json(WalkSet{rep.walks, rep.auxiliary_walks})}};
}

json to_json(const PartialMatrix& partial) {
  json entries = json::array();
  for (auto p : partial.mask().support()) entries.push_back({p.row, p.col, partial.value(p)});
  return json{{"m", partial.rows()}, {"n", partial.cols()}, {"rank", partial.rank()}, {"entries", entries}};
}

json certificate_structure(const Certificate& cert) {
  json steps = json::array();
  for (const auto& s : cert.steps)
    steps.push_back({{"target", to_json(s.target)},
                     {"kind", to_string(s.kind)},
                     {"minor", to_json(s.minor)},
                     {"dependencies", s.dependencies},
                     {"degree", s.degree}});
  return json{{"rank", cert.rank}, {"total_degree", cert.total_degree}, {"steps", steps}};
}

json to_json(const Certificate& cert) {
  json out = certificate_structure(cert);
  out["exact"] = cert.exact;
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    const auto& s = cert.steps[k];
    auto& j = out["steps"][k];
    j["alpha"] = exact_string(s.alpha);
    j["beta"] = exact_string(s.beta);
    j["value"] = exact_string(s.value);
    json el = json::array();
    for (const auto& q : s.eliminators) el.push_back(poly_json(q));
    j["eliminators"] = el;
    if (s.kind == StepKind::elimination && s.dependencies.size() == 1) {
      j["C1"] = exact_string(s.C1());
      j["C2"] = exact_string(s.C2());
    }
  }
  return out;
}

json to_json(const Completion& c) {
  json rows = json::array();
  for (int i = 0; i < c.m; ++i) {
    json row = json::array();
    for (int j = 0; j < c.n; ++j) {
      const double v = c.matrix[static_cast<std::size_t>(i) * static_cast<std::size_t>(c.n) + static_cast<std::size_t>(j)];
      row.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    }
    rows.push_back(row);
  }
  json order = json::array();
  for (const auto& f : c.fill_order) order.push_back(to_json(f.minor));
  return json{{"status", c.status == CompletionStatus::complete ? "complete" : "partial"},
              {"m", c.m},
              {"n", c.n},
              {"matrix", rows},
              {"unfilled", points_json(c.unfilled)},
              {"fill_order", order},
              {"certificate", to_json(c.certificate)}};
}

Mask mask_from_json(const json& j) {
  return guarded([&] {
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    Mask mask(m, n);
    for (const auto& p : j.at("support")) mask.insert(point_from_json(p));
    return mask;
  });
}

Walk walk_from_json(const json& j) {
  return guarded([&] {
    Walk w;
    const json& pts = j.is_array() ? j : j.at("points");
    if (j.is_object() && j.contains("closed")) w.closed = j.at("closed").get<bool>();
    for (const auto& p : pts) w.points.push_back(point_from_json(p));
    return w;
  });
}

WalkSet walks_from_json(const json& j) {
  return guarded([&] {
    WalkSet s;
    for (const auto& w : j.at("walks")) s.walks.push_back(walk_from_json(w));
    if (j.contains("auxiliary"))
      for (const auto& w : j.at("auxiliary")) s.auxiliary.push_back(walk_from_json(w));
    return s;
  });
}

PartialMatrix partial_from_json(const json& j) {
  return guarded([&] {
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    const int rank = j.at("rank").get<int>();
    Mask mask(m, n);
    std::vector<std::pair<LatticePoint, double>> vals;
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 3) throw ParseError("entry must be [row, col, value]");
      const LatticePoint p{e[0].get<int>(), e[1].get<int>()};
      double v = 0.0;
      if (e[2].is_number()) {
        v = e[2].get<double>();
      } else if (e[2].is_string()) {
        const auto s = e[2].get<std::string>();
        char* end = nullptr;
        v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0') throw ParseError("entry value is not numeric: " + s);
      } else {
        throw ParseError("entry value must be a number");
      }
      mask.insert(p);
      vals.push_back({p, v});
    }
    PartialMatrix pm(mask, rank);
    for (const auto& [p, v] : vals) pm.set(p, v);
    return pm;
  });
}

Mask mask_from_ascii(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("empty mask");
  const auto n = lines.front().size();
  Mask mask(static_cast<int>(lines.size()), static_cast<int>(n));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].size() != n) throw ParseError("ragged ASCII mask at line " + std::to_string(i + 1));
    for (std::size_t j = 0; j < n; ++j) {
      const char ch = lines[i][j];
      if (ch == '#') {
        mask.insert({static_cast<int>(i) + 1, static_cast<int>(j) + 1});
      } else if (ch != '.') {
        throw ParseError(std::string("unexpected character '") + ch + "' in ASCII mask");
      }
    }
  }
  return mask;
}

std::string mask_to_ascii(const Mask& mask) {
  std::string out;
  for (int i = 1; i <= mask.rows(); ++i) {
    for (int j = 1; j <= mask.cols(); ++j) out += mask.contains({i, j}) ? '#' : '.';
    out += '\n';
  }
  return out;
}

Mask parse_mask(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos == std::string::npos) throw ParseError("empty mask");
  if (text[pos] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(e.what());
    }
    return mask_from_json(j);
  }
  return mask_from_ascii(text);
}

std::string exact_string(const mpq_class& q) {
  mpz_class den = q.get_den();
  int twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return q.get_str();
  const int digits = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const mpz_class scaled = q.get_num() * scale / q.get_den();
  std::string s = mpz_class(abs(scaled)).get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) - s.size() + 1, '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return (scaled < 0 ? "-" : "") + s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace latcomp

namespace latcomp {
namespace {

bool is_flat(const json& j) {
  if (!j.is_array()) return false;
  return std::all_of(j.begin(), j.end(), [](const json& e) {
    return e.is_primitive() || (e.is_array() && e.size() <= 3 &&
                                std::all_of(e.begin(), e.end(), [](const json& x) { return x.is_primitive(); }));
  });
}

void pretty(const json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
      out += pad + json(it.key()).dump() + ": ";
      pretty(it.value(), depth + 1, out);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + "}";
  } else if (j.is_array() && !j.empty() && !is_flat(j)) {
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += pad;
      pretty(j[k], depth + 1, out);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump_pretty(const json& j) {
  std::string out;
  pretty(j, 0, out);
  return out + "\n";
}

}  // namespace latcomp
