#include "latcomp/render.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "latcomp/errors.hpp"

namespace latcomp {

namespace {

// lowest level wins where rectangles of several rounds overlap
std::map<LatticePoint, int> level_map(const RemovabilityReport& rep) {
  std::map<LatticePoint, int> out;
  for (const auto& round : rep.schedule)
    for (const auto& rem : round.removals)
      for (auto p : rem.witness.rectangle_points()) out.emplace(p, round.level);
  return out;
}

std::string grey(int level, int levels) {
  // level 1 darkest
  const int lo = 120, hi = 225;
  const int v = levels <= 1 ? lo : lo + (hi - lo) * (level - 1) / (levels - 1);
  std::ostringstream os;
  os << "rgb(" << v << ',' << v << ',' << v << ')';
  return os.str();
}

void polyline(std::ostringstream& os, const Walk& w, int cell, const char* colour, int width) {
  auto x = [cell](LatticePoint p) { return cell * p.col; };
  auto y = [cell](LatticePoint p) { return cell * p.row; };
  os << "<" << (w.closed ? "polygon" : "polyline") << " points=\"";
  for (std::size_t k = 0; k < w.size(); ++k) os << (k ? " " : "") << x(w.points[k]) << ',' << y(w.points[k]);
  os << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"" << width
     << "\" stroke-linejoin=\"round\" stroke-linecap=\"round\"/>\n";
}

}  // namespace

std::string render_svg(const Mask& mask, const RenderOptions& opt) {
  const int m = mask.rows(), n = mask.cols(), c = opt.cell;
  const int W = c * (n + 1), H = c * (m + 1);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";

  if (opt.report) {
    const int levels = opt.report->L;
    os << "<g id=\"levels\" stroke=\"none\">\n";
    for (auto it = opt.report->schedule.rbegin(); it != opt.report->schedule.rend(); ++it)
      for (const auto& rem : it->removals) {
        const auto& w = rem.witness;
        os << "<rect class=\"level-" << it->level << "\" x=\"" << c * w.left() << "\" y=\"" << c * w.top()
           << "\" width=\"" << c * (w.right() - w.left()) << "\" height=\"" << c * (w.bottom() - w.top())
           << "\" fill=\"" << grey(it->level, levels) << "\"/>\n";
      }
    os << "</g>\n";
  }

  os << "<g id=\"grid\" stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (int j = 1; j <= n; ++j) os << "<line x1=\"" << c * j << "\" y1=\"" << c << "\" x2=\"" << c * j << "\" y2=\"" << c * m << "\"/>\n";
  for (int i = 1; i <= m; ++i) os << "<line x1=\"" << c << "\" y1=\"" << c * i << "\" x2=\"" << c * n << "\" y2=\"" << c * i << "\"/>\n";
  os << "</g>\n";

  os << "<g id=\"paths\">\n";
  if (opt.walks) {
    for (const auto& w : opt.walks->walks) polyline(os, w, c, "black", 3);
    for (const auto& w : opt.walks->auxiliary) polyline(os, w, c, "red", 3);
  } else {
    try {
      for (const auto& w : extract_circuits(build_lattice_subgraph(mask))) polyline(os, w, c, "black", 3);
    } catch (const AmbiguousDecomposition&) {
      // branching support: draw the induced edges instead
      for (const auto& [a, b] : build_lattice_subgraph(mask).edges) polyline(os, Walk{{a, b}, false}, c, "black", 3);
    }
  }
  os << "</g>\n";

  os << "<g id=\"support\" fill=\"black\">\n";
  for (auto p : mask.support()) os << "<circle cx=\"" << c * p.col << "\" cy=\"" << c * p.row << "\" r=\"" << std::max(2, c / 8) << "\"/>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string render_text(const Mask& mask, const RenderOptions& opt) {
  std::map<LatticePoint, int> lv;
  if (opt.report) lv = level_map(*opt.report);
  std::string out;
  for (int i = 1; i <= mask.rows(); ++i) {
    for (int j = 1; j <= mask.cols(); ++j) {
      const LatticePoint p{i, j};
      char ch = '.';
      if (mask.contains(p)) {
        ch = '#';
      } else if (auto it = lv.find(p); it != lv.end()) {
        ch = it->second < 10 ? static_cast<char>('0' + it->second) : '+';
      }
      out += ch;
    }
    out += '\n';
  }
  return out;
}

}  // namespace latcomp
