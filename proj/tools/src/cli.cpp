#include "latcomp_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "latcomp/certificate.hpp"
#include "latcomp/completion.hpp"
#include "latcomp/errors.hpp"
#include "latcomp/generators.hpp"
#include "latcomp/io.hpp"
#include "latcomp/rank_conditions.hpp"
#include "latcomp/removability.hpp"
#include "latcomp/render.hpp"
#include "latcomp_cli/instances.hpp"

namespace latcomp::cli {
namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string point_list(const std::vector<LatticePoint>& pts) {
  std::string s;
  for (auto p : pts) s += (s.empty() ? "" : " ") + ("(" + std::to_string(p.row) + "," + std::to_string(p.col) + ")");
  return s;
}

std::string index_list(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_file(path, text);
}

void emit(const json& j, const std::string& path, std::ostream& out) { emit(dump_pretty(j), path, out); }

json load_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

struct CircuitAnalysis {
  Walk circuit;
  RemovabilityReport report;
  bool spans = false;
};

/// Single-circuit analysis of a mask, or the reason it does not apply.
std::optional<CircuitAnalysis> analyze_circuit(const Mask& mask, std::string& why) {
  const auto pieces = extract_circuits(build_lattice_subgraph(mask));
  if (pieces.size() != 1 || !pieces.front().closed) {
    why = "support is not a single circuit (" + std::to_string(pieces.size()) + " component(s))";
    return std::nullopt;
  }
  CircuitAnalysis a{pieces.front(), removability_analysis(pieces.front(), mask), false};
  a.spans = spans_all_indices(a.circuit, mask.rows(), mask.cols());
  if (!a.spans) why = "circuit does not span every row and column";
  return a;
}

// -- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string mask;
  std::string walks;
  std::string out;
  int rank = 2;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  if (a.rank < 2) throw Usage("--rank must be at least 2");
  const Mask mask = parse_mask(read_file(a.mask));

  if (a.walks.empty()) {
    if (a.rank != 2) throw Usage("--rank " + std::to_string(a.rank) + " needs --walks");
    std::string why;
    const auto an = analyze_circuit(mask, why);
    if (!an) {
      emit(json{{"kind", "removability"}, {"completable", false}, {"reason", why}}, a.out, out);
      err << why << "\n";
      return kNegative;
    }
    json j = to_json(an->report);
    const bool ok = an->report.all_removable() && an->spans;
    j["completable"] = ok;
    j["spans_all_indices"] = an->spans;
    j["degree_bound"] = degree_bound(an->report, 2);
    emit(j, a.out, out);
    if (!an->report.all_removable()) err << "NotRemovable: " << point_list(an->report.not_removable()) << "\n";
    if (!an->spans) err << why << "\n";
    return ok ? kOk : kNegative;
  }

  const WalkSet ws = walks_from_json(load_json(a.walks));
  CGraphReport rep;
  try {
    rep = verify_c_graph(mask, a.rank, ws.walks, ws.auxiliary);
  } catch (const CoverMismatch& e) {
    throw Usage(e.what());
  }
  json j = to_json(rep);
  j["degree_bound"] = degree_bound(rep, a.rank);
  emit(j, a.out, out);
  for (const auto& v : rep.verdicts)
    if (!v.passed) {
      err << v.name << " failed";
      for (const auto& w : v.witnesses) err << "; " << w;
      err << "\n";
    }
  return rep.is_c_graph ? kOk : kNegative;
}

// -- complete --------------------------------------------------------------

struct CompleteArgs {
  std::string partial;
  std::string walks;
  std::string out;
  std::string engine = "structured";
  int rank = 0;
  bool exact = false;
};

int cmd_complete(const CompleteArgs& a, std::ostream& out, std::ostream& err) {
  PartialMatrix pm = partial_from_json(load_json(a.partial));
  if (!pm.finite()) throw Usage("entries must be finite numbers");
  const int r = a.rank != 0 ? a.rank : pm.rank();
  if (r < 1 || r > 4) throw Usage("--rank must be between 1 and 4");
  if (r != pm.rank()) {
    PartialMatrix re(pm.mask(), r);
    for (auto p : pm.mask().support()) re.set(p, pm.value(p));
    pm = re;
  }
  const auto arith = a.exact ? Arithmetic::exact : Arithmetic::floating;

  Completion c;
  if (a.engine == "greedy") {
    c = propagate_greedy(pm, r, arith);
  } else if (a.walks.empty()) {
    if (r != 2) throw Usage("structured completion at rank " + std::to_string(r) + " needs --walks");
    std::string why;
    const auto an = analyze_circuit(pm.mask(), why);
    if (!an || !an->spans) {
      err << "structured engine refused: " << why << "\n";
      return kNegative;
    }
    c = complete_rank2(pm, an->report, an->circuit, arith);
  } else {
    const WalkSet ws = walks_from_json(load_json(a.walks));
    CGraphReport rep;
    try {
      rep = verify_c_graph(pm.mask(), r, ws.walks, ws.auxiliary);
    } catch (const CoverMismatch& e) {
      throw Usage(e.what());
    }
    if (!rep.is_c_graph) {
      err << "structured engine refused: walks do not form a C-graph\n";
      return kNegative;
    }
    c = complete_rank_r(pm, rep, arith);
  }

  json j = to_json(c);
  if (c.status == CompletionStatus::complete) {
    const double ratio = singular_ratio(c.matrix, c.m, c.n, r);
    j["rank_check"] = {{"sigma_ratio", ratio}, {"passed", ratio < 1e-8}};
  }
  if (a.exact) j["certificate_verified"] = verify_certificate_exact(c.certificate, pm);
  emit(j, a.out, out);
  if (c.status != CompletionStatus::complete) {
    err << c.unfilled.size() << " entries left unfilled\n";
    return kPartial;
  }
  return kOk;
}

// -- generate --------------------------------------------------------------

struct GenerateArgs {
  std::string family;
  std::string out;
  std::string profile;
  int m = 0;
  int n = 0;
  int rank = 3;
  int min_cell = 0;
};

std::vector<StepCell> parse_profile(const std::string& text) {
  std::vector<StepCell> cells;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto x = item.find('x');
    try {
      if (x == std::string::npos) throw std::invalid_argument(item);
      std::size_t used = 0;
      StepCell c{std::stoi(item.substr(0, x), &used), 0};
      if (used != x) throw std::invalid_argument(item);
      c.height = std::stoi(item.substr(x + 1), &used);
      if (used != item.size() - x - 1) throw std::invalid_argument(item);
      cells.push_back(c);
    } catch (const std::logic_error&) {
      throw Usage("profile cells are WIDTHxHEIGHT, got '" + item + "'");
    }
  }
  if (cells.empty()) throw Usage("--profile is required for the staircase family");
  return cells;
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  if (a.family == "nested") {
    const auto fam = gen_nested_staircase_family(a.m, a.n, a.rank, a.min_cell);
    write_file(a.out + ".mask.json", dump_pretty(to_json(fam.mask)));
    for (std::size_t i = 0; i < fam.walks.size(); ++i)
      write_file(a.out + ".walk" + std::to_string(i) + ".json", dump_pretty(to_json(fam.walks[i])));
    for (std::size_t i = 0; i < fam.auxiliary.size(); ++i)
      write_file(a.out + ".aux" + std::to_string(i) + ".json", dump_pretty(to_json(fam.auxiliary[i])));
    write_file(a.out + ".walks.json", dump_pretty(to_json(WalkSet{fam.walks, fam.auxiliary})));
    const auto rep = verify_c_graph(fam.mask, a.rank, fam.walks, fam.auxiliary);
    out << "nested " << a.m << "x" << a.n << " r=" << a.rank << ": " << fam.walks.size() << " walks, "
        << fam.auxiliary.size() << " auxiliary, kappa=" << rep.kappa << ", c_graph=" << (rep.is_c_graph ? "yes" : "no")
        << "\n";
    return kOk;
  }

  CircuitInstance inst = [&] {
    if (a.family == "boundary") return gen_boundary_cycle(a.m, a.n);
    if (a.family == "staircase") return gen_staircase_cycle(a.m, a.n, parse_profile(a.profile));
    if (a.family == "counterexample") return gen_nonremovable_counterexample(a.m, a.n);
    throw Usage("unknown family '" + a.family + "'");
  }();
  write_file(a.out + ".mask.json", dump_pretty(to_json(inst.mask)));
  write_file(a.out + ".circuit.json", dump_pretty(to_json(inst.circuit)));
  const auto rep = removability_analysis(inst.circuit, inst.mask);
  out << a.family << " " << a.m << "x" << a.n << ": " << inst.mask.size() << " points, N_r=" << rep.N_r
      << ", L=" << rep.L;
  if (!rep.all_removable()) out << ", not removable " << point_list(rep.not_removable());
  out << "\n";
  return kOk;
}

// -- render ----------------------------------------------------------------

struct RenderArgs {
  std::string mask;
  std::string walks;
  std::string out;
  std::string format;
  int cell = 24;
};

int cmd_render(const RenderArgs& a, std::ostream& out) {
  const Mask mask = parse_mask(read_file(a.mask));
  std::string format = a.format;
  if (format.empty()) format = a.out.size() >= 4 && a.out.substr(a.out.size() - 4) == ".txt" ? "txt" : "svg";
  if (format != "svg" && format != "txt") throw Usage("--format is svg or txt");
  if (a.cell < 4) throw Usage("--cell must be at least 4");

  RenderOptions opt;
  opt.cell = a.cell;
  std::optional<WalkSet> ws;
  std::optional<CircuitAnalysis> an;
  if (!a.walks.empty()) {
    ws = walks_from_json(load_json(a.walks));
    opt.walks = &*ws;
  } else {
    // shading is best effort: masks that are not one circuit render unshaded
    try {
      std::string why;
      an = analyze_circuit(mask, why);
      if (an) opt.report = &an->report;
    } catch (const Error&) {
    }
  }
  emit(format == "svg" ? render_svg(mask, opt) : render_text(mask, opt), a.out, out);
  return kOk;
}

// -- selftest --------------------------------------------------------------

int cmd_selftest(int trials, std::ostream& out) {
  const auto seed = seed_from_env(1);
  std::mt19937_64 rng(seed);
  out << "seed " << seed << "\n";

  struct Case {
    std::string name;
    Mask mask;
    int r;
    double tol;
    std::function<Completion(const PartialMatrix&)> engine;
  };
  std::vector<Case> cases;
  for (auto [name, inst] : {std::pair{std::string("boundary 6x6"), gen_boundary_cycle(6, 6)},
                            std::pair{std::string("staircase 10x10"),
                                      gen_staircase_cycle(10, 10, {{4, 4}, {4, 4}, {4, 4}})}}) {
    auto rep = removability_analysis(inst.circuit, inst.mask);
    cases.push_back({name, inst.mask, 2, 1e-8, [rep, c = inst.circuit](const PartialMatrix& pm) {
                       return complete_rank2(pm, rep, c);
                     }});
  }
  const auto fam = gen_nested_staircase_family(20, 20, 3, 4);
  auto crep = verify_c_graph(fam.mask, 3, fam.walks, fam.auxiliary);
  cases.push_back({"nested 20x20 r=3", fam.mask, 3, 1e-6, [crep](const PartialMatrix& pm) { return complete_rank_r(pm, crep); }});

  bool all = true;
  for (const auto& c : cases) {
    int ok = 0, generic = 0;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const auto truth = random_low_rank(c.mask.rows(), c.mask.cols(), c.r, rng);
      const auto pm = observe(c.mask, c.r, truth);
      try {
        const double e = relative_error(c.engine(pm), truth);
        worst = std::max(worst, e);
        if (e < c.tol) ++ok;
      } catch (const GenericityViolation&) {
        ++generic;
      }
    }
    const bool pass = ok + generic == trials && ok > 0;
    all = all && pass;
    out << (pass ? "PASS " : "FAIL ") << c.name << ": " << ok << "/" << trials << " recovered, " << generic
        << " non-generic, max rel err " << std::scientific << std::setprecision(2) << worst << std::defaultfloat
        << "\n";
  }
  return all ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural low-rank matrix completion on lattice masks", "latcomp"};
  app.require_subcommand(1);

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "Check whether a mask is structurally completable");
  analyze->add_option("mask", aa.mask, "Mask file (JSON or ASCII grid)")->required();
  analyze->add_option("--rank,-r", aa.rank, "Target rank")->capture_default_str();
  analyze->add_option("--walks,-w", aa.walks, "Walk set JSON (required for rank > 2)");
  analyze->add_option("--out,-o", aa.out, "Report file (stdout if omitted)");

  CompleteArgs ca;
  auto* complete = app.add_subcommand("complete", "Fill the unknown entries of a partial matrix");
  complete->add_option("partial", ca.partial, "PartialMatrix JSON")->required();
  complete->add_option("--rank,-r", ca.rank, "Target rank (defaults to the file's)");
  complete->add_option("--engine,-e", ca.engine, "structured or greedy")
      ->check(CLI::IsMember({"structured", "greedy"}))
      ->capture_default_str();
  complete->add_option("--walks,-w", ca.walks, "Walk set JSON (structured engine, rank > 2)");
  complete->add_option("--out,-o", ca.out, "Completion file (stdout if omitted)");
  complete->add_flag("--exact", ca.exact, "Rational arithmetic; verifies the certificate");

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Write a generated mask family");
  generate->add_option("family", ga.family, "boundary, staircase, nested or counterexample")
      ->required()
      ->check(CLI::IsMember({"boundary", "staircase", "nested", "counterexample"}));
  generate->add_option("--m", ga.m, "Rows")->required();
  generate->add_option("--n", ga.n, "Columns")->required();
  generate->add_option("--rank,-r", ga.rank, "Rank of the nested family")->capture_default_str();
  generate->add_option("--min-cell", ga.min_cell, "Nested family spacing (0 = rank+1)");
  generate->add_option("--profile", ga.profile, "Staircase cells, e.g. 4x4,4x4,4x4");
  generate->add_option("--out,-o", ga.out, "Output path prefix")->required();

  RenderArgs ra;
  auto* render = app.add_subcommand("render", "Draw a mask as SVG or ASCII");
  render->add_option("mask", ra.mask, "Mask file")->required();
  render->add_option("--walks,-w", ra.walks, "Walk set JSON to draw instead of the extracted circuit");
  render->add_option("--out,-o", ra.out, "Output file (stdout if omitted)");
  render->add_option("--format,-f", ra.format, "svg or txt (default from the --out extension)");
  render->add_option("--cell", ra.cell, "Pixels per lattice step")->capture_default_str();

  int trials = 5;
  auto* selftest = app.add_subcommand("selftest", "Random recovery checks on the generator families (LATCOMP_SEED)");
  selftest->add_option("--trials", trials, "Instances per family")->check(CLI::PositiveNumber)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == analyze) return cmd_analyze(aa, out, err);
    if (active == complete) return cmd_complete(ca, out, err);
    if (active == generate) return cmd_generate(ga, out);
    if (active == render) return cmd_render(ra, out);
    return cmd_selftest(trials, out);
  } catch (const Usage& e) {
    err << "error: " << e.what() << "\n" << active->help();
    return kUsage;
  } catch (const AmbiguousDecomposition& e) {
    err << "error: " << e.what() << "\nbranching vertices: " << point_list(e.branching()) << "\n";
    return kAmbiguous;
  } catch (const GenericityViolation& e) {
    const auto& mnr = e.minor();
    err << "error: " << e.what() << "\nentry (" << e.entry().row << "," << e.entry().col << ") minor rows "
        << index_list(mnr.rows) << " cols " << index_list(mnr.cols) << " alpha " << e.alpha() << " scale "
        << e.scale() << "\n";
    return kGenericity;
  } catch (const ScheduleGap& e) {
    err << "error: " << e.what() << "\nentries: " << point_list(e.entries()) << "\n";
    return kNegative;
  } catch (const PreconditionViolation& e) {
    err << "error: " << e.what() << "\n";
    return kNegative;
  } catch (const Error& e) {
    // parse, dimension, profile and parameter errors are all input problems
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace latcomp::cli
