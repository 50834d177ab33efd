// h2sn command-line front end.

#include "h2sn/reproduce.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace h2sn;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kBudget = 3 };

struct Common {
  int precision_bits = kDefaultPrecisionBits;
  std::string grid = "1/1000";
  int degree = 4;
  std::string center = "7/5";
  std::string tol = "1e-8";
  uint64_t seed = 0;
  size_t budget_spairs = 0;
  std::string out;
  std::string format = "text";
  std::string rounding = "truncate";
};

void add_common(CLI::App& app, Common& c) {
  app.add_option("--precision-bits", c.precision_bits, "BigFloat precision")->envname("H2SN_PRECISION_BITS");
  app.add_option("--grid", c.grid, "coefficient grid")->envname("H2SN_GRID");
  app.add_option("--degree", c.degree, "Taylor degree")->envname("H2SN_DEGREE");
  app.add_option("--center", c.center, "Taylor center")->envname("H2SN_CENTER");
  app.add_option("--tol", c.tol, "residual and dedup tolerance")->envname("H2SN_TOL");
  app.add_option("--seed", c.seed, "eigen-route random combination seed")->envname("H2SN_SEED");
  app.add_option("--budget-spairs", c.budget_spairs, "S-pair budget (0: unlimited)")->envname("H2SN_BUDGET_SPAIRS");
  app.add_option("--out", c.out, "output directory")->envname("H2SN_OUT");
  app.add_option("--format", c.format, "stdout format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->envname("H2SN_FORMAT");
  app.add_option("--rounding", c.rounding, "coefficient rounding")
      ->check(CLI::IsMember({"truncate", "nearest"}))
      ->envname("H2SN_ROUNDING");
}

PipelineOptions pipeline(const Common& c) {
  PipelineOptions o;
  o.config.precision_bits = c.precision_bits;
  o.config.grid = parse_rational(c.grid);
  o.config.taylor_degree = c.degree;
  o.config.center = parse_rational(c.center);
  o.config.rounding = c.rounding == "nearest" ? RoundMode::Nearest : RoundMode::Truncate;
  if (o.config.grid <= 0) throw UsageError("--grid must be positive");
  if (o.config.taylor_degree < 0) throw UsageError("--degree must be non-negative");
  if (c.precision_bits < 64) throw UsageError("--precision-bits must be at least 64");
  o.solve.precision_bits = c.precision_bits;
  {
    PrecisionScope ps(c.precision_bits);
    o.solve.tol = BigFloat(c.tol);
  }
  o.eigen.seed = c.seed;
  o.eigen.precision_bits = c.precision_bits;
  o.budget.max_spairs = c.budget_spairs;
  return o;
}

json config_json(const Common& c, const std::string& order = "") {
  json j = {{"precision_bits", c.precision_bits}, {"grid", c.grid},   {"degree", c.degree},
            {"center", c.center},                 {"tol", c.tol},     {"seed", c.seed},
            {"budget_spairs", c.budget_spairs},   {"rounding", c.rounding}};
  if (!order.empty()) j["order"] = order;
  return j;
}

/// writes a file into --out (if set) and records it; returns nothing when --out is empty
struct Output {
  const Common& c;
  RunManifest manifest;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Output(const Common& common, std::string command) : c(common) {
    manifest.command = std::move(command);
    manifest.config = config_json(c);
    manifest.version = tool_version();
    if (!c.out.empty()) fs::create_directories(c.out);
  }
  void input(const std::string& path, const std::string& bytes) { manifest.inputs.emplace_back(path, sha256_hex(bytes)); }
  void file(const std::string& name, const std::string& content) const {
    if (!c.out.empty()) write_file((fs::path(c.out) / name).string(), content);
  }
  void json_file(const std::string& name, json body) const {
    if (c.out.empty()) return;
    json wrapped = {{"manifest", "manifest.json"}, {"result", std::move(body)}};
    file(name, wrapped.dump(2) + "\n");
  }
  void finish() {
    manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    file("manifest.json", manifest.to_json().dump(2) + "\n");
  }
};

SystemDoc load_input(const std::string& path, Output& out) {
  std::string text = path == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : read_file(path);
  out.input(path, text);
  return parse_system(text);
}

LabeledSystem labeled(const SystemDoc& d) {
  LabeledSystem S;
  S.ring = d.ring;
  S.polys = d.polys;
  S.labels = d.labels;
  return S;
}

void print_solutions(const Common& c, const std::vector<RealSolution>& sols, const RingPtr& ring) {
  if (c.format == "json") {
    std::cout << solutions_json(sols, 30).dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << solutions_csv(sols, ring->vars());
  } else {
    std::cout << sols.size() << " real solution(s)\n";
    for (auto& s : sols) {
      std::cout << "  " << s.provenance << ":";
      for (auto& v : ring->vars())
        if (s.values.count(v)) std::cout << " " << v << "=" << to_string(s.values.at(v), 12);
      std::cout << "  residual " << to_string(s.residual, 3) << "\n";
    }
  }
}

int cmd_build(const Common& c, const std::string& method, const std::string& fixed_r, bool ground, const std::string& egap,
              bool stability) {
  Output out(c, "build");
  auto o = pipeline(c);
  LabeledSystem S;
  std::string omega;
  if (method == "uhf") {
    o.config.method = Method::UHF;
    auto F = build_energy_functional(o.config);
    omega = (F.omega * F.scale).to_string();
    S = stationarity_system(transform_symmetric(F));
    if (!fixed_r.empty()) S = apply_constraint(S, Constraint::fixed_distance(parse_rational(fixed_r)));
    if (ground) S = apply_constraint(S, Constraint::ground_state());
    if (!egap.empty()) throw UsageError("--egap requires --method rhf");
  } else if (method == "rhf") {
    o.config.method = Method::RHF;
    auto F = build_energy_functional(o.config);
    omega = (F.omega * F.scale).to_string();
    if (ground) throw UsageError("--ground-state applies to --method uhf");
    if (!egap.empty() && !fixed_r.empty()) throw UsageError("--egap and --fixed-r are exclusive");
    S = !egap.empty() ? build_rhf_inverse_system(o.config, parse_rational(egap))
        : !fixed_r.empty() ? build_rhf_orbital_system(o.config, parse_rational(fixed_r))
                           : build_rhf_orbital_system(o.config);
  } else {  // rhf-opt
    o.config.method = Method::UHF;
    if (ground || !egap.empty() || !fixed_r.empty()) throw UsageError("rhf-opt takes no constraints");
    auto F = build_energy_functional(o.config);
    omega = (F.omega * F.scale).to_string();
    S = build_rhf_optimization_system(o.config);
  }
  if (stability) S = apply_constraint(S, Constraint::stability());
  std::string sys = format_system(to_doc(S));
  out.manifest.config["method"] = method;
  out.file("omega.txt", omega + "\n");
  out.file("system.txt", sys);
  if (c.format == "json") {
    json eqs = json::array();
    for (size_t i = 0; i < S.polys.size(); ++i) eqs.push_back({{"label", S.labels[i]}, {"poly", S.polys[i].to_string()}});
    std::cout << json({{"omega_scaled", omega}, {"vars", S.ring->vars()}, {"order", to_string(S.ring->kind())},
                       {"equations", eqs}})
                     .dump(2)
              << "\n";
  } else {
    std::cout << "# Omega x " << to_string(Rational(1) / o.config.grid) << ": " << omega << "\n" << sys;
  }
  out.finish();
  return kOk;
}

int cmd_gb(const Common& c, const std::string& path, const std::string& order) {
  Output out(c, "gb");
  auto o = pipeline(c);
  auto doc = load_input(path, out);
  auto ring = order.empty() ? doc.ring : make_ring(doc.ring->vars(), parse_order(order));
  out.manifest.config = config_json(c, to_string(ring->kind()));
  GroebnerStats st;
  auto G = groebner_basis(doc.system(), ring, o.budget, &st);
  std::string txt = format_system(to_doc(G));
  json polys = json::array();
  for (auto& p : G.polys) polys.push_back(p.to_string());
  json j = {{"vars", ring->vars()},
            {"order", to_string(ring->kind())},
            {"basis", polys},
            {"trivial", is_trivial_ideal(G)},
            {"zero_dimensional", !is_trivial_ideal(G) && is_zero_dimensional(G)},
            {"stats", {{"pairs_created", st.pairs_created}, {"pairs_reduced", st.pairs_reduced},
                       {"zero_reductions", st.zero_reductions}, {"pruned", st.pruned}}}};
  out.file("basis.txt", txt);
  out.json_file("basis.json", j);
  if (c.format == "json") std::cout << j.dump(2) << "\n";
  else std::cout << txt;
  std::cerr << "gb: " << G.size() << " element(s), " << st.pairs_reduced << " pair(s) reduced, " << st.pruned
            << " pruned\n";
  out.finish();
  return kOk;
}

int cmd_tri(const Common& c, const std::string& path) {
  Output out(c, "tri");
  auto o = pipeline(c);
  auto doc = load_input(path, out);
  out.manifest.config = config_json(c, "lex");
  auto lex = make_ring(doc.ring->vars(), OrderKind::Lex);
  auto G = groebner_basis(doc.system(), lex, o.budget);
  if (is_trivial_ideal(G)) {
    std::cout << "infeasible: Gröbner basis = {1}\n";
    out.finish();
    return kOk;
  }
  DecomposeOptions d;
  d.budget = o.budget;
  d.precision_bits = c.precision_bits;
  auto T = decompose_triangular(G, d);
  json j = triangular_json(T);
  out.json_file("triangular.json", j);
  if (c.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    for (size_t i = 0; i < T.sets.size(); ++i) std::cout << "set " << i + 1 << ":\n" << T.sets[i].to_string();
  }
  out.finish();
  return kOk;
}

int cmd_solve(const Common& c, const std::string& path, const std::string& route) {
  Output out(c, "solve");
  auto o = pipeline(c);
  auto doc = load_input(path, out);
  out.manifest.config = config_json(c);
  out.manifest.config["route"] = route;
  auto S = labeled(doc);
  std::vector<RealSolution> tri, stick;
  int rc = kOk;
  if (route == "tri" || route == "both") {
    auto run = run_triangular(S, o);
    if (is_trivial_ideal(run.basis)) {
      std::cout << "infeasible: Gröbner basis = {1}\n";
      out.finish();
      return kOk;
    }
    tri = run.report.solutions;
    for (auto& d : run.report.degenerate) std::cerr << "degenerate branch: " << d << "\n";
    for (auto& r : run.report.rejected) std::cerr << "rejected: " << r << "\n";
    out.json_file("solutions_tri.json", solutions_json(tri));
    out.file("solutions_tri.csv", solutions_csv(tri, doc.ring->vars()));
    out.json_file("triangular.json", triangular_json(run.decomposition));
  }
  if (route == "stick" || route == "both") {
    auto grevlex = make_ring(doc.ring->vars(), OrderKind::Grevlex);
    auto st = solve_stickelberger(doc.system(), grevlex, o.eigen, o.solve.tol, o.budget);
    if (!st.commute) {
      std::cerr << "multiplication matrices do not commute\n";
      rc = kMismatch;
    }
    stick = st.solutions;
    for (auto& r : st.rejected) std::cerr << "rejected: " << r << "\n";
    std::cerr << "stick: quotient dimension " << st.standard.size() << ", " << st.complex_candidates
              << " complex candidate(s)\n";
    out.json_file("solutions_stick.json", solutions_json(stick));
    out.file("solutions_stick.csv", solutions_csv(stick, doc.ring->vars()));
    out.json_file("candidates.json", candidates_json(st.candidates));
  }
  if (route == "both") {
    auto cmp = compare_solution_sets(tri, stick, o.solve.tol);
    if (cmp.agree) {
      std::cerr << "routes agree: " << tri.size() << " real solution(s)\n";
    } else {
      std::cerr << "routes disagree:\n";
      for (auto& d : cmp.diagnostics) std::cerr << "  " << d << "\n";
      rc = kMismatch;
    }
  }
  print_solutions(c, route == "stick" ? stick : tri, doc.ring);
  out.finish();
  return rc;
}

int cmd_inverse(const Common& c, const std::string& egap, bool stability) {
  Output out(c, "inverse");
  auto o = pipeline(c);
  o.config.method = Method::RHF;
  out.manifest.config["egap"] = egap;
  out.manifest.config["stability"] = stability;
  auto S = build_rhf_inverse_system(o.config, parse_rational(egap));
  if (stability) S = apply_constraint(S, Constraint::stability());
  out.file("system.txt", format_system(to_doc(S)));
  auto run = run_triangular(S, o);
  if (is_trivial_ideal(run.basis)) {
    std::cout << "infeasible: Gröbner basis = {1}\n";
    out.finish();
    return kOk;
  }
  out.json_file("solutions.json", solutions_json(run.report.solutions));
  out.file("solutions.csv", solutions_csv(run.report.solutions, S.ring->vars()));
  print_solutions(c, run.report.solutions, S.ring);
  out.finish();
  return kOk;
}

void write_curve_csv(const Output& out, const std::string& name, const json& rows) {
  if (rows.empty()) return;
  std::string csv;
  std::vector<std::string> keys;
  for (auto& [k, v] : rows[0].items()) keys.push_back(k);
  for (size_t i = 0; i < keys.size(); ++i) csv += (i ? "," : "") + keys[i];
  csv += "\n";
  for (auto& r : rows) {
    for (size_t i = 0; i < keys.size(); ++i) {
      const auto& v = r.at(keys[i]);
      csv += (i ? "," : "") + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    csv += "\n";
  }
  out.file(name, csv);
}

int cmd_reproduce(const Common& c, const std::vector<std::string>& targets_in) {
  Output out(c, "reproduce");
  auto o = pipeline(c);
  std::string golden_path = data_dir() + "/golden.json";
  std::string gtext = read_file(golden_path);
  out.input(golden_path, gtext);
  json golden = json::parse(gtext);
  std::vector<std::string> targets = targets_in;
  if (targets.size() == 1 && targets[0] == "all") targets = reproduce_targets();
  out.manifest.config["targets"] = targets;
  bool all = true;
  json reports = json::array();
  for (auto& t : targets) {
    auto R = reproduce(t, o, golden);
    all = all && R.pass();
    if (c.format == "json") reports.push_back(R.to_json());
    else std::cout << R.to_text();
    out.json_file(t + ".json", R.to_json());
    if (R.data.contains("curve")) write_curve_csv(out, t + ".csv", R.data["curve"]);
  }
  if (c.format == "json") std::cout << reports.dump(2) << "\n";
  out.finish();
  return all ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic-numeric Hartree-Fock solver for minimal-basis H2"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  Common c;

  auto* build = app.add_subcommand("build", "emit the energy functional and a polynomial system");
  std::string method = "uhf", fixed_r, egap_b;
  bool ground = false, stab_b = false;
  build->add_option("--method", method, "uhf, rhf or rhf-opt")->check(CLI::IsMember({"uhf", "rhf", "rhf-opt"}));
  build->add_option("--fixed-r", fixed_r, "fix the bond length");
  build->add_flag("--ground-state", ground, "s = v = 0 (uhf)");
  build->add_option("--egap", egap_b, "orbital gap target (rhf)");
  build->add_flag("--stability", stab_b, "append the geometry stationarity condition");
  add_common(*build, c);

  std::string path, order;
  auto* gb = app.add_subcommand("gb", "reduced Groebner basis of a system file");
  gb->add_option("system", path, "system file ('-' for stdin)")->required();
  gb->add_option("--order", order, "override the file's order")->check(CLI::IsMember({"lex", "grevlex"}));
  add_common(*gb, c);

  auto* tri = app.add_subcommand("tri", "triangular decomposition of a system file");
  tri->add_option("system", path, "system file ('-' for stdin)")->required();
  add_common(*tri, c);

  std::string route = "tri";
  auto* solve = app.add_subcommand("solve", "all real solutions of a system file");
  solve->add_option("system", path, "system file ('-' for stdin)")->required();
  solve->add_option("--route", route, "tri, stick or both")->check(CLI::IsMember({"tri", "stick", "both"}));
  add_common(*solve, c);

  std::string egap;
  bool stability = false;
  auto* inverse = app.add_subcommand("inverse", "bond lengths with a given RHF orbital gap");
  inverse->add_option("--egap", egap, "target gap eunocc - eocc")->required();
  inverse->add_flag("--stability", stability, "also require a stationary energy");
  add_common(*inverse, c);

  std::vector<std::string> targets;
  auto* repro = app.add_subcommand("reproduce", "compare against the golden data");
  auto known = reproduce_targets();
  known.push_back("all");
  repro->add_option("target", targets, "target name(s) or 'all'")->required()->check(CLI::IsMember(known));
  add_common(*repro, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*build) return cmd_build(c, method, fixed_r, ground, egap_b, stab_b);
    if (*gb) return cmd_gb(c, path, order);
    if (*tri) return cmd_tri(c, path);
    if (*solve) return cmd_solve(c, path, route);
    if (*inverse) return cmd_inverse(c, egap, stability);
    if (*repro) return cmd_reproduce(c, targets);
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
