#include "h2sn/reproduce.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace h2sn {

bool ReproReport::pass() const {
  return !items.empty() && std::all_of(items.begin(), items.end(), [](const ReproItem& i) { return i.pass; });
}

std::string ReproReport::to_text() const {
  std::ostringstream os;
  os << "reproduce " << target << ": " << (pass() ? "PASS" : "MISMATCH") << "\n";
  for (auto& i : items)
    os << "  [" << (i.pass ? "ok" : "XX") << "] " << i.label << ": expected " << i.expected << ", got " << i.got
       << "\n";
  for (auto& n : notes) os << "  note: " << n << "\n";
  return os.str();
}

json ReproReport::to_json() const {
  json arr = json::array();
  for (auto& i : items)
    arr.push_back({{"label", i.label}, {"expected", i.expected}, {"got", i.got}, {"pass", i.pass}});
  return {{"target", target}, {"pass", pass()}, {"items", arr}, {"notes", notes}, {"data", data}};
}

LabeledSystem fixed_distance_system(const HF2Config& config, const Rational& r0) {
  HF2Config c = config;
  c.method = Method::UHF;
  return apply_constraint(stationarity_system(transform_symmetric(build_energy_functional(c))),
                          Constraint::fixed_distance(r0));
}

LabeledSystem ground_state_system(const HF2Config& config) {
  HF2Config c = config;
  c.method = Method::UHF;
  return apply_constraint(stationarity_system(transform_symmetric(build_energy_functional(c))),
                          Constraint::ground_state());
}

TriangularRun run_triangular(const LabeledSystem& S, const PipelineOptions& opt) {
  TriangularRun run;
  auto lex = make_ring(S.ring->vars(), OrderKind::Lex);
  run.basis = groebner_basis(S.system(), lex, opt.budget);
  if (is_trivial_ideal(run.basis)) return run;
  DecomposeOptions d;
  d.budget = opt.budget;
  d.precision_bits = opt.config.precision_bits;
  run.decomposition = decompose_triangular(run.basis, d);
  PolySystem orig;
  for (auto& p : S.system()) orig.push_back(p.in_ring(lex));
  run.report = solve_triangular_system(run.decomposition, orig, opt.solve);
  return run;
}

std::vector<RealSolution> sign_representatives(const std::vector<RealSolution>& sols, const BigFloat& tol) {
  static const std::vector<std::vector<std::string>> groups{{"s", "t"}, {"u", "v"}};
  std::vector<RealSolution> canon;
  for (auto s : sols) {
    for (auto& g : groups) {
      for (auto& v : g) {
        auto it = s.values.find(v);
        if (it == s.values.end() || abs(it->second) <= tol) continue;
        if (it->second > 0)
          for (auto& w : g)
            if (s.values.count(w)) s.values[w] = -s.values[w];
        break;
      }
    }
    canon.push_back(s);
  }
  return dedup_solutions(std::move(canon), tol);
}

namespace {

std::string fmt(const BigFloat& x, int d = 8) { return to_string(x, d); }
std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

ReproItem near(const std::string& label, double expected, const BigFloat& got, double tol) {
  return {label, fmt(expected) + " +/- " + fmt(tol), fmt(got), abs(got - BigFloat(expected)) <= BigFloat(tol)};
}

BigFloat value_or_zero(const RealSolution& s, const std::string& v) {
  auto it = s.values.find(v);
  return it == s.values.end() ? BigFloat(0) : it->second;
}

ReproReport repro_eq10(const PipelineOptions& opt, const json& g) {
  ReproReport R;
  auto F = build_energy_functional([&] {
    HF2Config c = opt.config;
    c.method = Method::UHF;
    return c;
  }());
  const auto& e = g.at("energy_functional");
  Rational scale = parse_rational(std::to_string(e.at("scale").get<int>()));
  Polynomial printed = parse_polynomial(e.at("printed").get<std::string>(), F.ring) * (1 / scale);
  Rational tol = parse_rational(e.at("tol").get<std::string>());
  Polynomial diff = printed - F.omega;
  size_t bad = 0;
  Rational worst = 0;
  for (auto& t : diff.terms()) {
    Rational a = abs_q(t.c);
    if (a > worst) worst = a;
    if (a > tol) ++bad;
  }
  std::set<std::string> mons;
  for (auto& t : printed.terms()) mons.insert(F.ring->monomial_string(t.m));
  for (auto& t : F.omega.terms()) mons.insert(F.ring->monomial_string(t.m));
  R.items.push_back({"coefficients within " + to_string(tol), "0 outside tolerance of " + std::to_string(mons.size()),
                     std::to_string(bad) + " (max |diff| " + to_string(worst) + ")", bad == 0});
  if (!diff.is_zero()) R.notes.push_back("generated coefficients differ from the print inside the grid tolerance");
  for (auto& s : e.at("spot")) {
    Polynomial m = parse_polynomial(s.at("monomial").get<std::string>(), F.ring);
    Rational want = parse_rational(s.at("value").get<std::string>());
    Rational got = 0;
    for (auto& t : F.omega.terms())
      if (t.m == m.lm()) got = t.c;
    R.items.push_back({"coefficient of " + s.at("monomial").get<std::string>(), to_string(want), to_string(got),
                       abs_q(got - want) <= tol});
  }
  R.data["omega"] = F.omega.to_string();
  R.data["omega_scaled"] = (F.omega * scale).to_string();
  return R;
}

ReproReport repro_eq14(const PipelineOptions& opt, const json& g) {
  ReproReport R;
  HF2Config c = opt.config;
  c.method = Method::UHF;
  auto S = stationarity_system(transform_symmetric(build_energy_functional(c)));
  const auto& e = g.at("stationarity");
  auto corrected = e.at("corrected");
  auto printed = e.at("printed");
  json gen = json::array();
  for (size_t i = 0; i < S.polys.size(); ++i) {
    Polynomial want = parse_polynomial(corrected.at(i).get<std::string>(), S.ring);
    bool ok = equal_up_to_positive_scalar(want, S.polys[i]);
    R.items.push_back({"equation " + std::to_string(i + 1) + " (" + S.labels[i] + ")", "positive multiple of golden",
                       ok ? "positive multiple" : "differs", ok});
    Polynomial raw = parse_polynomial(printed.at(i).get<std::string>(), S.ring);
    if (!equal_up_to_positive_scalar(raw, S.polys[i]))
      R.notes.push_back("equation " + std::to_string(i + 1) + " matches only after the recorded print corrections");
    gen.push_back({{"label", S.labels[i]}, {"poly", S.polys[i].to_string()}});
  }
  R.data["equations"] = gen;
  return R;
}

ReproReport repro_table1(const PipelineOptions& opt, const json& g) {
  ReproReport R;
  const auto& e = g.at("fixed_distance");
  auto S = fixed_distance_system(opt.config, parse_rational(e.at("r").get<std::string>()));
  auto run = run_triangular(S, opt);
  double tol = e.at("tol").get<double>();
  auto reps = sign_representatives(run.report.solutions, opt.solve.tol);
  R.items.push_back({"real solutions (all signs)", "16", std::to_string(run.report.solutions.size()),
                     run.report.solutions.size() == 16});
  R.items.push_back({"sign-deduplicated families", std::to_string(e.at("table").size()), std::to_string(reps.size()),
                     reps.size() == e.at("table").size()});
  std::vector<bool> used(reps.size(), false);
  json rows = json::array();
  int k = 0;
  for (auto& row : e.at("table")) {
    ++k;
    // best match by eigenvalues
    size_t best = reps.size();
    BigFloat bd = 1e9;
    for (size_t i = 0; i < reps.size(); ++i) {
      if (used[i]) continue;
      BigFloat d = abs(value_or_zero(reps[i], "ev") - BigFloat(row.at("ev").get<double>())) +
                   abs(value_or_zero(reps[i], "ew") - BigFloat(row.at("ew").get<double>()));
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    std::string tag = "solution " + std::to_string(k) + " ";
    if (best == reps.size()) {
      R.items.push_back({tag + "present", "yes", "no", false});
      continue;
    }
    used[best] = true;
    auto& s = reps[best];
    for (auto v : {"s", "t", "u", "v"})
      R.items.push_back(near(tag + v + " (magnitude)", std::abs(row.at(v).get<double>()), abs(value_or_zero(s, v)), tol));
    for (auto v : {"ev", "ew"}) R.items.push_back(near(tag + v, row.at(v).get<double>(), value_or_zero(s, v), tol));
    BigFloat E = total_energy(s, S, opt.solve.tol);
    R.items.push_back(near(tag + "Etot", row.at("etot").get<double>(), E, tol));
    json jr = solutions_json({s}, 12)[0];
    jr["etot"] = fmt(E, 12);
    rows.push_back(jr);
  }
  if (reps.size() >= 4) {
    std::vector<BigFloat> es;
    for (auto& s : reps) es.push_back(total_energy(s, S, opt.solve.tol));
    R.data["energies"] = json::array();
    for (auto& x : es) R.data["energies"].push_back(fmt(x, 10));
  }
  R.data["families"] = rows;
  R.data["solutions"] = solutions_json(run.report.solutions, 20);
  R.data["triangular_sets"] = triangular_json(run.decomposition);
  return R;
}

ReproReport repro_table2(const PipelineOptions& opt, const json& g) {
  ReproReport R;
  auto S = ground_state_system(opt.config);
  auto run = run_triangular(S, opt);
  // real roots of the r-elimination polynomial(s)
  std::vector<BigFloat> roots;
  for (auto& set : run.decomposition.sets) {
    auto iv = isolate_real_roots(set.chain[0]);
    PrecisionScope ps(opt.config.precision_bits);
    for (auto& i : iv) roots.push_back(refine_root(i, BigFloat("1e-40")));
  }
  std::sort(roots.begin(), roots.end());
  auto reps = sign_representatives(run.report.solutions, opt.solve.tol);
  const auto& rows = g.at("ground_state").at("rows");
  R.items.push_back({"real roots of the r-elimination polynomial", std::to_string(rows.size()),
                     std::to_string(roots.size()), roots.size() == rows.size()});
  for (auto& row : rows) {
    double r0 = row.at("r").get<double>();
    const RealSolution* best = nullptr;
    for (auto& s : reps)
      if (!best || abs(s.values.at("r") - BigFloat(r0)) < abs(best->values.at("r") - BigFloat(r0))) best = &s;
    std::string tag = "r=" + fmt(r0) + " ";
    if (!best) {
      R.items.push_back({tag + "present", "yes", "no", false});
      continue;
    }
    R.items.push_back(near(tag + "r", r0, best->values.at("r"), row.at("tol_r").get<double>()));
    R.items.push_back(near(tag + "ev", row.at("ev").get<double>(), best->values.at("ev"), row.at("tol_ev").get<double>()));
    R.items.push_back(near(tag + "t (magnitude)", row.at("t").get<double>(), abs(best->values.at("t")),
                           row.at("tol_t").get<double>()));
  }
  R.data["elimination_polynomial"] = run.decomposition.sets.empty() ? "" : run.decomposition.sets[0].chain[0].to_string();
  R.data["solutions"] = solutions_json(run.report.solutions, 20);
  return R;
}

ReproReport repro_eq26(const PipelineOptions& opt, const json& g) {
  ReproReport R;
  const auto& e = g.at("quotient_basis");
  auto S = build_rhf_optimization_system(opt.config);
  auto st = solve_stickelberger(S.system(), S.ring, opt.eigen, opt.solve.tol, opt.budget);
  std::set<std::string> want, got;
  for (auto& m : e.at("monomials")) want.insert(m.get<std::string>());
  for (auto& m : st.standard) got.insert(S.ring->monomial_string(m));
  R.items.push_back({"standard monomial count", std::to_string(want.size()), std::to_string(got.size()),
                     want.size() == got.size()});
  R.items.push_back({"standard monomial set", "golden set", want == got ? "equal" : "differs", want == got});
  R.items.push_back({"matrices commute exactly", "true", st.commute ? "true" : "false", st.commute});
  const auto& ir = e.at("in_range");
  const RealSolution* best = nullptr;
  double r0 = ir.at("r").get<double>();
  for (auto& s : st.solutions)
    if (s.values.at("t") > 0 &&
        (!best || abs(s.values.at("r") - BigFloat(r0)) < abs(best->values.at("r") - BigFloat(r0))))
      best = &s;
  double tol = ir.at("tol").get<double>();
  if (best) {
    for (auto v : {"r", "ev", "t"}) R.items.push_back(near("eigen route " + std::string(v), ir.at(v).get<double>(), best->values.at(v), tol));
  } else {
    R.items.push_back({"eigen route in-range solution", "present", "absent", false});
  }
  auto run = run_triangular(S, opt);
  auto cmp = compare_solution_sets(run.report.solutions, st.solutions, opt.solve.tol);
  R.items.push_back({"route agreement (real solutions)", std::to_string(run.report.solutions.size()) + " shared",
                     cmp.agree ? "agree" : "differ", cmp.agree});
  for (auto& d : cmp.diagnostics) R.notes.push_back(d);
  json basis = json::array();
  for (auto& m : st.standard) basis.push_back(S.ring->monomial_string(m));
  R.data["basis"] = basis;
  R.data["candidates"] = candidates_json(st.candidates, 20);
  R.data["solutions"] = solutions_json(st.solutions, 20);
  return R;
}

ReproReport repro_fig2(const PipelineOptions& opt, const json& g) {
  ReproReport R;
  const auto& e = g.at("deviation");
  Rational lo = parse_rational(e.at("band")[0].get<std::string>()), hi = parse_rational(e.at("band")[1].get<std::string>());
  Rational out_r = parse_rational(e.at("outside_r").get<std::string>());
  std::vector<Rational> grid;
  for (Rational r(1, 4); r <= 4; r += Rational(1, 20)) grid.push_back(r);
  auto curve = deviation_curve(opt.config, grid);
  BigFloat band_max = 0, at_out = 0;
  json rows = json::array();
  for (auto& p : curve) {
    if (p.r >= lo && p.r <= hi && p.deviation > band_max) band_max = p.deviation;
    if (p.r == out_r) at_out = p.deviation;
    rows.push_back({{"r", to_string(p.r)}, {"taylor", fmt(p.taylor, 12)}, {"exact", fmt(p.exact, 12)},
                    {"deviation", fmt(p.deviation, 8)}});
  }
  double bm = e.at("band_max").get<double>(), om = e.at("outside_min").get<double>();
  R.items.push_back({"max relative deviation on [" + to_string(lo) + "," + to_string(hi) + "]", "< " + fmt(bm),
                     fmt(band_max, 6), band_max < BigFloat(bm)});
  R.items.push_back({"relative deviation at r=" + to_string(out_r), "> " + fmt(om), fmt(at_out, 6), at_out > BigFloat(om)});
  R.data["curve"] = rows;
  return R;
}

ReproReport repro_fig3(const PipelineOptions& opt, const json& g) {
  ReproReport R;
  const auto& e = g.at("eigen_curve");
  HF2Config c = opt.config;
  c.method = Method::RHF;
  Rational rg = parse_rational(e.at("gap_r").get<std::string>()), ro = parse_rational(e.at("occ_r").get<std::string>());
  std::vector<Rational> grid;
  for (Rational r(1); r <= Rational(5, 2); r += Rational(1, 20)) grid.push_back(r);
  grid.push_back(rg);
  std::sort(grid.begin(), grid.end());
  auto curve = eigen_curve(c, grid);
  json rows = json::array();
  bool monotone = true;
  const EigenPoint* prev = nullptr;
  for (auto& p : curve) {
    rows.push_back({{"r", to_string(p.r)}, {"found", p.found}, {"e_occ", p.found ? fmt(p.e_occ, 10) : ""},
                    {"e_unocc", p.found ? fmt(p.e_unocc, 10) : ""}});
    if (!p.found) continue;
    if (prev && p.r >= Rational(6, 5) && p.r <= 2 && prev->r >= Rational(6, 5) &&
        !(p.e_unocc - p.e_occ < prev->e_unocc - prev->e_occ))
      monotone = false;
    prev = &p;
  }
  for (auto& p : curve) {
    if (p.r == rg)
      R.items.push_back(p.found ? near("gap at r=" + to_string(rg), e.at("gap").get<double>(), BigFloat(p.e_unocc - p.e_occ),
                                       e.at("gap_tol").get<double>())
                                : ReproItem{"gap at r=" + to_string(rg), "found", "no solution", false});
    if (p.r == ro)
      R.items.push_back(p.found ? near("e_occ at r=" + to_string(ro), e.at("e_occ").get<double>(), p.e_occ,
                                       e.at("occ_tol").get<double>())
                                : ReproItem{"e_occ at r=" + to_string(ro), "found", "no solution", false});
  }
  R.items.push_back({"gap decreasing on [6/5, 2]", "true", monotone ? "true" : "false", monotone});
  R.data["curve"] = rows;
  return R;
}

ReproReport repro_infeasible(const PipelineOptions& opt, const json& g) {
  ReproReport R;
  HF2Config c = opt.config;
  c.method = Method::RHF;
  Rational egap = parse_rational(g.at("infeasible").at("egap").get<std::string>());
  auto S = apply_constraint(build_rhf_inverse_system(c, egap), Constraint::stability());
  auto G = groebner_basis(S.system(), S.ring, opt.budget);
  std::string got;
  for (auto& p : G.polys) got += (got.empty() ? "" : ", ") + p.to_string();
  R.items.push_back({"reduced Groebner basis", "{1}", "{" + got + "}", is_trivial_ideal(G)});
  return R;
}

ReproReport repro_inverse(const PipelineOptions& opt, const json& g) {
  ReproReport R;
  const auto& e = g.at("inverse");
  HF2Config c = opt.config;
  c.method = Method::RHF;
  auto S = build_rhf_inverse_system(c, parse_rational(e.at("egap").get<std::string>()));
  auto run = run_triangular(S, opt);
  std::vector<BigFloat> rs;
  for (auto& s : run.report.solutions) {
    BigFloat r = s.values.at("r");
    bool dup = false;
    for (auto& x : rs) dup = dup || abs(x - r) < opt.solve.tol;
    if (!dup) rs.push_back(r);
  }
  std::sort(rs.begin(), rs.end());
  auto want = e.at("roots").get<std::vector<double>>();
  double tol = e.at("tol").get<double>();
  R.items.push_back({"number of real r", std::to_string(want.size()), std::to_string(rs.size()), rs.size() == want.size()});
  for (size_t i = 0; i < want.size(); ++i)
    R.items.push_back(i < rs.size() ? near("root " + std::to_string(i + 1), want[i], rs[i], tol)
                                    : ReproItem{"root " + std::to_string(i + 1), fmt(want[i]), "missing", false});
  double lo = e.at("valid_range")[0].get<double>(), hi = e.at("valid_range")[1].get<double>();
  std::vector<BigFloat> valid;
  for (auto& r : rs)
    if (r >= lo && r <= hi) valid.push_back(r);
  double vr = e.at("valid_root").get<double>();
  R.items.push_back({"single root in the validity range", "1 near " + fmt(vr), std::to_string(valid.size()) +
                     (valid.empty() ? "" : " at " + fmt(valid[0], 6)),
                     valid.size() == 1 && abs(valid[0] - BigFloat(vr)) <= BigFloat(tol)});
  json roots = json::array();
  for (auto& r : rs) roots.push_back(fmt(r, 12));
  R.data["roots"] = roots;
  R.data["solutions"] = solutions_json(run.report.solutions, 20);
  return R;
}

}  // namespace

std::vector<std::string> reproduce_targets() {
  return {"eq10", "eq14", "table1", "table2", "eq26", "fig2", "fig3", "infeasible", "inverse"};
}

ReproReport reproduce(const std::string& target, const PipelineOptions& opt, const json& golden) {
  ReproReport R;
  if (target == "eq10") R = repro_eq10(opt, golden);
  else if (target == "eq14") R = repro_eq14(opt, golden);
  else if (target == "table1") R = repro_table1(opt, golden);
  else if (target == "table2") R = repro_table2(opt, golden);
  else if (target == "eq26") R = repro_eq26(opt, golden);
  else if (target == "fig2") R = repro_fig2(opt, golden);
  else if (target == "fig3") R = repro_fig3(opt, golden);
  else if (target == "infeasible") R = repro_infeasible(opt, golden);
  else if (target == "inverse") R = repro_inverse(opt, golden);
  else throw UsageError("unknown reproduce target: " + target);
  R.target = target;
  return R;
}

}  // namespace h2sn
