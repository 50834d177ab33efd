// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.

#include "h2sn/reproduce.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace h2sn;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Verdict from_report(const ReproReport& rep) {
  Verdict v;
  for (auto& it : rep.items) v.require(it.pass, it.label + ": expected " + it.expected + ", got " + it.got);
  return v;
}

Verdict target(const std::string& name, const json& golden, double budget_s = 0) {
  auto t0 = std::chrono::steady_clock::now();
  auto v = from_report(reproduce(name, PipelineOptions{}, golden));
  double dt = seconds_since(t0);
  if (budget_s > 0) v.require(dt < budget_s, name + " took " + std::to_string(dt) + " s");
  return v;
}

RingPtr grevlex_ring() { return make_ring({"s", "t", "u", "v", "ev", "ew", "r"}, OrderKind::Grevlex); }

bool same_point(const EigenCandidate& a, const EigenCandidate& b, const BigFloat& tol) {
  for (auto& [k, x] : a.re) {
    if (abs(x - b.re.at(k)) > tol) return false;
    if (abs(a.im.at(k) - b.im.at(k)) > tol) return false;
  }
  return true;
}

// every zero of every printed chain is a zero of the fixed-r system, and together they exhaust it
Verdict families(const json& golden) {
  Verdict v;
  PrecisionScope ps(kDefaultPrecisionBits);
  const BigFloat tol("1e-6");
  const auto& fd = golden.at("fixed_distance");
  auto R = grevlex_ring();
  PipelineOptions o;
  auto S = fixed_distance_system(o.config, parse_rational(fd.at("r").get<std::string>()));
  PolySystem F;
  for (auto& p : S.system()) F.push_back(p.in_ring(R));
  auto whole = solve_stickelberger(F, R, o.eigen);
  v.require(whole.commute, "fixed-r matrices do not commute");
  std::vector<bool> covered(whole.candidates.size(), false);
  int fi = 0;
  size_t family_zeros = 0;
  for (auto& fam : fd.at("families_printed")) {
    ++fi;
    PolySystem P;
    int ei = 0;
    for (auto& e : fam) {
      ++ei;
      std::string txt = e.get<std::string>();
      for (auto& c : fd.at("family_corrections"))
        if (c.at("family") == fi && c.at("entry") == ei) txt = c.at("corrected").get<std::string>();
      P.push_back(parse_polynomial(txt, R));
    }
    auto part = solve_stickelberger(P, R, o.eigen);
    for (auto& c : part.candidates) {
      family_zeros += c.multiplicity;
      bool hit = false;
      for (size_t j = 0; j < whole.candidates.size(); ++j)
        if (same_point(c, whole.candidates[j], tol)) {
          covered[j] = hit = true;
        }
      v.require(hit, "family " + std::to_string(fi) + " has a zero outside the fixed-r variety");
    }
  }
  size_t n_cov = std::count(covered.begin(), covered.end(), true);
  v.require(n_cov == whole.candidates.size(),
            std::to_string(whole.candidates.size() - n_cov) + " fixed-r zeros not in any family");
  v.require(family_zeros == whole.standard.size(),
            "families carry " + std::to_string(family_zeros) + " zeros, quotient has " +
                std::to_string(whole.standard.size()));

  // our own decomposition has the same real zero set as the printed families
  auto run = run_triangular(S, o);
  for (auto& s : run.report.solutions) {
    bool hit = false;
    for (auto& c : whole.candidates) {
      if (!c.real) continue;
      bool same = true;
      for (auto& [k, x] : s.values) same = same && abs(x - c.re.at(k)) < tol;
      hit = hit || same;
    }
    v.require(hit, "triangular solution " + s.provenance + " not among eigen candidates");
  }
  v.detail += (v.detail.empty() ? "" : "; ") + std::to_string(fd.at("families_printed").size()) + " families, " +
              std::to_string(family_zeros) + " complex zeros, " + std::to_string(run.decomposition.sets.size()) +
              " computed triangular sets";
  return v;
}

Verdict figures(const json& golden) {
  Verdict v = target("fig2", golden);
  auto f3 = target("fig3", golden);
  v.require(f3.pass, f3.detail);
  return v;
}

Verdict properties() {
  Verdict v;
  PrecisionScope ps(kDefaultPrecisionBits);
  PipelineOptions o;
  auto S = fixed_distance_system(o.config, Rational(7, 5));
  auto run = run_triangular(S, o);
  const auto& G = run.basis;

  // Groebner basis of the fixed-r system
  bool spairs = true;
  for (size_t i = 0; i < G.polys.size(); ++i)
    for (size_t j = i + 1; j < G.polys.size(); ++j)
      spairs = spairs && normal_form(s_polynomial(G.polys[i], G.polys[j]), G).is_zero();
  v.require(spairs, "S-polynomial with nonzero normal form");
  bool member = true;
  for (auto& f : S.system()) member = member && normal_form(f.in_ring(G.ring), G).is_zero();
  v.require(member, "generator not in the ideal");
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> C(-9, 9), E(0, 2);
  bool idem = true;
  for (int k = 0; k < 20; ++k) {
    Polynomial p(G.ring);
    for (int t = 0; t < 5; ++t) {
      Monomial m;
      for (int x = 0; x < G.ring->nvars(); ++x) m.set(x, static_cast<uint16_t>(E(rng)));
      p += Polynomial::monomial(G.ring, m, Rational(C(rng)));
    }
    auto nf = normal_form(p, G);
    idem = idem && normal_form(nf, G) == nf && normal_form(p - nf, G).is_zero();
  }
  v.require(idem, "normal form not idempotent");

  // Sturm isolation on the r-elimination polynomial of the ground-state system
  auto gs = ground_state_system(o.config);
  auto L = make_ring(gs.ring->vars(), OrderKind::Lex);
  PolySystem FL;
  for (auto& f : gs.system()) FL.push_back(f.in_ring(L));
  auto GL = groebner_basis(FL, L);
  int rv = L->require("r");
  auto elim = elimination_part(GL, rv);
  v.require(!elim.empty(), "no r-elimination polynomial");
  if (!elim.empty()) {
    auto u = upoly_from(elim.front(), rv);
    auto seq = sturm_sequence(squarefree_part(u));
    auto iv = isolate_real_roots(u);
    bool sound = static_cast<int>(iv.size()) == count_roots(seq, -cauchy_bound(u), cauchy_bound(u));
    for (size_t i = 0; i < iv.size(); ++i) {
      sound = sound && count_roots(seq, iv[i].lo, iv[i].hi) == 1;
      if (i) sound = sound && iv[i - 1].hi <= iv[i].lo;
      BigFloat x = refine_root(iv[i], BigFloat("1e-50"));
      sound = sound && x >= to_bigfloat(iv[i].lo) && x <= to_bigfloat(iv[i].hi);
    }
    v.require(sound, "Sturm isolation inconsistent");
  }

  // gradient against a central difference of the functional
  auto Fn = transform_symmetric(build_energy_functional(o.config));
  auto St = stationarity_system(Fn);
  std::uniform_int_distribution<int> N(-20, 20);
  const Rational h(1, 100000);
  bool grad = true;
  for (int trial = 0; trial < 5; ++trial) {
    std::map<std::string, Rational> pt;
    for (auto& name : Fn.ring->vars()) {
      pt[name] = Rational(N(rng), 10);
      pt[name].canonicalize();
    }
    for (size_t i = 0; i < St.polys.size(); ++i) {
      std::string var = St.labels[i].substr(std::string("dOmega/d").size());
      auto up = pt, dn = pt;
      up[var] += h;
      dn[var] -= h;
      Rational fd = 1000 * (evaluate(Fn.omega, up) - evaluate(Fn.omega, dn)) / (2 * h);
      grad = grad && abs_q(fd - evaluate(St.polys[i], pt)) < Rational(1, 1000);
    }
  }
  v.require(grad, "stationarity polynomial differs from the scaled gradient");

  // residuals and energy ordering of the fixed-r solutions
  BigFloat worst = 0, emin = 1e9, second = 1e9;
  for (auto& s : run.report.solutions) {
    worst = max(worst, max_residual(S.system(), s.values));
    BigFloat e = total_energy(s, S, o.solve.tol);
    if (e < emin - BigFloat("1e-20")) {
      second = emin;
      emin = e;
    } else if (e > emin + BigFloat("1e-20") && e < second) {
      second = e;
    }
  }
  v.require(worst < BigFloat("1e-6"), "residual " + to_string(worst, 6));
  bool ground_min = false;
  for (auto& s : run.report.solutions) {
    bool closed = abs(s.values.at("s")) < o.solve.tol && abs(s.values.at("v")) < o.solve.tol &&
                  abs(s.values.at("ev") - s.values.at("ew")) < o.solve.tol;
    if (closed && abs(total_energy(s, S, o.solve.tol) - emin) < BigFloat("1e-20")) ground_min = true;
  }
  v.require(ground_min && second > emin, "ground state is not the strict energy minimum");
  return v;
}

}  // namespace

int main() {
  json golden;
  try {
    golden = load_golden();
  } catch (const std::exception& e) {
    std::cerr << "cannot load golden data: " << e.what() << "\n";
    return 2;
  }
  struct Criterion {
    int id;
    std::string name;
    std::function<Verdict()> run;
  };
  std::vector<Criterion> list{
      {1, "energy functional coefficients", [&] { return target("eq10", golden, 60); }},
      {2, "stationarity polynomials", [&] { return target("eq14", golden); }},
      {3, "fixed-r real solutions", [&] { return target("table1", golden, 600); }},
      {4, "triangular families", [&] { return families(golden); }},
      {5, "ground-state geometry", [&] { return target("table2", golden); }},
      {6, "inverse gap problem", [&] { return target("inverse", golden); }},
      {7, "infeasibility certificate", [&] { return target("infeasible", golden); }},
      {8, "eigenvalue route", [&] { return target("eq26", golden); }},
      {9, "deviation and eigenvalue curves", [&] { return figures(golden); }},
      {10, "property suites", [&] { return properties(); }},
  };
  int failed = 0;
  for (auto& c : list) {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", seconds_since(t0));
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << ", " << secs << ")";
    if (!v.detail.empty()) std::cout << ": " << v.detail;
    std::cout << std::endl;
    if (!v.pass) ++failed;
  }
  std::cout << (10 - failed) << "/10 criteria pass" << std::endl;
  return failed ? 1 : 0;
}
