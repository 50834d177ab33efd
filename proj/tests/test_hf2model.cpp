#include <doctest.h>

#include "h2sn/reproduce.hpp"
#include "quadrature_oracles.hpp"

#include <random>

using namespace h2sn;

namespace {

double table_value(const IntegralTable& T, const std::string& key, double r) {
  PrecisionScope ps(128);
  return static_cast<double>(T.at(key).eval({{"r", BigFloat(r)}}));
}

HF2Config uhf() {
  HF2Config c;
  c.method = Method::UHF;
  return c;
}

const std::vector<double> kRadii{0.6, 1.4, 2.3, 4.0};

}  // namespace

TEST_CASE("one-electron integrals agree with quadrature") {
  auto T = build_integral_table(uhf());
  for (double r : kRadii) {
    CAPTURE(r);
    CHECK(table_value(T, "S", r) == doctest::Approx(oracle::overlap(r)).epsilon(1e-10));
    CHECK(table_value(T, "V_AA_B", r) == doctest::Approx(oracle::attraction_aa_b(r)).epsilon(1e-10));
    CHECK(table_value(T, "V_AB", r) == doctest::Approx(oracle::attraction_ab(r)).epsilon(1e-10));
    CHECK(table_value(T, "T_AB", r) == doctest::Approx(oracle::kinetic_ab(r)).epsilon(1e-9));
    CHECK(table_value(T, "hAA", r) == doctest::Approx(0.5 - 1 + oracle::attraction_aa_b(r)).epsilon(1e-10));
    CHECK(table_value(T, "hAB", r) ==
          doctest::Approx(oracle::kinetic_ab(r) + 2 * oracle::attraction_ab(r)).epsilon(1e-9));
    CHECK(table_value(T, "nuc", r) == doctest::Approx(1 / r));
  }
}

TEST_CASE("two-electron Coulomb and hybrid integrals agree with quadrature") {
  auto T = build_integral_table(uhf());
  for (double r : kRadii) {
    CAPTURE(r);
    CHECK(table_value(T, "AABB", r) == doctest::Approx(oracle::coulomb(1, 1, 1, 1, r)).epsilon(1e-10));
    CHECK(table_value(T, "AAAB", r) == doctest::Approx(oracle::hybrid(r)).epsilon(1e-10));
  }
  CHECK(table_value(T, "AAAA", 1.0) == 0.625);
}

TEST_CASE("general-exponent Coulomb integral agrees with quadrature") {
  PrecisionScope ps(128);
  auto R = SymExpr::var("r");
  struct Z {
    Rational a, b, c, d;
  };
  for (auto z : {Z{1, 1, 1, 1}, Z{1, Rational(3, 2), 1, 1}, Z{2, 1, Rational(1, 2), Rational(1, 2)},
                 Z{Rational(6, 5), Rational(6, 5), Rational(9, 10), 2}}) {
    auto e = coulomb_integral(z.a, z.b, z.c, z.d, R);
    for (double r : {0.9, 1.4, 3.0}) {
      double got = static_cast<double>(e.eval({{"r", BigFloat(r)}}));
      double want = oracle::coulomb(z.a.get_d(), z.b.get_d(), z.c.get_d(), z.d.get_d(), r);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(coulomb_integral(0, 1, 1, 1, R), DomainError);
}

TEST_CASE("exchange integral agrees with a multipole-expansion oracle") {
  auto T = build_integral_table(uhf());
  for (double R : {1.4, 2.5}) {
    auto rab = [R](double r, double x) {
      return std::exp(-oracle::dist_a(R, r, x) - oracle::dist_b(R, r, x)) / M_PI;
    };
    double want = oracle::multipole_repulsion(R, rab, rab, 20);
    CHECK(table_value(T, "ABAB", R) == doctest::Approx(want).epsilon(1e-7));
  }
}

TEST_CASE("integral table limits") {
  auto T = build_integral_table(uhf());
  // united-atom limit of the two-electron integrals is 5/8
  for (auto key : {"AABB", "AAAB", "ABAB"}) CHECK(table_value(T, key, 1e-4) == doctest::Approx(0.625).epsilon(1e-3));
  CHECK(table_value(T, "S", 1e-6) == doctest::Approx(1.0));
  CHECK(std::abs(table_value(T, "ABAB", 30)) < 1e-9);
  HF2Config c = uhf();
  c.zeta = 2;
  CHECK_THROWS_AS(build_integral_table(c), UsageError);
}

TEST_CASE("energy functional shape and grid") {
  auto F = build_energy_functional(uhf());
  CHECK(F.ring->vars() == std::vector<std::string>{"a", "b", "c", "d", "ev", "ew", "r"});
  for (auto& t : F.omega.terms()) {
    CHECK(Rational(t.c * 1000).get_den() == 1);
    CHECK(t.m[F.ring->require("r")] <= 4);
  }
  CHECK(F.roles.at("r") == Role::Geometry);
  CHECK(F.roles.at("ev") == Role::Multiplier);
  CHECK(F.roles.at("a") == Role::Coefficient);
  // truncation keeps every coefficient no larger in magnitude than nearest rounding
  HF2Config n = uhf();
  n.rounding = RoundMode::Nearest;
  auto G = build_energy_functional(n);
  auto diff = G.omega - F.omega;
  for (auto& t : diff.terms()) CHECK(abs_q(t.c) <= Rational(1, 1000));
}

TEST_CASE("Taylor-expanded functional tracks the exact one near the center") {
  auto form = uhf_integral_form();
  auto T = build_integral_table(uhf());
  auto F = build_energy_functional(uhf());
  PrecisionScope ps(256);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int i = 0; i < 20; ++i) {
    std::map<std::string, BigFloat> pt{{"a", U(rng)}, {"b", U(rng)}, {"c", U(rng)}, {"d", U(rng)},
                                       {"ev", U(rng)}, {"ew", U(rng)}, {"r", BigFloat("1.4")}};
    BigFloat ex = form.exact_value(T, pt), ap = evaluate(F.omega, pt);
    // only the grid truncation separates them at the center: < 1/1000 per monomial
    CHECK(abs(ex - ap) < BigFloat(F.omega.size()) / 1000);
  }
}

TEST_CASE("symmetric transform is invertible") {
  auto F = build_energy_functional(uhf());
  auto Tf = transform_symmetric(F);
  CHECK(Tf.transformed);
  CHECK(Tf.ring->vars() == std::vector<std::string>{"s", "t", "u", "v", "ev", "ew", "r"});
  auto back = untransform_symmetric(Tf);
  CHECK(back.omega == F.omega);
}

TEST_CASE("stationarity equations are scaled gradients (finite-difference property)") {
  auto F = transform_symmetric(build_energy_functional(uhf()));
  auto S = stationarity_system(F);
  REQUIRE(S.polys.size() == 7);
  std::vector<std::string> order{"t", "s", "u", "v", "ev", "ew", "r"};
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> N(-20, 20);
  Rational h(1, 100000);
  for (int trial = 0; trial < 10; ++trial) {
    std::map<std::string, Rational> pt;
    for (auto& v : F.ring->vars()) pt[v] = Rational(N(rng), 10);
    pt["r"] = Rational(7, 5) + Rational(N(rng), 100);
    for (auto& p : pt) p.second.canonicalize();
    for (size_t i = 0; i < order.size(); ++i) {
      CHECK(S.labels[i] == "dOmega/d" + order[i]);
      auto up = pt, dn = pt;
      up[order[i]] += h;
      dn[order[i]] -= h;
      Rational fd = 1000 * (evaluate(F.omega, up) - evaluate(F.omega, dn)) / (2 * h);
      Rational an = evaluate(S.polys[i], pt);
      CHECK(abs_q(fd - an) < Rational(1, 1000));
    }
  }
}

TEST_CASE("constraints") {
  auto S = stationarity_system(transform_symmetric(build_energy_functional(uhf())));
  auto fx = apply_constraint(S, Constraint::fixed_distance(Rational(7, 5)));
  CHECK(fx.polys.back() == parse_polynomial("5*r - 7", fx.ring));
  CHECK(std::find(fx.labels.begin(), fx.labels.end(), "dOmega/dr") == fx.labels.end());
  CHECK_THROWS_AS(apply_constraint(S, Constraint::fixed_distance(Rational(-1))), DomainError);

  auto gs = apply_constraint(S, Constraint::ground_state());
  CHECK(gs.ring->index_of("s") < 0);
  CHECK(gs.ring->index_of("v") < 0);
  for (auto& p : gs.polys) CHECK_FALSE(p.is_zero());

  CHECK_THROWS_AS(apply_constraint(S, Constraint::gap_target(Rational(9, 10))), UsageError);
  CHECK_THROWS_AS(apply_constraint(S, Constraint::stability()), UsageError);  // dOmega/dr already present
  auto st = apply_constraint(fx, Constraint::stability());
  CHECK(st.polys.size() == fx.polys.size() + 1);
}

TEST_CASE("RHF systems") {
  HF2Config c;
  c.method = Method::RHF;
  auto inv = build_rhf_inverse_system(c, Rational(9, 10));
  CHECK(inv.ring->vars() == std::vector<std::string>{"s", "t", "eocc", "eunocc", "r"});
  CHECK(inv.system().size() == 5);  // the orthogonality relation vanishes identically
  auto orb = build_rhf_orbital_system(c, Rational(7, 5));
  CHECK(orb.ring->index_of("r") < 0);
  auto opt = build_rhf_optimization_system(c);
  CHECK(opt.ring->vars() == std::vector<std::string>{"t", "ev", "r"});
  CHECK(opt.ring->kind() == OrderKind::Grevlex);
  CHECK(opt.system().size() == 3);
  // every equation is the UHF ground-state system restricted to u = t, ew = ev
  auto gs = ground_state_system(uhf());
  std::map<std::string, Polynomial> b{{"u", Polynomial::variable(opt.ring, "t")},
                                      {"ew", Polynomial::variable(opt.ring, "ev")}};
  for (auto& p : gs.system()) {
    auto q = substitute(p, b, opt.ring);
    if (q.is_zero()) continue;
    bool found = false;
    for (auto& o : opt.polys) found = found || equal_up_to_positive_scalar(o.primitive(), q.primitive()) ||
                                      equal_up_to_positive_scalar(o.primitive(), (-q).primitive());
    CHECK(found);
  }
}

TEST_CASE("fixed-distance solutions: residuals, energies and ground-state minimality") {
  PipelineOptions o;
  auto S = fixed_distance_system(o.config, Rational(7, 5));
  auto run = run_triangular(S, o);
  REQUIRE(run.report.solutions.size() == 16);
  BigFloat emin = 1e9;
  PrecisionScope ps(256);
  for (auto& s : run.report.solutions) {
    CHECK(max_residual(S.system(), s.values) < BigFloat("1e-6"));
    BigFloat e = total_energy(s, S, o.solve.tol);
    if (e < emin) emin = e;
  }
  // the closed-shell state is the strict minimum
  for (auto& s : run.report.solutions) {
    BigFloat e = total_energy(s, S, o.solve.tol);
    bool closed = abs(s.values.at("s")) < BigFloat("1e-12") && abs(s.values.at("v")) < BigFloat("1e-12") &&
                  abs(s.values.at("ev") - s.values.at("ew")) < BigFloat("1e-12");
    if (closed && s.values.at("ev") < 0) CHECK(abs(e - emin) < BigFloat("1e-20"));
    else CHECK(e > emin + BigFloat("0.1"));
  }
  RealSolution bogus = run.report.solutions[0];
  bogus.values["t"] += 1;
  CHECK_THROWS_AS(total_energy(bogus, S, o.solve.tol), DomainError);
}

TEST_CASE("deviation and eigenvalue curves") {
  HF2Config c;
  auto d = deviation_curve(c, {Rational(7, 5), Rational(3)});
  REQUIRE(d.size() == 2);
  CHECK(d[0].deviation < BigFloat("0.05"));  // inside the band where the expansion is trusted
  CHECK(d[1].deviation > BigFloat("0.05"));
  CHECK_THROWS_AS(deviation_curve(c, {Rational(0)}), DomainError);
  c.method = Method::RHF;
  auto e = eigen_curve(c, {Rational(13, 10), Rational(7, 5), Rational(3, 2)});
  REQUIRE(e.size() == 3);
  for (auto& p : e) {
    CHECK(p.found);
    CHECK(p.e_occ < 0);
    CHECK(p.e_unocc > p.e_occ);
  }
  // gap narrows as the bond stretches
  CHECK(e[0].e_unocc - e[0].e_occ > e[2].e_unocc - e[2].e_occ);
}
