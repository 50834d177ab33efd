#include "h2sn/hf2model.hpp"

#include "h2sn/triangular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>

namespace h2sn {

std::string to_string(Method m) { return m == Method::UHF ? "UHF" : "RHF"; }

std::string to_string(Role r) {
  switch (r) {
    case Role::Coefficient: return "coefficient";
    case Role::Multiplier: return "multiplier";
    case Role::Geometry: return "geometry";
    case Role::Target: return "target";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// integrals

const SymExpr& IntegralTable::at(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) throw UsageError("no integral named " + key);
  return it->second;
}

namespace {

// gmpxx does not canonicalize Rational(n, d)
Rational canon(Rational q) {
  q.canonicalize();
  return q;
}

HF2Config canon(HF2Config c) {
  c.center = canon(c.center);
  c.grid = canon(c.grid);
  c.zeta = canon(c.zeta);
  return c;
}

bool perfect_square(const Rational& q) {
  return sgn(q) >= 0 && mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

Rational exact_sqrt(const Rational& q) {
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return Rational(n, d);
}

}  // namespace

SymExpr coulomb_integral(const Rational& za, const Rational& zb, const Rational& zc, const Rational& zd,
                         const SymExpr& R) {
  if (sgn(za) <= 0 || sgn(zb) <= 0 || sgn(zc) <= 0 || sgn(zd) <= 0)
    throw DomainError("orbital exponents must be positive");
  const Rational al = za + zb, be = zc + zd;
  // total charges of the two (unnormalized) densities
  Rational p = za * zb * zc * zd;
  Rational p3 = p * p * p;
  SymExpr pref = perfect_square(p3) ? SymExpr(exact_sqrt(p3)) : sqrt(SymExpr(p3));
  pref = pref * SymExpr(Rational(64) / (al * al * al * be * be * be));
  SymExpr J;
  if (al == be) {
    SymExpr poly = (SymExpr(al * al) * R * R + SymExpr(9 * al) * R + SymExpr(33)) * SymExpr(al / 48);
    J = SymExpr(1) / R - exp(SymExpr(-al) * R) * (SymExpr(1) / R + poly);
  } else {
    auto P = [](const Rational& x, int n) {
      Rational r = 1;
      for (int i = 0; i < n; ++i) r *= x;
      return r;
    };
    Rational half(1, 2);
    SymExpr cb = SymExpr(-half * P(al, 6) * be + half * P(al, 4) * P(be, 3)) * R +
                 SymExpr(-P(al, 6) + 3 * P(al, 4) * P(be, 2));
    SymExpr ca = SymExpr(-half * P(al, 3) * P(be, 4) + half * al * P(be, 6)) * R +
                 SymExpr(-3 * P(al, 2) * P(be, 4) + P(be, 6));
    Rational den = P(al * al - be * be, 3);
    J = SymExpr(1) / R +
        (cb * exp(SymExpr(-be) * R) + ca * exp(SymExpr(-al) * R)) / (SymExpr(den) * R);
  }
  return pref * J;
}

IntegralTable build_integral_table(const HF2Config& config) {
  if (config.zeta != 1) throw UsageError("only unit orbital exponents are supported");
  IntegralTable T;
  SymExpr R = SymExpr::var(T.var);
  SymExpr one(1), em = exp(-R), e2 = exp(SymExpr(-2) * R), e3 = exp(SymExpr(-3) * R);
  auto q = [](long n, long d) { return SymExpr(Rational(n, d)); };
  SymExpr S = em * (one + R + R * R / SymExpr(3));
  SymExpr Sp = exp(R) * (one - R + R * R / SymExpr(3));
  auto& E = T.entries;
  E["S"] = S;
  E["T_AA"] = q(1, 2);
  E["T_AB"] = q(1, 2) * em * (one + R - R * R / SymExpr(3));
  E["V_AA_A"] = SymExpr(-1);
  E["V_AA_B"] = -one / R + e2 * (one + one / R);
  E["V_AB"] = -em * (one + R);
  E["hAA"] = E["T_AA"] + E["V_AA_A"] + E["V_AA_B"];
  E["hAB"] = E["T_AB"] + SymExpr(2) * E["V_AB"];
  E["AAAA"] = q(5, 8);
  E["AABB"] = coulomb_integral(1, 1, 1, 1, R);
  E["AAAB"] = em * (R + q(1, 8) + q(5, 16) / R) - e3 * (q(1, 8) + q(5, 16) / R);
  SymExpr g = SymExpr::euler_gamma();
  E["ABAB"] = q(1, 5) * (-e2 * (q(-25, 8) + q(23, 4) * R + SymExpr(3) * R * R + R * R * R / SymExpr(3)) +
                         SymExpr(6) / R *
                             (S * S * (g + log(R)) + Sp * Sp * ei(SymExpr(-4) * R) -
                              SymExpr(2) * S * Sp * ei(SymExpr(-2) * R)));
  E["nuc"] = one / R;
  return T;
}

// ---------------------------------------------------------------------------
// integral forms

void IntegralForm::add(const Polynomial& p, const std::string& key) {
  if (!(*p.ring() == *ring_)) throw UsageError("integral form: ring mismatch");
  auto it = parts_.find(key);
  if (it == parts_.end()) parts_.emplace(key, p);
  else it->second += p;
}

Polynomial IntegralForm::expand(const IntegralTable& table, const HF2Config& config_in, const RingPtr& out) const {
  const HF2Config config = canon(config_in);
  if (sgn(config.center) <= 0) throw DomainError("expansion center must be positive");
  if (config.taylor_degree < 0) throw UsageError("taylor degree must be >= 0");
  PrecisionScope scope(config.precision_bits);
  const int n = config.taylor_degree + 1;
  const int ri = ring_->require(table.var);
  std::unordered_map<Monomial, std::vector<BigFloat>, MonomialHash> acc;
  for (auto& [key, part] : parts_) {
    std::vector<BigFloat> series(n, BigFloat(0));
    if (key.empty()) {
      series[0] = 1;
    } else {
      series = shift_to_origin(
          taylor_coefficients(table.at(key), table.var, config.center, config.taylor_degree, config.precision_bits),
          config.center);
    }
    for (auto& t : part.terms()) {
      if (t.m[ri]) throw UsageError("integral form parts must not involve " + table.var);
      auto& v = acc[t.m];
      if (v.empty()) v.assign(n, BigFloat(0));
      BigFloat w = to_bigfloat(t.c);
      for (int j = 0; j < n; ++j) v[j] += w * series[j];
    }
  }
  std::vector<Term> terms;
  for (auto& [m, v] : acc) {
    for (int j = 0; j < n; ++j) {
      Rational c = rationalize(v[j], config.grid, config.rounding);
      if (sgn(c) == 0) continue;
      Monomial mm = m;
      mm.set(ri, static_cast<uint16_t>(j));
      terms.push_back({mm, c});
    }
  }
  Polynomial P = Polynomial::from_terms(ring_, std::move(terms));
  if (*out == *ring_) return P;
  return substitute(P, {}, out);
}

BigFloat IntegralForm::exact_value(const IntegralTable& table, const std::map<std::string, BigFloat>& point) const {
  auto it = point.find(table.var);
  if (it == point.end()) throw UsageError("unbound variable: " + table.var);
  std::map<std::string, BigFloat> rp{{table.var, it->second}};
  BigFloat sum = 0;
  for (auto& [key, part] : parts_) {
    BigFloat w = evaluate(part, point);
    sum += key.empty() ? w : BigFloat(w * table.at(key).eval(rp));
  }
  return sum;
}

// ---------------------------------------------------------------------------
// energy functionals

namespace {

// AO index 0 = A, 1 = B; two-electron integral (ij|kl) classified by symmetry
std::string eri_key(int i, int j, int k, int l) {
  int nb = i + j + k + l;
  if (nb == 0 || nb == 4) return "AAAA";
  if (nb == 1 || nb == 3) return "AAAB";
  if (i == j && k == l) return "AABB";
  return "ABAB";
}
std::string h_key(int i, int j) { return i == j ? "hAA" : "hAB"; }
std::string s_key(int i, int j) { return i == j ? "" : "S"; }

Role role_of(const std::string& v) {
  if (v == "r") return Role::Geometry;
  if (v == "ev" || v == "ew" || v == "eocc" || v == "eunocc") return Role::Multiplier;
  if (v == "Egap") return Role::Target;
  return Role::Coefficient;
}

std::map<std::string, Role> roles_for(const Ring& R) {
  std::map<std::string, Role> m;
  for (auto& v : R.vars()) m[v] = role_of(v);
  return m;
}

Rational scale_of(const HF2Config& c) { return Rational(1) / c.grid; }

// -e (sum_ij c_i c_j S_ij - 1)
void add_normalization(IntegralForm& F, const Polynomial& e, const std::array<Polynomial, 2>& co, const Rational& k) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) F.add(e * co[i] * co[j] * Rational(-k), s_key(i, j));
  F.add(e * k, "");
}

struct RhfForms {
  RingPtr ao;
  IntegralForm occ, vir, ortho;
};

RhfForms rhf_forms() {
  auto R = make_ring({"a", "b", "c", "d", "eocc", "eunocc", "r"}, OrderKind::Lex);
  RhfForms f{R, IntegralForm(R), IntegralForm(R), IntegralForm(R)};
  std::array<Polynomial, 2> co{Polynomial::variable(R, "a"), Polynomial::variable(R, "b")};
  std::array<Polynomial, 2> cv{Polynomial::variable(R, "c"), Polynomial::variable(R, "d")};
  Polynomial eo = Polynomial::variable(R, "eocc"), eu = Polynomial::variable(R, "eunocc");
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) f.occ.add(co[i] * co[j] * Rational(2), h_key(i, j));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) f.occ.add(co[i] * co[j] * co[k] * co[l], eri_key(i, j, k, l));
  f.occ.add(Polynomial(R, 1), "nuc");
  add_normalization(f.occ, eo, co, 2);
  // virtual orbital energy in the field of the doubly occupied orbital
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) {
      Polynomial cc = cv[m] * cv[n];
      f.vir.add(cc, h_key(m, n));
      for (int l = 0; l < 2; ++l)
        for (int s = 0; s < 2; ++s) {
          Polynomial w = cc * co[l] * co[s];
          f.vir.add(w * Rational(2), eri_key(m, n, l, s));
          f.vir.add(w * Rational(-1), eri_key(m, l, n, s));
        }
    }
  add_normalization(f.vir, eu, cv, 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) f.ortho.add(co[i] * cv[j], s_key(i, j));
  return f;
}

// a=b=s (bonding), c=-d=t (antibonding)
Polynomial to_closed_shell(const Polynomial& p, const RingPtr& target) {
  Polynomial s = Polynomial::variable(target, "s"), t = Polynomial::variable(target, "t");
  return substitute(p, {{"a", s}, {"b", s}, {"c", t}, {"d", -t}}, target);
}

RingPtr drop_vars(const Ring& R, const std::vector<std::string>& drop, OrderKind kind) {
  std::vector<std::string> vs;
  for (auto& v : R.vars())
    if (std::find(drop.begin(), drop.end(), v) == drop.end()) vs.push_back(v);
  return make_ring(vs, kind);
}

Polynomial cleared(const Polynomial& p) { return p.is_zero() ? p : p.primitive(); }


}  // namespace

IntegralForm uhf_integral_form() {
  auto R = make_ring({"a", "b", "c", "d", "ev", "ew", "r"}, OrderKind::Lex);
  IntegralForm F(R);
  std::array<Polynomial, 2> up{Polynomial::variable(R, "a"), Polynomial::variable(R, "b")};
  std::array<Polynomial, 2> dn{Polynomial::variable(R, "c"), Polynomial::variable(R, "d")};
  for (auto* co : {&up, &dn})
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) F.add((*co)[i] * (*co)[j], h_key(i, j));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) F.add(up[i] * up[j] * dn[k] * dn[l], eri_key(i, j, k, l));
  F.add(Polynomial(R, 1), "nuc");
  add_normalization(F, Polynomial::variable(R, "ev"), up, 1);
  add_normalization(F, Polynomial::variable(R, "ew"), dn, 1);
  return F;
}

EnergyFunctional build_energy_functional(const HF2Config& config) {
  auto table = build_integral_table(config);
  EnergyFunctional F;
  F.method = config.method;
  F.scale = scale_of(config);
  if (config.method == Method::UHF) {
    auto form = uhf_integral_form();
    F.ring = form.ring();
    F.omega = form.expand(table, config, F.ring);
  } else {
    // closed-shell total energy with its normalization multiplier
    auto f = rhf_forms();
    F.ring = make_ring({"s", "t", "eocc", "eunocc", "r"}, OrderKind::Lex);
    F.omega = to_closed_shell(f.occ.expand(table, config, f.ao), F.ring);
    F.transformed = true;
  }
  F.roles = roles_for(*F.ring);
  return F;
}

EnergyFunctional transform_symmetric(const EnergyFunctional& F) {
  const Ring& R = *F.ring;
  for (auto v : {"a", "b", "c", "d"})
    if (R.index_of(v) < 0) throw UsageError(std::string("transform needs variable ") + v);
  std::vector<std::string> vs{"s", "t", "u", "v"};
  for (auto& v : R.vars())
    if (v != "a" && v != "b" && v != "c" && v != "d") vs.push_back(v);
  auto T = make_ring(vs, R.kind());
  auto X = [&](const char* n) { return Polynomial::variable(T, n); };
  EnergyFunctional out = F;
  out.ring = T;
  out.omega = substitute(F.omega, {{"a", X("t") + X("s")}, {"b", X("t") - X("s")}, {"c", X("u") + X("v")},
                                   {"d", X("u") - X("v")}},
                         T);
  out.transformed = true;
  out.roles = roles_for(*T);
  return out;
}

EnergyFunctional untransform_symmetric(const EnergyFunctional& F) {
  const Ring& R = *F.ring;
  for (auto v : {"s", "t", "u", "v"})
    if (R.index_of(v) < 0) throw UsageError(std::string("inverse transform needs variable ") + v);
  std::vector<std::string> vs{"a", "b", "c", "d"};
  for (auto& v : R.vars())
    if (v != "s" && v != "t" && v != "u" && v != "v") vs.push_back(v);
  auto T = make_ring(vs, R.kind());
  auto X = [&](const char* n) { return Polynomial::variable(T, n); };
  Rational h(1, 2);
  EnergyFunctional out = F;
  out.ring = T;
  out.omega = substitute(F.omega, {{"t", (X("a") + X("b")) * h}, {"s", (X("a") - X("b")) * h},
                                   {"u", (X("c") + X("d")) * h}, {"v", (X("c") - X("d")) * h}},
                         T);
  out.transformed = false;
  out.roles = roles_for(*T);
  return out;
}

PolySystem LabeledSystem::system() const {
  PolySystem out;
  for (auto& p : polys)
    if (!p.is_zero()) out.push_back(p);
  return out;
}

LabeledSystem stationarity_system(const EnergyFunctional& F) {
  LabeledSystem S;
  S.ring = F.ring;
  S.method = F.method;
  S.energy = F.omega;
  std::vector<std::string> order;
  const Ring& R = *F.ring;
  if (R.index_of("t") >= 0 && R.index_of("s") >= 0 && R.index_of("u") >= 0) {
    // combined derivatives: d/dt = d/da + d/db, d/ds = d/da - d/db, likewise u, v
    for (auto v : {"t", "s", "u", "v"})
      if (R.index_of(v) >= 0) order.push_back(v);
    for (auto& v : R.vars())
      if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  } else {
    order = R.vars();
  }
  for (auto& v : order) {
    S.polys.push_back(differentiate(F.omega, v) * F.scale);
    S.labels.push_back("dOmega/d" + v);
  }
  return S;
}

LabeledSystem apply_constraint(const LabeledSystem& S, const Constraint& c_in) {
  Constraint c = c_in;
  c.value = canon(c.value);
  const Ring& R = *S.ring;
  LabeledSystem out;
  out.method = S.method;
  switch (c.kind) {
    case Constraint::Kind::FixedDistance: {
      int ri = R.index_of("r");
      if (ri < 0) throw UsageError("fixed distance needs variable r");
      if (sgn(c.value) <= 0) throw DomainError("bond length must be positive");
      out.ring = S.ring;
      out.energy = S.energy;
      for (size_t i = 0; i < S.polys.size(); ++i) {
        if (S.labels[i] == "dOmega/dr") continue;
        out.polys.push_back(S.polys[i]);
        out.labels.push_back(S.labels[i]);
      }
      out.polys.push_back(cleared(Polynomial::variable(S.ring, "r") - Polynomial(S.ring, c.value)));
      out.labels.push_back("r = " + to_string(c.value));
      return out;
    }
    case Constraint::Kind::GroundState: {
      if (S.method != Method::UHF || R.index_of("s") < 0 || R.index_of("v") < 0)
        throw UsageError("ground-state constraint needs the transformed UHF system");
      out.ring = drop_vars(R, {"s", "v"}, R.kind());
      std::map<std::string, Polynomial> zero{{"s", Polynomial(out.ring)}, {"v", Polynomial(out.ring)}};
      for (size_t i = 0; i < S.polys.size(); ++i) {
        Polynomial p = substitute(S.polys[i], zero, out.ring);
        if (p.is_zero()) continue;
        out.polys.push_back(p);
        out.labels.push_back(S.labels[i] + " |s=v=0");
      }
      if (S.energy) out.energy = substitute(*S.energy, zero, out.ring);
      return out;
    }
    case Constraint::Kind::GapTarget: {
      if (S.method != Method::RHF || R.index_of("eocc") < 0 || R.index_of("eunocc") < 0)
        throw UsageError("gap target needs the RHF system");
      out = S;
      out.polys.push_back(cleared(Polynomial::variable(S.ring, "eunocc") - Polynomial::variable(S.ring, "eocc") -
                                  Polynomial(S.ring, c.value)));
      out.labels.push_back("eunocc - eocc = " + to_string(c.value));
      return out;
    }
    case Constraint::Kind::Stability: {
      if (R.index_of("r") < 0) throw UsageError("stability needs variable r");
      if (!S.energy) throw UsageError("stability needs the energy functional");
      if (std::find(S.labels.begin(), S.labels.end(), "dOmega/dr") != S.labels.end())
        throw UsageError("system already contains dOmega/dr");
      out = S;
      out.polys.push_back(cleared(differentiate(*S.energy, "r")));
      out.labels.push_back("dOmega/dr");
      return out;
    }
  }
  throw UsageError("unknown constraint");
}

LabeledSystem build_rhf_orbital_system(const HF2Config& config, std::optional<Rational> fixed_r) {
  auto table = build_integral_table(config);
  auto f = rhf_forms();
  auto ring = make_ring({"s", "t", "eocc", "eunocc", "r"}, OrderKind::Lex);
  Polynomial occ = to_closed_shell(f.occ.expand(table, config, f.ao), ring);
  Polynomial vir = to_closed_shell(f.vir.expand(table, config, f.ao), ring);
  Polynomial ortho = to_closed_shell(f.ortho.expand(table, config, f.ao), ring);
  Rational k = scale_of(config);
  LabeledSystem S;
  S.ring = ring;
  S.method = Method::RHF;
  S.energy = occ;
  S.polys = {differentiate(occ, "s") * k, differentiate(vir, "t") * k, differentiate(occ, "eocc") * k,
             differentiate(vir, "eunocc") * k, ortho * k};
  S.labels = {"dOmega_occ/ds", "dOmega_unocc/dt", "dOmega_occ/deocc", "dOmega_unocc/deunocc", "<occ|unocc>"};
  if (fixed_r) {
    fixed_r = canon(*fixed_r);
    if (sgn(*fixed_r) <= 0) throw DomainError("bond length must be positive");
    auto R2 = drop_vars(*ring, {"r"}, OrderKind::Lex);
    std::map<std::string, Polynomial> b{{"r", Polynomial(R2, *fixed_r)}};
    for (auto& p : S.polys) p = substitute(p, b, R2);
    S.energy = substitute(*S.energy, b, R2);
    S.ring = R2;
  }
  return S;
}

LabeledSystem build_rhf_inverse_system(const HF2Config& config, const Rational& e_gap) {
  return apply_constraint(build_rhf_orbital_system(config), Constraint::gap_target(e_gap));
}

LabeledSystem build_rhf_optimization_system(const HF2Config& config) {
  HF2Config uhf = config;
  uhf.method = Method::UHF;
  auto gs = apply_constraint(stationarity_system(transform_symmetric(build_energy_functional(uhf))),
                             Constraint::ground_state());
  auto ring = make_ring({"t", "ev", "r"}, OrderKind::Grevlex);
  std::map<std::string, Polynomial> b{{"u", Polynomial::variable(ring, "t")},
                                      {"ew", Polynomial::variable(ring, "ev")}};
  LabeledSystem out;
  out.ring = ring;
  out.method = Method::RHF;
  for (size_t i = 0; i < gs.polys.size(); ++i) {
    Polynomial p = substitute(gs.polys[i], b, ring);
    if (p.is_zero()) continue;
    Polynomial c = p.primitive();
    bool dup = false;
    for (auto& q : out.polys) dup = dup || q.primitive() == c;
    if (dup) continue;
    out.polys.push_back(p);
    out.labels.push_back(gs.labels[i] + " |u=t,ew=ev");
  }
  if (gs.energy) out.energy = substitute(*gs.energy, b, ring);
  return out;
}

BigFloat total_energy(const RealSolution& sol, const LabeledSystem& S, const BigFloat& tol) {
  if (!S.energy) throw UsageError("system carries no energy functional");
  BigFloat res = max_residual(S.system(), sol.values);
  if (!(res < tol)) throw DomainError("solution residual " + to_string(res, 6) + " exceeds tolerance");
  return evaluate(*S.energy, sol.values);
}

// ---------------------------------------------------------------------------
// curves

std::vector<DeviationPoint> deviation_curve(const HF2Config& config, const std::vector<Rational>& r_grid_in) {
  std::vector<Rational> r_grid;
  for (auto& r : r_grid_in) r_grid.push_back(canon(r));
  HF2Config uhf = canon(config);
  uhf.method = Method::UHF;
  auto table = build_integral_table(uhf);
  auto form = uhf_integral_form();
  Polynomial omega = form.expand(table, uhf, form.ring());
  PrecisionScope scope(config.precision_bits);
  std::vector<DeviationPoint> out;
  for (auto& r : r_grid) {
    if (sgn(r) <= 0) throw DomainError("deviation curve needs r > 0");
    std::map<std::string, BigFloat> pt{{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}, {"ev", 0}, {"ew", 0},
                                       {"r", to_bigfloat(r)}};
    DeviationPoint d;
    d.r = r;
    d.taylor = evaluate(omega, pt);
    d.exact = form.exact_value(table, pt);
    d.deviation = abs(d.taylor - d.exact) / abs(d.exact);
    out.push_back(d);
  }
  return out;
}

std::vector<EigenPoint> eigen_curve(const HF2Config& config_in, const std::vector<Rational>& r_grid_in) {
  const HF2Config config = canon(config_in);
  std::vector<Rational> r_grid;
  for (auto& r : r_grid_in) r_grid.push_back(canon(r));
  std::vector<std::vector<std::pair<BigFloat, BigFloat>>> cands(r_grid.size());
  SolveOptions sopt;
  sopt.precision_bits = config.precision_bits;
  for (size_t i = 0; i < r_grid.size(); ++i) {
    auto S = build_rhf_orbital_system(config, r_grid[i]);
    auto G = groebner_basis(S.system(), S.ring);
    if (is_trivial_ideal(G)) continue;
    DecomposeOptions dopt;
    dopt.precision_bits = config.precision_bits;
    auto T = decompose_triangular(G, dopt);
    auto rep = solve_triangular_system(T, S.system(), sopt);
    for (auto& s : rep.solutions) cands[i].emplace_back(s.values.at("eocc"), s.values.at("eunocc"));
  }
  std::vector<EigenPoint> out(r_grid.size());
  for (size_t i = 0; i < r_grid.size(); ++i) out[i].r = r_grid[i];
  if (r_grid.empty()) return out;
  // start next to the expansion center on the lowest occupied eigenvalue, then follow the nearest branch
  std::vector<size_t> idx(r_grid.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return r_grid[a] < r_grid[b]; });
  size_t start = 0;
  for (size_t k = 1; k < idx.size(); ++k)
    if (abs_q(r_grid[idx[k]] - config.center) < abs_q(r_grid[idx[start]] - config.center)) start = k;
  auto pick = [&](size_t i, const EigenPoint* prev) {
    auto& c = cands[i];
    if (c.empty()) return;
    size_t best = 0;
    for (size_t k = 1; k < c.size(); ++k) {
      if (prev && prev->found) {
        auto dist = [&](size_t j) {
          BigFloat a = abs(c[j].first - prev->e_occ), b = abs(c[j].second - prev->e_unocc);
          return a > b ? a : b;
        };
        if (dist(k) < dist(best)) best = k;
      } else if (c[k].first < c[best].first) {
        best = k;
      }
    }
    out[i].found = true;
    out[i].e_occ = c[best].first;
    out[i].e_unocc = c[best].second;
  };
  pick(idx[start], nullptr);
  for (int dir : {1, -1}) {
    const EigenPoint* prev = &out[idx[start]];
    for (long k = static_cast<long>(start) + dir; k >= 0 && k < static_cast<long>(idx.size()); k += dir) {
      pick(idx[k], prev);
      if (out[idx[k]].found) prev = &out[idx[k]];
    }
  }
  return out;
}

}  // namespace h2sn
