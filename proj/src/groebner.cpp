#include "h2sn/groebner.hpp"

#include <algorithm>

namespace h2sn {

namespace {

struct ITerm {
  Monomial m;
  Integer c;
};
using IPoly = std::vector<ITerm>;  // descending, nonzero coefficients

void make_primitive(IPoly& p) {
  if (p.empty()) return;
  Integer g = 0;
  for (auto& t : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(p[0].c) < 0) g = -g;
  if (g != 1)
    for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
}

IPoly to_ipoly(const Polynomial& p, const RingPtr& ring) {
  Polynomial q = p.in_ring(ring).primitive();
  IPoly out;
  out.reserve(q.size());
  for (auto& t : q.terms()) out.push_back({t.m, t.c.get_num()});
  return out;
}

Polynomial from_ipoly(const RingPtr& ring, const IPoly& p) {
  std::vector<Term> ts;
  ts.reserve(p.size());
  for (auto& t : p) ts.push_back({t.m, Rational(t.c)});
  return Polynomial::from_terms(ring, std::move(ts));
}

// a*p[from..] - b*m*g[1..]   (leading terms assumed to cancel)
IPoly combine(const IPoly& p, size_t from, const Integer& a, const Integer& b, const Monomial& m, const IPoly& g,
              const Ring& R) {
  IPoly out;
  out.reserve(p.size() - from + g.size());
  size_t i = from, j = 1;
  const bool a1 = a == 1;
  Integer tmp;
  while (i < p.size() && j < g.size()) {
    Monomial gm = g[j].m * m;
    int c = R.compare(p[i].m, gm);
    if (c > 0) {
      out.push_back({p[i].m, a1 ? p[i].c : Integer(p[i].c * a)});
      ++i;
    } else if (c < 0) {
      out.push_back({gm, Integer(-(g[j].c * b))});
      ++j;
    } else {
      tmp = p[i].c * a - g[j].c * b;
      if (sgn(tmp) != 0) out.push_back({gm, tmp});
      ++i;
      ++j;
    }
  }
  for (; i < p.size(); ++i) out.push_back({p[i].m, a1 ? p[i].c : Integer(p[i].c * a)});
  for (; j < g.size(); ++j) out.push_back({g[j].m * m, Integer(-(g[j].c * b))});
  return out;
}

struct Reducer {
  const Ring& R;
  std::vector<const IPoly*> G;
  size_t max_terms = 0;

  const IPoly* find(const Monomial& m) const {
    const IPoly* best = nullptr;
    for (auto* g : G)
      if ((*g)[0].m.divides(m) && (!best || g->size() < best->size())) best = g;
    return best;
  }

  // full normal form up to a positive integer factor, primitive result
  IPoly nf(IPoly p) const {
    IPoly r;
    size_t at = 0, steps = 0;
    while (at < p.size()) {
      const IPoly* g = find(p[at].m);
      if (!g) {
        r.push_back(std::move(p[at]));
        ++at;
        continue;
      }
      Integer a = (*g)[0].c, b = p[at].c, d;
      mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      if (d != 1) {
        mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t());
      }
      if (sgn(a) < 0) {
        a = -a;
        b = -b;
      }
      Monomial q = p[at].m / (*g)[0].m;
      p = combine(p, at + 1, a, b, q, *g, R);
      at = 0;
      if (a != 1)
        for (auto& t : r) t.c *= a;
      if (max_terms && p.size() > max_terms) throw BudgetError("polynomial size budget exceeded");
      if (++steps % 16 == 0) {
        Integer c = 0;
        for (auto& t : r) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), t.c.get_mpz_t());
        for (auto& t : p) {
          if (c == 1) break;
          mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), t.c.get_mpz_t());
        }
        if (c > 1) {
          for (auto& t : r) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
          for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
        }
      }
    }
    make_primitive(r);
    return r;
  }
};

IPoly spoly(const IPoly& f, const IPoly& g, const Ring& R) {
  Monomial L = f[0].m.lcm(g[0].m);
  Integer a = g[0].c, b = f[0].c, d;
  mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t());
  // a*(L/lm f)*f - b*(L/lm g)*g
  IPoly fs;
  Monomial mf = L / f[0].m;
  fs.reserve(f.size());
  for (auto& t : f) fs.push_back({t.m * mf, t.c});
  IPoly out = combine(fs, 1, a, b, L / g[0].m, g, R);
  make_primitive(out);
  return out;
}

struct Pair {
  int i, j;
  Monomial lcm;
};

}  // namespace

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const RingPtr& R = f.ring();
  return from_ipoly(R, spoly(to_ipoly(f, R), to_ipoly(g, R), *R));
}

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& G) {
  if (p.is_zero()) return p;
  const RingPtr& R = p.ring();
  std::vector<Polynomial> mon;
  for (auto& g : G)
    if (!g.is_zero()) mon.push_back(g.in_ring(R).monic());
  std::vector<Term> rem;
  Polynomial cur = p;
  while (!cur.is_zero()) {
    const Term lt = cur.lead();
    const Polynomial* div = nullptr;
    for (auto& g : mon)
      if (g.lm().divides(lt.m) && (!div || g.size() < div->size())) div = &g;
    if (div) {
      cur -= div->mul_term(lt.m / div->lm(), lt.c);
    } else {
      rem.push_back(lt);
      cur -= Polynomial::monomial(R, lt.m, lt.c);
    }
  }
  return Polynomial::from_terms(R, std::move(rem));
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& G) {
  return normal_form(p.in_ring(G.ring), G.polys);
}

GroebnerBasis groebner_basis(const PolySystem& F, const RingPtr& order, const GroebnerBudget& budget,
                             GroebnerStats* stats) {
  if (F.empty()) throw UsageError("empty polynomial system");
  const Ring& R = *order;
  GroebnerStats local;
  GroebnerStats& st = stats ? *stats : local;

  std::vector<IPoly> store;
  std::vector<int> alive;
  std::vector<Pair> B;
  Reducer red{R, {}, budget.max_poly_terms};

  auto trivial = [&]() {
    GroebnerBasis out{order, {Polynomial(order, Rational(1))}, true};
    return out;
  };

  auto refresh = [&]() {
    red.G.clear();
    for (int k : alive) red.G.push_back(&store[k]);
  };

  auto update = [&](IPoly h) {
    store.push_back(std::move(h));
    const int k = static_cast<int>(store.size()) - 1;
    const Monomial& hm = store[k][0].m;
    std::vector<Pair> C;
    for (int g : alive) C.push_back({g, k, store[g][0].m.lcm(hm)});
    st.pairs_created += C.size();
    std::vector<Pair> D;
    while (!C.empty()) {
      Pair p = C.back();
      C.pop_back();
      bool keep = store[p.i][0].m.coprime(hm);
      if (!keep) {
        keep = true;
        for (auto& q : C)
          if (q.lcm.divides(p.lcm)) {
            keep = false;
            break;
          }
        if (keep)
          for (auto& q : D)
            if (q.lcm.divides(p.lcm)) {
              keep = false;
              break;
            }
      }
      if (keep) D.push_back(p);
      else ++st.pruned;
    }
    std::vector<Pair> nb;
    for (auto& p : B) {
      if (!hm.divides(p.lcm) || store[p.i][0].m.lcm(hm) == p.lcm || store[p.j][0].m.lcm(hm) == p.lcm)
        nb.push_back(p);
      else
        ++st.pruned;
    }
    for (auto& p : D) {
      if (!store[p.i][0].m.coprime(hm)) nb.push_back(p);
      else ++st.pruned;
    }
    B.swap(nb);
    std::vector<int> na;
    for (int g : alive)
      if (!hm.divides(store[g][0].m)) na.push_back(g);
    na.push_back(k);
    alive.swap(na);
    refresh();
  };

  // inputs: reduce against what is already present
  std::vector<IPoly> inputs;
  for (auto& f : F) {
    if (f.is_zero()) continue;
    if (!f.ring()->same_vars(R)) throw UsageError("system polynomial over a different variable table");
    inputs.push_back(to_ipoly(f, order));
  }
  if (inputs.empty()) throw UsageError("system has only zero polynomials");
  std::sort(inputs.begin(), inputs.end(),
            [&](const IPoly& a, const IPoly& b) { return R.compare(a[0].m, b[0].m) < 0; });
  for (auto& f : inputs) {
    IPoly h = red.nf(std::move(f));
    if (h.empty()) continue;
    if (h[0].m.is_one()) return trivial();
    update(std::move(h));
  }

  while (!B.empty()) {
    // normal strategy: smallest lcm, ties by creation order
    size_t best = 0;
    for (size_t q = 1; q < B.size(); ++q) {
      int c = R.compare(B[q].lcm, B[best].lcm);
      if (c < 0 || (c == 0 && std::make_pair(B[q].j, B[q].i) < std::make_pair(B[best].j, B[best].i))) best = q;
    }
    Pair p = B[best];
    B.erase(B.begin() + static_cast<long>(best));
    ++st.pairs_reduced;
    if (budget.max_spairs && st.pairs_reduced > budget.max_spairs)
      throw BudgetError("S-pair budget exceeded (" + std::to_string(budget.max_spairs) + ")");
    IPoly s = spoly(store[p.i], store[p.j], R);
    if (s.empty()) {
      ++st.zero_reductions;
      continue;
    }
    IPoly h = red.nf(std::move(s));
    if (h.empty()) {
      ++st.zero_reductions;
      continue;
    }
    if (h[0].m.is_one()) return trivial();
    update(std::move(h));
  }

  // interreduce
  std::vector<IPoly> G;
  for (int k : alive) G.push_back(store[k]);
  std::sort(G.begin(), G.end(), [&](const IPoly& a, const IPoly& b) { return R.compare(a[0].m, b[0].m) < 0; });
  std::vector<IPoly> minimal;
  for (size_t a = 0; a < G.size(); ++a) {
    bool redundant = false;
    for (size_t b = 0; b < G.size() && !redundant; ++b)
      if (a != b && G[b][0].m.divides(G[a][0].m) && (!(G[b][0].m == G[a][0].m) || b < a)) redundant = true;
    if (!redundant) minimal.push_back(G[a]);
  }
  GroebnerBasis out{order, {}, true};
  std::vector<Polynomial> mins;
  for (auto& g : minimal) mins.push_back(from_ipoly(order, g));
  for (size_t a = 0; a < mins.size(); ++a) {
    std::vector<Polynomial> others;
    for (size_t b = 0; b < mins.size(); ++b)
      if (a != b) others.push_back(mins[b]);
    Polynomial lead = Polynomial::monomial(order, mins[a].lm(), mins[a].lc());
    Polynomial g = lead + normal_form(mins[a] - lead, others);
    out.polys.push_back(g.monic());
  }
  return out;
}

bool is_trivial_ideal(const GroebnerBasis& G) {
  return G.polys.size() == 1 && G.polys[0].is_constant() && !G.polys[0].is_zero();
}

bool is_zero_dimensional(const GroebnerBasis& G) {
  if (is_trivial_ideal(G)) throw UsageError("trivial ideal has no dimension");
  const int n = G.ring->nvars();
  for (int v = 0; v < n; ++v) {
    bool found = false;
    for (auto& g : G.polys) {
      const Monomial& m = g.lm();
      if (m.deg > 0 && m.e[v] == m.deg) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::vector<Monomial> standard_monomials(const GroebnerBasis& G) {
  if (!is_zero_dimensional(G)) throw DomainError("ideal is not zero-dimensional; staircase is infinite");
  const int n = G.ring->nvars();
  std::vector<int> bound(n, 0);
  for (auto& g : G.polys) {
    const Monomial& m = g.lm();
    for (int v = 0; v < n; ++v)
      if (m.deg > 0 && m.e[v] == m.deg) bound[v] = bound[v] ? std::min<int>(bound[v], m.deg) : m.deg;
  }
  std::vector<Monomial> out;
  Monomial cur;
  // odometer over the bounding box
  for (;;) {
    bool standard = true;
    for (auto& g : G.polys)
      if (g.lm().divides(cur)) {
        standard = false;
        break;
      }
    if (standard) out.push_back(cur);
    int v = 0;
    while (v < n) {
      if (cur.e[v] + 1 < bound[v]) {
        cur.set(v, static_cast<uint16_t>(cur.e[v] + 1));
        break;
      }
      cur.set(v, 0);
      ++v;
    }
    if (v == n) break;
  }
  const Ring& R = *G.ring;
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return R.compare(a, b) > 0; });
  return out;
}

bool ideal_contains(const GroebnerBasis& G, const Polynomial& p) { return normal_form(p, G).is_zero(); }

std::vector<Polynomial> elimination_part(const GroebnerBasis& G, int first_var) {
  std::vector<Polynomial> out;
  for (auto& g : G.polys) {
    bool ok = true;
    for (int v = 0; v < first_var && ok; ++v)
      if (g.degree(v) > 0) ok = false;
    if (ok) out.push_back(g);
  }
  return out;
}

GroebnerBasis saturate(const GroebnerBasis& J, const Polynomial& c, const GroebnerBudget& budget) {
  if (J.order() != OrderKind::Lex) throw UsageError("saturation expects a lex basis");
  std::string aux = "zsat";
  while (J.ring->index_of(aux) >= 0) aux += "x";
  std::vector<std::string> vars{aux};
  for (auto& v : J.ring->vars()) vars.push_back(v);
  RingPtr big = make_ring(vars, OrderKind::Lex);
  PolySystem F;
  for (auto& g : J.polys) F.push_back(g.in_ring(big));
  F.push_back(Polynomial(big, Rational(1)) - Polynomial::variable(big, aux) * c.in_ring(big));
  GroebnerBasis Gb = groebner_basis(F, big, budget);
  GroebnerBasis out{J.ring, {}, true};
  for (auto& g : Gb.polys)
    if (g.degree(0) == 0) out.polys.push_back(g.in_ring(J.ring));
  return out;
}

}  // namespace h2sn
