#include "h2sn/upoly.hpp"

#include <algorithm>

namespace h2sn {

void trim(UPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const UPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (sgn(p[i]) != 0) return i;
  return -1;
}

UPoly upoly_from(const Polynomial& p, int var) {
  UPoly out(p.degree(var) + 1, Rational(0));
  for (auto& t : p.terms()) {
    if (t.m.deg != t.m.e[var]) throw UsageError("polynomial is not univariate in " + p.ring()->vars()[var]);
    out[t.m.e[var]] += t.c;
  }
  trim(out);
  return out;
}

Polynomial upoly_to(const UPoly& p, const RingPtr& ring, int var) {
  std::vector<Term> ts;
  for (size_t k = 0; k < p.size(); ++k) {
    if (sgn(p[k]) == 0) continue;
    Monomial m;
    m.set(var, static_cast<uint16_t>(k));
    ts.push_back({m, p[k]});
  }
  return Polynomial::from_terms(ring, std::move(ts));
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

UPoly monic(const UPoly& p) {
  UPoly out = p;
  trim(out);
  if (out.empty()) return out;
  Rational inv = 1 / out.back();
  for (auto& c : out) c *= inv;
  return out;
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

void divmod(const UPoly& a, const UPoly& b_in, UPoly& q, UPoly& r) {
  UPoly b = b_in;
  trim(b);
  if (b.empty()) throw DomainError("division by the zero polynomial");
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  Rational inv = 1 / b.back();
  while (!r.empty() && r.size() >= b.size()) {
    size_t shift = r.size() - b.size();
    Rational f = r.back() * inv;
    q[shift] = f;
    for (size_t j = 0; j < b.size(); ++j) r[shift + j] -= f * b[j];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = monic(r);
  }
  return monic(a);
}

UPoly squarefree_part(const UPoly& p) {
  UPoly g = gcd(p, derivative(p));
  UPoly q, r;
  divmod(p, g, q, r);
  return monic(q);
}

std::vector<UPoly> squarefree_factors(const UPoly& p) {
  // Yun's algorithm
  std::vector<UPoly> out;
  UPoly f = monic(p);
  if (degree(f) <= 0) return out;
  UPoly fd = derivative(f);
  UPoly a = gcd(f, fd);
  UPoly b, c, d, rem;
  divmod(f, a, b, rem);
  divmod(fd, a, c, rem);
  for (;;) {
    UPoly bd = derivative(b);
    d = c;
    for (size_t k = 0; k < bd.size(); ++k) {
      if (k >= d.size()) d.push_back(Rational(0));
      d[k] -= bd[k];
    }
    trim(d);
    UPoly fac = gcd(b, d);
    out.push_back(fac);
    UPoly nb, nc;
    divmod(b, fac, nb, rem);
    if (degree(nb) <= 0) break;
    divmod(d, fac, nc, rem);
    b = nb;
    c = nc;
  }
  return out;
}

Rational eval(const UPoly& p, const Rational& x) {
  Rational acc = 0;
  for (size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

BigFloat eval(const UPoly& p, const BigFloat& x) {
  BigFloat acc = 0;
  for (size_t k = p.size(); k-- > 0;) acc = acc * x + to_bigfloat(p[k]);
  return acc;
}

int sign_at(const UPoly& p, const Rational& x) { return sgn(eval(p, x)); }

std::vector<UPoly> sturm_sequence(const UPoly& p_in) {
  UPoly p = p_in;
  trim(p);
  std::vector<UPoly> seq;
  if (p.empty()) return seq;
  // work with primitive-like monic scalings; signs must be preserved, so scale by positive factors only
  auto positive_normalize = [](UPoly u) {
    trim(u);
    if (u.empty()) return u;
    Rational s = u.back();
    if (sgn(s) < 0) s = -s;
    for (auto& c : u) c /= s;
    return u;
  };
  seq.push_back(positive_normalize(p));
  UPoly d = derivative(p);
  if (d.empty()) return seq;
  seq.push_back(positive_normalize(d));
  for (;;) {
    UPoly q, r;
    divmod(seq[seq.size() - 2], seq.back(), q, r);
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(positive_normalize(r));
  }
  return seq;
}

int sign_changes_at(const std::vector<UPoly>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (auto& s : seq) {
    int v = sign_at(s, x);
    if (v == 0) continue;
    if (last && v != last) ++changes;
    last = v;
  }
  return changes;
}

int sign_changes_at_infinity(const std::vector<UPoly>& seq, bool positive) {
  int changes = 0, last = 0;
  for (auto& s : seq) {
    int d = degree(s);
    if (d < 0) continue;
    int v = sgn(s[d]);
    if (!positive && (d % 2)) v = -v;
    if (last && v != last) ++changes;
    last = v;
  }
  return changes;
}

int count_roots(const std::vector<UPoly>& seq, const Rational& lo, const Rational& hi) {
  return sign_changes_at(seq, lo) - sign_changes_at(seq, hi);
}

Rational cauchy_bound(const UPoly& p) {
  int d = degree(p);
  if (d <= 0) return Rational(1);
  Rational m = 0;
  for (int k = 0; k < d; ++k) m = std::max(m, abs_q(p[k] / p[d]));
  return m + 1;
}

}  // namespace h2sn
