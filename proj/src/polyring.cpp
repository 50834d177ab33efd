#include "h2sn/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace h2sn {

std::string to_string(OrderKind k) { return k == OrderKind::Lex ? "lex" : "grevlex"; }

OrderKind parse_order(const std::string& s) {
  if (s == "lex") return OrderKind::Lex;
  if (s == "grevlex" || s == "degrevlex") return OrderKind::Grevlex;
  throw UsageError("unknown monomial order: " + s);
}

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint16_t>(e[i] + o.e[i]);
  r.deg = deg + o.deg;
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint16_t>(e[i] - o.e[i]);
  r.deg = deg - o.deg;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::max(e[i], o.e[i]);
    r.deg += r.e[i];
  }
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] && o.e[i]) return false;
  return true;
}

size_t MonomialHash::operator()(const Monomial& m) const {
  size_t h = 1469598103934665603ull;
  for (auto x : m.e) h = (h ^ x) * 1099511628211ull;
  return h;
}

Ring::Ring(std::vector<std::string> vars, OrderKind kind) : vars_(std::move(vars)), kind_(kind) {
  if (vars_.empty()) throw UsageError("variable table must be nonempty");
  if (static_cast<int>(vars_.size()) > kMaxVars) throw UsageError("too many variables");
  for (size_t i = 0; i < vars_.size(); ++i) {
    const auto& v = vars_[i];
    if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
      throw UsageError("bad variable name: " + v);
    for (char ch : v)
      if (!std::isalnum(static_cast<unsigned char>(ch))) throw UsageError("bad variable name: " + v);
    for (size_t j = 0; j < i; ++j)
      if (vars_[j] == v) throw UsageError("duplicate variable: " + v);
  }
}

int Ring::index_of(const std::string& name) const {
  for (int i = 0; i < nvars(); ++i)
    if (vars_[i] == name) return i;
  return -1;
}

int Ring::require(const std::string& name) const {
  int i = index_of(name);
  if (i < 0) throw UsageError("unknown variable: " + name);
  return i;
}

int Ring::compare(const Monomial& a, const Monomial& b) const {
  const int n = nvars();
  if (kind_ == OrderKind::Lex) {
    for (int i = 0; i < n; ++i)
      if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
    return 0;
  }
  if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  for (int i = n - 1; i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  return 0;
}

std::string Ring::monomial_string(const Monomial& m) const {
  std::string out;
  for (int i = 0; i < nvars(); ++i) {
    if (!m.e[i]) continue;
    if (!out.empty()) out += '*';
    out += vars_[i];
    if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
  }
  return out.empty() ? "1" : out;
}

RingPtr make_ring(std::vector<std::string> vars, OrderKind kind) {
  return std::make_shared<const Ring>(std::move(vars), kind);
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(RingPtr ring, const Rational& c) : ring_(std::move(ring)) {
  if (sgn(c) != 0) terms_.push_back({Monomial{}, c});
}

Polynomial Polynomial::variable(RingPtr ring, const std::string& name) {
  Monomial m;
  m.set(ring->require(name), 1);
  return monomial(std::move(ring), m, Rational(1));
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, const Rational& c) {
  Polynomial p(std::move(ring));
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  const Ring& R = *p.ring_;
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return R.compare(a.m, b.m) > 0; });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c += t.c;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().c) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().c) == 0) p.terms_.pop_back();
  return p;
}

Rational Polynomial::constant_value() const {
  if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
  return Rational(0);
}

const Term& Polynomial::lead() const {
  if (terms_.empty()) throw UsageError("leading term of zero polynomial");
  return terms_.front();
}

uint32_t Polynomial::total_degree() const {
  uint32_t d = 0;
  for (auto& t : terms_) d = std::max(d, t.m.deg);
  return d;
}

int Polynomial::degree(int var) const {
  int d = 0;
  for (auto& t : terms_) d = std::max<int>(d, t.m.e[var]);
  return d;
}

std::vector<int> Polynomial::support() const {
  std::vector<int> out;
  if (!ring_) return out;
  for (int i = 0; i < ring_->nvars(); ++i)
    if (degree(i) > 0) out.push_back(i);
  return out;
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (!ring_ || !o.ring_) throw UsageError("polynomial without ring");
  if (ring_ != o.ring_ && !(*ring_ == *o.ring_)) throw UsageError("mismatched variable tables");
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.c = -t.c;
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_ring(o);
  Polynomial out(ring_);
  out.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  const Ring& R = *ring_;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = R.compare(terms_[i].m, o.terms_[j].m);
    if (c > 0) {
      out.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      out.terms_.push_back(o.terms_[j++]);
    } else {
      Rational s = terms_[i].c + o.terms_[j].c;
      if (sgn(s) != 0) out.terms_.push_back({terms_[i].m, s});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) out.terms_.push_back(o.terms_[j]);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
  Polynomial out(ring_);
  if (sgn(c) == 0) return out;
  out.terms_.reserve(terms_.size());
  for (auto& t : terms_) out.terms_.push_back({t.m * m, t.c * c});
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_ring(o);
  if (is_zero() || o.is_zero()) return Polynomial(ring_);
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].m, o.terms_[0].c);
  if (terms_.size() == 1) return o.mul_term(terms_[0].m, terms_[0].c);
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (auto& a : terms_)
    for (auto& b : o.terms_) acc[a.m * b.m] += a.c * b.c;
  std::vector<Term> ts;
  ts.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (sgn(c) != 0) ts.push_back({m, c});
  return from_terms(ring_, std::move(ts));
}

Polynomial Polynomial::operator*(const Rational& q) const { return mul_term(Monomial{}, q); }

Polynomial operator*(const Rational& q, const Polynomial& p) { return p * q; }

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result(ring_, Rational(1));
  Polynomial base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  if (ring_ && o.ring_ && !ring_->same_vars(*o.ring_)) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].m == o.terms_[i].m) || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

Polynomial Polynomial::in_ring(const RingPtr& target) const {
  if (ring_ == target) return *this;
  std::vector<int> map(ring_->nvars());
  for (int i = 0; i < ring_->nvars(); ++i) {
    map[i] = target->index_of(ring_->vars()[i]);
    if (map[i] < 0 && degree(i) > 0)
      throw UsageError("variable " + ring_->vars()[i] + " missing from target ring");
  }
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (auto& t : terms_) {
    Monomial m;
    for (int i = 0; i < ring_->nvars(); ++i)
      if (t.m.e[i]) m.set(map[i], t.m.e[i]);
    ts.push_back({m, t.c});
  }
  return from_terms(target, std::move(ts));
}

std::vector<Polynomial> Polynomial::coefficients_in(int var) const {
  std::vector<std::vector<Term>> buckets(degree(var) + 1);
  for (auto& t : terms_) {
    Monomial m = t.m;
    int k = m.e[var];
    m.set(var, 0);
    buckets[k].push_back({m, t.c});
  }
  std::vector<Polynomial> out;
  for (auto& b : buckets) out.push_back(from_terms(ring_, std::move(b)));
  return out;
}

Integer Polynomial::content_lcm_denominator() const {
  Integer l = 1;
  for (auto& t : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
  return l;
}

Polynomial Polynomial::primitive() const {
  if (is_zero()) return *this;
  Integer l = content_lcm_denominator();
  Integer g = 0;
  for (auto& t : terms_) {
    Integer n = t.c.get_num() * (l / t.c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational f(l, g);
  f.canonicalize();
  if (sgn(lc()) < 0) f = -f;
  return *this * f;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / lc();
  return *this * inv;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    Rational c = t.c;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (neg) out += '-';
    else if (i) out += '+';
    if (t.m.is_one()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + "*";
      out += ring_->monomial_string(t.m);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Polynomial poly_arith(ArithOp op, const Polynomial& p, const Polynomial& q) {
  switch (op) {
    case ArithOp::Add: return p + q;
    case ArithOp::Sub: return p - q;
    case ArithOp::Mul: return p * q;
    case ArithOp::Scale:
      if (!q.is_constant()) throw UsageError("scale needs a constant");
      if (p.ring() && q.ring() && !p.ring()->same_vars(*q.ring()))
        throw UsageError("mismatched variable tables");
      return p * q.constant_value();
  }
  throw UsageError("bad op");
}

Polynomial poly_arith(ArithOp op, const Polynomial& p, const Rational& q) {
  Polynomial c(p.ring(), q);
  if (op == ArithOp::Scale) return p * q;
  return poly_arith(op, p, c);
}

Polynomial differentiate(const Polynomial& p, int var) {
  std::vector<Term> ts;
  for (auto& t : p.terms()) {
    int k = t.m.e[var];
    if (!k) continue;
    Monomial m = t.m;
    m.set(var, static_cast<uint16_t>(k - 1));
    ts.push_back({m, t.c * k});
  }
  // lowering one exponent can reorder under grevlex, so re-sort
  return Polynomial::from_terms(p.ring(), std::move(ts));
}

Polynomial differentiate(const Polynomial& p, const std::string& var) {
  return differentiate(p, p.ring()->require(var));
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings,
                      const RingPtr& target) {
  const Ring& R = *p.ring();
  std::vector<const Polynomial*> img(R.nvars(), nullptr);
  std::vector<Polynomial> owned(R.nvars());
  for (int i = 0; i < R.nvars(); ++i) {
    auto it = bindings.find(R.vars()[i]);
    if (it != bindings.end()) {
      if (!it->second.ring()->same_vars(*target)) throw UsageError("binding over a different ring");
      owned[i] = it->second.in_ring(target);
    } else if (p.degree(i) > 0) {
      owned[i] = Polynomial::variable(target, R.vars()[i]);
    }
    img[i] = &owned[i];
  }
  // cache powers per variable
  std::vector<std::vector<Polynomial>> powers(R.nvars());
  auto power = [&](int v, int k) -> const Polynomial& {
    auto& pw = powers[v];
    if (pw.empty()) pw.push_back(Polynomial(target, Rational(1)));
    while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * *img[v]);
    return pw[k];
  };
  Polynomial out(target);
  for (auto& t : p.terms()) {
    Polynomial term(target, t.c);
    for (int i = 0; i < R.nvars() && !term.is_zero(); ++i)
      if (t.m.e[i]) term = term * power(i, t.m.e[i]);
    out += term;
  }
  return out;
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings) {
  return substitute(p, bindings, p.ring());
}

template <class T, class Conv>
static T eval_generic(const Polynomial& p, const std::map<std::string, T>& point, Conv conv) {
  const Ring& R = *p.ring();
  std::vector<std::vector<T>> powers(R.nvars());
  std::vector<const T*> val(R.nvars(), nullptr);
  for (int i = 0; i < R.nvars(); ++i) {
    if (p.degree(i) == 0) continue;
    auto it = point.find(R.vars()[i]);
    if (it == point.end()) throw UsageError("unbound variable: " + R.vars()[i]);
    val[i] = &it->second;
    powers[i].push_back(T(1));
    for (int k = 1; k <= p.degree(i); ++k) powers[i].push_back(T(powers[i].back() * *val[i]));
  }
  T sum(0);
  for (auto& t : p.terms()) {
    T term = conv(t.c);
    for (int i = 0; i < R.nvars(); ++i)
      if (t.m.e[i]) term *= powers[i][t.m.e[i]];
    sum += term;
  }
  return sum;
}

Rational evaluate(const Polynomial& p, const std::map<std::string, Rational>& point) {
  return eval_generic<Rational>(p, point, [](const Rational& q) { return q; });
}

BigFloat evaluate(const Polynomial& p, const std::map<std::string, BigFloat>& point) {
  return eval_generic<BigFloat>(p, point, [](const Rational& q) { return to_bigfloat(q); });
}

Polynomial evaluate_partial(const Polynomial& p, const std::map<std::string, Rational>& point) {
  std::map<std::string, Polynomial> b;
  for (auto& [k, v] : point)
    if (p.ring()->index_of(k) >= 0) b.emplace(k, Polynomial(p.ring(), v));
  return substitute(p, b);
}

bool equal_up_to_positive_scalar(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.size() != b.size()) return false;
  Rational f = b.lc() / a.lc();
  if (sgn(f) <= 0) return false;
  return a * f == b;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser: sum := term {(+|-) term}; term := factor {(*|/) factor};
// factor := unary [^ int]; unary := [-|+] primary; primary := number | name | ( sum )

namespace {

struct Parser {
  const std::string& s;
  const RingPtr& ring;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw UsageError("polynomial parse error at " + std::to_string(pos) + ": " + what + " in '" + s + "'");
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  Polynomial sum() {
    Polynomial acc = term();
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }
  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      if (eat('*')) {
        acc *= factor();
      } else if (eat('/')) {
        Polynomial d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant");
        acc = acc * (Rational(1) / d.constant_value());
      } else {
        return acc;
      }
    }
  }
  Polynomial factor() {
    Polynomial base = unary();
    if (eat('^')) {
      skip();
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(s.substr(start, pos - start))));
    }
    return base;
  }
  Polynomial unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }
  Polynomial primary() {
    skip();
    if (pos >= s.size()) fail("unexpected end");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Polynomial p = sum();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) ++pos;
      if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E') && pos + 1 < s.size() &&
          (std::isdigit(static_cast<unsigned char>(s[pos + 1])) || s[pos + 1] == '-' || s[pos + 1] == '+')) {
        ++pos;
        if (s[pos] == '-' || s[pos] == '+') ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      }
      return Polynomial(ring, parse_rational(s.substr(start, pos - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
      std::string name = s.substr(start, pos - start);
      if (ring->index_of(name) < 0) fail("unknown variable '" + name + "'");
      return Polynomial::variable(ring, name);
    }
    fail(std::string("unexpected '") + c + "'");
  }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const RingPtr& ring) {
  Parser p{text, ring};
  Polynomial out = p.sum();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return out;
}

}  // namespace h2sn
