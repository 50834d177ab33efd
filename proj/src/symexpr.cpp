#include "h2sn/symexpr.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <unordered_map>

namespace h2sn {

struct SymExpr::Node {
  Kind kind;
  Rational value;
  std::string name;
  std::vector<SymExpr> args;
  long ex = 0;
};

SymExpr::SymExpr() : SymExpr(Rational(0)) {}

SymExpr::SymExpr(const Rational& q) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = q;
  n_ = std::move(n);
}

SymExpr SymExpr::var(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = name;
  return SymExpr(std::shared_ptr<const Node>(std::move(n)));
}

SymExpr SymExpr::euler_gamma() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Gamma;
  return SymExpr(std::shared_ptr<const Node>(std::move(n)));
}

SymExpr SymExpr::make(Kind k, std::vector<SymExpr> args, long ex) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->args = std::move(args);
  n->ex = ex;
  return SymExpr(std::shared_ptr<const Node>(std::move(n)));
}

SymExpr::Kind SymExpr::kind() const { return n_->kind; }
const Rational& SymExpr::value() const { return n_->value; }
const std::string& SymExpr::name() const { return n_->name; }
const std::vector<SymExpr>& SymExpr::args() const { return n_->args; }
long SymExpr::exponent() const { return n_->ex; }
bool SymExpr::is_zero() const { return is_const() && sgn(value()) == 0; }
bool SymExpr::is_one() const { return is_const() && value() == 1; }

SymExpr operator+(const SymExpr& a, const SymExpr& b) {
  std::vector<SymExpr> items;
  Rational c = 0;
  for (const SymExpr* x : {&a, &b}) {
    if (x->kind() == SymExpr::Kind::Add) {
      for (auto& y : x->args()) {
        if (y.is_const()) c += y.value();
        else items.push_back(y);
      }
    } else if (x->is_const()) {
      c += x->value();
    } else {
      items.push_back(*x);
    }
  }
  if (sgn(c) != 0) items.push_back(SymExpr(c));
  if (items.empty()) return SymExpr(Rational(0));
  if (items.size() == 1) return items[0];
  return SymExpr::make(SymExpr::Kind::Add, std::move(items));
}

SymExpr SymExpr::operator-() const { return SymExpr(Rational(-1)) * *this; }

SymExpr operator-(const SymExpr& a, const SymExpr& b) { return a + (-b); }

SymExpr operator*(const SymExpr& a, const SymExpr& b) {
  std::vector<SymExpr> items;
  Rational c = 1;
  for (const SymExpr* x : {&a, &b}) {
    if (x->kind() == SymExpr::Kind::Mul) {
      for (auto& y : x->args()) {
        if (y.is_const()) c *= y.value();
        else items.push_back(y);
      }
    } else if (x->is_const()) {
      c *= x->value();
    } else {
      items.push_back(*x);
    }
  }
  if (sgn(c) == 0) return SymExpr(Rational(0));
  if (items.empty()) return SymExpr(c);
  if (c != 1) items.insert(items.begin(), SymExpr(c));
  if (items.size() == 1) return items[0];
  return SymExpr::make(SymExpr::Kind::Mul, std::move(items));
}

SymExpr operator/(const SymExpr& a, const SymExpr& b) {
  if (b.is_const()) {
    if (sgn(b.value()) == 0) throw DomainError("division by the constant zero");
    return a * SymExpr(Rational(1) / b.value());
  }
  if (a.is_zero()) return a;
  return SymExpr::make(SymExpr::Kind::Div, {a, b});
}

SymExpr pow(const SymExpr& a, long n) {
  if (n == 0) return SymExpr(Rational(1));
  if (n == 1) return a;
  if (a.is_const()) {
    if (sgn(a.value()) == 0 && n < 0) throw DomainError("negative power of zero");
    Rational base = n < 0 ? Rational(1 / a.value()) : a.value();
    Rational out = 1;
    for (long i = 0; i < (n < 0 ? -n : n); ++i) out *= base;
    return SymExpr(out);
  }
  if (a.kind() == SymExpr::Kind::Pow) return SymExpr::make(SymExpr::Kind::Pow, {a.args()[0]}, a.exponent() * n);
  return SymExpr::make(SymExpr::Kind::Pow, {a}, n);
}

SymExpr exp(const SymExpr& a) {
  if (a.is_zero()) return SymExpr(Rational(1));
  return SymExpr::make(SymExpr::Kind::Exp, {a});
}

SymExpr log(const SymExpr& a) {
  if (a.is_one()) return SymExpr(Rational(0));
  if (a.is_const() && sgn(a.value()) <= 0) throw DomainError("log of a nonpositive constant");
  return SymExpr::make(SymExpr::Kind::Log, {a});
}

SymExpr ei(const SymExpr& a) {
  if (a.is_zero()) throw DomainError("Ei(0) is singular");
  return SymExpr::make(SymExpr::Kind::Ei, {a});
}

SymExpr sqrt(const SymExpr& a) {
  if (a.is_const()) {
    if (sgn(a.value()) < 0) throw DomainError("sqrt of a negative constant");
    Integer n = a.value().get_num(), d = a.value().get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
      Integer rn, rd;
      mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
      return SymExpr(Rational(rn, rd));
    }
  }
  return SymExpr::make(SymExpr::Kind::Sqrt, {a});
}

SymExpr SymExpr::diff(const std::string& v) const {
  switch (kind()) {
    case Kind::Const:
    case Kind::Gamma: return SymExpr(Rational(0));
    case Kind::Var: return SymExpr(Rational(name() == v ? 1 : 0));
    case Kind::Add: {
      SymExpr out;
      for (auto& a : args()) out = out + a.diff(v);
      return out;
    }
    case Kind::Mul: {
      SymExpr out;
      const auto& as = args();
      for (size_t i = 0; i < as.size(); ++i) {
        SymExpr d = as[i].diff(v);
        if (d.is_zero()) continue;
        SymExpr prod = d;
        for (size_t j = 0; j < as.size(); ++j)
          if (j != i) prod = prod * as[j];
        out = out + prod;
      }
      return out;
    }
    case Kind::Div: {
      const SymExpr &a = args()[0], &b = args()[1];
      SymExpr da = a.diff(v), db = b.diff(v);
      SymExpr out = da / b;
      if (!db.is_zero()) out = out - a * db / pow(b, 2);
      return out;
    }
    case Kind::Pow: {
      const SymExpr& a = args()[0];
      return SymExpr(Rational(exponent())) * pow(a, exponent() - 1) * a.diff(v);
    }
    case Kind::Exp: return *this * args()[0].diff(v);
    case Kind::Log: return args()[0].diff(v) / args()[0];
    case Kind::Ei: return exp(args()[0]) / args()[0] * args()[0].diff(v);
    case Kind::Sqrt: return args()[0].diff(v) / (SymExpr(Rational(2)) * *this);
  }
  throw UsageError("bad expression node");
}

SymExpr SymExpr::subs(const std::map<std::string, SymExpr>& b) const {
  switch (kind()) {
    case Kind::Const:
    case Kind::Gamma: return *this;
    case Kind::Var: {
      auto it = b.find(name());
      return it == b.end() ? *this : it->second;
    }
    case Kind::Add: {
      SymExpr out;
      for (auto& a : args()) out = out + a.subs(b);
      return out;
    }
    case Kind::Mul: {
      SymExpr out(Rational(1));
      for (auto& a : args()) out = out * a.subs(b);
      return out;
    }
    case Kind::Div: return args()[0].subs(b) / args()[1].subs(b);
    case Kind::Pow: return pow(args()[0].subs(b), exponent());
    case Kind::Exp: return exp(args()[0].subs(b));
    case Kind::Log: return log(args()[0].subs(b));
    case Kind::Ei: return ei(args()[0].subs(b));
    case Kind::Sqrt: return sqrt(args()[0].subs(b));
  }
  throw UsageError("bad expression node");
}

namespace {

struct Evaluator {
  const std::map<std::string, BigFloat>& point;
  std::unordered_map<const void*, BigFloat> memo;

  BigFloat run(const SymExpr& e, const void* key) {
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    BigFloat v = compute(e);
    memo.emplace(key, v);
    return v;
  }
  BigFloat compute(const SymExpr& e);
};

}  // namespace

BigFloat SymExpr::eval(const std::map<std::string, BigFloat>& point) const {
  Evaluator ev{point, {}};
  return ev.run(*this, n_.get());
}

// The evaluator needs node identity; route through a helper with access to n_.
struct SymExprAccess {
  static const void* key(const SymExpr& e) { return e.n_.get(); }
};

namespace {

BigFloat Evaluator::compute(const SymExpr& e) {
  using K = SymExpr::Kind;
  auto arg = [&](size_t i) { return run(e.args()[i], SymExprAccess::key(e.args()[i])); };
  switch (e.kind()) {
    case K::Const: return to_bigfloat(e.value());
    case K::Gamma: return h2sn::euler_gamma();
    case K::Var: {
      auto it = point.find(e.name());
      if (it == point.end()) throw UsageError("unbound variable: " + e.name());
      return it->second;
    }
    case K::Add: {
      BigFloat s = 0;
      for (size_t i = 0; i < e.args().size(); ++i) s += arg(i);
      return s;
    }
    case K::Mul: {
      BigFloat s = 1;
      for (size_t i = 0; i < e.args().size(); ++i) s *= arg(i);
      return s;
    }
    case K::Div: {
      BigFloat d = arg(1);
      if (d == 0) throw DomainError("division by zero during evaluation");
      return BigFloat(arg(0) / d);
    }
    case K::Pow: {
      BigFloat b = arg(0);
      long n = e.exponent();
      if (b == 0 && n < 0) throw DomainError("negative power of zero");
      BigFloat out = 1, base = n < 0 ? BigFloat(1 / b) : b;
      for (long k = n < 0 ? -n : n; k; k >>= 1) {
        if (k & 1) out *= base;
        base *= base;
      }
      return out;
    }
    case K::Exp: return BigFloat(boost::multiprecision::exp(arg(0)));
    case K::Log: {
      BigFloat a = arg(0);
      if (a <= 0) throw DomainError("log of a nonpositive value");
      return BigFloat(boost::multiprecision::log(a));
    }
    case K::Ei: return exp_integral_ei(arg(0));
    case K::Sqrt: {
      BigFloat a = arg(0);
      if (a < 0) throw DomainError("sqrt of a negative value");
      return BigFloat(boost::multiprecision::sqrt(a));
    }
  }
  throw UsageError("bad expression node");
}

std::optional<Rational> exact_eval(const SymExpr& e, const std::map<std::string, Rational>& p) {
  using K = SymExpr::Kind;
  std::vector<Rational> a;
  for (auto& x : e.args()) {
    auto v = exact_eval(x, p);
    if (!v) return std::nullopt;
    a.push_back(*v);
  }
  switch (e.kind()) {
    case K::Const: return e.value();
    case K::Gamma: return std::nullopt;
    case K::Var: {
      auto it = p.find(e.name());
      if (it == p.end()) throw UsageError("unbound variable: " + e.name());
      return it->second;
    }
    case K::Add: {
      Rational s = 0;
      for (auto& x : a) s += x;
      return s;
    }
    case K::Mul: {
      Rational s = 1;
      for (auto& x : a) s *= x;
      return s;
    }
    case K::Div:
      if (sgn(a[1]) == 0) throw DomainError("division by zero during evaluation");
      return Rational(a[0] / a[1]);
    case K::Pow: {
      long n = e.exponent();
      if (sgn(a[0]) == 0 && n < 0) throw DomainError("negative power of zero");
      Rational base = n < 0 ? Rational(1 / a[0]) : a[0], out = 1;
      for (long k = 0; k < (n < 0 ? -n : n); ++k) out *= base;
      return out;
    }
    case K::Exp:
      if (sgn(a[0]) == 0) return Rational(1);
      return std::nullopt;
    case K::Log:
      if (sgn(a[0]) <= 0) throw DomainError("log of a nonpositive value");
      if (a[0] == 1) return Rational(0);
      return std::nullopt;
    case K::Ei: return std::nullopt;
    case K::Sqrt: {
      SymExpr s = sqrt(SymExpr(a[0]));
      if (s.is_const()) return s.value();
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Rational> SymExpr::eval_exact(const std::map<std::string, Rational>& point) const {
  return exact_eval(*this, point);
}

size_t SymExpr::node_count() const {
  size_t n = 1;
  for (auto& a : args()) n += a.node_count();
  return n;
}

std::string SymExpr::to_string() const {
  auto join = [&](const char* op) {
    std::string s = "(";
    for (size_t i = 0; i < args().size(); ++i) {
      if (i) s += op;
      s += args()[i].to_string();
    }
    return s + ")";
  };
  switch (kind()) {
    case Kind::Const: return value().get_str();
    case Kind::Gamma: return "gamma";
    case Kind::Var: return name();
    case Kind::Add: return join("+");
    case Kind::Mul: return join("*");
    case Kind::Div: return join("/");
    case Kind::Pow: return args()[0].to_string() + "^" + std::to_string(exponent());
    case Kind::Exp: return "exp" + join(",");
    case Kind::Log: return "log" + join(",");
    case Kind::Ei: return "Ei" + join(",");
    case Kind::Sqrt: return "sqrt" + join(",");
  }
  return "?";
}

// ---------------------------------------------------------------------------

std::vector<BigFloat> taylor_coefficients(const SymExpr& e, const std::string& v, const Rational& center,
                                          int degree, int precision_bits) {
  if (degree < 0) throw UsageError("degree must be >= 0");
  PrecisionScope scope(precision_bits);
  std::map<std::string, BigFloat> pt{{v, to_bigfloat(center)}};
  std::vector<BigFloat> out;
  SymExpr d = e;
  BigFloat fact = 1;
  for (int k = 0; k <= degree; ++k) {
    if (k) {
      d = d.diff(v);
      fact *= k;
    }
    out.push_back(BigFloat(d.eval(pt) / fact));
  }
  return out;
}

std::vector<BigFloat> shift_to_origin(const std::vector<BigFloat>& c, const Rational& center) {
  // Horner in (v - center): p(v) = c0 + (v-center)(c1 + (v-center)(...))
  const size_t n = c.size();
  std::vector<BigFloat> out(n, BigFloat(0));
  BigFloat mc = to_bigfloat(Rational(-center));
  for (size_t i = n; i-- > 0;) {
    // out <- out * (v + mc) + c[i]
    std::vector<BigFloat> next(n, BigFloat(0));
    for (size_t j = 0; j < n; ++j) {
      if (out[j] == 0) continue;
      if (j + 1 < n) next[j + 1] += out[j];
      next[j] += out[j] * mc;
    }
    next[0] += c[i];
    out.swap(next);
  }
  return out;
}

static std::vector<Rational> shift_exact(const std::vector<Rational>& c, const Rational& center) {
  const size_t n = c.size();
  std::vector<Rational> out(n, Rational(0));
  for (size_t i = n; i-- > 0;) {
    std::vector<Rational> next(n, Rational(0));
    for (size_t j = 0; j < n; ++j) {
      if (j + 1 < n) next[j + 1] += out[j];
      next[j] -= out[j] * center;
    }
    next[0] += c[i];
    out.swap(next);
  }
  return out;
}

Polynomial taylor_polynomial(const SymExpr& e, const std::string& v, const Rational& center, int degree,
                             const TaylorGrid& grid, int precision_bits, const RingPtr& ring_in) {
  if (degree < 0) throw UsageError("degree must be >= 0");
  RingPtr ring = ring_in ? ring_in : make_ring({v});
  int vi = ring->require(v);
  std::vector<Rational> coeffs;
  bool done = false;
  if (!grid.grid) {
    // exact when the derivatives evaluate to rationals at the center
    std::vector<Rational> c;
    SymExpr d = e;
    Rational fact = 1;
    bool ok = true;
    for (int k = 0; k <= degree && ok; ++k) {
      if (k) {
        d = d.diff(v);
        fact *= k;
      }
      auto val = d.eval_exact({{v, center}});
      if (!val) ok = false;
      else c.push_back(*val / fact);
    }
    if (ok) {
      coeffs = shift_exact(c, center);
      done = true;
    }
  }
  if (!done) {
    PrecisionScope scope(precision_bits);
    auto c = shift_to_origin(taylor_coefficients(e, v, center, degree, precision_bits), center);
    for (auto& x : c)
      coeffs.push_back(grid.grid ? rationalize(x, *grid.grid, grid.mode) : exact_rational(x));
  }
  std::vector<Term> ts;
  for (int k = 0; k <= degree; ++k) {
    Monomial m;
    m.set(vi, static_cast<uint16_t>(k));
    ts.push_back({m, coeffs[k]});
  }
  return Polynomial::from_terms(ring, std::move(ts));
}

}  // namespace h2sn
