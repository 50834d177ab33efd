#pragma once
// Expression trees for the analytic integral formulas and their Taylor polynomials.

#include "h2sn/polyring.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace h2sn {

class SymExpr {
 public:
  enum class Kind { Const, Gamma, Var, Add, Mul, Div, Pow, Exp, Log, Ei, Sqrt };

  SymExpr();  // the constant 0
  SymExpr(const Rational& q);
  SymExpr(long n) : SymExpr(Rational(n)) {}
  static SymExpr var(const std::string& name);
  static SymExpr euler_gamma();

  Kind kind() const;
  const Rational& value() const;  // Const only
  const std::string& name() const;  // Var only
  const std::vector<SymExpr>& args() const;
  long exponent() const;  // Pow only
  bool is_const() const { return kind() == Kind::Const; }
  bool is_zero() const;
  bool is_one() const;

  friend SymExpr operator+(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator-(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator*(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator/(const SymExpr& a, const SymExpr& b);
  SymExpr operator-() const;
  friend SymExpr pow(const SymExpr& a, long n);
  friend SymExpr exp(const SymExpr& a);
  friend SymExpr log(const SymExpr& a);
  friend SymExpr ei(const SymExpr& a);
  friend SymExpr sqrt(const SymExpr& a);

  SymExpr diff(const std::string& v) const;
  /// replace variables by expressions
  SymExpr subs(const std::map<std::string, SymExpr>& b) const;

  /// evaluation at the current default precision; throws DomainError on singular points
  BigFloat eval(const std::map<std::string, BigFloat>& point) const;
  /// exact value when no transcendental node needs an irrational value
  std::optional<Rational> eval_exact(const std::map<std::string, Rational>& point) const;

  size_t node_count() const;
  std::string to_string() const;

 private:
  struct Node;
  explicit SymExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static SymExpr make(Kind k, std::vector<SymExpr> args, long ex = 0);
  std::shared_ptr<const Node> n_;
  friend struct SymExprAccess;
};

/// Taylor coefficients f^(k)(center)/k!, k = 0..degree, in powers of (v - center)
std::vector<BigFloat> taylor_coefficients(const SymExpr& e, const std::string& v, const Rational& center,
                                          int degree, int precision_bits);

/// re-expand sum c_k (v - center)^k into powers of v
std::vector<BigFloat> shift_to_origin(const std::vector<BigFloat>& c, const Rational& center);

struct TaylorGrid {
  std::optional<Rational> grid;  // none means exact
  RoundMode mode = RoundMode::Nearest;
};

/// sum_{k<=degree} f^(k)(center)/k! (v-center)^k expanded in v, coefficients rationalized on grid
Polynomial taylor_polynomial(const SymExpr& e, const std::string& v, const Rational& center, int degree,
                             const TaylorGrid& grid, int precision_bits, const RingPtr& ring = nullptr);

}  // namespace h2sn
