#pragma once
// Sparse multivariate polynomials over Q with lex / grevlex orders.

#include "h2sn/numkernel.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace h2sn {

constexpr int kMaxVars = 16;

enum class OrderKind { Lex, Grevlex };

std::string to_string(OrderKind k);
OrderKind parse_order(const std::string& s);

/** @brief Exponent vector; unused trailing slots stay zero. */
struct Monomial {
  std::array<uint16_t, kMaxVars> e{};
  uint32_t deg = 0;

  uint16_t operator[](int i) const { return e[i]; }
  void set(int i, uint16_t v) {
    deg = deg - e[i] + v;
    e[i] = v;
  }
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool is_one() const { return deg == 0; }
  bool divides(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;  // caller guarantees divisibility
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;
};

struct MonomialHash {
  size_t operator()(const Monomial& m) const;
};

/** @brief Ordered variable table plus order kind; the first variable is the largest. */
class Ring {
 public:
  Ring(std::vector<std::string> vars, OrderKind kind = OrderKind::Lex);

  const std::vector<std::string>& vars() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  OrderKind kind() const { return kind_; }
  int index_of(const std::string& name) const;  // -1 if absent
  int require(const std::string& name) const;   // throws UsageError
  bool same_vars(const Ring& o) const { return vars_ == o.vars_; }
  bool operator==(const Ring& o) const { return vars_ == o.vars_ && kind_ == o.kind_; }

  /// <0, 0, >0 as a is smaller, equal, larger than b
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::string monomial_string(const Monomial& m) const;

 private:
  std::vector<std::string> vars_;
  OrderKind kind_;
};

using RingPtr = std::shared_ptr<const Ring>;
RingPtr make_ring(std::vector<std::string> vars, OrderKind kind = OrderKind::Lex);

struct Term {
  Monomial m;
  Rational c;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  Polynomial(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, const std::string& name);
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Rational& c);
  /// terms need not be sorted or merged
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  Rational constant_value() const;  // coefficient of 1

  const Term& lead() const;  // throws on zero
  const Monomial& lm() const { return lead().m; }
  const Rational& lc() const { return lead().c; }
  uint32_t total_degree() const;
  int degree(int var) const;
  int degree(const std::string& var) const { return degree(ring_->require(var)); }
  /// variable indices with nonzero exponent somewhere
  std::vector<int> support() const;
  bool involves(int var) const { return degree(var) > 0; }

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& q) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial mul_term(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned n) const;
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// same polynomial in another ring; every variable used must exist there
  Polynomial in_ring(const RingPtr& target) const;

  /// coefficient polynomials of var^k, k = 0..degree(var)
  std::vector<Polynomial> coefficients_in(int var) const;

  /// scaled so the coefficients are coprime integers with positive leading coefficient
  Polynomial primitive() const;
  Polynomial monic() const;
  Integer content_lcm_denominator() const;

  std::string to_string() const;

 private:
  void check_ring(const Polynomial& o) const;
  RingPtr ring_;
  std::vector<Term> terms_;  // strictly descending in ring order
  friend class PolyBuilder;
};

Polynomial operator*(const Rational& q, const Polynomial& p);

enum class ArithOp { Add, Sub, Mul, Scale };
Polynomial poly_arith(ArithOp op, const Polynomial& p, const Polynomial& q);
Polynomial poly_arith(ArithOp op, const Polynomial& p, const Rational& q);

Polynomial differentiate(const Polynomial& p, const std::string& var);
Polynomial differentiate(const Polynomial& p, int var);

/// bindings map variable names to polynomials over `target`; unbound variables are copied into target
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings,
                      const RingPtr& target);
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings);

Rational evaluate(const Polynomial& p, const std::map<std::string, Rational>& point);
BigFloat evaluate(const Polynomial& p, const std::map<std::string, BigFloat>& point);
/// partial evaluation with rational values, result stays in p's ring
Polynomial evaluate_partial(const Polynomial& p, const std::map<std::string, Rational>& point);

Polynomial parse_polynomial(const std::string& text, const RingPtr& ring);

/// equal up to a positive rational factor
bool equal_up_to_positive_scalar(const Polynomial& a, const Polynomial& b);

}  // namespace h2sn
