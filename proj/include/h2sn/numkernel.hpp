#pragma once
// Exact rationals (GMP) and variable-precision floats (MPFR).

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace h2sn {

using Integer = mpz_class;
using Rational = mpq_class;
using BigFloat = boost::multiprecision::mpfr_float;

constexpr int kDefaultPrecisionBits = 256;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RoundMode { Nearest, Truncate };

/// decimal digits that cover `bits` binary digits
unsigned digits_for_bits(int bits);

/** @brief Sets the thread default BigFloat precision for its lifetime. */
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

int current_precision_bits();

/// n*grid with n = x/grid rounded (nearest: ties away from zero; truncate: toward zero)
Rational rationalize(const BigFloat& x, const Rational& grid, RoundMode mode = RoundMode::Nearest);

BigFloat to_bigfloat(const Rational& q, int precision_bits);
/// conversion at the current default precision
BigFloat to_bigfloat(const Rational& q);

/// exact value of a finite BigFloat
Rational exact_rational(const BigFloat& x);

Rational parse_rational(const std::string& text);  // "p/q", integer or decimal
std::string to_string(const Rational& q);
/// decimal with `digits` significant digits, annotated "@<bits>b" when annotate is set
std::string to_string(const BigFloat& x, int digits = 20, bool annotate = false);

BigFloat exp_integral_ei(const BigFloat& x);
BigFloat euler_gamma();

inline int sign(const Rational& q) { return sgn(q); }
Rational abs_q(const Rational& q);

}  // namespace h2sn
