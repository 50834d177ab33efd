#include "h2sn/numkernel.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace h2sn {

unsigned digits_for_bits(int bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1;
}

PrecisionScope::PrecisionScope(int bits) : saved_(BigFloat::default_precision()) {
  if (bits < 64) throw UsageError("precision_bits must be >= 64");
  BigFloat::default_precision(digits_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(saved_); }

int current_precision_bits() {
  BigFloat probe(0);
  return static_cast<int>(mpfr_get_prec(probe.backend().data()));
}

Rational abs_q(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

Rational exact_rational(const BigFloat& x) {
  mpfr_srcptr p = x.backend().data();
  if (!mpfr_number_p(p)) throw DomainError("non-finite value");
  if (mpfr_zero_p(p)) return Rational(0);
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), p);
  Rational q(m);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

Rational rationalize(const BigFloat& x, const Rational& grid, RoundMode mode) {
  if (sgn(grid) <= 0) throw UsageError("grid must be positive");
  Rational y = exact_rational(x) / grid;
  Integer num = y.get_num(), den = y.get_den();
  Integer n;
  if (mode == RoundMode::Truncate) {
    mpz_tdiv_q(n.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  } else {
    // |y| + 1/2 floored, sign restored
    Integer a = abs(num);
    Integer twice = 2 * a + den;
    mpz_fdiv_q(n.get_mpz_t(), twice.get_mpz_t(), Integer(2 * den).get_mpz_t());
    if (sgn(num) < 0) n = -n;
  }
  Rational out = Rational(n) * grid;
  out.canonicalize();
  return out;
}

BigFloat to_bigfloat(const Rational& q, int precision_bits) {
  if (precision_bits < 64) throw UsageError("precision_bits must be >= 64");
  BigFloat out;
  mpfr_set_prec(out.backend().data(), precision_bits);
  mpfr_set_q(out.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return out;
}

BigFloat to_bigfloat(const Rational& q) {
  BigFloat out;
  mpfr_set_q(out.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return out;
}

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
  if (text.empty()) throw UsageError("empty rational");
  auto slash = text.find('/');
  auto is_int = [](const std::string& s) {
    size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto int_of = [](std::string s) {
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
  };
  if (slash != std::string::npos) {
    std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    if (!is_int(a) || !is_int(b)) throw UsageError("bad rational: " + raw);
    Integer d = int_of(b);
    if (d == 0) throw UsageError("zero denominator: " + raw);
    Rational q(int_of(a), d);
    q.canonicalize();
    return q;
  }
  if (is_int(text)) return Rational(int_of(text));
  // decimal with optional exponent, read exactly
  size_t epos = text.find_first_of("eE");
  std::string mant = text.substr(0, epos);
  long ex = 0;
  if (epos != std::string::npos) {
    std::string es = text.substr(epos + 1);
    if (!is_int(es)) throw UsageError("bad number: " + raw);
    ex = std::stol(es);
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant.erase(0, 1);
  }
  auto dot = mant.find('.');
  std::string digits = mant;
  long frac = 0;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    frac = static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty() || !is_int(digits)) throw UsageError("bad number: " + raw);
  Rational q{Integer(digits, 10)};
  long p10 = ex - frac;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(p10 < 0 ? -p10 : p10));
  if (p10 >= 0) q *= scale; else q /= scale;
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const BigFloat& x, int digits, bool annotate) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  if (annotate) os << "@" << mpfr_get_prec(x.backend().data()) << "b";
  return os.str();
}

BigFloat exp_integral_ei(const BigFloat& x) {
  if (x == 0) throw DomainError("Ei(0) is singular");
  BigFloat out;
  mpfr_eint(out.backend().data(), x.backend().data(), MPFR_RNDN);
  return out;
}

BigFloat euler_gamma() {
  BigFloat out;
  mpfr_const_euler(out.backend().data(), MPFR_RNDN);
  return out;
}

}  // namespace h2sn
