#pragma once
// Dense univariate polynomials over Q, lowest degree first.

#include "h2sn/polyring.hpp"

#include <vector>

namespace h2sn {

using UPoly = std::vector<Rational>;

void trim(UPoly& p);
int degree(const UPoly& p);  // -1 for zero
UPoly upoly_from(const Polynomial& p, int var);  // p must involve only `var`
Polynomial upoly_to(const UPoly& p, const RingPtr& ring, int var);

UPoly derivative(const UPoly& p);
UPoly monic(const UPoly& p);
UPoly mul(const UPoly& a, const UPoly& b);
void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly gcd(UPoly a, UPoly b);  // monic
UPoly squarefree_part(const UPoly& p);
/// squarefree factors f_i with p = c * prod f_i^i
std::vector<UPoly> squarefree_factors(const UPoly& p);

Rational eval(const UPoly& p, const Rational& x);
BigFloat eval(const UPoly& p, const BigFloat& x);
int sign_at(const UPoly& p, const Rational& x);

std::vector<UPoly> sturm_sequence(const UPoly& p);
int sign_changes_at(const std::vector<UPoly>& seq, const Rational& x);
int sign_changes_at_infinity(const std::vector<UPoly>& seq, bool positive);
/// distinct real roots in (lo, hi]
int count_roots(const std::vector<UPoly>& seq, const Rational& lo, const Rational& hi);
Rational cauchy_bound(const UPoly& p);

}  // namespace h2sn
