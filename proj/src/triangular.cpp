#include "h2sn/triangular.hpp"

#include "h2sn/rootsolve.hpp"
#include "h2sn/upoly.hpp"

#include <algorithm>
#include <sstream>

namespace h2sn {

std::string TriangularSet::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < chain.size(); ++i) {
    os << "  [" << ring->vars()[solve_order[i]] << "] " << chain[i].to_string() << "\n";
  }
  return os.str();
}

namespace {

Integer bit_length(const Integer& z) { return Integer(mpz_sizeinbase(z.get_mpz_t(), 2)); }

// convergents of the continued fraction of x
std::vector<Rational> convergents(Rational x, size_t max_terms) {
  std::vector<Rational> out;
  Integer h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  for (size_t i = 0; i < max_terms; ++i) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Integer h = a * h0 + h1, k = a * k0 + k1;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    out.emplace_back(h, k);
    out.back().canonicalize();
    Rational frac = x - Rational(a);
    if (frac == 0) break;
    x = 1 / frac;
  }
  return out;
}

}  // namespace

std::vector<Rational> rational_roots(const std::vector<Rational>& p_in, int precision_bits) {
  UPoly p = p_in;
  trim(p);
  if (degree(p) <= 0) return {};
  UPoly q = squarefree_part(p);
  // denominators of rational roots divide the leading coefficient of the integer-primitive form
  Integer L = 1;
  for (auto& c : q) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den_mpz_t());
  Integer lead = abs(Integer(q.back() * L));
  int bits = std::max<int>(precision_bits, 2 * static_cast<int>(bit_length(lead).get_si()) + 64);
  PrecisionScope scope(bits);
  std::vector<Rational> out;
  for (auto& iv : isolate_real_roots(q)) {
    if (sign_at(q, iv.hi) == 0) {
      out.push_back(iv.hi);
      continue;
    }
    BigFloat x = refine_root(iv, pow(BigFloat(2), -(bits - 8)));
    for (auto& c : convergents(exact_rational(x), 4 * static_cast<size_t>(bits))) {
      Integer den = c.get_den();
      if (den > lead) break;
      if (!mpz_divisible_p(lead.get_mpz_t(), den.get_mpz_t())) continue;
      if (c <= iv.lo || c > iv.hi) continue;
      if (sign_at(q, c) == 0) {
        out.push_back(c);
        break;
      }
    }
  }
  return out;
}

namespace {

struct Decomposer {
  const DecomposeOptions& opt;
  RingPtr ring;
  std::vector<TriangularSet> out;

  GroebnerBasis extend(const GroebnerBasis& J, const Polynomial& f) {
    PolySystem F = J.polys;
    F.push_back(f);
    return groebner_basis(F, ring, opt.budget);
  }

  // largest variable present (smallest index), or -1 for constants
  static int main_var(const Polynomial& p) {
    auto s = p.support();
    return s.empty() ? -1 : *std::min_element(s.begin(), s.end());
  }

  // univariate pieces of g whose zero sets partition the zeros of g; empty if no split is useful
  std::vector<UPoly> univariate_split(const Polynomial& g, int var) {
    UPoly u = upoly_from(g, var);
    UPoly sq = squarefree_part(u);
    std::vector<UPoly> pieces;
    UPoly rest = sq;
    if (opt.split_rational_roots) {
      for (auto& r : rational_roots(sq, opt.precision_bits)) {
        UPoly lin{-r, Rational(1)};
        pieces.push_back(lin);
        UPoly qq, rr;
        divmod(rest, lin, qq, rr);
        rest = qq;
      }
    }
    if (degree(rest) > 0) pieces.push_back(monic(rest));
    if (pieces.size() == 1 && degree(sq) == degree(u)) return {};
    return pieces;
  }

  void process(const GroebnerBasis& J) {
    if (is_trivial_ideal(J)) return;
    const int n = ring->nvars();
    TriangularSet T;
    T.ring = ring;
    for (int k = n - 1; k >= 0; --k) {
      const Polynomial* g1 = nullptr;
      for (auto& g : J.polys) {
        if (main_var(g) == k) {
          g1 = &g;  // polys are sorted ascending by leading monomial
          break;
        }
      }
      if (!g1) throw DomainError("ideal is not zero-dimensional: no element with main variable " + ring->vars()[k]);
      auto coeffs = g1->coefficients_in(k);
      const Polynomial& c = coeffs.back();
      if (!c.is_constant()) {
        GroebnerBasis J0 = extend(J, c);
        if (!is_trivial_ideal(J0)) {
          process(J0);
          process(saturate(J, c, opt.budget));
          return;
        }
      }
      if (g1->support().size() == 1) {
        auto pieces = univariate_split(*g1, k);
        if (!pieces.empty()) {
          for (auto& f : pieces) process(extend(J, upoly_to(f, ring, k)));
          return;
        }
      }
      T.chain.push_back(g1->primitive());
      T.solve_order.push_back(k);
    }
    out.push_back(std::move(T));
  }
};

}  // namespace

TriangularDecomposition decompose_triangular(const GroebnerBasis& G, const DecomposeOptions& opt) {
  if (G.ring->kind() != OrderKind::Lex) throw UsageError("triangular decomposition needs a lex basis");
  if (is_trivial_ideal(G)) throw UsageError("the ideal is trivial (no solutions)");
  if (!is_zero_dimensional(G)) throw DomainError("ideal is not zero-dimensional");
  Decomposer d{opt, G.ring, {}};
  d.process(G);
  TriangularDecomposition res;
  res.ring = G.ring;
  res.sets = std::move(d.out);
  return res;
}

}  // namespace h2sn
