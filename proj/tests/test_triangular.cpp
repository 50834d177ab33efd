#include <doctest.h>

#include "h2sn/rootsolve.hpp"
#include "h2sn/triangular.hpp"

#include <algorithm>
#include <cmath>

using namespace h2sn;

namespace {

// element i introduces solve_order[i] and uses only variables introduced before it
void check_chains(const TriangularDecomposition& T, const GroebnerBasis& G) {
  for (auto& set : T.sets) {
    REQUIRE(set.chain.size() == static_cast<size_t>(G.ring->nvars()));
    std::vector<int> seen;
    for (size_t i = 0; i < set.chain.size(); ++i) {
      int v = set.solve_order[i];
      CHECK(set.chain[i].involves(v));
      for (int w : set.chain[i].support()) CHECK((w == v || std::find(seen.begin(), seen.end(), w) != seen.end()));
      seen.push_back(v);
    }
  }
}

}  // namespace

TEST_CASE("rational roots are exact") {
  // 6x^3 - 5x^2 - 2x + 1, roots 1, 1/3, -1/2
  std::vector<Rational> p{Rational(1), Rational(-2), Rational(-5), Rational(6)};
  auto r = rational_roots(p);
  std::sort(r.begin(), r.end());
  REQUIRE(r.size() == 3);
  CHECK(r[0] == Rational(-1, 2));
  CHECK(r[1] == Rational(1, 3));
  CHECK(r[2] == 1);
  CHECK(rational_roots({Rational(-2), Rational(0), Rational(1)}).empty());
  CHECK(rational_roots({Rational(0), Rational(0), Rational(1)}) == std::vector<Rational>{Rational(0)});
}

TEST_CASE("decomposition splits components") {
  auto R = make_ring({"x", "y"}, OrderKind::Lex);
  // zeros: (0, 0) doubled, (+-1, 1), (+-sqrt 3, 2)
  PolySystem F{parse_polynomial("(y-1)*(y-2)*y", R), parse_polynomial("(x^2 - y)*(y-2) + y*(y-1)*(x^2-3)", R)};
  auto G = groebner_basis(F, R);
  REQUIRE(is_zero_dimensional(G));
  auto T = decompose_triangular(G);
  check_chains(T, G);
  CHECK(T.sets.size() >= 2);
  auto rep = solve_triangular_system(T, F);
  CHECK(rep.solutions.size() == 5);
  CHECK(standard_monomials(G).size() == 6);
  for (auto& s : rep.solutions) CHECK(max_residual(G.polys, s.values) < BigFloat("1e-40"));
}

TEST_CASE("nonconstant leading coefficients are split off") {
  auto R = make_ring({"x", "y"}, OrderKind::Lex);
  // x*y - 1 with y^2 = y: y = 0 has no zero, y = 1 gives x = 1
  PolySystem F{parse_polynomial("x*y - 1", R), parse_polynomial("y^2 - y", R), parse_polynomial("x^2 - x", R)};
  auto G = groebner_basis(F, R);
  auto T = decompose_triangular(G);
  check_chains(T, G);
  auto rep = solve_triangular_system(T, F);
  REQUIRE(rep.solutions.size() == 1);
  CHECK(rep.solutions[0].values.at("x") == 1);
  CHECK(rep.solutions[0].values.at("y") == 1);
}

TEST_CASE("real solution count matches an independent enumeration") {
  auto R = make_ring({"x", "y", "z"}, OrderKind::Lex);
  PolySystem F{parse_polynomial("x^2 - 2*y + z", R), parse_polynomial("y^2 - z - 1", R),
               parse_polynomial("z^3 - z", R)};
  auto G = groebner_basis(F, R);
  auto T = decompose_triangular(G);
  check_chains(T, G);
  auto rep = solve_triangular_system(T, F);
  // count real zeros independently: z in {-1,0,1}, y^2 = z+1, x^2 = 2y - z
  int expect = 0;
  for (int z : {-1, 0, 1}) {
    double ys[2] = {std::sqrt(z + 1.0), -std::sqrt(z + 1.0)};
    for (int k = 0; k < (z == -1 ? 1 : 2); ++k) {
      double x2 = 2 * ys[k] - z;
      expect += x2 > 1e-12 ? 2 : (x2 > -1e-12 ? 1 : 0);
    }
  }
  CHECK(rep.solutions.size() == static_cast<size_t>(expect));
  for (auto& s : rep.solutions) CHECK(s.residual < BigFloat("1e-40"));
}

TEST_CASE("decomposition preconditions") {
  auto L = make_ring({"x", "y"}, OrderKind::Lex);
  auto G = make_ring({"x", "y"}, OrderKind::Grevlex);
  PolySystem F{parse_polynomial("x^2 - y", L), parse_polynomial("y^2 - 2", L)};
  CHECK_THROWS_AS(decompose_triangular(groebner_basis(F, G)), UsageError);
  CHECK_THROWS_AS(decompose_triangular(groebner_basis({parse_polynomial("x", L), parse_polynomial("x-1", L)}, L)),
                  UsageError);
  CHECK_THROWS_AS(decompose_triangular(groebner_basis({parse_polynomial("x*y - 1", L)}, L)), DomainError);
}

TEST_CASE("to_string lists one chain element per line") {
  auto R = make_ring({"x", "y"}, OrderKind::Lex);
  auto T = decompose_triangular(groebner_basis({parse_polynomial("x - y", R), parse_polynomial("y^2 - 3", R)}, R));
  REQUIRE(T.sets.size() == 1);
  auto s = T.sets[0].to_string();
  CHECK(s.find("[y]") != std::string::npos);
  CHECK(s.find("[x]") != std::string::npos);
  CHECK(std::count(s.begin(), s.end(), '\n') == 2);
}
