#include <doctest.h>

#include "h2sn/stickelberger.hpp"

#include <algorithm>
#include <random>

using namespace h2sn;

namespace {

std::vector<BigFloat> sorted(std::vector<BigFloat> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// zeros (1, +-1), (2, +-sqrt 2)
struct Small {
  RingPtr R = make_ring({"x", "y"}, OrderKind::Grevlex);
  PolySystem F{parse_polynomial("x^2 - 3*x + 2", R), parse_polynomial("y^2 - x", R)};
};

}  // namespace

TEST_CASE("multiplication matrices and the trace identity") {
  Small s;
  auto G = groebner_basis(s.F, s.R);
  auto B = standard_monomials(G);
  REQUIRE(B.size() == 4);
  auto Mx = multiplication_matrix(G, B, "x"), My = multiplication_matrix(G, B, "y");
  CHECK(matrices_commute({Mx, My}));
  // trace of M_f is the sum of f over the zeros
  CHECK(Mx.M.trace() == 6);
  CHECK(My.M.trace() == 0);
  CHECK((My.M * My.M).trace() == 6);  // sum of y^2 = sum of x
  CHECK((Mx.M * My.M).trace() == 0);
  // column j is NF(x * b_j)
  for (size_t j = 0; j < B.size(); ++j) {
    auto nf = normal_form(Polynomial::monomial(G.ring, B[j], 1) * Polynomial::variable(G.ring, "x"), G);
    for (size_t i = 0; i < B.size(); ++i) {
      Rational c = 0;
      for (auto& t : nf.terms())
        if (t.m == B[i]) c = t.c;
      CHECK(Mx.M(i, j) == c);
    }
  }
}

TEST_CASE("characteristic polynomial: eigenvalues of M_x are the x-coordinates") {
  Small s;
  auto G = groebner_basis(s.F, s.R);
  auto B = standard_monomials(G);
  auto Mx = multiplication_matrix(G, B, "x");
  PrecisionScope ps(256);
  std::vector<std::vector<BigFloat>> a(4, std::vector<BigFloat>(4));
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) a[i][j] = to_bigfloat(Mx.M(i, j));
  std::vector<BigFloat> wr, wi;
  real_eigenvalues(a, wr, wi);
  auto w = sorted(wr);
  std::vector<BigFloat> want{BigFloat(1), BigFloat(1), BigFloat(2), BigFloat(2)};
  for (size_t i = 0; i < 4; ++i) CHECK(abs(w[i] - want[i]) < BigFloat("1e-30"));
  for (auto& x : wi) CHECK(abs(x) < BigFloat("1e-30"));
}

TEST_CASE("real_eigenvalues on companion matrices (property)") {
  PrecisionScope ps(256);
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> C(-9, 9);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 2 + trial % 6;
    std::vector<BigFloat> c(n);
    for (auto& x : c) x = C(rng);
    // companion of x^n + c_{n-1} x^{n-1} + ... + c_0
    std::vector<std::vector<BigFloat>> a(n, std::vector<BigFloat>(n, BigFloat(0)));
    for (int i = 1; i < n; ++i) a[i][i - 1] = 1;
    for (int i = 0; i < n; ++i) a[i][n - 1] = -c[i];
    std::vector<BigFloat> wr, wi;
    real_eigenvalues(a, wr, wi);
    REQUIRE(wr.size() == static_cast<size_t>(n));
    BigFloat sum_re = 0;
    for (int i = 0; i < n; ++i) {
      sum_re += wr[i];
      // each eigenvalue is a root of the polynomial
      BigFloat pr = 1, pi = 0;  // Horner in complex arithmetic
      for (int k = n - 1; k >= 0; --k) {
        BigFloat nr = pr * wr[i] - pi * wi[i] + c[k], ni = pr * wi[i] + pi * wr[i];
        pr = nr;
        pi = ni;
      }
      CHECK(sqrt(pr * pr + pi * pi) < BigFloat("1e-40"));
    }
    CHECK(abs(sum_re + c[n - 1]) < BigFloat("1e-40"));  // trace
  }
}

TEST_CASE("eigen route recovers every zero with coordinates") {
  Small s;
  auto st = solve_stickelberger(s.F, s.R);
  CHECK(st.commute);
  CHECK(st.standard.size() == 4);
  REQUIRE(st.solutions.size() == 4);
  PrecisionScope ps(256);
  for (auto& sol : st.solutions) {
    BigFloat x = sol.values.at("x"), y = sol.values.at("y");
    CHECK(abs(y * y - x) < BigFloat("1e-40"));
    CHECK((abs(x - 1) < BigFloat("1e-40") || abs(x - 2) < BigFloat("1e-40")));
    CHECK(sol.provenance.rfind("eig[", 0) == 0);
  }
  CHECK(st.complex_candidates == 0);
}

TEST_CASE("complex zeros are reported as complex candidates") {
  auto R = make_ring({"x", "y"}, OrderKind::Grevlex);
  PolySystem H{parse_polynomial("x^2 + 1", R), parse_polynomial("y^2 - 4", R)};
  auto st = solve_stickelberger(H, R);
  CHECK(st.solutions.empty());
  CHECK(st.complex_candidates == 4);
  size_t mult = 0;
  for (auto& c : st.candidates) mult += c.multiplicity;
  CHECK(mult == 4);
}

TEST_CASE("routes agree on a small system and the seed does not matter") {
  auto R = make_ring({"x", "y", "z"}, OrderKind::Grevlex);
  PolySystem F{parse_polynomial("x^2 - 2*y + z", R), parse_polynomial("y^2 - z - 1", R),
               parse_polynomial("z^3 - z", R)};
  auto L = make_ring({"x", "y", "z"}, OrderKind::Lex);
  PolySystem FL;
  for (auto& f : F) FL.push_back(f.in_ring(L));
  auto T = decompose_triangular(groebner_basis(FL, L));
  auto tri = solve_triangular_system(T, FL);
  for (uint64_t seed : {0ull, 5ull, 12345ull}) {
    EigenOptions opt;
    opt.seed = seed;
    auto st = solve_stickelberger(F, R, opt);
    auto cmp = compare_solution_sets(tri.solutions, st.solutions, BigFloat("1e-8"));
    CHECK(cmp.agree);
  }
}

TEST_CASE("non-commuting matrices are rejected") {
  MultiplicationMatrix a, b;
  a.var = "x";
  b.var = "y";
  a.M = RationalMatrix(2);
  b.M = RationalMatrix(2);
  a.M(0, 1) = 1;
  b.M(1, 0) = 1;
  CHECK_FALSE(matrices_commute({a, b}));
  CHECK_THROWS_AS(eigen_solve_system({a, b}), DomainError);
}

TEST_CASE("route comparison diagnoses a missing solution") {
  PrecisionScope ps(128);
  RealSolution p, q;
  p.values = {{"x", BigFloat(1)}};
  q.values = {{"x", BigFloat(2)}};
  auto cmp = compare_solution_sets({p, q}, {p}, BigFloat("1e-8"));
  CHECK_FALSE(cmp.agree);
  CHECK_FALSE(cmp.diagnostics.empty());
}
