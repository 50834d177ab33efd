#pragma once
// Multiplication matrices on the quotient ring and the joint eigenproblem they define.

#include "h2sn/groebner.hpp"
#include "h2sn/rootsolve.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace h2sn {

/** @brief Dense square rational matrix, row-major. */
struct RationalMatrix {
  size_t n = 0;
  std::vector<Rational> a;

  explicit RationalMatrix(size_t n_ = 0) : n(n_), a(n_ * n_) {}
  Rational& operator()(size_t i, size_t j) { return a[i * n + j]; }
  const Rational& operator()(size_t i, size_t j) const { return a[i * n + j]; }
  RationalMatrix operator*(const RationalMatrix& o) const;
  bool operator==(const RationalMatrix& o) const { return n == o.n && a == o.a; }
  Rational trace() const;
};

/** @brief Column j holds the coordinates of normal_form(var * basis[j]). */
struct MultiplicationMatrix {
  std::string var;
  RingPtr ring;
  std::vector<Monomial> basis;
  RationalMatrix M;
};

MultiplicationMatrix multiplication_matrix(const GroebnerBasis& G, const std::vector<Monomial>& B,
                                           const std::string& var);

/// exact check M_i M_j == M_j M_i for all pairs
bool matrices_commute(const std::vector<MultiplicationMatrix>& ms);

struct EigenOptions {
  BigFloat eigen_tol{"1e-30"};
  uint64_t seed = 0;
  int precision_bits = kDefaultPrecisionBits;
};

struct EigenCandidate {
  std::map<std::string, BigFloat> re, im;
  std::map<std::string, BigFloat> residual;  // ||M^T v - x v|| / ||v|| per variable
  size_t multiplicity = 1;                    // size of the eigenvalue cluster
  bool real = false;
};

/// joint eigenvectors of the transposed matrices via a seeded random combination
std::vector<EigenCandidate> eigen_solve_system(const std::vector<MultiplicationMatrix>& ms, const EigenOptions& opt = {});

/// all eigenvalues of a real matrix (Hessenberg reduction plus shifted QR) at the current precision
void real_eigenvalues(std::vector<std::vector<BigFloat>> a, std::vector<BigFloat>& wr, std::vector<BigFloat>& wi);

struct StickelbergerResult {
  GroebnerBasis basis;
  std::vector<Monomial> standard;
  std::vector<MultiplicationMatrix> matrices;
  bool commute = false;
  std::vector<EigenCandidate> candidates;
  std::vector<RealSolution> solutions;  // real candidates passing the residual check
  std::vector<std::string> rejected;
  size_t complex_candidates = 0;
};

/// Groebner basis under `order`, quotient basis, one matrix per variable, eigen-extraction
StickelbergerResult solve_stickelberger(const PolySystem& F, const RingPtr& order, const EigenOptions& opt = {},
                                        const BigFloat& residual_tol = BigFloat("1e-8"),
                                        const GroebnerBudget& budget = {});

struct RouteComparison {
  bool agree = false;
  std::vector<std::string> diagnostics;
};

/// multiset comparison of two solution lists in max-norm
RouteComparison compare_solution_sets(const std::vector<RealSolution>& a, const std::vector<RealSolution>& b,
                                      const BigFloat& tol);

}  // namespace h2sn
