#pragma once
// Real root isolation (Sturm), refinement, and back-substitution through triangular sets.

#include "h2sn/triangular.hpp"
#include "h2sn/upoly.hpp"

#include <map>
#include <string>
#include <vector>

namespace h2sn {

/** @brief (lo, hi] holding exactly one real root of the squarefree part of poly. */
struct RootInterval {
  Rational lo, hi;
  UPoly poly;
};

std::vector<RootInterval> isolate_real_roots(const UPoly& p);
std::vector<RootInterval> isolate_real_roots(const Polynomial& p);  // univariate in some variable

/// root to within tol (bisection-safeguarded Newton at the current precision)
BigFloat refine_root(const RootInterval& iv, const BigFloat& tol);

struct RealSolution {
  std::map<std::string, BigFloat> values;
  BigFloat residual = 0;
  std::string provenance;
};

struct SolveOptions {
  BigFloat tol{"1e-8"};        // residual and dedup tolerance
  int precision_bits = kDefaultPrecisionBits;
};

struct SolveReport {
  std::vector<RealSolution> solutions;
  std::vector<std::string> degenerate;  // branches whose leading coefficient vanished
  std::vector<std::string> rejected;    // candidates failing the residual check
  size_t complex_branches = 0;
};

/// max |g(point)| over the system
BigFloat max_residual(const PolySystem& sys, const std::map<std::string, BigFloat>& point);

SolveReport solve_triangular_system(const TriangularDecomposition& T, const PolySystem& original,
                                    const SolveOptions& opt = {});

/// sort and merge solutions closer than tol in max-norm
std::vector<RealSolution> dedup_solutions(std::vector<RealSolution> sols, const BigFloat& tol);

}  // namespace h2sn
