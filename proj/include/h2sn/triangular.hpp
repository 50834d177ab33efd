#pragma once
// Triangular decomposition of zero-dimensional lex Groebner bases.

#include "h2sn/groebner.hpp"

#include <string>
#include <vector>

namespace h2sn {

/** @brief Chain t_1(x_1), t_2(x_1,x_2), ... in solve order (innermost variable first). */
struct TriangularSet {
  RingPtr ring;
  std::vector<int> solve_order;  // ring variable index introduced by each element
  std::vector<Polynomial> chain;

  std::string to_string() const;
};

struct TriangularDecomposition {
  RingPtr ring;
  std::vector<TriangularSet> sets;
  std::vector<std::pair<size_t, size_t>> overlaps;  // pairs of sets sharing a zero (flagged, not removed)
};

struct DecomposeOptions {
  GroebnerBudget budget;
  bool split_rational_roots = true;  // split univariate factors at rational roots
  int precision_bits = kDefaultPrecisionBits;
};

TriangularDecomposition decompose_triangular(const GroebnerBasis& G, const DecomposeOptions& opt = {});

/// rational roots of a univariate polynomial (exact)
std::vector<Rational> rational_roots(const std::vector<Rational>& p, int precision_bits = kDefaultPrecisionBits);

}  // namespace h2sn
