#pragma once
// Buchberger's algorithm with Gebauer-Moeller pair pruning.

#include "h2sn/polyring.hpp"

#include <cstddef>
#include <vector>

namespace h2sn {

using PolySystem = std::vector<Polynomial>;

struct GroebnerBudget {
  size_t max_spairs = 0;      // 0: unlimited
  size_t max_poly_terms = 0;  // 0: unlimited
};

struct GroebnerStats {
  size_t pairs_created = 0;
  size_t pairs_reduced = 0;
  size_t zero_reductions = 0;
  size_t pruned = 0;
};

/** @brief Reduced basis: monic, sorted by ascending leading monomial. */
struct GroebnerBasis {
  RingPtr ring;
  std::vector<Polynomial> polys;
  bool reduced = true;

  OrderKind order() const { return ring->kind(); }
  size_t size() const { return polys.size(); }
};

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& G);
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& G);
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

/// F is moved into `order` (same variables, possibly a different order kind)
GroebnerBasis groebner_basis(const PolySystem& F, const RingPtr& order, const GroebnerBudget& budget = {},
                             GroebnerStats* stats = nullptr);

bool is_trivial_ideal(const GroebnerBasis& G);
bool is_zero_dimensional(const GroebnerBasis& G);
std::vector<Monomial> standard_monomials(const GroebnerBasis& G);

/// true iff p lies in the ideal
bool ideal_contains(const GroebnerBasis& G, const Polynomial& p);

/// basis elements that involve only variables with index >= first_var
std::vector<Polynomial> elimination_part(const GroebnerBasis& G, int first_var);

/// basis of (J : c^inf) via an auxiliary variable; J must be a lex basis
GroebnerBasis saturate(const GroebnerBasis& J, const Polynomial& c, const GroebnerBudget& budget = {});

}  // namespace h2sn
