#pragma once
// Minimal-basis H2 model: STO integrals, energy functionals and the polynomial systems built from them.

#include "h2sn/groebner.hpp"
#include "h2sn/rootsolve.hpp"
#include "h2sn/symexpr.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace h2sn {

enum class Method { UHF, RHF };
enum class Role { Coefficient, Multiplier, Geometry, Target };

std::string to_string(Method m);
std::string to_string(Role r);

struct HF2Config {
  Method method = Method::UHF;
  Rational center{7, 5};
  int taylor_degree = 4;
  Rational grid{1, 1000};
  RoundMode rounding = RoundMode::Truncate;
  int precision_bits = kDefaultPrecisionBits;
  // orbital exponents; only 1 is supported by the integral table
  Rational zeta = 1;
};

/** @brief Closed-form integrals over 1s STOs as functions of the bond length variable. */
struct IntegralTable {
  std::string var = "r";
  std::map<std::string, SymExpr> entries;
  const SymExpr& at(const std::string& key) const;
};

/// keys: S, T_AA, T_AB, V_AA_A, V_AA_B, V_AB, hAA, hAB, AAAA, AABB, AAAB, ABAB, nuc
IntegralTable build_integral_table(const HF2Config& config);

/// [AA|BB]-type Coulomb integral for 1s STOs with exponents za,zb on A and zc,zd on B
SymExpr coulomb_integral(const Rational& za, const Rational& zb, const Rational& zc, const Rational& zd,
                         const SymExpr& R);

/**
 * @brief Polynomial in orbital coefficients whose coefficients are linear in the integrals.
 * Key "" stands for the exact constant 1.
 */
class IntegralForm {
 public:
  explicit IntegralForm(RingPtr ring) : ring_(std::move(ring)) {}
  void add(const Polynomial& p, const std::string& key);
  const RingPtr& ring() const { return ring_; }
  /// Taylor-expand every integral about config.center and rationalize each coefficient of the result
  Polynomial expand(const IntegralTable& table, const HF2Config& config, const RingPtr& out) const;
  /// exact value at a point (coefficient variables and the bond length)
  BigFloat exact_value(const IntegralTable& table, const std::map<std::string, BigFloat>& point) const;

 private:
  RingPtr ring_;
  std::map<std::string, Polynomial> parts_;
};

struct EnergyFunctional {
  Method method = Method::UHF;
  RingPtr ring;
  Polynomial omega;
  std::map<std::string, Role> roles;
  bool transformed = false;
  Rational scale = 1000;  // printing scale, 1/grid
};

EnergyFunctional build_energy_functional(const HF2Config& config);
/// the same functional before Taylor expansion, as an integral form over a,b,c,d,ev,ew
IntegralForm uhf_integral_form();

EnergyFunctional transform_symmetric(const EnergyFunctional& F);
EnergyFunctional untransform_symmetric(const EnergyFunctional& F);

/** @brief Polynomial system with per-equation labels and the functional it came from. */
struct LabeledSystem {
  RingPtr ring;
  std::vector<Polynomial> polys;
  std::vector<std::string> labels;
  Method method = Method::UHF;
  std::optional<Polynomial> energy;  // used by the Stability constraint and total_energy

  PolySystem system() const;  // nonzero generators
};

LabeledSystem stationarity_system(const EnergyFunctional& F);

struct Constraint {
  enum class Kind { FixedDistance, GroundState, GapTarget, Stability } kind;
  Rational value = 0;

  static Constraint fixed_distance(const Rational& r0) { return {Kind::FixedDistance, r0}; }
  static Constraint ground_state() { return {Kind::GroundState, 0}; }
  static Constraint gap_target(const Rational& e) { return {Kind::GapTarget, e}; }
  static Constraint stability() { return {Kind::Stability, 0}; }
};

LabeledSystem apply_constraint(const LabeledSystem& S, const Constraint& c);

/// closed-shell occupied/virtual system in s, t, eocc, eunocc, r plus the gap relation
LabeledSystem build_rhf_inverse_system(const HF2Config& config, const Rational& e_gap);
/// the same without the gap relation; r is fixed when given
LabeledSystem build_rhf_orbital_system(const HF2Config& config, std::optional<Rational> fixed_r = std::nullopt);
/// ground-state UHF system restricted to u=t, ew=ev: variables t, ev, r (grevlex)
LabeledSystem build_rhf_optimization_system(const HF2Config& config);

BigFloat total_energy(const RealSolution& sol, const LabeledSystem& S, const BigFloat& tol);

struct DeviationPoint {
  Rational r;
  BigFloat taylor, exact, deviation;
};
std::vector<DeviationPoint> deviation_curve(const HF2Config& config, const std::vector<Rational>& r_grid);

struct EigenPoint {
  Rational r;
  bool found = false;
  BigFloat e_occ, e_unocc;
};
std::vector<EigenPoint> eigen_curve(const HF2Config& config, const std::vector<Rational>& r_grid);

}  // namespace h2sn
