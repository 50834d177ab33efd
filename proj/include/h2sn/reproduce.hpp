#pragma once
// End-to-end pipelines and golden-value comparisons for the H2 worked examples.

#include "h2sn/io.hpp"

#include <string>
#include <vector>

namespace h2sn {

struct ReproItem {
  std::string label;
  std::string expected;
  std::string got;
  bool pass = false;
};

struct ReproReport {
  std::string target;
  std::vector<ReproItem> items;
  std::vector<std::string> notes;
  json data = json::object();  // machine-readable results (solutions, curves, ...)

  bool pass() const;
  std::string to_text() const;
  json to_json() const;
};

struct PipelineOptions {
  HF2Config config;
  SolveOptions solve;
  EigenOptions eigen;
  GroebnerBudget budget;
};

/// fixed-r UHF system: stationarity with dOmega/dr replaced by r - r0
LabeledSystem fixed_distance_system(const HF2Config& config, const Rational& r0);
/// ground-state UHF system (s = v = 0) with the geometry condition kept
LabeledSystem ground_state_system(const HF2Config& config);

/// lex Groebner basis, triangular decomposition and real solutions
struct TriangularRun {
  GroebnerBasis basis;
  TriangularDecomposition decomposition;
  SolveReport report;
};
TriangularRun run_triangular(const LabeledSystem& S, const PipelineOptions& opt);

/// solutions that differ only in the signs of the up-spin or down-spin coefficient pairs
std::vector<RealSolution> sign_representatives(const std::vector<RealSolution>& sols, const BigFloat& tol);

/// known targets: eq10 eq14 table1 table2 eq26 fig2 fig3 infeasible inverse
std::vector<std::string> reproduce_targets();
ReproReport reproduce(const std::string& target, const PipelineOptions& opt, const json& golden);

}  // namespace h2sn
