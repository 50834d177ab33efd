#pragma once
// Text and JSON/CSV serialization for systems, decompositions, matrices and solutions.

#include "h2sn/hf2model.hpp"
#include "h2sn/stickelberger.hpp"
#include "h2sn/triangular.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace h2sn {

using json = nlohmann::ordered_json;

/**
 * @brief Polynomial system document.
 *
 * Text layout, one item per line ('#' starts a comment):
 *   vars: s t u v ev ew r
 *   order: lex
 *   poly: <polynomial>            optional "[label]" right after "poly:"
 */
struct SystemDoc {
  RingPtr ring;
  std::vector<Polynomial> polys;
  std::vector<std::string> labels;

  PolySystem system() const;
};

SystemDoc parse_system(const std::string& text);
SystemDoc read_system_file(const std::string& path);
std::string format_system(const SystemDoc& doc);
SystemDoc to_doc(const LabeledSystem& S);
SystemDoc to_doc(const GroebnerBasis& G);

json solutions_json(const std::vector<RealSolution>& sols, int digits = 30);
/// header row: the variables in `vars`, then residual and provenance
std::string solutions_csv(const std::vector<RealSolution>& sols, const std::vector<std::string>& vars,
                          int digits = 20);
json triangular_json(const TriangularDecomposition& T);
json matrix_json(const MultiplicationMatrix& M);
json candidates_json(const std::vector<EigenCandidate>& cands, int digits = 30);

std::string sha256_hex(const std::string& bytes);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/** @brief Provenance record written next to every output. */
struct RunManifest {
  std::string command;
  json config = json::object();
  std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256
  std::string version;
  double wall_seconds = 0;

  json to_json() const;
};

std::string tool_version();

/// location of data/golden.json: $H2SN_DATA_DIR, else the source tree's data directory
std::string data_dir();
json load_golden();

}  // namespace h2sn
