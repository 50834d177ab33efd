#include "h2sn/io.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#ifndef H2SN_SOURCE_DATA_DIR
#define H2SN_SOURCE_DATA_DIR "data"
#endif
#ifndef H2SN_VERSION
#define H2SN_VERSION "0.0.0"
#endif

namespace h2sn {

PolySystem SystemDoc::system() const {
  PolySystem out;
  for (auto& p : polys)
    if (!p.is_zero()) out.push_back(p);
  return out;
}

namespace {

std::string trim_ws(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

SystemDoc parse_system(const std::string& text) {
  SystemDoc doc;
  std::vector<std::string> vars;
  OrderKind kind = OrderKind::Lex;
  std::vector<std::pair<std::string, std::string>> raw;  // label, poly text
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim_ws(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw UsageError("system file line " + std::to_string(lineno) + ": missing key");
    std::string key = trim_ws(line.substr(0, colon)), val = trim_ws(line.substr(colon + 1));
    if (key == "vars") {
      std::istringstream vs(val);
      std::string v;
      while (vs >> v) {
        if (v.back() == ',') v.pop_back();
        if (!v.empty()) vars.push_back(v);
      }
    } else if (key == "order") {
      kind = parse_order(val);
    } else if (key == "poly") {
      std::string label;
      if (!val.empty() && val[0] == '[') {
        auto close = val.find(']');
        if (close == std::string::npos) throw UsageError("system file line " + std::to_string(lineno) + ": bad label");
        label = val.substr(1, close - 1);
        val = trim_ws(val.substr(close + 1));
      }
      raw.emplace_back(label, val);
    } else {
      throw UsageError("system file line " + std::to_string(lineno) + ": unknown key " + key);
    }
  }
  if (vars.empty()) throw UsageError("system file has no vars line");
  if (raw.empty()) throw UsageError("system file has no polynomials");
  doc.ring = make_ring(vars, kind);
  for (auto& [label, txt] : raw) {
    doc.polys.push_back(parse_polynomial(txt, doc.ring));
    doc.labels.push_back(label);
  }
  return doc;
}

SystemDoc read_system_file(const std::string& path) { return parse_system(read_file(path)); }

std::string format_system(const SystemDoc& doc) {
  std::ostringstream os;
  os << "vars:";
  for (auto& v : doc.ring->vars()) os << " " << v;
  os << "\norder: " << to_string(doc.ring->kind()) << "\n";
  for (size_t i = 0; i < doc.polys.size(); ++i) {
    os << "poly: ";
    if (i < doc.labels.size() && !doc.labels[i].empty()) os << "[" << doc.labels[i] << "] ";
    os << doc.polys[i].to_string() << "\n";
  }
  return os.str();
}

SystemDoc to_doc(const LabeledSystem& S) {
  SystemDoc d;
  d.ring = S.ring;
  for (size_t i = 0; i < S.polys.size(); ++i) {
    if (S.polys[i].is_zero()) continue;
    d.polys.push_back(S.polys[i]);
    d.labels.push_back(S.labels[i]);
  }
  return d;
}

SystemDoc to_doc(const GroebnerBasis& G) {
  SystemDoc d;
  d.ring = G.ring;
  d.polys = G.polys;
  d.labels.assign(G.polys.size(), "");
  return d;
}

json solutions_json(const std::vector<RealSolution>& sols, int digits) {
  json arr = json::array();
  for (auto& s : sols) {
    json vals = json::object();
    for (auto& [k, v] : s.values) vals[k] = to_string(v, digits);
    arr.push_back({{"values", vals}, {"residual", to_string(s.residual, 6)}, {"provenance", s.provenance}});
  }
  return arr;
}

std::string solutions_csv(const std::vector<RealSolution>& sols, const std::vector<std::string>& vars, int digits) {
  std::ostringstream os;
  for (auto& v : vars) os << v << ",";
  os << "residual,provenance\n";
  for (auto& s : sols) {
    for (auto& v : vars) {
      auto it = s.values.find(v);
      os << (it == s.values.end() ? "" : to_string(it->second, digits)) << ",";
    }
    os << to_string(s.residual, 6) << ",\"" << s.provenance << "\"\n";
  }
  return os.str();
}

json triangular_json(const TriangularDecomposition& T) {
  json sets = json::array();
  for (auto& s : T.sets) {
    json chain = json::array();
    for (size_t i = 0; i < s.chain.size(); ++i)
      chain.push_back({{"var", s.ring->vars()[s.solve_order[i]]}, {"poly", s.chain[i].to_string()}});
    sets.push_back(chain);
  }
  json vars = T.ring->vars();
  return {{"vars", vars}, {"order", to_string(T.ring->kind())}, {"sets", sets}};
}

json matrix_json(const MultiplicationMatrix& M) {
  json basis = json::array(), rows = json::array();
  for (auto& m : M.basis) basis.push_back(M.ring->monomial_string(m));
  for (size_t i = 0; i < M.M.n; ++i) {
    json row = json::array();
    for (size_t j = 0; j < M.M.n; ++j) row.push_back(to_string(M.M(i, j)));
    rows.push_back(row);
  }
  return {{"var", M.var}, {"basis", basis}, {"matrix", rows}};
}

json candidates_json(const std::vector<EigenCandidate>& cands, int digits) {
  json arr = json::array();
  for (size_t i = 0; i < cands.size(); ++i) {
    auto& c = cands[i];
    json re = json::object(), im = json::object(), res = json::object();
    for (auto& [k, v] : c.re) re[k] = to_string(v, digits);
    for (auto& [k, v] : c.im) im[k] = to_string(v, 6);
    for (auto& [k, v] : c.residual) res[k] = to_string(v, 6);
    arr.push_back({{"id", "eig[" + std::to_string(i + 1) + "]"},
                   {"class", c.real ? "real" : "complex"},
                   {"multiplicity", c.multiplicity},
                   {"re", re},
                   {"im", im},
                   {"eigen_residual", res}});
  }
  return arr;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
    throw DomainError("sha256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << content;
}

json RunManifest::to_json() const {
  json in = json::array();
  for (auto& [p, d] : inputs) in.push_back({{"path", p}, {"sha256", d}});
  return {{"command", command},
          {"config", config},
          {"inputs", in},
          {"version", version},
          {"wall_seconds", wall_seconds}};
}

std::string tool_version() { return H2SN_VERSION; }

std::string data_dir() {
  if (const char* e = std::getenv("H2SN_DATA_DIR")) return e;
  return H2SN_SOURCE_DATA_DIR;
}

json load_golden() { return json::parse(read_file(data_dir() + "/golden.json")); }

}  // namespace h2sn
