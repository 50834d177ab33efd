#include <doctest.h>

#include "h2sn/reproduce.hpp"

#include <cstdio>
#include <filesystem>

using namespace h2sn;

TEST_CASE("system text round trip") {
  std::string text =
      "# comment line\n"
      "vars: x, y z\n"
      "order: grevlex\n"
      "poly: [first] x^2 - 3/7*y*z  # trailing\n"
      "\n"
      "poly: z - 1\n";
  auto d = parse_system(text);
  CHECK(d.ring->vars() == std::vector<std::string>{"x", "y", "z"});
  CHECK(d.ring->kind() == OrderKind::Grevlex);
  REQUIRE(d.polys.size() == 2);
  CHECK(d.labels[0] == "first");
  CHECK(d.labels[1].empty());
  CHECK(d.polys[0] == parse_polynomial("x^2 - 3/7*y*z", d.ring));
  auto again = parse_system(format_system(d));
  CHECK(again.ring->vars() == d.ring->vars());
  CHECK(again.ring->kind() == d.ring->kind());
  CHECK(again.labels == d.labels);
  for (size_t i = 0; i < d.polys.size(); ++i) CHECK(again.polys[i].to_string() == d.polys[i].to_string());
  CHECK(format_system(again) == format_system(d));
}

TEST_CASE("model system survives a file round trip") {
  auto S = fixed_distance_system(HF2Config{}, Rational(7, 5));
  auto doc = to_doc(S);
  auto path = (std::filesystem::temp_directory_path() / "h2sn_io_test.txt").string();
  write_file(path, format_system(doc));
  auto back = read_system_file(path);
  std::remove(path.c_str());
  REQUIRE(back.polys.size() == doc.polys.size());
  for (size_t i = 0; i < doc.polys.size(); ++i) CHECK(back.polys[i].to_string() == doc.polys[i].to_string());
}

TEST_CASE("malformed system files") {
  CHECK_THROWS_AS(parse_system("poly: x\n"), UsageError);
  CHECK_THROWS_AS(parse_system("vars: x\n"), UsageError);
  CHECK_THROWS_AS(parse_system("vars: x\nbogus: 1\npoly: x\n"), UsageError);
  CHECK_THROWS_AS(parse_system("vars: x\nno colon here\n"), UsageError);
  CHECK_THROWS_AS(parse_system("vars: x\npoly: [oops x\n"), UsageError);
  CHECK_THROWS_AS(parse_system("vars: x\norder: sideways\npoly: x\n"), UsageError);
  CHECK_THROWS(parse_system("vars: x\npoly: y + 1\n"));
  CHECK_THROWS_AS(read_file("/nonexistent/h2sn/file"), UsageError);
}

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("solution serialization") {
  PrecisionScope ps(128);
  RealSolution a;
  a.values = {{"x", BigFloat("0.5")}, {"y", BigFloat(-2)}};
  a.residual = BigFloat("1e-40");
  a.provenance = "set[1]";
  auto j = solutions_json({a});
  REQUIRE(j.size() == 1);
  CHECK(j[0]["provenance"] == "set[1]");
  CHECK(std::stod(j[0]["values"]["x"].get<std::string>()) == 0.5);
  CHECK(std::stod(j[0]["values"]["y"].get<std::string>()) == -2);
  auto csv = solutions_csv({a}, {"y", "x", "z"});
  auto nl = csv.find('\n');
  CHECK(csv.substr(0, nl) == "y,x,z,residual,provenance");
  auto row = csv.substr(nl + 1);
  CHECK(row.find(",,") != std::string::npos);  // z is missing
  CHECK(row.find("\"set[1]\"") != std::string::npos);
}

TEST_CASE("triangular and matrix json") {
  auto L = make_ring({"x", "y"}, OrderKind::Lex);
  auto G = groebner_basis({parse_polynomial("x - y", L), parse_polynomial("y^2 - 3", L)}, L);
  auto tj = triangular_json(decompose_triangular(G));
  CHECK(tj["order"] == "lex");
  REQUIRE(tj["sets"].size() == 1);
  CHECK(tj["sets"][0][0]["var"] == "y");

  auto R = make_ring({"x"}, OrderKind::Grevlex);
  auto H = groebner_basis({parse_polynomial("x^2 - 2", R)}, R);
  auto M = multiplication_matrix(H, standard_monomials(H), "x");
  auto mj = matrix_json(M);
  CHECK(mj["var"] == "x");
  CHECK(mj["basis"].size() == 2);
  CHECK(mj["matrix"][1][0] == "2");
}

TEST_CASE("manifest and golden data") {
  RunManifest m;
  m.command = "gb sys.txt";
  m.inputs.push_back({"sys.txt", sha256_hex("abc")});
  m.version = tool_version();
  auto j = m.to_json();
  CHECK(j.dump().find("sha256") != std::string::npos);
  CHECK(j.dump().find("gb sys.txt") != std::string::npos);
  CHECK_FALSE(tool_version().empty());
  auto g = load_golden();
  for (auto key : {"fixed_distance", "ground_state", "inverse", "infeasible", "deviation", "eigen_curve"})
    CHECK(g.contains(key));
}
