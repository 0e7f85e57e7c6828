#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "cubecolor/io.hpp"
#include "helpers.hpp"

using namespace cubecolor;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("cubecolor_test_" + name) {
    std::ofstream out(path, std::ios::binary);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("coloring files") {
  SECTION("round trip") {
    GridSpec spec(2, 1, 1);
    Coloring c(spec, {0, 1, 1, 0});
    std::ostringstream buffer;
    write_coloring(c, buffer);
    TempFile file("roundtrip.json", buffer.str());
    Coloring back = read_coloring(file.path);
    REQUIRE(back.spec == spec);
    REQUIRE(back.colors == c.colors);
  }
  SECTION("missing fields carry the file name") {
    TempFile file("missing.json", "{\"d\":2,\"n\":1}");
    try {
      read_coloring(file.path);
      FAIL("expected a parse error");
    } catch (const parse_error& e) {
      REQUIRE(std::string(e.what()).find(file.path) != std::string::npos);
      REQUIRE(std::string(e.what()).find("\"m\"") != std::string::npos);
    }
  }
  SECTION("syntax errors carry a location") {
    TempFile file("syntax.json", "{\"d\":2,");
    try {
      read_coloring(file.path);
      FAIL("expected a parse error");
    } catch (const parse_error& e) {
      REQUIRE(std::string(e.what()).find(file.path) != std::string::npos);
    }
  }
  SECTION("wrong vertex count is rejected") {
    TempFile file("short.json", "{\"d\":2,\"n\":1,\"m\":1,\"colors\":[0,1]}");
    REQUIRE_THROWS_AS(read_coloring(file.path), validation_error);
  }
}

TEST_CASE("cochain files") {
  TempFile file("cochain.json",
                "{\"d\":2,\"n\":2,\"k\":1,\"cells\":["
                "{\"cell\":{\"anchor\":[0,0],\"free\":[0]},\"coeff\":2},"
                "{\"cell\":{\"anchor\":[1,1],\"free\":[1]},\"coeff\":-1}]}");
  CochainFile in = read_cochain(file.path);
  REQUIRE(in.k == 1);
  REQUIRE(in.cochain[CubeFace(Vec{0, 0}, {0})] == 2);
  REQUIRE(in.cochain[CubeFace(Vec{1, 1}, {1})] == -1);
  REQUIRE(l1_norm(in.cochain) == 3);

  SECTION("a written cochain reads back identically") {
    std::string text = to_json(in.cochain).dump();
    TempFile round("cochain_round.json",
                   "{\"d\":2,\"n\":2,\"k\":1," + text.substr(1));
    REQUIRE(read_cochain(round.path).cochain == in.cochain);
  }
  SECTION("dimension mismatches are parse errors") {
    TempFile bad("cochain_bad.json",
                 "{\"d\":2,\"n\":2,\"k\":2,\"cells\":["
                 "{\"cell\":{\"anchor\":[0,0],\"free\":[0]},\"coeff\":1}]}");
    REQUIRE_THROWS_AS(read_cochain(bad.path), parse_error);
  }
}

TEST_CASE("reports serialize deterministically") {
  GridSpec spec(2, 2, 1);
  Coloring coloring = test_helpers::striped_coloring(spec);
  BalanceState bottom = descend_to_bottom(initial_state(spec, coloring));
  Certificate cert = extract_certificate(bottom);
  json a = to_json(cert, spec);
  json b = to_json(extract_certificate(bottom), spec);
  REQUIRE(a.dump(2) == b.dump(2));
  REQUIRE(a.contains("tool_version"));
  REQUIRE(a["spec"]["d"] == 2);
  REQUIRE(a["witness_count"].get<std::int64_t>() ==
          static_cast<std::int64_t>(cert.witnesses.size()));

  OracleReport report = oracle_exhaustive(GridSpec(2, 1, 1), 0, ConstraintMode::simplicial);
  REQUIRE(oracle_csv_row(report) == "2,1,1,exhaustive," +
                                        std::to_string(report.samples) + ",2\n");
}
