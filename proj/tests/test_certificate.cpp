#include <catch2/catch_amalgamated.hpp>

#include "cubecolor/certificate.hpp"
#include "helpers.hpp"

using namespace cubecolor;
using test_helpers::constant_coloring;
using test_helpers::striped_coloring;

namespace {

Certificate pipeline(const GridSpec& spec, const Coloring& coloring, BalanceState* out = nullptr) {
  BalanceState bottom = descend_to_bottom(initial_state(spec, coloring));
  Certificate cert = extract_certificate(bottom);
  if (out) *out = bottom;
  return cert;
}

}  // namespace

TEST_CASE("endgame on a constant coloring") {
  GridSpec spec(2, 2, 1);
  Coloring coloring = constant_coloring(spec, 3);
  BalanceState bottom;
  Certificate cert = pipeline(spec, coloring, &bottom);
  REQUIRE(cert.color == 3);
  REQUIRE(cert.x == std::map<int, coeff_t>{{3, 1}});
  REQUIRE(cert.witnesses.size() == 3);  // all (n+1)^(d-m) bottom vertices
  REQUIRE(cert.incidence_bound == 1);
  REQUIRE(lower_bound(cert) == 3);
  REQUIRE(verify_certificate(spec, coloring, bottom, cert));
}

TEST_CASE("endgame on the smallest diagonal instance") {
  GridSpec spec(2, 1, 1);
  Coloring coloring(spec, {0, 1, 1, 0});
  BalanceState bottom;
  Certificate cert = pipeline(spec, coloring, &bottom);
  coeff_t sum = 0;
  for (const auto& [c, v] : cert.x) sum += v;
  REQUIRE(sum == 1);
  REQUIRE(!cert.witnesses.empty());
  for (const Vec& w : cert.witnesses) REQUIRE(coloring.at(w) == cert.color);
  REQUIRE(verify_certificate(spec, coloring, bottom, cert));
}

TEST_CASE("endgame on striped colorings") {
  GridSpec spec(2, 2, 1);
  Coloring coloring = striped_coloring(spec);
  BalanceState bottom;
  Certificate cert = pipeline(spec, coloring, &bottom);
  coeff_t sum = 0;
  for (const auto& [c, v] : cert.x) sum += v;
  REQUIRE(sum == 1);
  REQUIRE(cert.x.count(cert.color) == 1);
  REQUIRE(cert.x.at(cert.color) != 0);
  // witness count times incidence covers every bottom vertex
  REQUIRE(lower_bound(cert) * cert.incidence_bound >= 3);
  // the color is used at least as often as the bound claims
  REQUIRE(coloring.usage().at(cert.color) >= lower_bound(cert));
  REQUIRE(verify_certificate(spec, coloring, bottom, cert));
}

TEST_CASE("endgame across random colorings") {
  for (const GridSpec spec : {GridSpec(2, 2, 1), GridSpec(2, 3, 1), GridSpec(3, 2, 2)}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      Coloring coloring = random_valid(spec, seed);
      BalanceState bottom;
      Certificate cert = pipeline(spec, coloring, &bottom);
      coeff_t sum = 0;
      for (const auto& [c, v] : cert.x) sum += v;
      REQUIRE(sum == 1);
      for (const Vec& w : cert.witnesses) REQUIRE(coloring.at(w) == cert.color);
      coeff_t bottom_vertices = 1;
      for (int len : bottom.flag.big_face(0).len) bottom_vertices *= (len + 1);
      REQUIRE(lower_bound(cert) * cert.incidence_bound >= bottom_vertices);
      REQUIRE(coloring.usage().at(cert.color) >= lower_bound(cert));
      REQUIRE(verify_certificate(spec, coloring, bottom, cert));
    }
  }
}

TEST_CASE("witnesses sit inside one component after splitting") {
  GridSpec spec(2, 3, 1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Coloring coloring =
        split_components(spec, random_valid(spec, seed), ConstraintMode::simplicial);
    Certificate cert = pipeline(spec, coloring);
    // after splitting, each color is a single component, so the bound is a
    // component-size bound
    REQUIRE(largest_monochromatic_component(spec, coloring, ConstraintMode::simplicial) >=
            lower_bound(cert));
  }
}

TEST_CASE("tampered certificates are rejected") {
  GridSpec spec(2, 2, 1);
  Coloring coloring = striped_coloring(spec);
  BalanceState bottom;
  Certificate cert = pipeline(spec, coloring, &bottom);
  REQUIRE(verify_certificate(spec, coloring, bottom, cert));

  SECTION("a witness of the wrong color") {
    Certificate bad = cert;
    for (std::int64_t i = 0; i < spec.vertex_count(); ++i)
      if (coloring.colors[i] != cert.color) {
        bad.witnesses.push_back(spec.vertex_at(i));
        break;
      }
    REQUIRE(!verify_certificate(spec, coloring, bottom, bad));
  }
  SECTION("a dropped witness") {
    Certificate bad = cert;
    bad.witnesses.pop_back();
    REQUIRE(!verify_certificate(spec, coloring, bottom, bad));
  }
  SECTION("totals that do not sum to one") {
    Certificate bad = cert;
    bad.x[cert.color] += 1;
    REQUIRE(!verify_certificate(spec, coloring, bottom, bad));
  }
  SECTION("a forged incidence bound") {
    Certificate bad = cert;
    bad.incidence_bound += 5;
    REQUIRE(!verify_certificate(spec, coloring, bottom, bad));
  }
  SECTION("the wrong color id") {
    Certificate bad = cert;
    bad.color += 1;
    REQUIRE(!verify_certificate(spec, coloring, bottom, bad));
  }
}

TEST_CASE("extraction preconditions") {
  GridSpec spec(2, 2, 1);
  BalanceState top = initial_state(spec, constant_coloring(spec));
  REQUIRE_THROWS_AS(extract_certificate(top), dimension_error);
}
