#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "widthlab/reporting.hpp"
#include "widthlab/serialization.hpp"

using namespace widthlab;
using nlohmann::json;

TEST_CASE("complex json round trip") {
  for (ComplexPtr K : {cross_polytope_sphere(2, 1), polygon_circle(7), tripod(),
                       simplex_ball(2, 0), flat_torus(2)}) {
    json j = complex_to_json(*K);
    ComplexPtr back = complex_from_json(j);
    CHECK(back->dim == K->dim);
    CHECK(back->space == K->space);
    REQUIRE(back->vertices.size() == K->vertices.size());
    for (size_t v = 0; v < K->vertices.size(); ++v)
      CHECK(back->vertices[v] == K->vertices[v]);
    for (int k = 0; k <= K->dim; ++k)
      CHECK(back->simplices[k] == K->simplices[k]);
    CHECK(back->marked_vertices == K->marked_vertices);
    CHECK(back->top_lifts.size() == K->top_lifts.size());
    // Serialize -> parse -> serialize is a fixed point.
    CHECK(complex_to_json(*back) == j);
  }
}

TEST_CASE("malformed complexes are rejected with a diagnostic path") {
  json good = complex_to_json(*polygon_circle(5));

  json j = good;
  j.erase("space");
  CHECK_THROWS_WITH_AS(complex_from_json(j), doctest::Contains("space"),
                       MalformedInput);

  j = good;
  j["simplices"]["1"][0][1] = 99;  // out-of-range vertex index
  CHECK_THROWS_WITH_AS(complex_from_json(j), doctest::Contains("simplices"),
                       MalformedInput);

  j = good;
  j["vertices"][2] = json::array({1.0, "x"});
  CHECK_THROWS_WITH_AS(complex_from_json(j), doctest::Contains("vertices[2]"),
                       MalformedInput);

  j = good;
  j["simplices"]["0"].erase(0);  // face closure mismatch
  CHECK_THROWS_WITH_AS(complex_from_json(j), doctest::Contains("simplices.0"),
                       MalformedInput);
}

TEST_CASE("plmap json round trip") {
  PLMap wrap = pl_wrap_map(8, 2);
  json j = plmap_to_json(wrap);
  PLMap back = plmap_from_json(j);
  CHECK(back.id == wrap.id);
  CHECK(back.target_is_complex());
  REQUIRE(back.vertex_images.size() == wrap.vertex_images.size());
  for (size_t v = 0; v < wrap.vertex_images.size(); ++v)
    CHECK(back.vertex_images[v] == wrap.vertex_images[v]);
  CHECK(plmap_to_json(back) == j);

  PLMap h = discretize(height_map(ModelSpace::sphere(2)), 2);
  json jh = plmap_to_json(h);
  CHECK(jh["target"] == "R^1");
  PLMap hb = plmap_from_json(jh);
  CHECK(hb.euclidean_target_dim == 1);
  CHECK(mod2_degree(pl_wrap_map(8, 3)) == mod2_degree(plmap_from_json(
            plmap_to_json(pl_wrap_map(8, 3)))));

  json bad = jh;
  bad["target"] = "Q^1";
  CHECK_THROWS_AS(plmap_from_json(bad), MalformedInput);
  bad = jh;
  bad["images"].erase(0);
  CHECK_THROWS_AS(plmap_from_json(bad), MalformedInput);
}

TEST_CASE("event log lines") {
  std::vector<EventRecord> events(2);
  events[0].kind = EventKind::PairCreated;
  events[0].param = 0.25;
  events[0].vertices = {3, 4};
  events[0].parities = {{1, 1}, {3, 1}, {4, 1}};
  events[1].kind = EventKind::PairAnnihilated;
  events[1].param = 0.75;
  events[1].vertices = {3, 4};
  events[1].parities = {{1, 1}};
  std::string lines = event_log_lines(events);
  auto nl = lines.find('\n');
  REQUIRE(nl != std::string::npos);
  json first = json::parse(lines.substr(0, nl));
  CHECK(first["kind"] == "pair-created");
  CHECK(first["param"] == 0.25);
  CHECK(first["vertices"] == json::array({3, 4}));
  CHECK(first["parities"]["3"] == 1);
  CHECK(lines.back() == '\n');
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 2);
}

TEST_CASE("report schema and round trip") {
  CHECK(report_schema_version() == "1.0.0");
  Report r;
  r.config = {{"seed", 7}, {"samples", 100}};
  r.results.push_back({{"map_id", "x"}, {"lower", 1.5}});
  r.warnings.push_back("w");
  json j = r.to_json();
  CHECK(j["schema"] == "1.0.0");
  Report back = report_from_json(j);
  CHECK(back.to_json() == j);
  CHECK(back.config == r.config);

  json bad = j;
  bad["schema"] = "9.9.9";
  CHECK_THROWS_AS(report_from_json(bad), MalformedInput);
}

TEST_CASE("csv bodies are deterministic") {
  WidthReport w;
  w.map_id = "m";
  w.lower = 3.0;
  w.upper = 3.25;
  w.witness_target = Vec{0.1, -0.2};
  w.samples = 10;
  w.mesh_scale = 0.5;
  std::string a = width_csv({w}, M_PI, 0.2);
  std::string b = width_csv({w}, M_PI, 0.2);
  CHECK(a == b);
  CHECK(a.substr(0, a.find('\n')) ==
        "map_id,lower,upper,witness_target,samples,mesh_scale,bound,pass");
  CHECK(a.find("m,3,3.25,0.1;-0.2,10,0.5,3.14159265359,true") != std::string::npos);

  WaistReport ws;
  ws.map_id = "h";
  ws.floor = 2 * M_PI;
  ws.max_total_length = 6.2;
  ws.witness_target = Vec{0.0};
  ws.witness_component_cap = {Vec{0.0, 0.0, 1.0}, 1.5};
  ws.pass = false;
  ws.seed = 9;
  std::string c = waist_csv({ws});
  CHECK(c.find("h,6.28318530718,6.2,0,1.5,false,9") != std::string::npos);
}
