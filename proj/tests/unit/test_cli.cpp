#include "doctest.h"
#include "report.hpp"

using namespace hypercox;
using namespace hypercox::cli;

TEST_SUITE("cli") {
  TEST_CASE("analyze output round-trips through JSON") {
    json r = analyze_report(preset_input("P@t1"), StrataMode::Both, true);
    CHECK(json::parse(r.dump()) == r);
    CHECK(json::parse(render(r, Format::Json)) == r);
    CHECK(r["fvector"]["edges"] == 120);
    CHECK(r["euler_char"] == "1");
    CHECK(r["backend"] == "exact");
    CHECK(r["volume"]["closed_form"].get<double>() == doctest::Approx(13.1594725348));
    CHECK(r["volume"]["schlafli"].is_null());
    CHECK(r["finite_volume"]["finite"] == true);
  }

  TEST_CASE("analyze at a decimal time") {
    json r = analyze_report(time_input("0.9"), StrataMode::Geometric, false);
    CHECK(r["backend"] == "double");
    CHECK(r.contains("euler_char") == false);
    CHECK(r["volume"]["schlafli"].get<double>() == doctest::Approx(r["volume"]["closed_form"].get<double>()));
    CHECK(r["angles"]["eta"].is_null());
  }

  TEST_CASE("polytope files") {
    json j = {{"name", "cube-ish"},
              {"normals",
               {{{"name", "a"}, {"v", {"0", "1", "0", "0", "0"}}},
                {{"name", "b"}, {"v", {0, 0, 1, 0, 0}}},
                {{"name", "c"}, {"v", {0, 0, 0, 1, 0}}},
                {{"name", "d"}, {"v", {0, 0, 0, 0, 1}}},
                {{"name", "e"}, {"v", {"1", "-1/2*sqrt(8)", "0", "0", "0"}}}}}};
    PolytopeInput in = polytope_from_json(j, "x");
    CHECK(in.label == "cube-ish");
    CHECK(in.exact.has_value());
    CHECK(in.exact->normals[4][1] == -MultiQuad::sqrt_of(2));
    j["normals"][0]["v"][1] = 1.5;
    CHECK_FALSE(polytope_from_json(j, "x").exact.has_value());
    j["normals"][0]["v"] = {0, 1};
    CHECK_THROWS(polytope_from_json(j, "x"));
  }

  TEST_CASE("sweep is independent of the thread count") {
    std::vector<Quantity> qs = {Quantity::Theta, Quantity::Phi, Quantity::Volume, Quantity::Schlafli,
                                Quantity::FVector};
    json a = sweep_report(0.6, 1.0, 9, qs, 1);
    json b = sweep_report(0.6, 1.0, 9, qs, 4);
    CHECK(a.dump() == b.dump());
    CHECK(a["rows"].size() == 9);
    CHECK(a["rows"][8]["schlafli"].is_null());  // t = 1 is a regime boundary
    for (auto& row : a["rows"])
      if (!row["schlafli"].is_null()) CHECK(row["schlafli"].get<double>() == doctest::Approx(row["volume"].get<double>()));
    CHECK_THROWS_AS(sweep_report(0.0, 1.0, 3, qs, 1), FlagError);
    CHECK_THROWS_AS(parse_quantity("mass"), FlagError);
  }

  TEST_CASE("rendering") {
    json r = {{"a", 1.0 / 3}, {"b", {1, 2}}, {"c", {{"d", "x,y"}}}, {"rows", {{{"t", 1}}}}, {"e", nullptr}};
    CHECK(number(1.0 / 3).get<double>() == 0.333333333333);
    CHECK(number(std::nan("")).is_null());
    std::string text = render(r, Format::Text);
    CHECK(text.find("a: 0.333333333333") != std::string::npos);
    CHECK(text.find("b: (1, 2)") != std::string::npos);
    CHECK(text.find("e: -") != std::string::npos);
    std::string csv = render(r, Format::Csv);
    CHECK(csv.find("c.d,\"x,y\"") != std::string::npos);
    json table = {{"columns", {"t", "v"}}, {"rows", {{{"t", 0.5}, {"v", 2}}, {{"t", 1}}}}};
    CHECK(render(table, Format::Csv) == "t,v\n0.5,2\n1,\n");
    CHECK_THROWS_AS(parse_format("xml"), FlagError);
  }

  TEST_CASE("assembly files") {
    json j = {{"t", "0.9"}, {"colouring", json::object()}};
    Polytope<double> P = ks_normals<double>(FamilyTime::parse("0.9"));
    for (auto& n : P.names) j["colouring"][n] = n[0] == 'p' ? 0 : n[0] == 'm' ? 1 : 2;
    AssembledComplex C = assembly_from_json(j);
    json r = assemble_report(C, "W");
    CHECK(r["cusps"].size() == 12);
    CHECK(r["euler_char"]["topological"] == 8);
    CHECK(r["surfaces"].size() == 20);

    json k = {{"t", "0.9"}, {"copies", {"a", "b"}}, {"rules", json::array()}};
    for (auto& n : P.names) k["rules"].push_back({{"copy", 0}, {"to_copy", 1}, {"wall", n}});
    k["involution"] = {{"iso", {{"perm", {0, 1, 2, 3, 4}}, {"signs", {1, -1, -1, -1, -1}}}}, {"copy_perm", {1, 0}}};
    std::optional<InvolutionResult> inv;
    AssembledComplex D = assembly_from_json(k, &inv);
    REQUIRE(inv);
    json s = assemble_report(D, "double", inv);
    CHECK(s["involution"]["free"] == true);
    CHECK(s.contains("quotient"));
    k["rules"][0]["wall"] = "nope";
    CHECK_THROWS(assembly_from_json(k));
  }

  TEST_CASE("commensurability from a Gram file") {
    json j = {{"names", {"a", "b", "c", "d", "e"}},
              {"gram",
               {{"1", "-1", "0", "0", "0"},
                {"-1", "1", "-1", "0", "0"},
                {"0", "-1", "1", "-1/2", "-1/2"},
                {"0", "0", "-1/2", "1", "0"},
                {"0", "0", "-1/2", "0", "1"}}}};
    json r = commensurability_report(gram_from_json(j), "g", "");
    CHECK(r["hasse"] == "{}");
    CHECK(r["signature"] == json({4, 1}));
    json k = j;
    k["gram"][0][1] = "-sqrt(5)";
    k["gram"][1][0] = "-sqrt(5)";
    CHECK(commensurability_report(gram_from_json(k), "g", "sqrt(5)*a, b, c, d, e")["hasse"] == "{2,5}");
    k["gram"][1][0] = "0";
    CHECK_THROWS(gram_from_json(k));
  }

  TEST_CASE("acceptance report") {
    json r = acceptance_report(run_acceptance({"angles", "8"}));
    CHECK(r["criteria"].size() == 2);
    CHECK(r["failed"] == 0);
  }
}
