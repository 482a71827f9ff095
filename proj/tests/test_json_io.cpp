#include <catch_amalgamated.hpp>

#include <tropgc/json_io.hpp>

using namespace tropgc;

TEST_CASE("filtration files parse", "[json]")
{
    const auto in = parse_filtration(R"({"g": 1, "weights": [["1/3","1/3","33/100"], ["1","1","1"]]})");
    CHECK(in.g == 1);
    REQUIRE(in.chain.size() == 2);
    CHECK(in.chain[0][2] == Rational(33, 100));
    CHECK_THROWS_AS(parse_filtration("{"), parse_error);
    CHECK_THROWS_AS(parse_filtration(R"({"weights": []})"), parse_error);
    CHECK_THROWS_AS(parse_filtration(R"({"g": 1, "weights": [[0.5]]})"), parse_error);
    CHECK_THROWS_AS(parse_filtration(R"({"g": 1, "weights": [["1/x"]]})"), parse_error);
    CHECK_THROWS_AS(parse_filtration(R"({"g": 1, "weights": []})"), domain_error);
    CHECK_THROWS_AS(parse_filtration(R"({"g": 1, "weights": [["3/2"]]})"), domain_error);
}

TEST_CASE("signature JSON uses sorted subset keys", "[json]")
{
    const auto j = to_json(signature(WeightDatum(1, parse_rational_list("1/2,1/2,1/2"))));
    CHECK(j.dump() == R"({"{1,2}":"-","{1,3}":"-","{2,3}":"-","{1,2,3}":"+"})");
}

TEST_CASE("order result JSON", "[json]")
{
    const WeightDatum a(1, parse_rational_list("1,1,1"));
    const auto j = to_json(compare_up_to_symmetry(a, a));
    CHECK(j["relation"] == "Equal");
    CHECK(j["witness"] == Json::array({1, 2, 3}));
    CHECK(j["permutations_examined"] == 1);
}

TEST_CASE("homology JSON carries top-weight and Delta labels", "[json]")
{
    const auto h = homology(build_graph_complex(WeightDatum(1, parse_rational_list("1,1,1"))));
    const auto j = to_json(h);
    CHECK(j["betti"].dump() == R"({"-1":0,"0":0,"1":1})");
    CHECK(j["weight"] == 6);
    CHECK(j["topweight"].dump() == R"([{"H^3":1},{"H^4":0},{"H^5":0}])");
    CHECK(j["delta_reduced"].dump() == R"([{"H_0":0},{"H_1":0},{"H_2":1}])");
    const auto rel = to_json(homology(build_relative_complex(WeightDatum(1, parse_rational_list("1,1,1")),
                                                             make_floor(1, 3, 3))));
    CHECK(rel.contains("delta_relative"));
    CHECK_FALSE(rel.contains("topweight"));
}

TEST_CASE("complex JSON lists generators and boundary triples", "[json]")
{
    const auto c = build_graph_complex(WeightDatum(1, parse_rational_list("1,1,1")));
    const auto j = to_json(c);
    REQUIRE(j["degrees"].size() == 3);
    CHECK(j["degrees"][0]["generators"].size() == 1);
    CHECK(j["degrees"][0]["boundary"].empty());
    for (const auto& t : j["degrees"][1]["boundary"]) {
        REQUIRE(t.size() == 3);
        REQUIRE(t[2].is_string());
    }
}
