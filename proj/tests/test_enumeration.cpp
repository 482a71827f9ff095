#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include <tropgc/enumeration.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

using namespace tropgc;

namespace {

WeightDatum W(int g, const char* text) { return WeightDatum(g, parse_rational_list(text)); }

std::set<std::vector<int>> keys_of(const GraphClassSet& s)
{
    std::set<std::vector<int>> out;
    for (const auto& c : s.classes)
        out.insert(oracle::brute_key(c.graph));
    return out;
}

std::vector<WeightDatum> data_for(int g, std::size_t n, std::mt19937_64& rng)
{
    std::vector<WeightDatum> out;
    out.emplace_back(g, std::vector<Rational>(n, Rational(1)));
    if (g >= 1) {
        out.push_back(make_minimal(g, n));
        for (int i = 0; i < 3; ++i)
            out.push_back(oracle::random_datum(rng, g, n, 12));
    } else if (n == 3) {
        out.push_back(W(0, "1,1,1/2"));
        out.push_back(W(0, "3/4,3/4,3/4"));
    }
    return out;
}

} // namespace

TEST_CASE("enumeration matches the brute-force oracle", "[enumeration][property]")
{
    std::mt19937_64 rng(10);
    struct Case {
        int g;
        std::size_t n;
        std::size_t max_m;
    };
    std::vector<Case> cases;
    for (int g = 0; g <= 1; ++g)
        for (std::size_t n = 1; n <= 3; ++n)
            cases.push_back({g, n, 4});
    cases.push_back({2, 2, 3});
    std::size_t compared = 0;
    for (const auto& cs : cases) {
        if (cs.g == 0 && cs.n < 3)
            continue; // D_{0,n} is empty
        for (const auto& a : data_for(cs.g, cs.n, rng))
            for (std::size_t m = 0; m <= cs.max_m; ++m) {
                if (static_cast<int>(m) > max_edges(cs.g, cs.n)) {
                    REQUIRE_THROWS_AS(enumerate_stable_graphs(a, m, false), domain_error);
                    continue;
                }
                for (bool pure : {false, true}) {
                    const auto got = enumerate_stable_graphs(a, m, pure);
                    std::set<std::vector<int>> expected;
                    for (auto& [key, g] : oracle::brute_enumerate(a, m, pure))
                        expected.insert(key);
                    INFO("g=" << cs.g << " A=" << to_string(a) << " m=" << m << " pure=" << pure);
                    REQUIRE(got.classes.size() == expected.size());
                    REQUIRE(keys_of(got) == expected);
                    for (std::size_t i = 1; i < got.classes.size(); ++i)
                        REQUIRE(got.classes[i - 1].encoding < got.classes[i].encoding);
                    ++compared;
                }
            }
    }
    CHECK(compared > 50);
}

TEST_CASE("known class counts", "[enumeration]")
{
    // With two edges: a loop and a bridge in four ways, a banana in three ways.
    CHECK(enumerate_stable_graphs(W(1, "1,1,1"), 1, true).classes.size() == 1);
    CHECK(enumerate_stable_graphs(W(1, "1,1,1"), 2, true).classes.size() == 7);
    CHECK(generator_basis(W(1, "1,1,1"), 0, ComplexKind::Graph).size() == 4);
    // At the minimal chamber only the three bananas have two edges, and they are all zero generators.
    CHECK(enumerate_stable_graphs(make_minimal(1, 3), 2, false).classes.size() == 3);
    CHECK(generator_basis(make_minimal(1, 3), 0, ComplexKind::Graph).empty());
    CHECK(enumerate_stable_graphs(make_minimal(1, 3), 1, false).classes.size() == 1);
    CHECK(enumerate_stable_graphs(W(0, "1,1,1"), 0, false).classes.size() == 1);
}

TEST_CASE("stable graph sets depend only on the chamber", "[enumeration][property]")
{
    std::mt19937_64 rng(11);
    int pairs = 0;
    for (std::size_t n : {2, 3, 4}) {
        std::map<std::vector<Sign>, std::vector<WeightDatum>> by_chamber;
        for (int i = 0; i < 400; ++i) {
            auto a = oracle::random_datum(rng, 1, n, 10);
            by_chamber[signature(a).signs].push_back(std::move(a));
        }
        std::vector<GraphClassSet> all;
        const WeightDatum top(1, std::vector<Rational>(n, Rational(1)));
        for (std::size_t m = 0; m <= static_cast<std::size_t>(max_edges(1, n)); ++m)
            all.push_back(enumerate_stable_graphs(top, m, false));
        for (const auto& [sig, data] : by_chamber)
            for (std::size_t j = 1; j < data.size() && j < 4; ++j) {
                ++pairs;
                for (const auto& set : all)
                    for (const auto& c : set.classes)
                        REQUIRE(is_stable(c.graph, 1, data[0]) == is_stable(c.graph, 1, data[j]));
            }
        // Data on a wall behave like the lower side.
        const WeightDatum on_wall(1, std::vector<Rational>(n, Rational(1, 2)));
        std::vector<Rational> below(n, Rational(1, 2) - Rational(1, 100));
        for (const auto& set : all)
            for (const auto& c : set.classes)
                REQUIRE(is_stable(c.graph, 1, on_wall) == is_stable(c.graph, 1, WeightDatum(1, below)));
    }
    CHECK(pairs > 20);
}

TEST_CASE("every stable graph of a smaller chamber is stable for a larger one", "[enumeration][property]")
{
    std::mt19937_64 rng(12);
    for (int t = 0; t < 40; ++t) {
        const auto b = oracle::random_datum(rng, 1, 3, 10);
        std::vector<Rational> a;
        for (const auto& x : b.entries())
            a.push_back(x / 2);
        const WeightDatum lower(1, a);
        for (std::size_t m = 0; m <= 3; ++m)
            for (const auto& c : enumerate_stable_graphs(lower, m, false).classes)
                REQUIRE(is_stable(c.graph, 1, b));
    }
}

TEST_CASE("disk cache round trip", "[enumeration]")
{
    const auto dir = std::filesystem::temp_directory_path() / "tropgc-test-cache";
    std::filesystem::remove_all(dir);
    EnumerationOptions opts{dir};
    // A datum used nowhere else in this binary, so the in-memory memo is cold.
    const auto a = W(1, "1/7,5/7,6/7");
    const auto cold = enumerate_stable_graphs(a, 2, false, opts);
    const auto file = dir / detail::cache_file_name(1, 3, 2, false, cold.signature_hash);
    REQUIRE(std::filesystem::exists(file));
    const auto warm = detail::read_cache(file);
    REQUIRE(warm);
    REQUIRE(warm->size() == cold.classes.size());
    for (std::size_t i = 0; i < warm->size(); ++i)
        REQUIRE((*warm)[i].encoding == cold.classes[i].encoding);
    // A line that is a valid graph but not in canonical form.
    std::string relabeled;
    for (const auto& c : cold.classes)
        if (c.graph.vertex_count() == 2) {
            std::vector<Edge> es;
            for (const auto& e : c.graph.edges())
                es.push_back({1 - e.u, 1 - e.v});
            std::vector<int> legs;
            for (int x : c.graph.leg_vertices())
                legs.push_back(1 - x);
            const auto enc = encode(MarkedGraph({c.graph.weight(1), c.graph.weight(0)}, es, legs));
            if (enc != c.encoding)
                relabeled = enc;
        }
    REQUIRE_FALSE(relabeled.empty());
    {
        std::ofstream out(file, std::ios::app);
        out << relabeled << "\n";
    }
    CHECK_FALSE(detail::read_cache(file));
    {
        std::ofstream out(file, std::ios::trunc);
        out << "garbage\n";
    }
    CHECK_FALSE(detail::read_cache(file));
    CHECK_FALSE(detail::read_cache(dir / "missing.txt"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("generator bases drop odd classes", "[enumeration]")
{
    const auto a = W(1, "1,1,1");
    const auto all = enumerate_stable_graphs(a, 2, true).classes;
    const auto basis = generator_basis(a, 0, ComplexKind::Graph);
    std::size_t odd = 0;
    for (const auto& c : all)
        odd += c.has_odd_edge_automorphism;
    CHECK(odd == 3);
    CHECK(basis.size() + odd == all.size());
    CHECK_THROWS_AS(generator_basis(a, 5, ComplexKind::Graph), domain_error);
    CHECK(edges_in_degree(ComplexKind::Graph, 2, -1) == 3);
    CHECK(edges_in_degree(ComplexKind::Cellular, 2, -1) == 0);
}

TEST_CASE("alignment checks and filtration levels", "[enumeration]")
{
    const std::vector<WeightDatum> chain{make_minimal(1, 3), make_F(1, 3), W(1, "1,1,1")};
    CHECK_NOTHROW(check_aligned(chain));
    CHECK_THROWS_AS(check_aligned({W(1, "1,1,1"), make_minimal(1, 3)}), domain_error);
    CHECK_THROWS_AS(check_aligned({W(1, "1,1,1"), W(2, "1,1,1")}), domain_error);
    CHECK_THROWS_AS(check_aligned({}), domain_error);
    const auto levels = filtration_levels(chain, -1, ComplexKind::Graph);
    CHECK(levels == std::vector<int>{1});
    const auto l0 = filtration_levels(chain, 0, ComplexKind::Graph);
    const auto basis = generator_basis(chain.back(), 0, ComplexKind::Graph);
    REQUIRE(l0.size() == basis.size());
    for (std::size_t i = 0; i < l0.size(); ++i) {
        REQUIRE(l0[i] >= 1);
        REQUIRE(is_stable(basis[i].graph, 1, chain[static_cast<std::size_t>(l0[i] - 1)]));
        if (l0[i] > 1)
            REQUIRE_FALSE(is_stable(basis[i].graph, 1, chain[static_cast<std::size_t>(l0[i] - 2)]));
    }
}
