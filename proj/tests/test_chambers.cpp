#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include <tropgc/chambers.hpp>

#include <bit>
#include <random>
#include <set>

using namespace tropgc;

namespace {

std::vector<Rational> R(std::initializer_list<Rational> xs) { return std::vector<Rational>(xs); }

/// Sign of wall S computed directly from the entries.
bool naive_plus(const std::vector<Rational>& a, Subset s)
{
    Rational sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (s >> i & 1u)
            sum += a[i];
    return sum > 1;
}

/// Relation of a to b at the identity, from the wall inequalities directly.
Relation naive_relation(const std::vector<Rational>& a, const std::vector<Rational>& b, int g)
{
    bool less = false, greater = false;
    const std::size_t n = a.size();
    for (Subset s = 0; s < (Subset{1} << n); ++s) {
        const int k = std::popcount(s);
        if (k < 2 || k > static_cast<int>(n) - (g == 0 ? 2 : 0))
            continue;
        const bool pa = naive_plus(a, s), pb = naive_plus(b, s);
        less |= !pa && pb;
        greater |= pa && !pb;
    }
    if (less && greater)
        return Relation::Incomparable;
    return less ? Relation::Less : greater ? Relation::Greater : Relation::Equal;
}

std::vector<Rational> permuted(const Permutation& s, const std::vector<Rational>& a)
{
    std::vector<Rational> out;
    for (int v : s)
        out.push_back(a[v - 1]);
    return out;
}

} // namespace

TEST_CASE("weight data validation", "[chambers]")
{
    CHECK_NOTHROW(WeightDatum(1, R({1, 1, 1})));
    CHECK_THROWS_AS(WeightDatum(1, R({0, 1})), domain_error);
    CHECK_THROWS_AS(WeightDatum(1, R({2})), domain_error);
    CHECK_THROWS_AS(WeightDatum(-1, R({1})), domain_error);
    CHECK_THROWS_AS(WeightDatum(0, R({1, 1})), domain_error);
    CHECK_THROWS_AS(WeightDatum(1, {}), domain_error);
    CHECK_NOTHROW(WeightDatum(0, R({1, 1, Rational(1, 100)})));
    CHECK(WeightDatum(0, R({1, 1, Rational(1, 100)})).below_intro_bound());
    CHECK_FALSE(WeightDatum(1, R({1, 1, 1})).below_intro_bound());
}

TEST_CASE("wall sets are ordered by size then lexicographically", "[chambers]")
{
    for (int g : {0, 1})
        for (std::size_t n = 1; n <= 9; ++n) {
            std::size_t expected = 0;
            for (Subset s = 0; s < (Subset{1} << n); ++s) {
                const int k = std::popcount(s);
                expected += k >= 2 && k <= static_cast<int>(n) - (g == 0 ? 2 : 0);
            }
            const auto& ws = wall_set(g, n);
            REQUIRE(ws.subsets.size() == expected);
            for (std::size_t i = 1; i < ws.subsets.size(); ++i)
                REQUIRE(std::popcount(ws.subsets[i - 1]) <= std::popcount(ws.subsets[i]));
        }
    CHECK(wall_set(1, 8).subsets.size() == 247);
    CHECK(wall_set(1, 3).subsets.size() == 4);
    CHECK(wall_set(0, 4).subsets.size() == 6);
    const auto& w3 = wall_set(1, 3).subsets;
    CHECK(subset_string(w3[0]) == "{1,2}");
    CHECK(subset_string(w3[1]) == "{1,3}");
    CHECK(subset_string(w3[2]) == "{2,3}");
    CHECK(subset_string(w3[3]) == "{1,2,3}");
}

TEST_CASE("signature examples", "[chambers]")
{
    auto all = [](const ChamberSignature& s, Sign v) {
        return std::all_of(s.signs.begin(), s.signs.end(), [v](Sign x) { return x == v; });
    };
    CHECK(all(signature(WeightDatum(1, R({1, 1, 1}))), Sign::Plus));
    CHECK(all(signature(WeightDatum(1, R({Rational(1, 3), Rational(1, 3), Rational(33, 100)}))), Sign::Minus));
    const auto half = signature(WeightDatum(1, R({Rational(1, 2), Rational(1, 2), Rational(1, 2)})));
    CHECK(half.signs == std::vector<Sign>{Sign::Minus, Sign::Minus, Sign::Minus, Sign::Plus});
}

TEST_CASE("signatures match direct subset sums and are monotone", "[chambers][property]")
{
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 300; ++trial) {
        const int g = static_cast<int>(rng() % 3);
        const std::size_t n = 3 + rng() % 5;
        const auto a = oracle::random_datum(rng, g, n);
        const auto s = signature(a);
        const auto& walls = s.walls();
        for (std::size_t i = 0; i < walls.size(); ++i) {
            REQUIRE((s.signs[i] == Sign::Plus) == naive_plus(a.entries(), walls[i]));
            if (s.signs[i] == Sign::Plus)
                for (std::size_t j = 0; j < walls.size(); ++j)
                    if ((walls[i] & walls[j]) == walls[i])
                        REQUIRE(s.signs[j] == Sign::Plus);
        }
    }
}

TEST_CASE("compare_signatures examples", "[chambers]")
{
    const auto minus = signature(make_minimal(1, 3));
    const auto plus = signature(WeightDatum(1, R({1, 1, 1})));
    CHECK(compare_signatures(minus, plus).relation == Relation::Less);
    CHECK(compare_signatures(plus, minus).relation == Relation::Greater);
    CHECK(compare_signatures(plus, plus).relation == Relation::Equal);
    // {1,2} Plus only vs {1,3} Plus only.
    ChamberSignature ch2{1, 3, {Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus}};
    ChamberSignature ch3{1, 3, {Sign::Minus, Sign::Plus, Sign::Minus, Sign::Plus}};
    const auto r = compare_signatures(ch2, ch3);
    CHECK(r.relation == Relation::Incomparable);
    CHECK_FALSE(r.witness);
    CHECK_THROWS_AS(compare_signatures(plus, signature(WeightDatum(0, R({1, 1, 1})))), domain_error);
}

TEST_CASE("apply_permutation uses one-line notation", "[chambers]")
{
    const Rational e(1, 100);
    const WeightDatum a(1, R({e, Rational(2, 3), Rational(2, 3)}));
    CHECK(apply_permutation({2, 3, 1}, a).entries() == R({Rational(2, 3), Rational(2, 3), e}));
    CHECK(apply_permutation({3, 1, 2}, a).entries() == R({Rational(2, 3), e, Rational(2, 3)}));
    CHECK(apply_permutation({1, 2, 3}, a).entries() == a.entries());
    const WeightDatum b(1, R({Rational(14, 27) - e, Rational(12, 27), Rational(14, 27)}));
    CHECK(apply_permutation({2, 3, 1}, b).entries() == R({Rational(12, 27), Rational(14, 27), Rational(14, 27) - e}));
    CHECK_THROWS_AS(apply_permutation({1, 1, 2}, a), domain_error);
    CHECK_THROWS_AS(apply_permutation({1, 2}, a), domain_error);
}

TEST_CASE("signatures are equivariant", "[chambers][property]")
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng() % 6;
        const auto a = oracle::random_datum(rng, 1 + static_cast<int>(rng() % 2), n);
        Permutation s = identity_permutation(n);
        std::shuffle(s.begin(), s.end(), rng);
        REQUIRE(signature(apply_permutation(s, a)) == permute_signature(s, signature(a)));
        REQUIRE(compose(s, inverse_permutation(s)) == identity_permutation(n));
    }
}

TEST_CASE("introduction comparison", "[chambers]")
{
    const Rational e(1, 100);
    const WeightDatum a(1, R({Rational(12, 27), Rational(14, 27), 1 - e}));
    const WeightDatum b(1, R({Rational(14, 27) - e, Rational(12, 27), Rational(14, 27)}));
    const auto r = compare_up_to_symmetry(a, b);
    REQUIRE(r.relation == Relation::Greater);
    REQUIRE(r.witness);
    CHECK(naive_relation(permuted(*r.witness, a.entries()), b.entries(), 1) == Relation::Greater);
    // The relabeled b from the introduction sits below a entrywise.
    const auto rb = compare_up_to_symmetry(b, a);
    REQUIRE(rb.relation == Relation::Less);
    CHECK(naive_relation(permuted(*rb.witness, b.entries()), a.entries(), 1) == Relation::Less);
    CHECK(compare_up_to_symmetry(a, a).relation == Relation::Equal);
    CHECK(*compare_up_to_symmetry(a, a).witness == identity_permutation(3));
}

TEST_CASE("n = 8 incomparable pair exhausts all permutations", "[chambers]")
{
    const Rational e(1, 100), h(1, 2);
    std::vector<Rational> a{h + 2 * e};
    for (int i = 0; i < 6; ++i)
        a.push_back(h - e);
    a.push_back(2 * e);
    std::vector<Rational> b(4, h + e);
    for (int i = 0; i < 4; ++i)
        b.push_back(e);
    const WeightDatum A(1, a), B(1, b);
    const auto full = compare_up_to_symmetry(A, B, {false});
    CHECK(full.relation == Relation::Incomparable);
    CHECK_FALSE(full.witness);
    CHECK(full.permutations_examined == 40320);
    CHECK(full.permutations_skipped == 0);
    CHECK(full.wall_evaluations == 40320ull * 247ull);
    const auto pruned = compare_up_to_symmetry(A, B);
    CHECK(pruned.relation == Relation::Incomparable);
    CHECK(pruned.permutations_examined + pruned.permutations_skipped == 40320);
    CHECK(pruned.permutations_examined == 40320 / 720);
    CHECK(compare_up_to_symmetry(B, A).relation == Relation::Incomparable);
    // Independent check on every permutation.
    Permutation s = identity_permutation(8);
    bool related = false;
    do
        related |= naive_relation(permuted(s, a), b, 1) != Relation::Incomparable;
    while (!related && std::next_permutation(s.begin(), s.end()));
    CHECK_FALSE(related);
}

TEST_CASE("comparison agrees with exhaustive search and is symmetric", "[chambers][property]")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 4;
        const int g = 1;
        const auto a = oracle::random_datum(rng, g, n, 12);
        const auto b = oracle::random_datum(rng, g, n, 12);
        const auto r = compare_up_to_symmetry(a, b);
        const auto r_raw = compare_up_to_symmetry(a, b, {false});
        REQUIRE(r.relation == r_raw.relation);
        REQUIRE(r.witness == r_raw.witness);
        // First related permutation in lexicographic order.
        Permutation s = identity_permutation(n);
        Relation expected = Relation::Incomparable;
        std::optional<Permutation> first;
        do {
            const auto rel = naive_relation(permuted(s, a.entries()), b.entries(), g);
            if (rel != Relation::Incomparable) {
                expected = rel;
                first = s;
                break;
            }
        } while (std::next_permutation(s.begin(), s.end()));
        REQUIRE(r.relation == expected);
        REQUIRE(r.witness == first);
        const auto back = compare_up_to_symmetry(b, a);
        if (r.relation == Relation::Incomparable || r.relation == Relation::Equal)
            REQUIRE(back.relation == r.relation);
        else
            REQUIRE(back.relation == reversed(r.relation));
    }
}

TEST_CASE("entrywise smaller data are dominated", "[chambers][property]")
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng() % 5;
        const auto b = oracle::random_datum(rng, 1, n, 30);
        std::vector<Rational> a;
        for (const auto& x : b.entries())
            a.push_back(x * Rational(1 + rng() % 10, 10));
        const auto r = compare_up_to_symmetry(WeightDatum(1, a), b);
        REQUIRE((r.relation == Relation::Equal || r.relation == Relation::Less));
    }
}

TEST_CASE("is_feasible examples", "[chambers]")
{
    CHECK(is_feasible(ChamberSignature{1, 3, std::vector<Sign>(4, Sign::Plus)}));
    CHECK_FALSE(is_feasible(ChamberSignature{1, 3, {Sign::Plus, Sign::Minus, Sign::Minus, Sign::Minus}}));
    CHECK_FALSE(is_feasible(ChamberSignature{0, 4, std::vector<Sign>(6, Sign::Minus)}));
    CHECK(is_feasible(ChamberSignature{1, 3, std::vector<Sign>(4, Sign::Minus)}));
}

TEST_CASE("chamber counts", "[chambers]")
{
    const auto e12 = enumerate_chambers(1, 2);
    CHECK(e12.chambers.size() == 2);
    CHECK(e12.orbit_count() == 2);
    const auto e13 = enumerate_chambers(1, 3);
    CHECK(e13.chambers.size() == 9);
    CHECK(e13.orbit_count() == 5);
    const auto e03 = enumerate_chambers(0, 3);
    CHECK(e03.chambers.size() == 1);
    CHECK(e03.orbit_count() == 1);
    CHECK_THROWS_AS(enumerate_chambers(1, 6), domain_error);
}

TEST_CASE("enumeration equals the set of signatures realized on a rational grid", "[chambers][property]")
{
    for (auto [g, n] : {std::pair{1, std::size_t{2}}, {1, 3}, {0, 3}, {0, 4}, {2, 3}}) {
        const auto en = enumerate_chambers(g, n);
        std::set<std::vector<Sign>> found;
        for (const auto& c : en.chambers) {
            REQUIRE(is_feasible(c));
            found.insert(c.signs);
        }
        REQUIRE(found.size() == en.chambers.size());
        // Off-wall points of a fine grid reach every chamber for n <= 4.
        std::set<std::vector<Sign>> sampled;
        const int q = 60;
        std::vector<int> x(n, 1);
        while (true) {
            std::vector<Rational> a;
            Rational total = 0;
            for (int v : x) {
                a.emplace_back(v, q);
                total += a.back();
            }
            bool on_wall = false;
            for (Subset s : wall_set(g, n).subsets) {
                Rational sum = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (s >> i & 1u)
                        sum += a[i];
                on_wall |= sum == 1;
            }
            if (!on_wall && 2 * g - 2 + total > 0)
                sampled.insert(signature(WeightDatum(g, a)).signs);
            std::size_t i = 0;
            while (i < n && x[i] == q)
                x[i++] = 1;
            if (i == n)
                break;
            x[i] += n <= 3 ? 1 : 3;
            if (x[i] > q)
                x[i] = q;
        }
        REQUIRE(sampled == found);
    }
}

TEST_CASE("enumerated chambers are closed under the symmetric group", "[chambers][property]")
{
    const auto en = enumerate_chambers(1, 4);
    std::set<std::vector<Sign>> all;
    for (const auto& c : en.chambers)
        all.insert(c.signs);
    for (std::size_t i = 0; i < en.chambers.size(); ++i) {
        Permutation s = identity_permutation(4);
        do
            REQUIRE(all.count(permute_signature(s, en.chambers[i]).signs));
        while (std::next_permutation(s.begin(), s.end()));
        REQUIRE(en.orbit_rep[en.orbit_rep[i]] == en.orbit_rep[i]);
    }
}

TEST_CASE("partial order axioms on the chambers of (1,3)", "[chambers][property]")
{
    const auto ch = enumerate_chambers(1, 3).chambers;
    auto leq = [](const ChamberSignature& x, const ChamberSignature& y) {
        const auto r = compare_signatures(x, y).relation;
        return r == Relation::Equal || r == Relation::Less;
    };
    for (const auto& x : ch) {
        REQUIRE(leq(x, x));
        for (const auto& y : ch) {
            if (leq(x, y) && leq(y, x))
                REQUIRE(x == y);
            for (const auto& z : ch)
                if (leq(x, y) && leq(y, z))
                    REQUIRE(leq(x, z));
        }
    }
}

TEST_CASE("constructors land in the intended chambers", "[chambers]")
{
    const auto one3 = signature(WeightDatum(1, R({1, 1, 1})));
    CHECK(signature(make_floor(1, 3, 2)) == one3);
    CHECK(signature(make_floor(1, 3, 3)) == signature(make_F(1, 3)));
    CHECK(signature(make_heavy_light(1, 4, 3)) == signature(WeightDatum(1, R({1, 1, 1, 1}))));
    CHECK(signature(make_minimal(1, 5)).signs == std::vector<Sign>(wall_set(1, 5).subsets.size(), Sign::Minus));
    for (std::size_t n = 2; n <= 7; ++n)
        for (std::size_t l = 2; l <= n; ++l) {
            const auto s = signature(make_floor(1, n, l));
            const auto& walls = s.walls();
            for (std::size_t i = 0; i < walls.size(); ++i)
                REQUIRE((s.signs[i] == Sign::Plus) == (std::popcount(walls[i]) >= static_cast<int>(l)));
        }
    CHECK_THROWS_AS(make_floor(1, 3, 1), domain_error);
    CHECK_THROWS_AS(make_minimal(0, 3), domain_error);
    CHECK_THROWS_AS(make_heavy_light(0, 3, 1), domain_error);
}
