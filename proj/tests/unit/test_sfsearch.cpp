#include <algorithm>
#include <random>
#include <functional>
#include <map>
#include <set>

#include "doctest.h"
#include "sunflower/error.hpp"
#include "sunflower/sfsearch.hpp"
#include "sf_oracle.hpp"
#include "test_support.hpp"

using namespace sunflower;

namespace {

std::size_t oracle_sf(std::size_t n, std::size_t k, bool exactly, std::size_t limit = 12) {
    auto o = testing::run_oracle(n, k, exactly, limit);
    REQUIRE(o.best < limit);
    return o.best + 1;
}

SearchBudget roomy() {
    SearchBudget b;
    b.max_universe = 64;
    b.max_family = 32;
    return b;
}

}  // namespace

TEST_CASE("lemma threshold") {
    CHECK(lemma_threshold(3, 3) == 48);
    CHECK(lemma_threshold(3, 2) == 8);
    CHECK(lemma_threshold(2, 5) == 120);
    CHECK(lemma_threshold(5, 0) == 1);
}

TEST_CASE("greedy_sunflower examples") {
    SUBCASE("common element, disjoint petals") {
        SetFamily fam({{1, 2}, {1, 3}, {1, 4}});
        auto w = greedy_sunflower(fam, 3, 2);
        REQUIRE(w);
        CHECK(w->core == FiniteSet{1});
        CHECK(w->members == std::vector<std::size_t>{0, 1, 2});
    }
    SUBCASE("pairwise disjoint") {
        auto w = greedy_sunflower(SetFamily({{1, 2}, {3, 4}, {5, 6}}), 3, 2);
        REQUIRE(w);
        CHECK(w->core == FiniteSet{});
    }
    SUBCASE("triangle has none") {
        CHECK_FALSE(greedy_sunflower(SetFamily({{1, 2}, {2, 3}, {1, 3}}), 3, 2));
    }
    SUBCASE("trivial sizes") {
        CHECK(greedy_sunflower(SetFamily{}, 0, 1).has_value());
        CHECK_FALSE(greedy_sunflower(SetFamily{}, 1, 1).has_value());
        CHECK(greedy_sunflower(SetFamily(std::vector<FiniteSet>{FiniteSet{7}}), 1, 1)->members == std::vector<std::size_t>{0});
    }
    SUBCASE("precondition") {
        CHECK_THROWS_AS((void)greedy_sunflower(SetFamily({{1, 2, 3}}), 2, 2), PreconditionError);
    }
}

TEST_CASE("greedy is sound and agrees with the exhaustive finder (property)") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 600; ++round) {
        auto fam = testing::random_family(rng, 14, 3, 7);
        std::size_t n = 2 + rng() % 3;
        auto w = greedy_sunflower(fam, n, 3);
        auto e = find_sunflower_exhaustive(fam.members(), n);
        REQUIRE(w.has_value() == e.has_value());
        if (w) {
            CHECK(w->members.size() == n);
            CHECK(verify_witness(fam, *w));
            CHECK(is_sunflower(fam.select(w->members)) == w->core);
        }
        if (e) CHECK(verify_witness(fam, *e));
    }
}

TEST_CASE("greedy guarantee on every 8-member graph over six atoms (n=3, k=2)") {
    std::vector<FiniteSet> edges;
    for (Atom a = 0; a < 6; ++a)
        for (Atom b = a + 1; b < 6; ++b) edges.push_back(FiniteSet{a, b});
    std::size_t checked = 0;
    std::vector<bool> pick(edges.size(), false);
    std::fill(pick.begin(), pick.begin() + 8, true);
    do {
        std::vector<FiniteSet> members;
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (pick[i]) members.push_back(edges[i]);
        SetFamily fam(members);
        auto w = greedy_sunflower(fam, 3, 2);
        REQUIRE(w);
        CHECK(verify_witness(fam, *w));
        ++checked;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    CHECK(checked == 6435);
}

TEST_CASE("max_sunflower_free") {
    SetFamily triangles({{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}});
    CHECK(max_sunflower_free(triangles.members(), 3).size() == 6);
    CHECK(max_sunflower_free(triangles.members(), 2).size() == 1);
    SetFamily singles({{0}, {1}, {2}, {3}});
    CHECK(max_sunflower_free(singles.members(), 3).size() == 2);
}

TEST_CASE("oracle values") {
    CHECK(oracle_sf(3, 2, false) == 7);
    CHECK(oracle_sf(3, 2, true) == 7);
    for (std::size_t n = 2; n <= 6; ++n) CHECK(oracle_sf(n, 1, false) == n);
    for (std::size_t k = 1; k <= 5; ++k) CHECK(oracle_sf(2, k, false) == 2);
}

TEST_CASE("exact_sf(3,2) is 7 with two disjoint triangles as the extremal family") {
    auto ans = exact_sf(3, 2, roomy());
    REQUIRE(ans.exact());
    CHECK(ans.value == 7);
    REQUIRE(ans.extremal_witness);
    CHECK(ans.extremal_witness->size() == 6);
    SetFamily triangles({{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}});
    CHECK(find_family_isomorphism(*ans.extremal_witness, triangles).has_value());
    CHECK_FALSE(greedy_sunflower(*ans.extremal_witness, 3, 2).has_value());
}

TEST_CASE("exact_sf small cells match the oracle") {
    for (std::size_t n = 2; n <= 6; ++n) {
        auto ans = exact_sf(n, 1, roomy());
        REQUIRE(ans.exact());
        CHECK(ans.value == n);
        CHECK(ans.extremal_witness->size() == n - 1);
    }
    for (std::size_t k = 1; k <= 5; ++k) {
        auto ans = exact_sf(2, k, roomy());
        REQUIRE(ans.exact());
        CHECK(ans.value == 2);
    }
}

TEST_CASE("exact_sf is monotone and padding-equivalent on the computed cells") {
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t n = 2; n <= 5; ++n) cells.emplace_back(n, 1);
    for (std::size_t k = 1; k <= 4; ++k) cells.emplace_back(2, k);
    cells.emplace_back(3, 2);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> value;
    for (auto [n, k] : cells) {
        auto at_most = exact_sf(n, k, roomy());
        auto exactly = exact_sf(n, k, roomy(), FamilyShape::Exactly);
        REQUIRE(at_most.exact());
        REQUIRE(exactly.exact());
        CHECK(at_most.value == exactly.value);
        CHECK(at_most.value <= std::max<std::uint64_t>(lemma_threshold(n, k), n));
        value[{n, k}] = at_most.value;
    }
    for (const auto& [cell, v] : value) {
        auto [n, k] = cell;
        if (value.count({n + 1, k})) CHECK(v <= value[{n + 1, k}]);
        if (value.count({n, k + 1})) CHECK(v <= value[{n, k + 1}]);
    }
}

TEST_CASE("every random family at the exact value contains a sunflower") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 300; ++round) {
        std::set<FiniteSet> seen;
        std::vector<FiniteSet> members;
        while (members.size() < 7) {
            std::size_t sz = rng() % 3;
            std::vector<Atom> atoms;
            for (std::size_t i = 0; i < sz; ++i) atoms.push_back(static_cast<Atom>(rng() % 8));
            FiniteSet s(atoms);
            if (s.size() == sz && seen.insert(s).second) members.push_back(s);
        }
        SetFamily fam(members);
        CHECK(greedy_sunflower(fam, 3, 2).has_value());
    }
}

TEST_CASE("exact_sf reports a bound when the budget is exhausted") {
    SearchBudget tiny;
    tiny.max_universe = 64;
    tiny.max_family = 4;
    auto ans = exact_sf(4, 2, tiny);
    CHECK_FALSE(ans.exact());
    CHECK(ans.value == 5);
    REQUIRE(ans.extremal_witness);
    CHECK(ans.extremal_witness->size() == 4);
    CHECK_FALSE(find_sunflower_exhaustive(ans.extremal_witness->members(), 4).has_value());

    SearchBudget narrow;
    narrow.max_universe = 3;
    narrow.max_family = 32;
    auto cut = exact_sf(3, 2, narrow);
    CHECK_FALSE(cut.exact());
}

TEST_CASE("exact_sf is thread-count independent") {
    SearchBudget b = roomy();
    b.threads = 3;
    auto par = exact_sf(3, 2, b);
    auto seq = exact_sf(3, 2, roomy());
    CHECK(par.value == seq.value);
    CHECK(std::equal(par.extremal_witness->begin(), par.extremal_witness->end(),
                     seq.extremal_witness->begin(), seq.extremal_witness->end()));
}

TEST_CASE("exact_sf preconditions") {
    CHECK_THROWS_AS((void)exact_sf(1, 2, roomy()), PreconditionError);
    CHECK_THROWS_AS((void)exact_sf(3, 0, roomy()), PreconditionError);
    SearchBudget bad;
    bad.max_family = 0;
    CHECK_THROWS_AS((void)exact_sf(3, 2, bad), PreconditionError);
}

TEST_CASE("empirical check at the lemma threshold") {
    auto r = empirical_sf_check(3, 2, 100, 0);
    CHECK(r.found == 100);
    CHECK(r.failures.empty());
    auto r3 = empirical_sf_check(3, 3, 100, 0);
    CHECK(r3.family_size == 48);
    CHECK(r3.found == 100);
    auto r2 = empirical_sf_check(2, 5, 10, 0);
    CHECK(r2.found == 10);
}

TEST_CASE("random uniform families are distinct and uniform") {
    auto fam = random_uniform_family(48, 3, 10, 9);
    CHECK(fam.size() == 48);
    for (const auto& m : fam) CHECK(m.size() == 3);
    CHECK_THROWS_AS((void)random_uniform_family(11, 2, 4, 0), PreconditionError);
}
