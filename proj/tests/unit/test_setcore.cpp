#include <algorithm>
#include <random>

#include "doctest.h"
#include "sunflower/error.hpp"
#include "sunflower/setcore.hpp"
#include "test_support.hpp"

using namespace sunflower;

TEST_CASE("finite sets normalise and order lexicographically") {
    FiniteSet s{3, 1, 2, 1};
    CHECK(s.size() == 3);
    CHECK(*s.max_atom() == 3);
    CHECK(FiniteSet{} < FiniteSet{0});
    CHECK(FiniteSet{0} < FiniteSet{0, 1});
    CHECK(FiniteSet{0, 5} < FiniteSet{1});
    CHECK(intersect(FiniteSet{1, 2, 3}, FiniteSet{2, 3, 4}) == FiniteSet{2, 3});
    CHECK(disjoint(FiniteSet{1, 2}, FiniteSet{3}));
    CHECK_FALSE(disjoint(FiniteSet{1, 2}, FiniteSet{2}));
}

TEST_CASE("families reject repeated members and atoms outside the universe") {
    CHECK_THROWS_AS(SetFamily({FiniteSet{1}, FiniteSet{1}}), PreconditionError);
    CHECK_THROWS_AS(SetFamily({FiniteSet{1, 7}}, Atom{7}), PreconditionError);
    CHECK_NOTHROW(SetFamily({FiniteSet{1, 6}}, Atom{7}));
}

TEST_CASE("is_sunflower examples") {
    CHECK(is_sunflower(SetFamily({{1, 2, 3}, {1, 2, 4}, {1, 2, 5}})) == FiniteSet{1, 2});
    CHECK_FALSE(is_sunflower(SetFamily({{1, 2}, {2, 3}, {1, 3}})).has_value());
    CHECK(is_sunflower(SetFamily({{1, 2}, {3, 4}, {5, 6}})) == FiniteSet{});
}

TEST_CASE("small families are sunflowers") {
    CHECK(is_sunflower(SetFamily{}) == FiniteSet{});
    CHECK(is_sunflower(SetFamily({{4, 5}})) == FiniteSet{});
    CHECK(is_sunflower(SetFamily({{1, 2}, {2, 3}})) == FiniteSet{2});
    CHECK(is_sunflower(SetFamily({{0}, {1}, {2}, {3}, {9}})) == FiniteSet{});
}

TEST_CASE("empty member is a sunflower with others only when they are disjoint") {
    CHECK(is_sunflower(SetFamily({{}, {1, 2}, {3}})) == FiniteSet{});
    CHECK_FALSE(is_sunflower(SetFamily({{}, {1, 2}, {2}})).has_value());
}

TEST_CASE("is_sunflower is order independent and its core is in every member") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 400; ++round) {
        auto fam = testing::random_family(rng, 6, 3, 6);
        std::vector<FiniteSet> members(fam.begin(), fam.end());
        auto core = is_sunflower(members);
        std::shuffle(members.begin(), members.end(), rng);
        CHECK(is_sunflower(members) == core);
        if (core)
            for (const auto& m : members) CHECK(is_subset(*core, m));
    }
}

TEST_CASE("verify_witness") {
    SetFamily fam({{1, 2}, {1, 3}, {2, 3}, {1, 4}});
    CHECK(verify_witness(fam, {FiniteSet{1}, {0, 1, 3}}));
    CHECK_FALSE(verify_witness(fam, {FiniteSet{1}, {0, 1, 2}}));
    CHECK_FALSE(verify_witness(fam, {FiniteSet{1}, {0, 9}}));
    CHECK_FALSE(verify_witness(fam, {FiniteSet{1}, {1, 0}}));
}

TEST_CASE("pad_family examples") {
    SUBCASE("one pad atom forced") {
        auto padded = pad_family(SetFamily({{1}, {1, 2}}), 2);
        REQUIRE(padded.family.size() == 2);
        CHECK(padded.family[0] == FiniteSet{1, 3});
        CHECK(padded.family[1] == FiniteSet{1, 2});
    }
    SUBCASE("already uniform") {
        SetFamily fam({{1, 2}, {3, 4}});
        auto padded = pad_family(fam, 2);
        CHECK(std::equal(padded.family.begin(), padded.family.end(), fam.begin(), fam.end()));
        CHECK(padded.image == std::vector<std::size_t>{0, 1});
    }
    SUBCASE("three members to size three keep every sub-family's status") {
        SetFamily fam({{1}, {2}, {1, 2}});
        auto padded = pad_family(fam, 3);
        for (const auto& m : padded.family) CHECK(m.size() == 3);
        testing::for_each_subfamily(fam.size(), [&](const std::vector<std::size_t>& idx) {
            std::vector<std::size_t> img;
            for (auto i : idx) img.push_back(padded.image[i]);
            CHECK(is_sunflower(fam.select(idx)).has_value() ==
                  is_sunflower(padded.family.select(img)).has_value());
        });
    }
    SUBCASE("member too large") {
        CHECK_THROWS_AS((void)pad_family(SetFamily({{1, 2, 3}}), 2), PreconditionError);
    }
}

TEST_CASE("padding uses fresh atoms above the universe hint") {
    auto padded = pad_family(SetFamily({{0}, {1}}, Atom{10}), 3);
    CHECK(padded.family[0] == FiniteSet{0, 10, 11});
    CHECK(padded.family[1] == FiniteSet{1, 12, 13});
}

TEST_CASE("padding preserves sunflower status of every sub-family (property)") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 200; ++round) {
        auto fam = testing::random_family(rng, 10, 3, 7);
        std::size_t k = fam.max_member_size() + rng() % 2;
        auto padded = pad_family(fam, k);
        CHECK(padded.family.size() == fam.size());
        for (std::size_t i = 0; i < fam.size(); ++i) {
            CHECK(is_subset(fam[i], padded.family[padded.image[i]]));
            auto extra = difference(padded.family[padded.image[i]], fam[i]);
            CHECK(disjoint(extra, fam.support()));
        }
        testing::for_each_subfamily(fam.size(), [&](const std::vector<std::size_t>& idx) {
            std::vector<std::size_t> img;
            for (auto i : idx) img.push_back(padded.image[i]);
            REQUIRE(is_sunflower(fam.select(idx)).has_value() ==
                    is_sunflower(padded.family.select(img)).has_value());
        });
    }
}

TEST_CASE("family isomorphism") {
    SetFamily triangles({{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    SetFamily relabelled({{10, 11}, {11, 12}, {10, 12}, {20, 21}, {21, 22}, {20, 22}});
    SetFamily path({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    auto map = find_family_isomorphism(triangles, relabelled);
    REQUIRE(map.has_value());
    for (const auto& m : triangles) {
        std::vector<Atom> img;
        for (Atom a : m) img.push_back(map->at(a));
        CHECK(std::find(relabelled.begin(), relabelled.end(), FiniteSet(img)) != relabelled.end());
    }
    CHECK_FALSE(find_family_isomorphism(triangles, path).has_value());
    CHECK(find_family_isomorphism(SetFamily(std::vector<FiniteSet>{FiniteSet{}}), SetFamily(std::vector<FiniteSet>{FiniteSet{}})).has_value());
}
